//! Conjecture-experimentation kernels around univariate real-rooted
//! polynomials and related analytic objects.
//!
//! The certified modules ([`polycore`], [`descartes`], [`tropical`],
//! [`meshops`], [`jensen`], [`rolle`], [`sos`]) work over exact rational
//! arithmetic; root counts and orderings they report are proofs, not
//! estimates. The numeric modules ([`hb`], [`fields`], [`expsum`]) use
//! floating point with explicit residuals and indeterminate verdicts.
//!
//! Every seeded search derives a per-trial RNG stream from a single global
//! seed so that any recorded finding can be replayed in isolation (see
//! [`ledger`]).

pub mod rat;
pub mod rng;

pub mod polycore;

pub mod descartes;
pub mod expsum;
pub mod fields;
pub mod hb;
pub mod jensen;
pub mod meshops;
pub mod rolle;
pub mod sos;
pub mod tropical;

pub mod ledger;
pub mod report;
pub mod sample;

pub use polycore::{RatInterval, RatPoly, RootReport};
pub use rat::Rat;
