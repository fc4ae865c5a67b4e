//! Difference operators on polynomials, mesh-class preservation checks,
//! and the bullet product.
//!
//! The mesh class at level `m`: real-rooted polynomials of degree at most
//! `m` whose mesh is at least 1. Polynomials with fewer than two roots get
//! mesh +infinity and belong to the class; the zero polynomial is treated
//! as degenerate-in-class. These conventions are artifact choices, the
//! sources leave them open.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{self, RatPoly};
use crate::rat::{rat_int, Rat};
use crate::rng::trial_rng;
use crate::sample;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshOpsError {
    #[error("difference operator must have at least one nonzero coefficient")]
    ZeroOperator,
    #[error("bullet product level {level} below a factor degree {degree}")]
    DegreeTooHigh { level: usize, degree: usize },
}

/// Difference operator `T(p)(x) = a_0 p(x) + a_1 p(x-1) + ... + a_k p(x-k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOp {
    pub coeffs: Vec<String>,
}

impl DiffOp {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, MeshOpsError> {
        if coeffs.iter().all(Rat::is_zero) {
            return Err(MeshOpsError::ZeroOperator);
        }
        Ok(DiffOp {
            coeffs: coeffs.iter().map(crate::rat::fmt_rat).collect(),
        })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, MeshOpsError> {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let coeffs = s
            .split(',')
            .map(|t| crate::rat::parse_rat(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs).map_err(|e| e.to_string())
    }

    pub fn rat_coeffs(&self) -> Vec<Rat> {
        self.coeffs
            .iter()
            .map(|s| crate::rat::parse_rat(s).expect("validated on construction"))
            .collect()
    }
}

/// Apply a difference operator exactly: `sum a_j p(x - j)`.
pub fn apply_diffop(op: &DiffOp, p: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (j, a) in op.rat_coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let shifted = p.shift(&-rat_int(j as i64));
        acc = &acc + &shifted.scale(a);
    }
    acc
}

/// The m-th falling factorial `(x)_m = x(x-1)...(x-m+1)`; real-rooted with
/// mesh exactly 1.
pub fn pochhammer(m: usize) -> RatPoly {
    assert!(m >= 1);
    let roots: Vec<Rat> = (0..m as i64).map(rat_int).collect();
    RatPoly::from_roots(&roots)
}

/// Forward difference `∇p(x) = p(x+1) - p(x)`, iterated `order` times.
pub fn forward_diff(p: &RatPoly, order: usize) -> RatPoly {
    let mut q = p.clone();
    for _ in 0..order {
        q = &q.shift(&rat_int(1)) - &q;
    }
    q
}

/// Bullet product at level `d`:
/// `(p • q)(x) = sum_{k=0}^d (∇^k p)(0) * (∇^{d-k} q)(x)`.
pub fn bullet(p: &RatPoly, q: &RatPoly, d: usize) -> Result<RatPoly, MeshOpsError> {
    for f in [p, q] {
        if let Some(deg) = f.degree() {
            if deg > d {
                return Err(MeshOpsError::DegreeTooHigh {
                    level: d,
                    degree: deg,
                });
            }
        }
    }
    let zero = Rat::zero();
    let mut acc = RatPoly::zero();
    let mut dp = p.clone();
    // build ∇^k p incrementally
    for k in 0..=d {
        let coeff = dp.eval(&zero);
        if !coeff.is_zero() {
            let dq = forward_diff(q, d - k);
            acc = &acc + &dq.scale(&coeff);
        }
        dp = forward_diff(&dp, 1);
    }
    Ok(acc)
}

/// Membership verdict for the mesh >= 1 class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassVerdict {
    /// Real-rooted with mesh >= 1 (or fewer than two roots).
    In,
    /// Zero polynomial: degenerate, counted as preserved.
    DegenerateZero,
    /// Not real-rooted, or a multiple root, or mesh < 1.
    Out,
}

impl ClassVerdict {
    pub fn preserved(self) -> bool {
        !matches!(self, ClassVerdict::Out)
    }
}

/// Certified membership in the mesh >= 1 class.
pub fn in_mesh_class(p: &RatPoly) -> ClassVerdict {
    if p.is_zero() {
        return ClassVerdict::DegenerateZero;
    }
    match polycore::mesh(p) {
        Err(_) => ClassVerdict::Out,
        Ok(mut m) => match m.decide_ge(&rat_int(1)) {
            Ok(true) => ClassVerdict::In,
            Ok(false) => ClassVerdict::Out,
            Err(_) => ClassVerdict::Out,
        },
    }
}

/// One sampled preservation failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreservationViolation {
    pub trial: u64,
    pub input: RatPoly,
    pub image: RatPoly,
}

/// Report of a Conjecture-8 style run for one operator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Conj8Report {
    pub op: DiffOp,
    pub m: usize,
    /// `T((x)_m)` itself.
    pub image_of_pochhammer: RatPoly,
    /// The hypothesis side: `T((x)_m)` real-rooted with mesh >= 1.
    pub hypothesis_holds: bool,
    pub trials: u64,
    /// Sampled class members whose image left the class.
    pub violations: Vec<PreservationViolation>,
    /// With `hypothesis_holds` these contradict sufficiency; without it,
    /// an empty list is only evidence about necessity, never proof.
    pub preserved_all: bool,
}

/// Sample the class, apply `T`, and compare against the hypothesis
/// `T((x)_m)` real-rooted with mesh >= 1.
pub fn check_conj8(op: &DiffOp, m: usize, trials: u64, seed: u64) -> Conj8Report {
    assert!(m >= 1);
    let image = apply_diffop(op, &pochhammer(m));
    let hypothesis_holds = in_mesh_class(&image).preserved();
    let mut violations = Vec::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let deg = rng.gen_range(1..=m);
        let p = sample::mesh_class_poly(&mut rng, deg);
        let tp = apply_diffop(op, &p);
        if !in_mesh_class(&tp).preserved() {
            violations.push(PreservationViolation {
                trial: t,
                input: p,
                image: tp,
            });
        }
    }
    Conj8Report {
        op: op.clone(),
        m,
        image_of_pochhammer: image,
        hypothesis_holds,
        trials,
        preserved_all: violations.is_empty(),
        violations,
    }
}

/// Report of a Conjecture-9 style run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Conj9Report {
    pub d: usize,
    pub trials: u64,
    pub violations: Vec<BulletViolation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BulletViolation {
    pub trial: u64,
    pub p: RatPoly,
    pub q: RatPoly,
    pub product: RatPoly,
}

/// Sample pairs from the class and check that the bullet product stays in
/// the class.
pub fn check_conj9(trials: u64, d: usize, seed: u64) -> Conj9Report {
    assert!(d >= 1);
    let mut violations = Vec::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let dp = rng.gen_range(1..=d);
        let dq = rng.gen_range(1..=d);
        let p = sample::mesh_class_poly(&mut rng, dp);
        let q = sample::mesh_class_poly(&mut rng, dq);
        let prod = bullet(&p, &q, d).expect("degrees sampled within level");
        if !in_mesh_class(&prod).preserved() {
            violations.push(BulletViolation {
                trial: t,
                p,
                q,
                product: prod,
            });
        }
    }
    Conj9Report {
        d,
        trials,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn apply_examples() {
        // shift by one: a = (0, 1) sends x to x - 1
        let shift = DiffOp::from_ints(&[0, 1]).unwrap();
        assert_eq!(apply_diffop(&shift, &RatPoly::x()), RatPoly::from_ints(&[-1, 1]));
        // backward difference a = (1, -1): p(x) - p(x-1) on x^2 gives 2x - 1
        let nabla = DiffOp::from_ints(&[1, -1]).unwrap();
        assert_eq!(
            apply_diffop(&nabla, &RatPoly::from_ints(&[0, 0, 1])),
            RatPoly::from_ints(&[-1, 2])
        );
        // identity
        let id = DiffOp::from_ints(&[1]).unwrap();
        let p = RatPoly::from_ints(&[3, -1, 2]);
        assert_eq!(apply_diffop(&id, &p), p);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(1), RatPoly::x());
        assert_eq!(pochhammer(3), RatPoly::from_ints(&[0, 2, -3, 1]));
        let mut mesh = polycore::mesh(&pochhammer(5)).unwrap();
        assert_eq!(mesh.exact(), Some(rat_int(1)));
    }

    #[test]
    fn forward_diff_examples() {
        assert_eq!(forward_diff(&RatPoly::x(), 1), RatPoly::one());
        // ∇x^2 = (x+1)^2 - x^2 = 2x + 1
        assert_eq!(
            forward_diff(&RatPoly::from_ints(&[0, 0, 1]), 1),
            RatPoly::from_ints(&[1, 2])
        );
        // ∇(x)_m = m (x)_{m-1}
        for m in 2..=6 {
            let lhs = forward_diff(&pochhammer(m), 1);
            let rhs = pochhammer(m - 1).scale(&rat_int(m as i64));
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn bullet_examples() {
        // x • x at level 1: (∇^0 x)(0)=0, (∇^1 x)(0)=1: result is x
        let b = bullet(&RatPoly::x(), &RatPoly::x(), 1).unwrap();
        assert_eq!(b, RatPoly::x());
        // constant case: 1 • q at level d equals ∇^d q
        let q = RatPoly::from_ints(&[1, 4, -2, 1]);
        let b = bullet(&RatPoly::one(), &q, 3).unwrap();
        assert_eq!(b, forward_diff(&q, 3));
        // (x)_2 • (x)_2 at level 2 = 2 (x)_2 (∇^2 p = 2, lower terms vanish at 0)
        let p2 = pochhammer(2);
        let b = bullet(&p2, &p2, 2).unwrap();
        assert_eq!(b, p2.scale(&rat_int(2)));
        assert!(in_mesh_class(&b).preserved());
        // degree above level errors
        assert!(matches!(
            bullet(&pochhammer(3), &RatPoly::x(), 2),
            Err(MeshOpsError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn bullet_is_bilinear() {
        let p1 = pochhammer(2);
        let p2 = RatPoly::from_ints(&[1, 1]);
        let q = RatPoly::from_ints(&[-1, 0, 1]);
        let c = rat(3, 2);
        let lhs = bullet(&(&p1.scale(&c) + &p2), &q, 3).unwrap();
        let rhs = &bullet(&p1, &q, 3).unwrap().scale(&c) + &bullet(&p2, &q, 3).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = bullet(&q, &(&p1.scale(&c) + &p2), 3).unwrap();
        let rhs = &bullet(&q, &p1, 3).unwrap().scale(&c) + &bullet(&q, &p2, 3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diffop_commutes_with_shifts() {
        let op = DiffOp::new(vec![rat(1, 2), rat_int(-2), rat_int(1)]).unwrap();
        let p = RatPoly::from_ints(&[2, -1, 0, 3]);
        for c in [rat(1, 3), rat_int(-2), rat(7, 5)] {
            let lhs = apply_diffop(&op, &p.shift(&-c.clone()));
            let rhs = apply_diffop(&op, &p).shift(&-c.clone());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn conj8_shift_operator_clean() {
        // shifting preserves root structure: hypothesis true, no violations
        let shift = DiffOp::from_ints(&[0, 1]).unwrap();
        let rep = check_conj8(&shift, 5, 60, 11);
        assert!(rep.hypothesis_holds);
        assert!(rep.preserved_all);
        // identity likewise
        let id = DiffOp::from_ints(&[1]).unwrap();
        let rep = check_conj8(&id, 4, 40, 11);
        assert!(rep.hypothesis_holds);
        assert!(rep.preserved_all);
    }

    #[test]
    fn conj9_small_run_clean() {
        let rep = check_conj9(40, 3, 5);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn zero_operator_rejected() {
        assert!(DiffOp::from_ints(&[0, 0]).is_err());
        assert!(DiffOp::parse("1,-1/2,3").is_ok());
        assert!(DiffOp::parse("1,x").is_err());
    }
}
