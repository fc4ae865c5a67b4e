//! Tropical and log-concavity upper bounds on the real zeros of
//! positive-coefficient polynomials, with certified zero counts.
//!
//! Hull comparisons run in exact rational arithmetic on the exponentiated
//! form `(a_k * C(n,k))^q`, so corner counts are exact for every rational
//! input (floats convert to rationals exactly).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{self, CountDomain, RatPoly};
use crate::rat::{binomial, fmt_rat, parse_rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("coefficient {0} is not strictly positive")]
    NonPositiveCoefficient(String),
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
}

/// Polynomial with strictly positive coefficients `a_0..a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosCoeffPoly {
    coeffs: Vec<Rat>,
}

impl PosCoeffPoly {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, TropicalError> {
        if coeffs.len() < 2 {
            return Err(TropicalError::DegreeTooSmall);
        }
        for c in &coeffs {
            if !c.is_positive() {
                return Err(TropicalError::NonPositiveCoefficient(fmt_rat(c)));
            }
        }
        Ok(PosCoeffPoly { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, TropicalError> {
        Self::new(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.clone())
    }
}

impl Serialize for PosCoeffPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs
            .iter()
            .map(fmt_rat)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PosCoeffPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let items = Vec::<String>::deserialize(d)?;
        let coeffs = items
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        PosCoeffPoly::new(coeffs).map_err(D::Error::custom)
    }
}

/// Weight of line `k`: `m_k = a_k * C(n, k)`; the tropical polynomial is
/// `max_k (Log m_k + k x)`.
fn weights(f: &PosCoeffPoly) -> Vec<Rat> {
    let n = f.degree() as u64;
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| a * Rat::from_integer(binomial(n, k as u64)))
        .collect()
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc = &acc * r;
    }
    acc
}

/// Is point `j` strictly above the chord from `i` to `k` in log scale?
/// Exact: compare `m_j^(k-i)` against `m_i^(k-j) * m_k^(j-i)`.
fn strictly_above(m: &[Rat], i: usize, j: usize, k: usize) -> bool {
    let lhs = pow_rat(&m[j], (k - i) as u32);
    let rhs = pow_rat(&m[i], (k - j) as u32) * pow_rat(&m[k], (j - i) as u32);
    lhs > rhs
}

/// Number of corners of the weighted tropical polynomial: vertices of the
/// strict upper hull of `(k, Log m_k)`, minus one. A point exactly on a
/// chord touches the envelope only at a corner, so it does not count.
pub fn trop_corner_count(f: &PosCoeffPoly) -> usize {
    let m = weights(f);
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..m.len() {
        while hull.len() >= 2 {
            let j = hull[hull.len() - 1];
            let i = hull[hull.len() - 2];
            if strictly_above(&m, i, j, k) {
                break;
            }
            hull.pop();
        }
        hull.push(k);
    }
    hull.len() - 1
}

fn parity_changes(indices: &[usize]) -> usize {
    indices
        .windows(2)
        .filter(|w| w[0] % 2 != w[1] % 2)
        .count()
}

/// Differences `c~_k = (k+1) a_k^2 - k a_{k-1} a_{k+1}` with the
/// convention `a_{-1} = a_{n+1} = 0`.
pub fn vtilde_differences(f: &PosCoeffPoly) -> Vec<Rat> {
    let a = f.coeffs();
    let n = f.degree();
    (0..=n)
        .map(|k| {
            let prev = if k == 0 { Rat::zero() } else { a[k - 1].clone() };
            let next = if k == n { Rat::zero() } else { a[k + 1].clone() };
            Rat::from_integer(BigInt::from(k as u64 + 1)) * &a[k] * &a[k]
                - Rat::from_integer(BigInt::from(k as u64)) * prev * next
        })
        .collect()
}

/// `v(f)` counted over the indices with `c~_k > 0`: the number of adjacent
/// parity changes. Indices 0 and n always survive.
pub fn vtilde(f: &PosCoeffPoly) -> usize {
    let c = vtilde_differences(f);
    let indices: Vec<usize> = (0..c.len()).filter(|&k| c[k].is_positive()).collect();
    debug_assert_eq!(indices.first(), Some(&0));
    debug_assert_eq!(indices.last(), Some(&f.degree()));
    parity_changes(&indices)
}

/// Differences `c_k = a_k^2 - a_{k-1} a_{k+1}` with `a_{-1} = a_{n+1} = 0`.
pub fn vc_differences(f: &PosCoeffPoly) -> Vec<Rat> {
    let a = f.coeffs();
    let n = f.degree();
    (0..=n)
        .map(|k| {
            let prev = if k == 0 { Rat::zero() } else { a[k - 1].clone() };
            let next = if k == n { Rat::zero() } else { a[k + 1].clone() };
            &a[k] * &a[k] - prev * next
        })
        .collect()
}

/// `v(f)` counted over the indices with `c_k >= 0`.
pub fn vc(f: &PosCoeffPoly) -> usize {
    let c = vc_differences(f);
    let indices: Vec<usize> = (0..c.len()).filter(|&k| !c[k].is_negative()).collect();
    debug_assert_eq!(indices.first(), Some(&0));
    debug_assert_eq!(indices.last(), Some(&f.degree()));
    parity_changes(&indices)
}

/// One certified bound-check record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub real_zeros_with_mult: usize,
    pub corner_bound: usize,
    pub vtilde: usize,
    pub vc: usize,
    /// Bounds that failed: subset of {"corners", "vtilde", "vc"}.
    pub violations: Vec<String>,
    /// All real roots must be negative for positive coefficients.
    pub all_real_roots_negative: bool,
}

impl BoundsRecord {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.all_real_roots_negative
    }
}

/// Certified real-zero count (with multiplicity) against all three bounds.
pub fn check_bounds(f: &PosCoeffPoly) -> BoundsRecord {
    let p = f.to_ratpoly();
    let zeros = polycore::real_roots_with_multiplicity(&p).expect("positive coefficients");
    let corner_bound = trop_corner_count(f);
    let vt = vtilde(f);
    let v = vc(f);
    let mut violations = Vec::new();
    if zeros > corner_bound {
        violations.push("corners".to_string());
    }
    if zeros > vt {
        violations.push("vtilde".to_string());
    }
    if zeros > v {
        violations.push("vc".to_string());
    }
    let bound = polycore::root_bound(&p);
    let nonneg = polycore::roots_with_multiplicity_in(&p, &CountDomain::Open(Rat::zero(), bound))
        .expect("nonzero");
    BoundsRecord {
        real_zeros_with_mult: zeros,
        corner_bound,
        vtilde: vt,
        vc: v,
        violations,
        all_real_roots_negative: nonneg == 0 && !p.coeff(0).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn f(coeffs: &[i64]) -> PosCoeffPoly {
        PosCoeffPoly::from_ints(coeffs).unwrap()
    }

    #[test]
    fn corner_counts() {
        // (1+z)^2: hull points (0,0), (1, log 4), (2, 0): two corners
        assert_eq!(trop_corner_count(&f(&[1, 2, 1])), 2);
        // degree 1: one corner
        assert_eq!(trop_corner_count(&f(&[1, 1])), 1);
        // huge middle coefficient dominates: two corners
        assert_eq!(trop_corner_count(&f(&[1, 1_000_000, 1])), 2);
        // middle strictly below the chord: one corner
        let g = PosCoeffPoly::new(vec![rat(1, 1), rat(1, 2), rat(4, 1)]).unwrap();
        // m = (1, 1, 4): 1^2 < 1*4
        assert_eq!(trop_corner_count(&g), 1);
    }

    #[test]
    fn collinear_points_are_not_corners() {
        // a = (1, 3/2, 9) gives m = (1, 3, 9): exactly collinear in log scale
        let g = PosCoeffPoly::new(vec![rat(1, 1), rat(3, 2), rat(9, 1)]).unwrap();
        assert_eq!(trop_corner_count(&g), 1);
    }

    #[test]
    fn vtilde_examples() {
        // (1,2,1): c~ = (1, 7, 3), indices {0,1,2}, parities 0,1,0: v = 2
        assert_eq!(
            vtilde_differences(&f(&[1, 2, 1])),
            vec![rat(1, 1), rat(7, 1), rat(3, 1)]
        );
        assert_eq!(vtilde(&f(&[1, 2, 1])), 2);
        // (1, 1/10, 1): c~_1 = 2/100 - 1 < 0, indices {0, 2}: v = 0
        let g = PosCoeffPoly::new(vec![rat(1, 1), rat(1, 10), rat(1, 1)]).unwrap();
        assert_eq!(vtilde(&g), 0);
        assert_eq!(vtilde(&f(&[1, 1])), 1);
    }

    #[test]
    fn vc_examples() {
        // (1,1,1): c = (1, 0, 1), all indices survive (>= 0): v = 2
        assert_eq!(vc(&f(&[1, 1, 1])), 2);
        // (1,2,1): c = (1, 3, 1): v = 2
        assert_eq!(
            vc_differences(&f(&[1, 2, 1])),
            vec![rat(1, 1), rat(3, 1), rat(1, 1)]
        );
        assert_eq!(vc(&f(&[1, 2, 1])), 2);
        assert_eq!(vc(&f(&[1, 1])), 1);
    }

    #[test]
    fn bound_checks() {
        // (1+z)^2: 2 zeros, all bounds >= 2, tight
        let r = check_bounds(&f(&[1, 2, 1]));
        assert_eq!(r.real_zeros_with_mult, 2);
        assert!(r.clean());
        assert_eq!(r.corner_bound, 2);
        // (1+z)^3: triple zero at -1
        let r = check_bounds(&f(&[1, 3, 3, 1]));
        assert_eq!(r.real_zeros_with_mult, 3);
        assert!(r.clean());
        // no real zeros, vtilde bound 0: tight at zero
        let g = PosCoeffPoly::new(vec![rat(1, 1), rat(1, 10), rat(1, 1)]).unwrap();
        let r = check_bounds(&g);
        assert_eq!(r.real_zeros_with_mult, 0);
        assert_eq!(r.vtilde, 0);
        assert!(r.clean());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(PosCoeffPoly::from_ints(&[1, -1, 1]).is_err());
        assert!(PosCoeffPoly::from_ints(&[1, 0, 1]).is_err());
        assert!(PosCoeffPoly::from_ints(&[5]).is_err());
    }
}
