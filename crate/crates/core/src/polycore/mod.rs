//! Exact-rational univariate polynomial kernel with certified real-root
//! counting and isolation. Everything certified in the crate rests on
//! this module.

mod isolate;
mod mesh;
mod numeric;
mod poly;
mod sturm;

pub use isolate::{isolate_roots, root_bound, Isolation};
pub use mesh::{mesh, Mesh};
pub use numeric::{aberth_roots, complex_roots_numeric, RootApprox};
pub use poly::RatPoly;
pub use sturm::{
    distinct_real_roots, has_real_roots, is_strictly_positive, real_roots_with_multiplicity,
    roots_with_multiplicity_in, sturm_count, CountDomain, CountReport, SturmChain,
};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rat::{fmt_rat, parse_rat, Rat};

/// Errors of the polynomial kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints out of order")]
    EmptyInterval,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("polynomial has a multiple root")]
    NotSimple,
    #[error("degree mismatch: expected deg p = deg q + 1")]
    DegreeMismatch,
    #[error("root refinement did not decide after {0} rounds")]
    RefinementStalled(usize),
    #[error("numeric root finder did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
}

/// Closed rational interval; a point interval encodes an exactly known
/// rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Serialize for RatInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [fmt_rat(&self.lo), fmt_rat(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rat(&lo).map_err(D::Error::custom)?;
        let hi = parse_rat(&hi).map_err(D::Error::custom)?;
        if lo > hi {
            return Err(D::Error::custom("interval endpoints out of order"));
        }
        Ok(RatInterval { lo, hi })
    }
}

/// Certified summary of the real roots of a polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootReport {
    /// Number of distinct real roots.
    pub distinct_real: usize,
    /// Real roots counted with multiplicity.
    pub with_multiplicity: usize,
    /// Pairwise-disjoint isolating intervals, sorted, one per distinct root.
    pub isolating: Vec<RatInterval>,
    /// True iff every root of the polynomial is real and simple.
    pub all_real_simple: bool,
}

/// Exact `order`-th derivative.
pub fn derivative(p: &RatPoly, order: usize) -> RatPoly {
    let mut q = p.clone();
    for _ in 0..order {
        q = q.diff();
    }
    q
}

/// `p / gcd(p, p')`, monic: same distinct roots, all simple.
pub fn squarefree_part(p: &RatPoly) -> Result<RatPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(RatPoly::one());
    }
    let g = p.gcd(&p.diff());
    Ok(p.div_exact(&g).monic())
}

/// Yun squarefree decomposition: returns pairwise-coprime squarefree
/// monic factors `(f_i, i)` with `p = lc * prod f_i^i`.
pub fn yun_squarefree_factors(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = p.monic();
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let dp = p.diff();
    let g = p.gcd(&dp);
    if g.degree() == Some(0) {
        return Ok(vec![(p, 1)]);
    }
    let mut out = Vec::new();
    let mut w = p.div_exact(&g);
    let mut y = dp.div_exact(&g);
    let mut i = 1;
    loop {
        let z = &y - &w.diff();
        if z.is_zero() {
            if w.degree().unwrap_or(0) > 0 {
                out.push((w.monic(), i));
            }
            break;
        }
        let gi = w.gcd(&z);
        if gi.degree().unwrap_or(0) > 0 {
            out.push((gi.clone(), i));
        }
        w = w.div_exact(&gi);
        y = z.div_exact(&gi);
        i += 1;
        if w.degree() == Some(0) {
            break;
        }
    }
    Ok(out)
}

/// Strict interlacing test: `deg p = deg q + 1`, both real-rooted with
/// simple roots, and exactly one root of `q` lies strictly between each
/// pair of consecutive roots of `p`.
pub fn interlace_check(p: &RatPoly, q: &RatPoly) -> Result<bool, PolyError> {
    let dp = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let dq = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    if dp != dq + 1 {
        return Err(PolyError::DegreeMismatch);
    }
    check_real_simple(p)?;
    if dq > 0 {
        check_real_simple(q)?;
    }
    if dq == 0 {
        // single root of p, nothing to interlace
        return Ok(true);
    }
    // A shared root kills strictness immediately (and would make the
    // disjointness refinement below loop forever).
    if p.gcd(q).degree().unwrap_or(0) > 0 {
        return Ok(false);
    }
    let mut ip = Isolation::of(p)?;
    let mut iq = Isolation::of(q)?;
    refine_until_disjoint(&mut ip, &mut iq, 4096)?;
    // Merge-certified ordering; pattern must be p q p q ... q p.
    let mut tags: Vec<(bool, &RatInterval)> = Vec::new();
    tags.extend(ip.intervals.iter().map(|iv| (true, iv)));
    tags.extend(iq.intervals.iter().map(|iv| (false, iv)));
    tags.sort_by(|a, b| a.1.lo.cmp(&b.1.lo).then(a.1.hi.cmp(&b.1.hi)));
    let expected_len = dp + dq;
    if tags.len() != expected_len {
        return Ok(false);
    }
    Ok(tags.iter().enumerate().all(|(k, (is_p, _))| (k % 2 == 0) == *is_p))
}

/// Refine two isolations until every cross pair of intervals is disjoint.
/// Requires the two polynomials to have no common root.
fn refine_until_disjoint(
    a: &mut Isolation,
    b: &mut Isolation,
    max_rounds: usize,
) -> Result<(), PolyError> {
    for _ in 0..max_rounds {
        let mut overlap = false;
        for i in 0..a.intervals.len() {
            for j in 0..b.intervals.len() {
                if intervals_overlap(&a.intervals[i], &b.intervals[j]) {
                    overlap = true;
                    a.refine_one(i);
                    b.refine_one(j);
                }
            }
        }
        if !overlap {
            return Ok(());
        }
    }
    Err(PolyError::RefinementStalled(max_rounds))
}

fn intervals_overlap(x: &RatInterval, y: &RatInterval) -> bool {
    x.certified_lt(y).is_none()
}

fn check_real_simple(p: &RatPoly) -> Result<(), PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(());
    }
    let sf = squarefree_part(p)?;
    let distinct = distinct_real_roots(p)?;
    if sf.degree() != p.degree() {
        return Err(PolyError::NotSimple);
    }
    if distinct != deg {
        return Err(PolyError::NotRealRooted);
    }
    Ok(())
}

/// Public form of the real-rooted-with-simple-roots check.
pub fn ensure_real_simple(p: &RatPoly) -> Result<(), PolyError> {
    check_real_simple(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn derivative_examples() {
        // x^3 -> 3x^2
        assert_eq!(
            derivative(&RatPoly::from_ints(&[0, 0, 0, 1]), 1),
            RatPoly::from_ints(&[0, 0, 3])
        );
        // (x^2 + 1)'' = 2
        assert_eq!(
            derivative(&RatPoly::from_ints(&[1, 0, 1]), 2),
            RatPoly::from_ints(&[2])
        );
        // (x)_3 = x^3 - 3x^2 + 2x; derivative 3x^2 - 6x + 2
        assert_eq!(
            derivative(&RatPoly::from_ints(&[0, 2, -3, 1]), 1),
            RatPoly::from_ints(&[2, -6, 3])
        );
        // order 0 is the identity
        let p = RatPoly::from_ints(&[5, 1]);
        assert_eq!(derivative(&p, 0), p);
    }

    #[test]
    fn squarefree_examples() {
        // x^2 -> x
        assert_eq!(
            squarefree_part(&RatPoly::from_ints(&[0, 0, 1])).unwrap(),
            RatPoly::from_ints(&[0, 1])
        );
        // (x-1)^2 (x+2) -> (x-1)(x+2) up to positive scalar (monic here)
        let p = RatPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(
            squarefree_part(&p).unwrap(),
            RatPoly::from_ints(&[-2, 1, 1])
        );
        // already squarefree
        let q = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), q);
        assert!(squarefree_part(&RatPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_gcd_with_derivative_is_constant() {
        let p = RatPoly::from_roots(&[rat_int(1), rat_int(1), rat_int(1), rat(-1, 2)]);
        let sf = squarefree_part(&p).unwrap();
        assert_eq!(sf.gcd(&sf.diff()).degree(), Some(0));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)
        let p = RatPoly::from_ints(&[2, -3, 0, 1]);
        let fs = yun_squarefree_factors(&p).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (RatPoly::from_ints(&[2, 1]), 1));
        assert_eq!(fs[1], (RatPoly::from_ints(&[-1, 1]), 2));
    }

    #[test]
    fn interlacing_examples() {
        let p = RatPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        assert!(interlace_check(&p, &RatPoly::x()).unwrap());
        assert!(!interlace_check(&p, &RatPoly::from_ints(&[-5, 1])).unwrap());
        // (x)_3 vs roots {1/2, 3/2}: x^2 - 2x + 3/4
        let a = RatPoly::from_ints(&[0, 2, -3, 1]);
        let b = RatPoly::from_coeffs(vec![rat(3, 4), rat_int(-2), rat_int(1)]);
        assert!(interlace_check(&a, &b).unwrap());
        // shared root is not strict interlacing
        let c = RatPoly::from_roots(&[rat_int(0), rat_int(2)]);
        let d = RatPoly::from_roots(&[rat_int(0)]);
        assert!(!interlace_check(&c, &d).unwrap());
        // degree mismatch errors
        assert!(matches!(
            interlace_check(&p, &p),
            Err(PolyError::DegreeMismatch)
        ));
    }

    #[test]
    fn rolle_interlacing_p_and_its_derivative() {
        let p = RatPoly::from_roots(&[rat_int(-3), rat(-1, 2), rat_int(1), rat(7, 3)]);
        assert!(interlace_check(&p, &p.diff()).unwrap());
    }
}
