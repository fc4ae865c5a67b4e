//! Certified mesh (minimal root gap) enclosures and comparisons.

use num_traits::Zero;

use super::isolate::Isolation;
use super::poly::RatPoly;
use super::sturm::{sturm_count, CountDomain};
use super::{ensure_real_simple, PolyError, RatInterval};
use crate::rat::Rat;

/// Mesh of a real-rooted polynomial with simple roots: the minimal
/// distance between consecutive roots, as a refinable enclosure.
///
/// Polynomials with fewer than two real roots get an infinite mesh.
#[derive(Clone, Debug)]
pub struct Mesh {
    p: RatPoly,
    iso: Isolation,
}

/// Build the mesh enclosure for `p` (checked real-rooted with simple roots).
pub fn mesh(p: &RatPoly) -> Result<Mesh, PolyError> {
    ensure_real_simple(p)?;
    let iso = Isolation::of(p)?;
    Ok(Mesh { p: p.clone(), iso })
}

impl Mesh {
    /// Fewer than two roots: mesh is +infinity by convention.
    pub fn is_infinite(&self) -> bool {
        self.iso.len() < 2
    }

    /// Current enclosure `[lo, hi]` of the mesh; `None` when infinite.
    pub fn enclosure(&self) -> Option<(Rat, Rat)> {
        if self.is_infinite() {
            return None;
        }
        let ivs = &self.iso.intervals;
        let mut lo_best: Option<Rat> = None;
        let mut hi_best: Option<Rat> = None;
        for w in ivs.windows(2) {
            let gap_lo = &w[1].lo - &w[0].hi;
            let gap_hi = &w[1].hi - &w[0].lo;
            if lo_best.as_ref().map_or(true, |b| &gap_lo < b) {
                lo_best = Some(gap_lo);
            }
            if hi_best.as_ref().map_or(true, |b| &gap_hi < b) {
                hi_best = Some(gap_hi);
            }
        }
        Some((lo_best.unwrap(), hi_best.unwrap()))
    }

    /// Exact mesh value, available when all roots are exact rationals
    /// (a bounded rational-root probe runs first).
    pub fn exact(&mut self) -> Option<Rat> {
        if self.is_infinite() {
            return None;
        }
        self.iso.detect_rational_roots(4);
        if !self.iso.intervals.iter().all(RatInterval::is_point) {
            return None;
        }
        self.iso
            .intervals
            .windows(2)
            .map(|w| &w[1].lo - &w[0].lo)
            .min()
    }

    /// Shrink the enclosure until its width is at most `w`.
    pub fn refine_to(&mut self, w: &Rat) {
        for _ in 0..4096 {
            match self.enclosure() {
                None => return,
                Some((lo, hi)) => {
                    if &(hi - lo) <= w {
                        return;
                    }
                }
            }
            for i in 0..self.iso.intervals.len() {
                self.iso.refine_one(i);
            }
        }
    }

    /// Decide `mesh >= c` exactly.
    ///
    /// Strict gap comparisons are decided by interval refinement; a gap
    /// exactly equal to `c` is certified through the common roots of
    /// `p(x)` and `p(x + c)`.
    pub fn decide_ge(&mut self, c: &Rat) -> Result<bool, PolyError> {
        if self.is_infinite() {
            return Ok(true);
        }
        let shifted = self.p.shift(c);
        let equal_pairs = self.p.gcd(&shifted);
        let has_equal_pairs = equal_pairs.degree().unwrap_or(0) > 0;

        for _round in 0..512 {
            let n = self.iso.intervals.len();
            let mut all_ge = true;
            let mut undecided = false;
            for i in 0..n - 1 {
                let (a, b) = (&self.iso.intervals[i], &self.iso.intervals[i + 1]);
                let gap_lo = &b.lo - &a.hi;
                let gap_hi = &b.hi - &a.lo;
                if &gap_hi < c {
                    return Ok(false);
                }
                if &gap_lo >= c {
                    continue;
                }
                if a.is_point() && b.is_point() {
                    // exact gap
                    if &(&b.lo - &a.lo) < c {
                        return Ok(false);
                    }
                    continue;
                }
                if has_equal_pairs && self.gap_is_exactly(i, c, &equal_pairs)? {
                    continue;
                }
                all_ge = false;
                undecided = true;
            }
            if all_ge {
                return Ok(true);
            }
            if undecided {
                for i in 0..n {
                    self.iso.refine_one(i);
                }
            }
        }
        Err(PolyError::RefinementStalled(512))
    }

    /// Certificate that roots `i` and `i+1` are at distance exactly `c`:
    /// the left root is a common root of `p(x)` and `p(x+c)`, and the
    /// shifted window of interval `i` meets only interval `i+1`.
    fn gap_is_exactly(&self, i: usize, c: &Rat, equal_pairs: &RatPoly) -> Result<bool, PolyError> {
        let a = &self.iso.intervals[i];
        let g_here = if a.is_point() {
            equal_pairs.eval(&a.lo).is_zero()
        } else {
            let r = sturm_count(
                equal_pairs,
                &CountDomain::Open(a.lo.clone(), a.hi.clone()),
            )?;
            r.count > 0 || r.at_lo || r.at_hi
        };
        if !g_here {
            return Ok(false);
        }
        let w_lo = &a.lo + c;
        let w_hi = &a.hi + c;
        let mut hits = Vec::new();
        for (j, iv) in self.iso.intervals.iter().enumerate() {
            if iv.hi >= w_lo && iv.lo <= w_hi {
                hits.push(j);
            }
        }
        Ok(hits == vec![i + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn pochhammer(m: usize) -> RatPoly {
        let roots: Vec<Rat> = (0..m as i64).map(rat_int).collect();
        RatPoly::from_roots(&roots)
    }

    #[test]
    fn exact_rational_meshes() {
        // x(x-1)(x-2): mesh 1
        let mut m = mesh(&pochhammer(3)).unwrap();
        assert_eq!(m.exact(), Some(rat_int(1)));
        assert!(m.decide_ge(&rat_int(1)).unwrap());
        assert!(!m.decide_ge(&rat(11, 10)).unwrap());

        // x(x-3): mesh 3
        let p = RatPoly::from_roots(&[rat_int(0), rat_int(3)]);
        let mut m = mesh(&p).unwrap();
        assert_eq!(m.exact(), Some(rat_int(3)));
        assert!(m.decide_ge(&rat_int(3)).unwrap());

        // x(x-1)(x-3/2): mesh 1/2, so mesh >= 1 is false
        let p = RatPoly::from_roots(&[rat_int(0), rat_int(1), rat(3, 2)]);
        let mut m = mesh(&p).unwrap();
        assert_eq!(m.exact(), Some(rat(1, 2)));
        assert!(!m.decide_ge(&rat_int(1)).unwrap());
    }

    #[test]
    fn irrational_mesh_comparisons() {
        // x^2 - 2: roots ±sqrt(2), mesh 2*sqrt(2) ≈ 2.828
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        let mut m = mesh(&p).unwrap();
        assert_eq!(m.exact(), None);
        assert!(m.decide_ge(&rat_int(2)).unwrap());
        assert!(!m.decide_ge(&rat_int(3)).unwrap());
        m.refine_to(&rat(1, 1_000_000));
        let (lo, hi) = m.enclosure().unwrap();
        assert!(&hi - &lo <= rat(1, 1_000_000));
        assert!(lo < rat(2828428, 1000000) && rat(2828426, 1000000) < hi);
    }

    /// Equal-gap certificate: mesh exactly 1 with irrational roots.
    #[test]
    fn equality_certificate_fires() {
        // roots sqrt(2) and sqrt(2)+1: p = (x^2-2)((x-1)^2-2)
        let a = RatPoly::from_ints(&[-2, 0, 1]);
        let b = a.shift(&rat_int(-1));
        let p = &a * &b;
        // p has 4 roots: ±sqrt(2), 1±sqrt(2); consecutive gaps:
        // (-sqrt2, 1-sqrt2): 1, (1-sqrt2, sqrt2): 2sqrt2-1 ≈ 1.828, (sqrt2, 1+sqrt2): 1
        let mut m = mesh(&p).unwrap();
        assert!(m.decide_ge(&rat_int(1)).unwrap());
        assert!(!m.decide_ge(&rat(1001, 1000)).unwrap());
    }

    #[test]
    fn degenerate_and_error_cases() {
        // single root: infinite mesh
        let mut m = mesh(&RatPoly::x()).unwrap();
        assert!(m.is_infinite());
        assert!(m.decide_ge(&rat_int(1_000_000)).unwrap());
        // not real-rooted
        assert!(matches!(
            mesh(&RatPoly::from_ints(&[1, 0, 1])),
            Err(PolyError::NotRealRooted)
        ));
        // multiple root
        assert!(matches!(
            mesh(&RatPoly::from_ints(&[1, -2, 1])),
            Err(PolyError::NotSimple)
        ));
    }

    #[test]
    fn pochhammer_meshes_are_one() {
        for m_deg in 2..=10 {
            let mut m = mesh(&pochhammer(m_deg)).unwrap();
            assert_eq!(m.exact(), Some(rat_int(1)), "degree {m_deg}");
            assert!(m.decide_ge(&rat_int(1)).unwrap());
        }
    }
}
