//! Certified real-root isolation by Sturm bisection.

use num_traits::{One, Signed, Zero};

use super::poly::RatPoly;
use super::sturm::SturmChain;
use super::{PolyError, RatInterval, RootReport};
use crate::rat::Rat;

/// Isolating intervals for the distinct real roots of a polynomial,
/// refinable to any rational width.
///
/// Exact rational roots are stored as point intervals; every other
/// interval carries a sign change of the stored squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Isolation {
    /// Squarefree witness polynomial (rational roots deflated out); its
    /// sign changes certify the non-point intervals.
    sf: RatPoly,
    /// Sorted, pairwise-disjoint intervals, one distinct real root each.
    pub intervals: Vec<RatInterval>,
}

/// Cauchy root bound: every complex root has modulus `< 1 + max|a_i/a_n|`.
pub fn root_bound(p: &RatPoly) -> Rat {
    let lc = p.leading().expect("root bound of zero polynomial").abs();
    let mut m = Rat::zero();
    let n = p.coeffs().len() - 1;
    for c in &p.coeffs()[..n] {
        let v = c.abs() / &lc;
        if v > m {
            m = v;
        }
    }
    m + Rat::one()
}

fn half(a: &Rat, b: &Rat) -> Rat {
    (a + b) / Rat::from_integer(2.into())
}

impl Isolation {
    /// Isolate all distinct real roots of `p` (any nonzero polynomial; the
    /// squarefree part is taken internally).
    pub fn of(p: &RatPoly) -> Result<Isolation, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut sf = super::squarefree_part(p)?;
        let mut points: Vec<Rat> = Vec::new();
        let mut open: Vec<RatInterval> = Vec::new();

        if sf.degree().unwrap_or(0) >= 1 {
            let bound = root_bound(&sf);
            // Bisection with exact midpoints. A midpoint that is itself a
            // root is recorded, deflated out, and the scan restarts on the
            // reduced polynomial (at most deg(p) restarts).
            'scan: loop {
                if sf.degree().unwrap_or(0) == 0 {
                    break;
                }
                let chain = SturmChain::new(&sf);
                let mut stack = vec![(-bound.clone(), bound.clone())];
                let mut found: Vec<RatInterval> = Vec::new();
                while let Some((a, b)) = stack.pop() {
                    match chain.count_open(&a, &b) {
                        0 => {}
                        1 => {
                            // Shrink until no previously found rational root
                            // sits inside; keeps intervals truly isolating.
                            let (mut a, mut b) = (a, b);
                            loop {
                                if !points.iter().any(|m| &a < m && m < &b) {
                                    found.push(RatInterval::new(a, b));
                                    break;
                                }
                                let mid = half(&a, &b);
                                if sf.eval(&mid).is_zero() {
                                    points.push(mid.clone());
                                    sf = sf
                                        .div_exact(&RatPoly::from_roots(std::slice::from_ref(&mid)));
                                    continue 'scan;
                                }
                                if chain.count_open(&a, &mid) == 1 {
                                    b = mid;
                                } else {
                                    a = mid;
                                }
                            }
                        }
                        _ => {
                            let mid = half(&a, &b);
                            if sf.eval(&mid).is_zero() {
                                points.push(mid.clone());
                                sf = sf
                                    .div_exact(&RatPoly::from_roots(std::slice::from_ref(&mid)));
                                continue 'scan;
                            }
                            stack.push((a, mid.clone()));
                            stack.push((mid, b));
                        }
                    }
                }
                open = found;
                break;
            }
        }

        let mut intervals: Vec<RatInterval> = points.into_iter().map(RatInterval::point).collect();
        intervals.extend(open);
        intervals.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
        Ok(Isolation { sf, intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// The deflated squarefree witness (exact rational roots removed).
    pub fn squarefree(&self) -> &RatPoly {
        &self.sf
    }

    /// One bisection step on interval `i`; point intervals are fixed points.
    pub fn refine_one(&mut self, i: usize) {
        let iv = &self.intervals[i];
        if iv.is_point() {
            return;
        }
        let mid = iv.midpoint();
        let fm = self.sf.eval(&mid);
        if fm.is_zero() {
            self.intervals[i] = RatInterval::point(mid);
            return;
        }
        let flo = self.sf.eval(&iv.lo);
        debug_assert!(!flo.is_zero(), "isolating endpoint became a root");
        let keep_left = flo.is_positive() != fm.is_positive();
        let iv = &mut self.intervals[i];
        if keep_left {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }

    /// Refine every interval until its width is at most `w`.
    pub fn refine_to_width(&mut self, w: &Rat) {
        for i in 0..self.intervals.len() {
            while !self.intervals[i].is_point() && self.intervals[i].width() > *w {
                self.refine_one(i);
            }
        }
    }

    /// Try to upgrade non-point intervals to exact rational roots.
    ///
    /// Each round shrinks an interval by 16 bits and tests the simplest
    /// rational inside it; once the width drops below `1/q^2` a rational
    /// root `p/q` is necessarily that simplest rational. Irrational roots
    /// just stay intervals.
    pub fn detect_rational_roots(&mut self, rounds: usize) {
        for i in 0..self.intervals.len() {
            for _ in 0..rounds {
                if self.intervals[i].is_point() {
                    break;
                }
                for _ in 0..16 {
                    self.refine_one(i);
                }
                if self.intervals[i].is_point() {
                    break;
                }
                let cand = simplest_between(&self.intervals[i].lo, &self.intervals[i].hi);
                if self.sf.eval(&cand).is_zero() {
                    self.intervals[i] = RatInterval::point(cand);
                    break;
                }
            }
        }
    }
}

/// The rational with the smallest denominator in `[lo, hi]`, `lo < hi`.
fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    use num_traits::Signed;
    debug_assert!(lo < hi);
    let zero = Rat::zero();
    if lo <= &zero && &zero <= hi {
        return zero;
    }
    if lo.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if lo == &fl {
        return fl;
    }
    let next = &fl + Rat::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    &fl + inner.recip()
}

/// Isolate roots and summarize counts; the certified entry point.
pub fn isolate_roots(p: &RatPoly) -> Result<RootReport, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let iso = Isolation::of(p)?;
    let with_multiplicity = super::sturm::real_roots_with_multiplicity(p)?;
    let deg = p.degree().unwrap_or(0);
    let squarefree = super::squarefree_part(p)?.degree() == p.degree();
    Ok(RootReport {
        distinct_real: iso.len(),
        with_multiplicity,
        all_real_simple: squarefree && with_multiplicity == deg,
        isolating: iso.intervals,
    })
}
