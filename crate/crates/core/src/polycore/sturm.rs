//! Sturm chains and certified distinct-root counting.

use num_traits::{Signed, Zero};

use super::poly::RatPoly;
use super::{PolyError, RatInterval};
use crate::rat::Rat;

/// Sturm chain of a polynomial: `p, p', -rem(...), ...`, each element
/// normalized by a positive scalar.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn count_flips(signs: impl Iterator<Item = i8>) -> usize {
    let mut flips = 0;
    let mut prev: i8 = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            flips += 1;
        }
        prev = s;
    }
    flips
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> SturmChain {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![p.clone()];
        let dp = p.diff();
        if dp.is_zero() {
            return SturmChain { chain };
        }
        chain.push(dp);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // Negate and divide by |leading| (a positive scalar, so the
            // sign sequence is unchanged).
            let neg = -&r;
            let lc_abs = neg.leading().expect("nonzero remainder").abs();
            chain.push(neg.scale(&lc_abs.recip()));
            if chain.last().unwrap().degree() == Some(0) {
                break;
            }
        }
        SturmChain { chain }
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        count_flips(self.chain.iter().map(|p| sign_of(&p.eval(x))))
    }

    pub fn variations_pos_inf(&self) -> usize {
        count_flips(
            self.chain
                .iter()
                .map(|p| p.leading().map_or(0, sign_of)),
        )
    }

    pub fn variations_neg_inf(&self) -> usize {
        count_flips(self.chain.iter().map(|p| {
            let d = p.degree().unwrap_or(0);
            let s = p.leading().map_or(0, sign_of);
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    ///
    /// Requires that neither endpoint is a root of the chain's polynomial.
    pub fn count_open(&self, lo: &Rat, hi: &Rat) -> usize {
        debug_assert!(lo <= hi);
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Distinct real roots on the whole line.
    pub fn count_line(&self) -> usize {
        self.variations_neg_inf() - self.variations_pos_inf()
    }
}

/// Counting domain for [`sturm_count`].
#[derive(Clone, Debug)]
pub enum CountDomain {
    WholeLine,
    /// Open interval `(lo, hi)`.
    Open(Rat, Rat),
}

/// Result of a certified distinct-root count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// Distinct real roots strictly inside the domain.
    pub count: usize,
    /// Whether `lo` (resp. `hi`) is itself a root; always false for the
    /// whole line. Endpoint roots are never included in `count`.
    pub at_lo: bool,
    pub at_hi: bool,
}

/// Count distinct real roots of `p` in `domain`.
///
/// Endpoint roots are detected exactly and reported out-of-band, matching
/// open-interval Sturm semantics.
pub fn sturm_count(p: &RatPoly, domain: &CountDomain) -> Result<CountReport, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let sf = super::squarefree_part(p)?;
    match domain {
        CountDomain::WholeLine => {
            let chain = SturmChain::new(&sf);
            Ok(CountReport {
                count: chain.count_line(),
                at_lo: false,
                at_hi: false,
            })
        }
        CountDomain::Open(lo, hi) => {
            if lo > hi {
                return Err(PolyError::EmptyInterval);
            }
            let at_lo = p.eval(lo).is_zero();
            let at_hi = !(lo == hi) && p.eval(hi).is_zero();
            if lo == hi {
                return Ok(CountReport {
                    count: 0,
                    at_lo,
                    at_hi: at_lo,
                });
            }
            // Deflate endpoint roots so the open-interval count is clean.
            let mut q = sf;
            if at_lo {
                q = q.div_exact(&RatPoly::from_roots(std::slice::from_ref(lo)));
            }
            if at_hi {
                q = q.div_exact(&RatPoly::from_roots(std::slice::from_ref(hi)));
            }
            if q.degree().unwrap_or(0) == 0 {
                return Ok(CountReport {
                    count: 0,
                    at_lo,
                    at_hi,
                });
            }
            let chain = SturmChain::new(&q);
            Ok(CountReport {
                count: chain.count_open(lo, hi),
                at_lo,
                at_hi,
            })
        }
    }
}

/// Distinct real roots of `p` over all of R.
pub fn distinct_real_roots(p: &RatPoly) -> Result<usize, PolyError> {
    Ok(sturm_count(p, &CountDomain::WholeLine)?.count)
}

/// Real roots of `p` counted with multiplicity, over all of R.
pub fn real_roots_with_multiplicity(p: &RatPoly) -> Result<usize, PolyError> {
    let factors = super::yun_squarefree_factors(p)?;
    let mut total = 0;
    for (f, mult) in factors {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        total += mult * SturmChain::new(&f).count_line();
    }
    Ok(total)
}

/// Real roots of `p` in the open domain, counted with multiplicity.
pub fn roots_with_multiplicity_in(p: &RatPoly, domain: &CountDomain) -> Result<usize, PolyError> {
    let factors = super::yun_squarefree_factors(p)?;
    let mut total = 0;
    for (f, mult) in factors {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        total += mult * sturm_count(&f, domain)?.count;
    }
    Ok(total)
}

/// Exact positivity test: `p(x) > 0` for every real `x`.
pub fn is_strictly_positive(p: &RatPoly) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if distinct_real_roots(p)? > 0 {
        return Ok(false);
    }
    // No real roots: the sign anywhere is the sign everywhere.
    Ok(p.eval(&Rat::zero()).is_positive())
}

/// Does `p` have at least one real root?
pub fn has_real_roots(p: &RatPoly) -> Result<bool, PolyError> {
    Ok(distinct_real_roots(p)? > 0)
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if self.is_point() {
            &self.lo == x
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    /// Strictly-less comparison that is certified whenever the intervals
    /// do not overlap in their interiors.
    pub fn certified_lt(&self, other: &RatInterval) -> Option<bool> {
        if self.is_point() && other.is_point() {
            return Some(self.lo < other.lo);
        }
        // Roots of non-point isolating intervals lie strictly inside.
        if self.hi <= other.lo {
            return Some(true);
        }
        if other.hi <= self.lo {
            return Some(false);
        }
        if self.is_point() && self.lo <= other.lo {
            return Some(true);
        }
        if self.is_point() && self.lo >= other.hi {
            return Some(false);
        }
        if other.is_point() && other.lo >= self.hi {
            return Some(true);
        }
        if other.is_point() && other.lo <= self.lo {
            return Some(false);
        }
        None
    }
}
