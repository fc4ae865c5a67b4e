//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{fmt_rat, parse_rat, rat_to_f64, Rat};

/// Dense polynomial over Q, coefficients ascending by degree.
///
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading (last) coefficient is nonzero. All arithmetic restores this
/// invariant.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rat::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    /// Test helper: ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::from_coeffs(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    /// Monic polynomial with the given rational roots (with multiplicity).
    pub fn from_roots(roots: &[Rat]) -> Self {
        let mut p = RatPoly::one();
        for r in roots {
            p = &p * &RatPoly::from_coeffs(vec![-r.clone(), Rat::one()]);
        }
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc
    }

    /// First derivative.
    pub fn diff(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(k.into()))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Leading coefficient normalized to 1 (zero polynomial unchanged).
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// `p(x + c)`, exact Taylor shift.
    pub fn shift(&self, c: &Rat) -> RatPoly {
        // Horner in the shifted variable: acc <- acc*(x+c) + a_k.
        let mut acc = RatPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul_by_linear(c) + &RatPoly::constant(a.clone());
        }
        acc
    }

    /// `p(c x)`, exact dilation.
    pub fn dilate(&self, c: &Rat) -> RatPoly {
        let mut pow = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &pow;
                pow = &pow * c;
                v
            })
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Multiply by `(x + c)` in place-ish; helper for `shift`.
    fn mul_by_linear(&self, c: &Rat) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k + 1] = &out[k + 1] + a;
            out[k] = &out[k] + &(a * c);
        }
        RatPoly::from_coeffs(out)
    }

    /// Coefficient reversal `x^d p(1/x)` (degree of the reversal may drop
    /// when the constant term vanishes).
    pub fn reverse(&self) -> RatPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        RatPoly::from_coeffs(coeffs)
    }

    /// Substitute `-x`.
    pub fn negate_argument(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dlc = d.leading().expect("division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd || (rem.len() == dd && dd == 0) {
            if dd == 0 {
                // dividing by a constant
                let q: Vec<Rat> = rem.iter().map(|c| c / dlc).collect();
                return (RatPoly::from_coeffs(q), RatPoly::zero());
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / dlc;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &factor;
                rem[shift + i] = &rem[shift + i] - &t;
            }
            // the top term cancels exactly
            rem.pop();
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            quot[shift] = factor;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over Q (returns 1 for coprime inputs, 0 only if both zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            // normalize to keep coefficient growth in check
            b = r.monic();
        }
        a.monic()
    }

    /// Canonical list form: coefficients as `num/den` strings, ascending.
    pub fn to_text_list(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rat).collect()
    }

    /// Parse the canonical list form.
    pub fn from_text_list(items: &[String]) -> Result<RatPoly, String> {
        let coeffs = items
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }

    /// Parse the text form `c0 + c1*x + c2*x^2 + ...` (terms in any order,
    /// rationals decimal-free).
    pub fn from_text(s: &str) -> Result<RatPoly, String> {
        let normalized = s.replace('-', "+-").replace(' ', "");
        let mut coeffs: Vec<Rat> = Vec::new();
        for term in normalized.split('+') {
            if term.is_empty() {
                continue;
            }
            let (coeff_str, power) = match term.split_once('x') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let pow = match rest.strip_prefix('^') {
                        None if rest.is_empty() => 1,
                        Some(p) => p.parse().map_err(|_| format!("bad power `{rest}`"))?,
                        None => return Err(format!("bad term `{term}`")),
                    };
                    (c.trim_end_matches('*'), pow)
                }
            };
            let coeff = match coeff_str {
                "" => Rat::one(),
                "-" => -Rat::one(),
                other => parse_rat(other)?,
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rat::zero());
            }
            coeffs[power] = &coeffs[power] + &coeff;
        }
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for RatPoly {
    /// Text form `c0 + c1*x + ...`, zero terms skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if first || !c.is_negative() {
                c.clone()
            } else {
                -c.clone()
            };
            match k {
                0 => write!(f, "{}", fmt_rat(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", fmt_rat(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_text_list().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        RatPoly::from_text_list(&items).map_err(D::Error::custom)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        RatPoly::from_coeffs(out)
    }
}

impl Add<&RatPoly> for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        &self + rhs
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RatPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn arithmetic_restores_invariant() {
        let p = RatPoly::from_ints(&[1, 2, 1]);
        let q = RatPoly::from_ints(&[-1, -2, -1]);
        assert!((&p + &q).is_zero());
        assert_eq!((&p + &q).degree(), None);
        let r = &p * &q;
        assert_eq!(r.degree(), Some(4));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = RatPoly::from_ints(&[2, -3, 0, 1]);
        let d = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::from_ints(&[-2, 1, 1]));
        let g = p.gcd(&p.diff());
        assert_eq!(g, RatPoly::from_ints(&[-1, 1])); // x - 1, monic
    }

    #[test]
    fn shift_and_dilate() {
        let p = RatPoly::from_ints(&[0, 0, 1]); // x^2
        let s = p.shift(&rat_int(-1)); // (x-1)^2
        assert_eq!(s, RatPoly::from_ints(&[1, -2, 1]));
        let d = p.dilate(&rat(1, 2)); // (x/2)^2
        assert_eq!(d, RatPoly::from_coeffs(vec![Rat::zero(), Rat::zero(), rat(1, 4)]));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = RatPoly::from_coeffs(vec![rat(1, 2), rat_int(0), rat_int(-3), rat_int(1)]);
        let shown = p.to_string();
        assert_eq!(shown, "1/2 - 3*x^2 + x^3");
        assert_eq!(RatPoly::from_text(&shown).unwrap(), p);
        let list = p.to_text_list();
        assert_eq!(list, vec!["1/2", "0", "-3", "1"]);
        assert_eq!(RatPoly::from_text_list(&list).unwrap(), p);
    }

    #[test]
    fn from_roots_expands() {
        // x(x-1)(x-2) = (x)_3 = x^3 - 3x^2 + 2x
        let p = RatPoly::from_roots(&[rat_int(0), rat_int(1), rat_int(2)]);
        assert_eq!(p, RatPoly::from_ints(&[0, 2, -3, 1]));
    }
}
