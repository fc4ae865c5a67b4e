//! Sign patterns, Descartes pairs, admissible root-signature pairs and a
//! seeded realizability search over coefficient chambers.
//!
//! Index convention is ascending throughout: entry `k` of a pattern is the
//! sign of the coefficient of `x^k`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{self, RatPoly};
use crate::rat::{pow10, rat_from_f64, Rat};
use crate::rng::trial_rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescartesError {
    #[error("sign pattern needs at least two entries")]
    PatternTooShort,
    #[error("polynomial has a vanishing coefficient; sign pattern undefined")]
    ZeroCoefficient,
    #[error("target pair {0:?} is not admissible for the pattern")]
    NotAdmissible(PairPN),
    #[error("invalid sign character `{0}`")]
    BadSign(char),
}

/// A (pos, neg) pair of root counts (with multiplicity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairPN {
    pub pos: usize,
    pub neg: usize,
}

impl PairPN {
    pub fn new(pos: usize, neg: usize) -> Self {
        PairPN { pos, neg }
    }

    pub fn swap(self) -> Self {
        PairPN {
            pos: self.neg,
            neg: self.pos,
        }
    }
}

/// A ±-sequence of coefficient signs, ascending by degree, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self, DescartesError> {
        if signs.len() < 2 {
            return Err(DescartesError::PatternTooShort);
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        Ok(SignPattern { signs })
    }

    /// Parse `"++-++"` or `"+,+,-,+,+"`.
    pub fn parse(s: &str) -> Result<Self, DescartesError> {
        let mut signs = Vec::new();
        for ch in s.chars() {
            match ch {
                '+' => signs.push(1),
                '-' => signs.push(-1),
                ',' | ' ' => {}
                other => return Err(DescartesError::BadSign(other)),
            }
        }
        SignPattern::new(signs)
    }

    /// Signs of the coefficients of `p`; error if any coefficient is zero.
    pub fn of(p: &RatPoly) -> Result<Self, DescartesError> {
        if p.is_zero() {
            return Err(DescartesError::ZeroCoefficient);
        }
        let mut signs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if c.is_zero() {
                return Err(DescartesError::ZeroCoefficient);
            }
            signs.push(if c.is_positive() { 1 } else { -1 });
        }
        SignPattern::new(signs)
    }

    pub fn degree(&self) -> usize {
        self.signs.len() - 1
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Pattern of `p(-x)`: odd-degree signs flip.
    pub fn negate_argument(&self) -> SignPattern {
        let signs = self
            .signs
            .iter()
            .enumerate()
            .map(|(k, &s)| if k % 2 == 1 { -s } else { s })
            .collect();
        SignPattern { signs }
    }

    /// Pattern of the coefficient reversal `x^d p(1/x)`.
    pub fn reversal(&self) -> SignPattern {
        let mut signs = self.signs.clone();
        signs.reverse();
        SignPattern { signs }
    }

    /// Normalize to a positive leading sign (multiply by -1 if needed);
    /// the transform behind it fixes both root counts.
    pub fn monic_normalized(&self) -> SignPattern {
        if *self.signs.last().unwrap() == 1 {
            self.clone()
        } else {
            SignPattern {
                signs: self.signs.iter().map(|s| -s).collect(),
            }
        }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", if *s == 1 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl Serialize for SignPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SignPattern::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Descartes pair: (sign changes, sign preservations); they sum to the
/// degree and bound positive resp. negative root counts.
pub fn descartes_pair(sp: &SignPattern) -> PairPN {
    let mut changes = 0;
    let mut keeps = 0;
    for w in sp.signs().windows(2) {
        if w[0] == w[1] {
            keeps += 1;
        } else {
            changes += 1;
        }
    }
    debug_assert_eq!(changes + keeps, sp.degree());
    PairPN::new(changes, keeps)
}

/// All pairs `(pos, neg)` with `pos <= p_sigma`, `pos ≡ p_sigma (mod 2)`,
/// `neg <= n_sigma`, `neg ≡ n_sigma (mod 2)`.
pub fn admissible_pairs(sp: &SignPattern) -> BTreeSet<PairPN> {
    let d = descartes_pair(sp);
    let mut out = BTreeSet::new();
    for pos in (d.pos % 2..=d.pos).step_by(2) {
        for neg in (d.neg % 2..=d.neg).step_by(2) {
            out.insert(PairPN::new(pos, neg));
        }
    }
    out
}

/// Certified (pos, neg) root counts of `p`, with multiplicity, plus the
/// Descartes-rule sanity assertion against the coefficient pattern.
pub fn root_signature(p: &RatPoly) -> Result<PairPN, DescartesError> {
    let sp = SignPattern::of(p)?;
    // The pattern has no zero entries, so 0 is not a root and the line
    // splits cleanly at the origin: count variations at -inf, 0, +inf
    // once per squarefree factor.
    let zero = Rat::zero();
    let mut pos = 0;
    let mut neg = 0;
    for (f, mult) in polycore::yun_squarefree_factors(p).expect("nonzero polynomial") {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let chain = polycore::SturmChain::new(&f);
        let v_minus = chain.variations_neg_inf();
        let v_zero = chain.variations_at(&zero);
        let v_plus = chain.variations_pos_inf();
        pos += mult * (v_zero - v_plus);
        neg += mult * (v_minus - v_zero);
    }
    let sig = PairPN::new(pos, neg);
    let dp = descartes_pair(&sp);
    // Descartes' rule; a failure here is a kernel bug.
    assert!(
        sig.pos <= dp.pos
            && sig.pos % 2 == dp.pos % 2
            && sig.neg <= dp.neg
            && sig.neg % 2 == dp.neg % 2,
        "Descartes' rule violated: pattern {sp}, signature {sig:?}"
    );
    Ok(sig)
}

/// Orbit of a pattern under `x -> -x` (swaps the pair) and coefficient
/// reversal (keeps the pair), patterns normalized to a `+` leading sign.
/// Each member carries whether its pair transform swaps (pos, neg).
pub fn symmetry_orbit(sp: &SignPattern) -> Vec<(SignPattern, bool)> {
    let base = sp.monic_normalized();
    let mut out: Vec<(SignPattern, bool)> = Vec::new();
    let candidates = [
        (base.clone(), false),
        (base.negate_argument().monic_normalized(), true),
        (base.reversal().monic_normalized(), false),
        (base.negate_argument().reversal().monic_normalized(), true),
    ];
    for (pat, swaps) in candidates {
        if !out.iter().any(|(p, _)| *p == pat) {
            out.push((pat, swaps));
        }
    }
    out
}

/// Outcome of a realizability search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SearchOutcome {
    /// Certified witness: coefficient signs equal the pattern and the
    /// exact root signature equals the target.
    Realized { witness: RatPoly, trials: u64 },
    /// Budget exhausted without a witness; records the sampling law.
    Exhausted { trials: u64, law: String, seed: u64 },
}

/// Sampling law recorded with every exhaustion report.
pub const SAMPLING_LAW: &str =
    "deterministic sweep of (x±r) products (r = 10^j, j in -2..=2, irreducible quadratic \
     fill-in), then alternating seeded trials: coefficients ±10^u (u uniform on [-6, 6]) \
     with the pattern's signs, and root-structured products with log-uniform radii";

const MAG_EXPONENT_RANGE: f64 = 6.0;

/// Search for a polynomial with coefficient signs `sp` and exact root
/// signature `target`.
pub fn realize_search(
    sp: &SignPattern,
    target: PairPN,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome, DescartesError> {
    if !admissible_pairs(sp).contains(&target) {
        return Err(DescartesError::NotAdmissible(target));
    }
    let mut trials = 0u64;

    let mut sweep = StructuredSweep::new(sp.degree(), target);
    while trials < budget {
        let Some(cand) = sweep.next_candidate() else {
            break;
        };
        trials += 1;
        if let Some(witness) = certify(&cand, sp, target) {
            return Ok(SearchOutcome::Realized { witness, trials });
        }
    }

    while trials < budget {
        let mut rng = trial_rng(seed, trials);
        let cand = if trials % 2 == 0 {
            sample_coefficients(&mut rng, sp)
        } else {
            sample_roots(&mut rng, sp.degree(), target)
        };
        trials += 1;
        if let Some(c) = cand {
            if let Some(witness) = certify(&c, sp, target) {
                return Ok(SearchOutcome::Realized { witness, trials });
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        trials,
        law: SAMPLING_LAW.to_string(),
        seed,
    })
}

/// Full certification: pattern must match exactly and the certified
/// signature must equal the target.
fn certify(p: &RatPoly, sp: &SignPattern, target: PairPN) -> Option<RatPoly> {
    let pat = SignPattern::of(p).ok()?;
    if pat != *sp {
        return None;
    }
    let sig = root_signature(p).ok()?;
    (sig == target).then(|| p.clone())
}

/// Coefficient-sampled candidate: signs fixed by the pattern, magnitudes
/// 10^u with u uniform on [-L, L].
fn sample_coefficients<R: Rng>(rng: &mut R, sp: &SignPattern) -> Option<RatPoly> {
    let coeffs: Vec<Rat> = sp
        .signs()
        .iter()
        .map(|&s| {
            let u = rng.gen_range(-MAG_EXPONENT_RANGE..MAG_EXPONENT_RANGE);
            let mag = rat_from_f64(10f64.powf(u)).expect("finite magnitude");
            if s == 1 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    Some(RatPoly::from_coeffs(coeffs))
}

/// Root-sampled candidate: the signature is built in, the pattern is
/// checked afterwards.
fn sample_roots<R: Rng>(rng: &mut R, degree: usize, target: PairPN) -> Option<RatPoly> {
    let complex_pairs = (degree - target.pos - target.neg) / 2;
    let mut p = RatPoly::one();
    fn radius<R: Rng>(rng: &mut R) -> Rat {
        let u = rng.gen_range(-3.0..3.0f64);
        rat_from_f64(10f64.powf(u)).expect("finite radius")
    }
    for _ in 0..target.pos {
        let r = radius(rng);
        p = &p * &RatPoly::from_roots(std::slice::from_ref(&r));
    }
    for _ in 0..target.neg {
        let r = -radius(rng);
        p = &p * &RatPoly::from_roots(std::slice::from_ref(&r));
    }
    for _ in 0..complex_pairs {
        // x^2 + bx + c with b^2 < 4c
        let c = radius(rng);
        let half_width = crate::rat::rat_to_f64(&c).sqrt() * 1.999;
        let b = rat_from_f64(rng.gen_range(-half_width..half_width))?;
        if &b * &b >= Rat::from_integer(4.into()) * &c {
            return None;
        }
        p = &p * &RatPoly::from_coeffs(vec![c.clone(), b, Rat::from_integer(1.into())]);
    }
    Some(p)
}

/// Deterministic enumeration of products of linear and irreducible
/// quadratic factors with radii on a coarse power-of-ten grid.
struct StructuredSweep {
    target: PairPN,
    complex_pairs: usize,
    grid: Vec<Rat>,
    state: u64,
    total: u64,
    invalid: bool,
}

impl StructuredSweep {
    fn new(degree: usize, target: PairPN) -> Self {
        let grid: Vec<Rat> = (-2..=2).map(pow10).collect();
        let invalid =
            degree < target.pos + target.neg || (degree - target.pos - target.neg) % 2 == 1;
        let complex_pairs = if invalid {
            0
        } else {
            (degree - target.pos - target.neg) / 2
        };
        let g = grid.len() as u64;
        // one radius digit per linear factor, radius + shape digits per quadratic
        let digits = (target.pos + target.neg + complex_pairs) as u32;
        let total = g
            .checked_pow(digits)
            .unwrap_or(u64::MAX)
            .saturating_mul(3u64.saturating_pow(complex_pairs as u32))
            .min(200_000);
        StructuredSweep {
            target,
            complex_pairs,
            grid,
            state: 0,
            total,
            invalid,
        }
    }

    /// Mixed-radix enumeration over radius and shape choices.
    fn next_candidate(&mut self) -> Option<RatPoly> {
        if self.invalid || self.state >= self.total {
            return None;
        }
        let g = self.grid.len() as u64;
        let mut rem = self.state;
        self.state += 1;
        let mut p = RatPoly::one();
        for _ in 0..self.target.pos {
            let r = self.grid[(rem % g) as usize].clone();
            rem /= g;
            p = &p * &RatPoly::from_roots(std::slice::from_ref(&r));
        }
        for _ in 0..self.target.neg {
            let r = -self.grid[(rem % g) as usize].clone();
            rem /= g;
            p = &p * &RatPoly::from_roots(std::slice::from_ref(&r));
        }
        for _ in 0..self.complex_pairs {
            let r = self.grid[(rem % g) as usize].clone();
            rem /= g;
            let shape = rem % 3;
            rem /= 3;
            // irreducible x^2 + bx + c: c = r^2, b in {0, ±r} keeps b^2 < 4c
            let c = &r * &r;
            let b = match shape {
                0 => Rat::zero(),
                1 => r.clone(),
                _ => -r.clone(),
            };
            p = &p * &RatPoly::from_coeffs(vec![c, b, Rat::from_integer(1.into())]);
        }
        Some(p)
    }
}

/// Survey row status: OPEN is a search status, not a non-realizability
/// proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RealizeStatus {
    Realized,
    Open,
}

/// One row of a degree survey.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurveyRow {
    pub pattern: SignPattern,
    pub pair: PairPN,
    pub status: RealizeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RatPoly>,
    pub trials: u64,
    /// OPEN with both counts positive would contradict the conjecture that
    /// non-realizable pairs have a vanishing component.
    pub conjecture11_violation_candidate: bool,
}

/// Full realizability survey of degree `d`: one row per orbit
/// representative and admissible pair.
pub fn survey_degree(d: usize, budget: u64, seed: u64) -> Vec<SurveyRow> {
    assert!(d >= 1);
    let mut reps: Vec<SignPattern> = Vec::new();
    let mut seen: BTreeSet<SignPattern> = BTreeSet::new();
    for bits in 0..(1u64 << d) {
        let mut signs = Vec::with_capacity(d + 1);
        for k in 0..d {
            signs.push(if bits >> k & 1 == 0 { 1 } else { -1 });
        }
        signs.push(1);
        let sp = SignPattern::new(signs).expect("degree >= 1");
        if seen.contains(&sp) {
            continue;
        }
        for (member, _) in symmetry_orbit(&sp) {
            seen.insert(member);
        }
        reps.push(sp);
    }

    let mut rows = Vec::new();
    for rep in reps {
        for pair in admissible_pairs(&rep) {
            let outcome = realize_search(&rep, pair, budget, seed)
                .expect("pair from admissible_pairs is admissible");
            let row = match outcome {
                SearchOutcome::Realized { witness, trials } => SurveyRow {
                    pattern: rep.clone(),
                    pair,
                    status: RealizeStatus::Realized,
                    witness: Some(witness),
                    trials,
                    conjecture11_violation_candidate: false,
                },
                SearchOutcome::Exhausted { trials, .. } => SurveyRow {
                    pattern: rep.clone(),
                    pair,
                    status: RealizeStatus::Open,
                    witness: None,
                    trials,
                    conjecture11_violation_candidate: pair.pos > 0 && pair.neg > 0,
                },
            };
            rows.push(row);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn pat(s: &str) -> SignPattern {
        SignPattern::parse(s).unwrap()
    }

    #[test]
    fn descartes_pairs() {
        assert_eq!(descartes_pair(&pat("++-++")), PairPN::new(2, 2));
        assert_eq!(descartes_pair(&pat("+++")), PairPN::new(0, 2));
        assert_eq!(descartes_pair(&pat("+-+")), PairPN::new(2, 0));
    }

    #[test]
    fn action_on_descartes_pairs() {
        // x -> -x swaps the Descartes pair, reversal preserves it
        for s in ["++-++", "+-++", "+---+", "++"] {
            let p = pat(s);
            let d = descartes_pair(&p);
            assert_eq!(descartes_pair(&p.negate_argument()), d.swap());
            assert_eq!(descartes_pair(&p.reversal()), d);
        }
    }

    #[test]
    fn admissible_sets() {
        let a: Vec<PairPN> = admissible_pairs(&pat("++-++")).into_iter().collect();
        assert_eq!(
            a,
            vec![
                PairPN::new(0, 0),
                PairPN::new(0, 2),
                PairPN::new(2, 0),
                PairPN::new(2, 2)
            ]
        );
        let b: Vec<PairPN> = admissible_pairs(&pat("+-+")).into_iter().collect();
        assert_eq!(b, vec![PairPN::new(0, 0), PairPN::new(2, 0)]);
        let c: Vec<PairPN> = admissible_pairs(&pat("++")).into_iter().collect();
        assert_eq!(c, vec![PairPN::new(0, 1)]);
    }

    #[test]
    fn signatures() {
        // x^2 - 3x + 2 = (x-1)(x-2)
        let p = RatPoly::from_ints(&[2, -3, 1]);
        assert_eq!(root_signature(&p).unwrap(), PairPN::new(2, 0));
        let q = RatPoly::from_ints(&[2, 3, 1]);
        assert_eq!(root_signature(&q).unwrap(), PairPN::new(0, 2));
        // multiplicities count: (x-1)^2 (x+3) = x^3 + x^2 - 5x + 3
        let r = RatPoly::from_roots(&[rat_int(1), rat_int(1), rat_int(-3)]);
        assert_eq!(root_signature(&r).unwrap(), PairPN::new(2, 1));
        // zero coefficient rejected
        assert!(matches!(
            root_signature(&RatPoly::from_ints(&[1, 0, 1])),
            Err(DescartesError::ZeroCoefficient)
        ));
        // quartic satisfies the standard restrictions for its pattern
        let s = RatPoly::from_ints(&[1, 1, -1, 1, 1]);
        let sig = root_signature(&s).unwrap();
        let dp = descartes_pair(&SignPattern::of(&s).unwrap());
        assert!(sig.pos <= dp.pos && sig.neg <= dp.neg);
    }

    #[test]
    fn orbits() {
        let orbit = symmetry_orbit(&pat("++-++"));
        // reversal-symmetric: only the identity and x -> -x images
        assert_eq!(orbit.len(), 2);
        assert!(orbit.iter().any(|(p, s)| *p == pat("+---+") && *s));
        let orbit = symmetry_orbit(&pat("+-+"));
        assert!(orbit.iter().any(|(p, _)| *p == pat("+-+")));
    }

    #[test]
    fn search_finds_simple_witnesses() {
        // (+,-,+) with (2,0): e.g. x^2 - 3x + 1
        let out = realize_search(&pat("+-+"), PairPN::new(2, 0), 10_000, 42).unwrap();
        match out {
            SearchOutcome::Realized { witness, .. } => {
                assert_eq!(SignPattern::of(&witness).unwrap(), pat("+-+"));
                assert_eq!(root_signature(&witness).unwrap(), PairPN::new(2, 0));
            }
            SearchOutcome::Exhausted { .. } => panic!("should realize (+,-,+)/(2,0)"),
        }
        let out = realize_search(&pat("+++"), PairPN::new(0, 0), 10_000, 42).unwrap();
        assert!(matches!(out, SearchOutcome::Realized { .. }));
        assert!(matches!(
            realize_search(&pat("+-+"), PairPN::new(1, 0), 10, 0),
            Err(DescartesError::NotAdmissible(_))
        ));
    }

    #[test]
    fn degree2_survey_complete() {
        let rows = survey_degree(2, 2_000, 7);
        assert!(rows.iter().all(|r| r.status == RealizeStatus::Realized));
        // (+,+,+) with (0,0) must be among them, witnessed
        assert!(rows
            .iter()
            .any(|r| r.pattern == pat("+++") && r.pair == PairPN::new(0, 0)));
    }
}

