//! Seeded samplers shared by the experiment harnesses.
//!
//! Root-based samplers quantize to dyadic rationals so downstream exact
//! arithmetic stays light; every sampled value converts to `Rat` exactly.

use rand::Rng;

use crate::polycore::{self, RatPoly};
use crate::rat::{rat, rat_int, Rat};

/// Dyadic rational `round(x * den) / den` from a float.
fn quantize(x: f64, den: i64) -> Rat {
    rat((x * den as f64).round() as i64, den)
}

/// Exponential-ish positive sample via inverse CDF.
fn exp_sample<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen_range(1e-12..1.0);
    -u.ln()
}

/// Real-rooted polynomial with mesh >= 1: increasing roots with gaps
/// `1 + |exp|`, half of the gaps exactly 1 so the class boundary is
/// well covered; leading coefficient ±1.
pub fn mesh_class_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    let mut roots = Vec::with_capacity(deg);
    let mut r = quantize(rng.gen_range(-4.0..4.0), 1024);
    roots.push(r.clone());
    for _ in 1..deg {
        let gap = if rng.gen::<bool>() {
            rat_int(1)
        } else {
            rat_int(1) + quantize(exp_sample(rng), 1024)
        };
        r = &r + &gap;
        roots.push(r.clone());
    }
    let p = RatPoly::from_roots(&roots);
    if rng.gen::<bool>() {
        -&p
    } else {
        p
    }
}

/// Real-rooted polynomial with distinct roots, gaps drawn from a mix of
/// laws (uniform, exponential, heavy-tailed).
pub fn real_rooted_poly<R: Rng>(rng: &mut R, deg: usize) -> (RatPoly, Vec<Rat>) {
    let mut roots = Vec::with_capacity(deg);
    let mut r = quantize(rng.gen_range(-3.0..3.0), 128);
    roots.push(r.clone());
    for _ in 1..deg {
        let g = match rng.gen_range(0..3u8) {
            0 => rng.gen_range(0.05..2.0),
            1 => 0.05 + exp_sample(rng),
            _ => 0.05 + exp_sample(rng).exp2().min(8.0),
        };
        let gap = quantize(g.max(0.01), 128).max(rat(1, 128));
        r = &r + &gap;
        roots.push(r.clone());
    }
    (RatPoly::from_roots(&roots), roots)
}

/// Integer-coefficient polynomial of exact degree `deg`, entries in
/// [-9, 9], leading coefficient nonzero.
pub fn small_int_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    let mut coeffs: Vec<Rat> = (0..deg).map(|_| rat_int(rng.gen_range(-9..=9))).collect();
    let lead = loop {
        let c = rng.gen_range(-9..=9);
        if c != 0 {
            break c;
        }
    };
    coeffs.push(rat_int(lead));
    RatPoly::from_coeffs(coeffs)
}

/// Integer-coefficient polynomial with every coefficient nonzero.
pub fn dense_sign_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    let coeffs: Vec<Rat> = (0..=deg)
        .map(|_| {
            let c = loop {
                let c = rng.gen_range(-9..=9);
                if c != 0 {
                    break c;
                }
            };
            rat_int(c)
        })
        .collect();
    RatPoly::from_coeffs(coeffs)
}

/// Polynomial of degree `deg` whose real zeros are simple (complex pairs
/// unconstrained): a mix of coefficient-sampled, fully real-rooted, and
/// real-roots-times-irreducible-quadratics shapes.
pub fn simple_real_zeros_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    loop {
        let style = rng.gen_range(0..3u8);
        let p = match style {
            0 => small_int_poly(rng, deg),
            1 => real_rooted_poly(rng, deg).0,
            _ => {
                let quads = rng.gen_range(0..=deg / 2);
                let real_deg = deg - 2 * quads;
                let mut p = if real_deg > 0 {
                    real_rooted_poly(rng, real_deg).0
                } else {
                    RatPoly::one()
                };
                for _ in 0..quads {
                    // x^2 + bx + c with b^2 < 4c
                    let c = quantize(rng.gen_range(0.1..9.0), 64).max(rat(1, 64));
                    let bmax = 1.99 * crate::rat::rat_to_f64(&c).sqrt();
                    let b = quantize(rng.gen_range(-bmax..bmax), 64);
                    if &b * &b >= rat_int(4) * &c {
                        continue;
                    }
                    p = &p * &RatPoly::from_coeffs(vec![c, b, rat_int(1)]);
                }
                p
            }
        };
        if p.degree() != Some(deg) {
            continue;
        }
        // real zeros simple <=> gcd(p, p') has no real roots
        let g = p.gcd(&p.diff());
        let ok = g.degree() == Some(0)
            || !polycore::has_real_roots(&g).unwrap_or(true);
        if ok {
            return p;
        }
    }
}

/// Certified interlacing pair: `deg p = k`, `deg q = k - 1`, q's roots
/// strictly inside consecutive root gaps of p, q's leading coefficient
/// negative.
pub fn interlacing_pair<R: Rng>(rng: &mut R, k: usize) -> (RatPoly, RatPoly) {
    assert!(k >= 1);
    let (p, roots) = real_rooted_poly(rng, k);
    let mut q_roots = Vec::with_capacity(k - 1);
    for w in roots.windows(2) {
        let lo = &w[0];
        let hi = &w[1];
        let width = hi - lo;
        // keep strictly inside by staying in the middle 80%
        let t = quantize(rng.gen_range(0.1..0.9), 256);
        q_roots.push(lo + &(width * t));
    }
    let lc = quantize(rng.gen_range(0.1..4.0), 64).max(rat(1, 64));
    let q = RatPoly::from_roots(&q_roots).scale(&-lc);
    (p, q)
}

/// Strictly positive coefficients with magnitudes spanning 10^-6..10^6:
/// three significant digits times a power of ten.
pub fn positive_coeffs<R: Rng>(rng: &mut R, deg: usize) -> Vec<Rat> {
    (0..=deg)
        .map(|_| {
            let mantissa = rat(rng.gen_range(100..1000), 100);
            let e = rng.gen_range(-6..=6);
            mantissa * crate::rat::pow10(e)
        })
        .collect()
}
