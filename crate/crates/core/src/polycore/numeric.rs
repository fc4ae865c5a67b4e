//! Simultaneous-iteration (Aberth) complex root finder.
//!
//! Deterministic initial points on a circle of radius `1 + max|a_i/a_n|`,
//! fixed iteration cap, residuals reported with every root. Numeric
//! results are never used where a certified count is required.

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::RatPoly;
use super::PolyError;
use crate::rat::rat_to_f64;

/// One numeric root with its backward-error style residual `|p(z)|`.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct RootApprox {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl RootApprox {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_diff(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * (k as f64);
    }
    acc
}

/// All complex roots of the polynomial with the given ascending complex
/// coefficients. Roots exactly at the origin are deflated first.
pub fn aberth_roots(
    coeffs: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<Vec<Complex64>, PolyError> {
    let mut cs: Vec<Complex64> = coeffs.to_vec();
    while matches!(cs.last(), Some(c) if c.norm() == 0.0) {
        cs.pop();
    }
    if cs.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut origin_roots = 0usize;
    while cs.len() > 1 && cs[0].norm() == 0.0 {
        cs.remove(0);
        origin_roots += 1;
    }
    let n = cs.len() - 1;
    let mut roots = vec![Complex64::zero(); origin_roots];
    if n == 0 {
        return Ok(roots);
    }
    // monic normalization
    let lc = cs[n];
    let monic: Vec<Complex64> = cs.iter().map(|c| c / lc).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    'iter: for it in 0..max_iter {
        iterations = it + 1;
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let zi = zs[i];
            let pv = eval(&monic, zi);
            let dv = eval_diff(&monic, zi);
            if !pv.is_finite() || !dv.is_finite() {
                break 'iter;
            }
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() == 0.0 {
                // flat spot: take a deterministic sideways step
                Complex64::new(1e-3 * (1.0 + zi.norm()), 1e-3)
            } else {
                pv / dv
            };
            let mut s = Complex64::zero();
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.norm() == 0.0 {
                        continue;
                    }
                    s += d.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            if !step.is_finite() {
                break 'iter;
            }
            zs[i] = zi - step;
            let rel = step.norm() / (1.0 + zs[i].norm());
            max_step = max_step.max(rel);
        }
        if max_step <= tol.max(1e-300) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PolyError::NonConvergence { iterations });
    }
    roots.extend(zs);
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(roots)
}

/// Pair complex roots of a real polynomial with their conjugates and
/// average them into an exactly symmetric set.
fn enforce_conjugate_pairs(roots: &mut [Complex64], tol: f64) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || roots[i].im <= 0.0 {
            continue;
        }
        // nearest unused root to conj(roots[i])
        let target = roots[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, r) in roots.iter().enumerate() {
            if j == i || used[j] || r.im > 0.0 {
                continue;
            }
            let d = (r - target).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            let scale = 1.0 + roots[i].norm();
            if d <= 1e-3 * scale {
                let m = (roots[i] + roots[j].conj()) * 0.5;
                roots[i] = m;
                roots[j] = m.conj();
                used[i] = true;
                used[j] = true;
            }
        }
    }
    // lone near-real roots of a real polynomial are real
    for (i, r) in roots.iter_mut().enumerate() {
        if !used[i] && r.im.abs() <= tol * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
}

/// Numeric complex roots of an exact polynomial, conjugate symmetry
/// enforced, residuals `|p(root)|` attached.
pub fn complex_roots_numeric(p: &RatPoly, tol: f64) -> Result<Vec<RootApprox>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    assert!(tol > 0.0, "tolerance must be positive");
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|c| Complex64::new(rat_to_f64(c), 0.0))
        .collect();
    let mut roots = aberth_roots(&coeffs, tol, 1000)?;
    enforce_conjugate_pairs(&mut roots, tol);
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(roots
        .into_iter()
        .map(|z| RootApprox {
            re: z.re,
            im: z.im,
            residual: p.eval_complex(z).norm(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics() {
        // x^2 + 1 -> ±i
        let p = RatPoly::from_ints(&[1, 0, 1]);
        let rs = complex_roots_numeric(&p, 1e-12).unwrap();
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert!(r.re.abs() < 1e-9);
            assert!((r.im.abs() - 1.0).abs() < 1e-9);
            assert!(r.residual < 1e-9);
        }
        // conjugate symmetry is exact after pairing
        assert_eq!(rs[0].re, rs[1].re);
        assert_eq!(rs[0].im, -rs[1].im);

        // x^2 - 2 -> ±sqrt(2)
        let q = RatPoly::from_ints(&[-2, 0, 1]);
        let rs = complex_roots_numeric(&q, 1e-12).unwrap();
        let sqrt2 = 2.0_f64.sqrt();
        assert!((rs[0].re + sqrt2).abs() < 1e-9 && rs[0].im == 0.0);
        assert!((rs[1].re - sqrt2).abs() < 1e-9 && rs[1].im == 0.0);
    }

    #[test]
    fn degree_eight_residuals() {
        let p = RatPoly::from_ints(&[3, -7, 2, 9, -1, 0, 4, 2, 5]);
        let rs = complex_roots_numeric(&p, 1e-12).unwrap();
        assert_eq!(rs.len(), 8);
        for r in &rs {
            assert!(r.residual < 1e-6, "residual {}", r.residual);
        }
    }

    #[test]
    fn origin_roots_deflated_exactly() {
        let p = RatPoly::from_ints(&[0, 0, 0, 1, 1]); // x^3 (x + 1)
        let rs = complex_roots_numeric(&p, 1e-12).unwrap();
        assert_eq!(rs.len(), 4);
        assert_eq!(rs.iter().filter(|r| r.re == 0.0 && r.im == 0.0).count(), 3);
        assert!(rs.iter().any(|r| (r.re + 1.0).abs() < 1e-9));
    }

    #[test]
    fn complex_coefficients_supported() {
        // (t - i)(t + 2i) = t^2 + i t + 2
        let coeffs = [
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ];
        let rs = aberth_roots(&coeffs, 1e-12, 1000).unwrap();
        assert_eq!(rs.len(), 2);
        let mut ims: Vec<f64> = rs.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 2.0).abs() < 1e-9);
        assert!((ims[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_has_no_roots() {
        let p = RatPoly::from_ints(&[7]);
        assert!(complex_roots_numeric(&p, 1e-10).unwrap().is_empty());
        assert!(matches!(
            complex_roots_numeric(&RatPoly::zero(), 1e-10),
            Err(PolyError::ZeroPolynomial)
        ));
    }
}
