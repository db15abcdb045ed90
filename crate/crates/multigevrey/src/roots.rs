//! All complex roots of a univariate polynomial by Aberth–Ehrlich
//! simultaneous iteration with Newton polishing.
//!
//! Degrees here stay small (restrictions of symbols along coordinate
//! lines, degree ≤ ~10), so a dense coefficient slice is fine. Roots at
//! zero are factored out exactly before iterating.

use num_complex::Complex64;

/// Relative threshold below which a leading coefficient is treated as zero.
/// Restriction coefficients are computed in floating point from exact data,
/// so true zeros either are exact or sit at roundoff scale.
const LEADING_EPS: f64 = 1e-13;

/// All complex roots (with multiplicity) of `Σ coeffs[k] ζ^k`.
/// Returns an empty list for constant polynomials. The caller is expected
/// to have checked that the polynomial is not identically zero.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() <= LEADING_EPS * scale && c.len() > 1 {
            c.pop();
        } else {
            break;
        }
    }
    if c.len() <= 1 {
        return Vec::new();
    }

    // Roots at the origin come off exactly.
    let mut zeros_at_origin = 0;
    while c.first().map(|x| x.norm() <= LEADING_EPS * scale) == Some(true) && c.len() > 1 {
        c.remove(0);
        zeros_at_origin += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let degree = c.len() - 1;
    if degree == 0 {
        return roots;
    }
    if degree == 1 {
        roots.push(-c[0] / c[1]);
        return roots;
    }
    if degree == 2 {
        roots.extend(quadratic_roots(c[0], c[1], c[2]));
        return roots;
    }

    roots.extend(aberth(&c));
    roots
}

/// Stable quadratic formula for a + bζ + cζ².
fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Pick the sign that avoids cancellation in -b ∓ disc.
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q.norm() == 0.0 {
        [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [q / c, a / q]
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let degree = c.len() - 1;
    let lead = c[degree];
    // Cauchy-style radius bound for initial guesses.
    let radius = 1.0
        + c[..degree]
            .iter()
            .map(|x| (x / lead).norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.45;
            radius * 0.7 * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    let max_iter = 200;
    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 {
                // Nudge off a critical point.
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - w * sum;
            let step = if denom.norm() == 0.0 { w } else { w / denom };
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            max_step = max_step.max(rel);
        }
        if max_step < 1e-14 {
            break;
        }
    }

    // Newton polish; helps simple roots reach full double accuracy.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_arg(mut roots: Vec<Complex64>) -> Vec<Complex64> {
        roots.sort_by(|a, b| {
            a.arg()
                .partial_cmp(&b.arg())
                .unwrap()
                .then(a.norm().partial_cmp(&b.norm()).unwrap())
        });
        roots
    }

    #[test]
    fn linear_and_constant() {
        assert!(complex_roots(&[c(3.0, 0.0)]).is_empty());
        let r = complex_roots(&[c(-6.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadratic_with_complex_coefficients() {
        // ζ² = -i → ζ = ±e^{-iπ/4}
        let r = sorted_by_arg(complex_roots(&[c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]));
        let expected = sorted_by_arg(vec![
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            Complex64::from_polar(1.0, 3.0 * std::f64::consts::FRAC_PI_4),
        ]);
        for (a, b) in r.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn quartic_with_known_roots() {
        // (ζ-1)(ζ+2)(ζ-3i)(ζ+i) expanded.
        let roots_true = [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0), c(0.0, -1.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots_true {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            coeffs = next;
        }
        let got = complex_roots(&coeffs);
        assert_eq!(got.len(), 4);
        for r in roots_true {
            let closest = got.iter().map(|g| (g - r).norm()).fold(f64::MAX, f64::min);
            assert!(closest < 1e-10, "root {r} missed by {closest}");
        }
    }

    #[test]
    fn zeros_at_origin_are_exact() {
        // ζ³ + ζ² = ζ²(ζ + 1)
        let r = complex_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z - c(-1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn tiny_leading_coefficients_are_trimmed() {
        let r = complex_roots(&[c(-1.0, 0.0), c(1.0, 0.0), c(1e-18, 0.0)]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(1.0, 0.0)).norm() < 1e-12);
    }
}
