//! Small shared numeric helpers: exact rationals, Gaussian rationals, and
//! conversions between exact and floating-point representations.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the geometry layer.
pub type Rat = BigRational;

/// Exact complex scalar with rational real and imaginary parts.
/// Coefficients of polynomial symbols are stored in this form.
pub type GaussRat = Complex<BigRational>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact rational to `f64`, saturating to signed infinity when out of range.
pub fn rat_to_f64(r: &Rat) -> f64 {
    match r.to_f64() {
        Some(x) => x,
        None => {
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Canonical text form of a rational: `"p"` when the denominator is one,
/// `"p/q"` otherwise. This is the form used in JSON reports.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the canonical `"p"` / `"p/q"` form back to a rational.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts.next()?.parse().ok()?;
    match parts.next() {
        None => Some(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rat::new(numer, denom))
            }
        }
    }
}

/// Exact value of a decimal literal such as `"12.34"`.
pub fn rat_from_decimal(integral: &str, fractional: &str) -> Option<Rat> {
    if integral.is_empty() && fractional.is_empty() {
        return None;
    }
    let digits = format!("{integral}{fractional}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u8).pow(fractional.len() as u32);
    Some(Rat::new(numer, denom))
}

/// Least-squares slope of `y` against `x`, ignoring pairs with a non-finite
/// `y`. Returns `None` when fewer than two finite pairs remain or the `x`
/// values are degenerate.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys.iter())
        .filter(|(_, y)| y.is_finite())
        .map(|(&x, &y)| (x, y))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-12 * (n * sxx).abs().max(1.0) {
        return None;
    }
    Some((n * sxy - sx * sy) / det)
}

/// Lower median of the finite entries (deterministic tie behaviour).
pub fn lower_median(values: &[f64]) -> Option<f64> {
    let mut finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return None;
    }
    finite.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    Some(finite[finite.len() / 2])
}

/// ln(k!) by direct summation; exact enough for the orders used here.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = rat(-7, 3);
        assert_eq!(format_rat(&r), "-7/3");
        assert_eq!(parse_rat("-7/3"), Some(r));
        assert_eq!(format_rat(&rat_int(5)), "5");
        assert_eq!(parse_rat("5"), Some(rat_int(5)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(rat_from_decimal("2", "5"), Some(rat(5, 2)));
        assert_eq!(rat_from_decimal("0", "25"), Some(rat(1, 4)));
        assert_eq!(rat_from_decimal("12", ""), Some(rat_int(12)));
    }

    #[test]
    fn slope_of_exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        let s = fit_slope(&xs, &ys).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn slope_ignores_infinities() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, f64::NEG_INFINITY, 6.0, 8.0];
        let s = fit_slope(&xs, &ys).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ln_factorial_matches_direct() {
        let direct: f64 = (1..=10u64).map(|k| (k as f64)).product::<f64>().ln();
        assert!((ln_factorial(10) - direct).abs() < 1e-9);
    }
}
