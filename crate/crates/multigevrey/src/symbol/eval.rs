//! Floating-point evaluation with an overflow guard.
//!
//! Ratio tests sample symbols at |ξ| ~ 10⁶ with degrees up to ~10 and then
//! again for every derivative, so a naive f64 term sum can overflow. Terms
//! are therefore accumulated in mantissa/exponent form: the value of an
//! [`Evaluation`] is `mantissa · 2^exponent`. Results that fit in an `f64`
//! have exponent 0 after normalization back through `into_complex`.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::PolynomialSymbol;

/// A complex evaluation result with a binary scale exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    mantissa: Complex64,
    exponent: i64,
}

impl Evaluation {
    pub(crate) fn new(mantissa: Complex64, exponent: i64) -> Self {
        normalize(mantissa, exponent)
    }

    pub fn zero() -> Self {
        Evaluation {
            mantissa: Complex64::new(0.0, 0.0),
            exponent: 0,
        }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    /// Binary scale exponent; the represented value is mantissa·2^exponent.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    /// Collapse to a plain complex number; overflows to ±inf when the scale
    /// exponent is out of f64 range.
    pub fn into_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.mantissa * pow2(self.exponent)
    }

    /// |value|, possibly infinite.
    pub fn modulus(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.mantissa.norm() * pow2(self.exponent)
    }

    /// log₂|value|; −∞ for zero.
    pub fn log2_modulus(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.norm().log2() + self.exponent as f64
    }

    /// ln|value|; −∞ for zero.
    pub fn ln_modulus(&self) -> f64 {
        self.log2_modulus() * std::f64::consts::LN_2
    }
}

fn pow2(e: i64) -> f64 {
    // Split so that intermediate powers stay representable.
    if e > 2000 {
        return f64::INFINITY;
    }
    if e < -2200 {
        return 0.0;
    }
    let half = (e / 2) as i32;
    let rest = (e - e / 2) as i32;
    2f64.powi(half) * 2f64.powi(rest)
}

fn normalize(m: Complex64, e: i64) -> Evaluation {
    if m.re == 0.0 && m.im == 0.0 {
        return Evaluation {
            mantissa: Complex64::new(0.0, 0.0),
            exponent: 0,
        };
    }
    let mag = m.re.abs().max(m.im.abs());
    if !(mag.is_finite()) {
        return Evaluation {
            mantissa: m,
            exponent: e,
        };
    }
    let k = mag.log2().round() as i64;
    if k.abs() <= 256 {
        return Evaluation {
            mantissa: m,
            exponent: e,
        };
    }
    Evaluation {
        mantissa: m * pow2(-k),
        exponent: e + k,
    }
}

fn scaled_mul(a: (Complex64, i64), b: (Complex64, i64)) -> (Complex64, i64) {
    let r = normalize(a.0 * b.0, a.1 + b.1);
    (r.mantissa, r.exponent)
}

fn scaled_pow(base: Complex64, exp: u32) -> (Complex64, i64) {
    let mut acc = (Complex64::new(1.0, 0.0), 0i64);
    let mut b = (base, 0i64);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = scaled_mul(acc, b);
        }
        e >>= 1;
        if e > 0 {
            b = scaled_mul(b, b);
        }
    }
    acc
}

/// A symbol lowered to floating point once, for use in sampling sweeps.
#[derive(Debug, Clone)]
pub struct CompiledSymbol {
    dimension: usize,
    exponents: Vec<Box<[u32]>>,
    coefficients: Vec<Complex64>,
}

impl CompiledSymbol {
    pub(crate) fn new(symbol: &PolynomialSymbol) -> Self {
        let mut exponents = Vec::with_capacity(symbol.num_terms());
        let mut coefficients = Vec::with_capacity(symbol.num_terms());
        for (alpha, coeff) in symbol.terms() {
            exponents.push(alpha.components().to_vec().into_boxed_slice());
            coefficients.push(Complex64::new(
                coeff.re.to_f64().unwrap_or(f64::NAN),
                coeff.im.to_f64().unwrap_or(f64::NAN),
            ));
        }
        CompiledSymbol {
            dimension: symbol.dimension(),
            exponents,
            coefficients,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Evaluation {
        assert_eq!(point.len(), self.dimension, "dimension mismatch");
        if self.exponents.is_empty() {
            return Evaluation::zero();
        }
        let mut terms: Vec<(Complex64, i64)> = Vec::with_capacity(self.exponents.len());
        for (exps, coeff) in self.exponents.iter().zip(&self.coefficients) {
            let mut t = (*coeff, 0i64);
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = scaled_mul(t, scaled_pow(point[j], e));
                }
            }
            terms.push(t);
        }
        let max_e = terms
            .iter()
            .filter(|(m, _)| m.re != 0.0 || m.im != 0.0)
            .map(|&(_, e)| e)
            .max();
        let Some(max_e) = max_e else {
            return Evaluation::zero();
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, e) in terms {
            let shift = e - max_e;
            if shift > -1080 {
                sum += m * pow2(shift);
            }
        }
        Evaluation::new(sum, max_e)
    }

    pub fn evaluate_real(&self, point: &[f64]) -> Evaluation {
        let complex: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.evaluate(&complex)
    }

    /// Compensated (double-double) evaluation at a real point of moderate
    /// magnitude. Resolves cancellation ~1e-30 below the term scale, which
    /// the zero probe needs to pin flat zeros; not overflow-guarded, and
    /// exponentiation is by repeated multiplication, so this is for
    /// unit-scale points and small exponents only.
    pub fn evaluate_real_compensated(&self, point: &[f64]) -> Complex64 {
        let mut re = Dd::zero();
        let mut im = Dd::zero();
        for (exps, coeff) in self.exponents.iter().zip(&self.coefficients) {
            let mut monomial = Dd::from(1.0);
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    monomial = monomial.mul_f64(point[j]);
                }
            }
            re = re.add(monomial.mul_f64(coeff.re));
            im = im.add(monomial.mul_f64(coeff.im));
        }
        Complex64::new(re.hi + re.lo, im.hi + im.lo)
    }
}

/// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }

    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    #[test]
    fn plain_values_have_zero_exponent_path() {
        let s = parse_symbol("x1^2 + 3", 1).unwrap();
        let v = s.evaluate_real(&[2.0]).unwrap();
        assert!((v.into_complex().re - 7.0).abs() < 1e-14);
    }

    #[test]
    fn huge_products_do_not_overflow() {
        // (ξ₁ξ₂)⁶ at 10⁶: magnitude 10⁷², fine; at 10²⁸ the raw product
        // would overflow f64.
        let s = parse_symbol("x1^6*x2^6", 2).unwrap();
        let v = s.evaluate_real(&[1e28, 1e28]).unwrap();
        assert!(v.modulus().is_infinite());
        let expected_log2 = 12.0 * 28.0 * 10f64.log2();
        assert!((v.log2_modulus() - expected_log2).abs() < 1e-6 * expected_log2);
    }

    #[test]
    fn cancellation_is_exact_for_equal_terms() {
        let s = parse_symbol("x1^2 - x2^2", 2).unwrap();
        let v = s.evaluate_real(&[1e8, 1e8]).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.log2_modulus(), f64::NEG_INFINITY);
    }

    #[test]
    fn log_modulus_of_moderate_value() {
        let s = parse_symbol("x1", 1).unwrap();
        let v = s.evaluate_real(&[8.0]).unwrap();
        assert!((v.log2_modulus() - 3.0).abs() < 1e-12);
        assert!((v.ln_modulus() - 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn zero_power_at_zero_base_is_one() {
        let s = parse_symbol("x1^2 + 1", 2).unwrap();
        let v = s.evaluate_real(&[0.0, 0.0]).unwrap();
        assert!((v.into_complex().re - 1.0).abs() < 1e-15);
    }
}
