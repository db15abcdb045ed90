//! Computable surrogates for the distance d(ξ) from a real point to the
//! complex zero variety N(P) = {ζ : P(ζ) = 0}.
//!
//! The exact distance is not computable from samples, so two routes bracket
//! it. The proxy
//!
//! ```text
//! δ(ξ) = min over α ≠ 0 with ∂^αP(ξ) ≠ 0 of (|P(ξ)| / |∂^αP(ξ)|)^{1/|α|}
//! ```
//!
//! is comparable to d(ξ) up to constants depending only on the degree and
//! dimension (Taylor expansion toward the nearest zero). The upper bound
//! finds actual zeros on the coordinate lines through ξ with a polynomial
//! root solver; it dominates d(ξ) by construction. The property suite pins
//! the cross-check δ ≤ (m+1)·2^m · upper.

use num_complex::Complex64;
use thiserror::Error;

use crate::roots::complex_roots;
use crate::symbol::{CompiledSymbol, MultiIndex, PolynomialSymbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistanceError {
    #[error("operation requires a non-zero symbol")]
    ZeroSymbol,
    #[error("every univariate restriction is constant at this point")]
    AllRestrictionsConstant,
}

/// All non-identically-zero derivatives ∂^α P for α ≠ 0, compiled once.
#[derive(Debug)]
pub struct DerivativeFamily {
    orders: Vec<u32>,
    compiled: Vec<CompiledSymbol>,
    indices: Vec<MultiIndex>,
}

impl DerivativeFamily {
    pub fn new(symbol: &PolynomialSymbol) -> Self {
        let n = symbol.dimension();
        let bounds = symbol.exponent_box();
        let mut orders = Vec::new();
        let mut compiled = Vec::new();
        let mut indices = Vec::new();
        let mut alpha = vec![0u32; n];
        loop {
            // Advance odometer over the exponent box.
            let mut j = 0;
            loop {
                if j == n {
                    return DerivativeFamily {
                        orders,
                        compiled,
                        indices,
                    };
                }
                if alpha[j] < bounds.get(j) {
                    alpha[j] += 1;
                    break;
                }
                alpha[j] = 0;
                j += 1;
            }
            let mi = MultiIndex::new(alpha.clone());
            if mi.is_zero() {
                continue;
            }
            let d = symbol.derivative(&mi).expect("dimension matches");
            if d.is_zero() {
                continue;
            }
            orders.push(mi.order());
            compiled.push(d.compile());
            indices.push(mi);
        }
    }

    pub fn derivative_count(&self) -> usize {
        self.compiled.len()
    }

    pub fn derivative_order(&self, k: usize) -> u32 {
        self.orders[k]
    }

    pub fn multi_index(&self, k: usize) -> &MultiIndex {
        &self.indices[k]
    }

    /// ln|∂^αP(ξ)| for every tracked α, in family order.
    pub fn ln_derivative_moduli(&self, xi: &[f64]) -> Vec<f64> {
        self.compiled
            .iter()
            .map(|c| c.evaluate_real(xi).ln_modulus())
            .collect()
    }
}

/// The derivative-ratio surrogate δ(ξ). Returns +∞ for non-zero constant
/// symbols (whose zero variety is empty) and errors on the zero symbol.
pub fn distance_proxy(symbol: &PolynomialSymbol, xi: &[f64]) -> Result<f64, DistanceError> {
    if symbol.is_zero() {
        return Err(DistanceError::ZeroSymbol);
    }
    let family = DerivativeFamily::new(symbol);
    if family.derivative_count() == 0 {
        return Ok(f64::INFINITY); // non-zero constant
    }
    let ln_p = symbol
        .evaluate_real(xi)
        .expect("dimension matches")
        .ln_modulus();
    let mut best = f64::INFINITY;
    for (k, ln_d) in family.ln_derivative_moduli(xi).iter().enumerate() {
        if *ln_d == f64::NEG_INFINITY {
            continue;
        }
        let order = family.derivative_order(k) as f64;
        best = best.min(((ln_p - ln_d) / order).exp());
    }
    Ok(best)
}

/// Upper bound on d(ξ): the nearest complex root of any univariate
/// restriction of P along a coordinate line through ξ.
pub fn distance_upper_bound(symbol: &PolynomialSymbol, xi: &[f64]) -> Result<f64, DistanceError> {
    if symbol.is_zero() {
        return Err(DistanceError::ZeroSymbol);
    }
    let n = symbol.dimension();
    let mut best = f64::INFINITY;
    let mut any_axis = false;
    for axis in 0..n {
        let coeffs = symbol
            .restrict_along_axis(xi, axis)
            .expect("dimension matches");
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if scale == 0.0 {
            continue;
        }
        let nonconstant = coeffs[1..].iter().any(|c| c.norm() > 1e-13 * scale);
        if !nonconstant {
            continue;
        }
        any_axis = true;
        let here = Complex64::new(xi[axis], 0.0);
        for root in complex_roots(&coeffs) {
            best = best.min((root - here).norm());
        }
    }
    if any_axis {
        Ok(best)
    } else {
        Err(DistanceError::AllRestrictionsConstant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    #[test]
    fn proxy_is_exact_for_a_linear_symbol() {
        let p = parse_symbol("x1", 1).unwrap();
        let d = distance_proxy(&p, &[3.0]).unwrap();
        assert!((d - 3.0).abs() < 1e-12);
    }

    #[test]
    fn proxy_for_a_square() {
        // δ(ξ) = min(|ξ|/2, |ξ|/√2) = |ξ|/2 for ξ² (two derivative terms).
        let p = parse_symbol("x1^2", 1).unwrap();
        let d = distance_proxy(&p, &[6.0]).unwrap();
        assert!((d - 3.0).abs() < 1e-12);
    }

    #[test]
    fn proxy_of_a_constant_is_infinite() {
        let p = parse_symbol("1", 2).unwrap();
        assert_eq!(distance_proxy(&p, &[1.0, 1.0]), Ok(f64::INFINITY));
    }

    #[test]
    fn proxy_rejects_zero_symbol() {
        let z = PolynomialSymbol::zero(1);
        assert_eq!(distance_proxy(&z, &[1.0]), Err(DistanceError::ZeroSymbol));
    }

    #[test]
    fn upper_bound_for_a_linear_symbol() {
        let p = parse_symbol("x1", 1).unwrap();
        assert!((distance_upper_bound(&p, &[3.0]).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn upper_bound_vanishes_on_the_wave_cone() {
        let wave = PolynomialSymbol::wave();
        let d = distance_upper_bound(&wave, &[1.0, 1.0]).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn upper_bound_for_heat_on_the_time_axis() {
        // Roots of ζ² = −iτ have modulus √τ; the axis-1 restriction has a
        // root at distance τ. For τ ≥ 1 the bound is √τ.
        let heat = PolynomialSymbol::heat();
        for tau in [1.0f64, 4.0, 9.0] {
            let d = distance_upper_bound(&heat, &[tau, 0.0]).unwrap();
            assert!((d - tau.sqrt()).abs() < 1e-9, "tau = {tau}, d = {d}");
        }
    }

    #[test]
    fn constant_restrictions_are_reported() {
        // P = 1 + x1: along axis 2 the restriction is constant; axis 1 works.
        let p = parse_symbol("1 + x1", 2).unwrap();
        let d = distance_upper_bound(&p, &[0.0, 5.0]).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        // A symbol constant along every axis at this point.
        let q = parse_symbol("1 + x1*x2", 2).unwrap();
        assert_eq!(
            distance_upper_bound(&q, &[0.0, 0.0]),
            Err(DistanceError::AllRestrictionsConstant)
        );
    }

    #[test]
    fn derivative_family_enumerates_the_box() {
        let heat = PolynomialSymbol::heat();
        let fam = DerivativeFamily::new(&heat);
        // Exponent box (1,2): α ∈ {(1,0),(0,1),(1,1),(0,2),(1,2)} minus the
        // identically-zero derivatives (1,1) and (1,2).
        assert_eq!(fam.derivative_count(), 3);
    }
}
