//! Sparse multivariate polynomial symbols with exact Gaussian-rational
//! coefficients.
//!
//! A symbol is a finite map from multi-indices to complex coefficients,
//! P(ξ) = Σ_α a_α ξ^α. Coefficients stay exact at rest; evaluation converts
//! to floating point (see [`eval`]) so that the geometry downstream can rely
//! on exact exponent data while numeric sweeps use doubles.

mod display;
mod eval;
mod parse;

pub use eval::{CompiledSymbol, Evaluation};
pub use parse::{parse_symbol, ParseError};

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numeric::{GaussRat, Rat};

/// A multi-index α ∈ Z₊ⁿ: one non-negative exponent per variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    /// The zero multi-index in `n` variables.
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index e_j (0-based axis).
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut c = vec![0; n];
        c[axis] = 1;
        MultiIndex(c)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// |α| = α₁ + … + αₙ.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.0.len(), other.0.len());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` when any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.0.len() != other.0.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    /// ⟨α,q⟩ = Σ α_j q_j against an exact rational vector.
    pub fn pair(&self, q: &[Rat]) -> Rat {
        assert_eq!(self.0.len(), q.len());
        let mut acc = Rat::zero();
        for (a, qj) in self.0.iter().zip(q) {
            acc += qj * Rat::from_integer((*a).into());
        }
        acc
    }

    /// Exact rational coordinates of the exponent point.
    pub fn to_rationals(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect()
    }
}

/// Errors raised by symbol operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolError {
    #[error("dimension mismatch: symbol has {expected} variables, argument has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a non-zero symbol")]
    ZeroSymbol,
}

/// A sparse polynomial symbol P(ξ) = Σ_α a_α ξ^α with exact coefficients.
///
/// Invariants: no stored coefficient is zero, and every stored multi-index
/// has exactly `dimension` components. Terms are kept in a BTreeMap so all
/// iteration (printing, serialization, hashing into reports) is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSymbol {
    dimension: usize,
    terms: BTreeMap<MultiIndex, GaussRat>,
}

impl PolynomialSymbol {
    /// The zero symbol in `n` variables.
    pub fn zero(n: usize) -> Self {
        PolynomialSymbol {
            dimension: n,
            terms: BTreeMap::new(),
        }
    }

    /// A constant symbol.
    pub fn constant(n: usize, value: GaussRat) -> Self {
        let mut s = Self::zero(n);
        s.add_term(MultiIndex::zero(n), value);
        s
    }

    /// The coordinate symbol ξ_axis (0-based).
    pub fn variable(n: usize, axis: usize) -> Self {
        assert!(axis < n, "variable index out of range");
        let mut s = Self::zero(n);
        s.add_term(MultiIndex::unit(n, axis), GaussRat::one());
        s
    }

    /// Build from explicit terms; zero coefficients are dropped and repeated
    /// multi-indices are combined.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, SymbolError>
    where
        I: IntoIterator<Item = (MultiIndex, GaussRat)>,
    {
        let mut s = Self::zero(n);
        for (alpha, coeff) in terms {
            if alpha.dimension() != n {
                return Err(SymbolError::DimensionMismatch {
                    expected: n,
                    got: alpha.dimension(),
                });
            }
            s.add_term(alpha, coeff);
        }
        Ok(s)
    }

    /// Add a single term, combining with any existing one and dropping the
    /// entry if the sum cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, coeff: GaussRat) {
        assert_eq!(alpha.dimension(), self.dimension);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// m = max |α| over stored terms; 0 for the empty symbol.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussRat)> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<&GaussRat> {
        self.terms.get(alpha)
    }

    /// Componentwise maximum of all exponents (the exponent box).
    pub fn exponent_box(&self) -> MultiIndex {
        let mut max = vec![0u32; self.dimension];
        for alpha in self.terms.keys() {
            for (m, &a) in max.iter_mut().zip(alpha.components()) {
                *m = (*m).max(a);
            }
        }
        MultiIndex(max)
    }

    pub fn neg(&self) -> Self {
        PolynomialSymbol {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymbolError> {
        self.check_dim(other.dimension)?;
        let mut out = self.clone();
        for (a, c) in other.terms.iter() {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymbolError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SymbolError> {
        self.check_dim(other.dimension)?;
        let mut out = Self::zero(self.dimension);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                out.add_term(a.add(b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &GaussRat) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dimension);
        }
        PolynomialSymbol {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::constant(self.dimension, GaussRat::one());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// ∂^α P by the monomial falling-factorial rule. Returns the zero symbol
    /// once |α| exceeds the order of P.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<Self, SymbolError> {
        self.check_dim(alpha.dimension())?;
        let mut out = Self::zero(self.dimension);
        for (beta, coeff) in self.terms.iter() {
            let Some(gamma) = beta.checked_sub(alpha) else {
                continue;
            };
            let mut factor = Rat::one();
            for (b, a) in beta.components().iter().zip(alpha.components()) {
                for k in 0..*a {
                    factor *= Rat::from_integer((b - k).into());
                }
            }
            let scaled = GaussRat::new(
                coeff.re.clone() * factor.clone(),
                coeff.im.clone() * factor,
            );
            out.add_term(gamma, scaled);
        }
        Ok(out)
    }

    /// Evaluate at a complex point (converting coefficients to doubles).
    /// The result carries a binary scale exponent so that sweeps at large
    /// radii and high degree cannot overflow; see [`Evaluation`].
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Evaluation, SymbolError> {
        self.check_dim(point.len())?;
        Ok(self.compile().evaluate(point))
    }

    /// Evaluate at a real point.
    pub fn evaluate_real(&self, point: &[f64]) -> Result<Evaluation, SymbolError> {
        let complex: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.evaluate(&complex)
    }

    /// Precompute the floating-point view used by hot evaluation loops.
    pub fn compile(&self) -> CompiledSymbol {
        CompiledSymbol::new(self)
    }

    /// Coefficients of the univariate restriction ζ ↦ P(ξ with slot `axis`
    /// replaced by ζ), low degree first, in floating point.
    pub fn restrict_along_axis(&self, point: &[f64], axis: usize) -> Result<Vec<Complex64>, SymbolError> {
        self.check_dim(point.len())?;
        assert!(axis < self.dimension, "axis out of range");
        let max_deg = self
            .terms
            .keys()
            .map(|a| a.get(axis))
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); max_deg + 1];
        for (alpha, coeff) in self.terms.iter() {
            let mut c = Complex64::new(
                coeff.re.to_f64().unwrap_or(f64::NAN),
                coeff.im.to_f64().unwrap_or(f64::NAN),
            );
            for (j, &e) in alpha.components().iter().enumerate() {
                if j != axis {
                    c *= Complex64::new(point[j], 0.0).powu(e);
                }
            }
            coeffs[alpha.get(axis) as usize] += c;
        }
        Ok(coeffs)
    }

    fn check_dim(&self, got: usize) -> Result<(), SymbolError> {
        if got == self.dimension {
            Ok(())
        } else {
            Err(SymbolError::DimensionMismatch {
                expected: self.dimension,
                got,
            })
        }
    }
}

/// Convenience constructors for the symbols used repeatedly in tests and
/// documentation.
impl PolynomialSymbol {
    /// ξ₁² + ξ₂², the Laplace symbol.
    pub fn laplacian() -> Self {
        parse_symbol("x1^2 + x2^2", 2).expect("valid")
    }

    /// i·ξ₁ + ξ₂², the heat symbol.
    pub fn heat() -> Self {
        parse_symbol("i*x1 + x2^2", 2).expect("valid")
    }

    /// ξ₁² − ξ₂², the wave (d'Alembert) symbol.
    pub fn wave() -> Self {
        parse_symbol("x1^2 - x2^2", 2).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_int;

    fn gauss(re: i64, im: i64) -> GaussRat {
        GaussRat::new(rat_int(re), rat_int(im))
    }

    #[test]
    fn like_terms_combine_and_cancel() {
        let mut s = PolynomialSymbol::zero(1);
        s.add_term(MultiIndex::new(vec![1]), gauss(1, 0));
        s.add_term(MultiIndex::new(vec![1]), gauss(1, 0));
        assert_eq!(
            s.coefficient(&MultiIndex::new(vec![1])),
            Some(&gauss(2, 0))
        );
        s.add_term(MultiIndex::new(vec![1]), gauss(-2, 0));
        assert!(s.is_zero());
    }

    #[test]
    fn wave_derivatives() {
        let w = PolynomialSymbol::wave();
        let dx = w.derivative(&MultiIndex::new(vec![1, 0])).unwrap();
        assert_eq!(dx.num_terms(), 1);
        assert_eq!(
            dx.coefficient(&MultiIndex::new(vec![1, 0])),
            Some(&gauss(2, 0))
        );

        let dyy = w.derivative(&MultiIndex::new(vec![0, 2])).unwrap();
        assert_eq!(
            dyy.coefficient(&MultiIndex::new(vec![0, 0])),
            Some(&gauss(-2, 0))
        );

        let dxxx = w.derivative(&MultiIndex::new(vec![3, 0])).unwrap();
        assert!(dxxx.is_zero());
    }

    #[test]
    fn evaluation_of_the_wave_symbol() {
        let w = PolynomialSymbol::wave();
        let on_cone = w.evaluate_real(&[1.0, 1.0]).unwrap();
        assert!(on_cone.is_zero());
        let off = w.evaluate_real(&[2.0, 1.0]).unwrap();
        assert!((off.into_complex().re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn heat_symbol_at_one_one() {
        let h = PolynomialSymbol::heat();
        let v = h.evaluate_real(&[1.0, 1.0]).unwrap().into_complex();
        assert!((v.re - 1.0).abs() < 1e-14);
        assert!((v.im - 1.0).abs() < 1e-14);
    }

    #[test]
    fn order_of_empty_symbol_is_zero() {
        assert_eq!(PolynomialSymbol::zero(3).order(), 0);
        assert_eq!(PolynomialSymbol::heat().order(), 2);
    }

    #[test]
    fn derivative_dimension_mismatch() {
        let w = PolynomialSymbol::wave();
        let err = w.derivative(&MultiIndex::new(vec![1])).unwrap_err();
        assert_eq!(
            err,
            SymbolError::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn restriction_along_axis() {
        // heat symbol along axis 1 at (1, ·): ζ ↦ i + ζ².
        let h = PolynomialSymbol::heat();
        let coeffs = h.restrict_along_axis(&[1.0, 0.0], 1).unwrap();
        assert_eq!(coeffs.len(), 3);
        assert!((coeffs[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(coeffs[1].norm() < 1e-15);
        assert!((coeffs[2] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
