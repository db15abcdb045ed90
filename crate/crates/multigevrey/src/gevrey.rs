//! Numerical verification of Gevrey-class membership on closed-form
//! witness solutions.
//!
//! Membership in G^{s,Γ}(Ω) asks for sup-norm bounds
//! ‖D^α u‖_K ≤ C^{|α|+1} k(α,Γ)^{sμ(Γ)k(α,Γ)} on compacts K. For an
//! exponential witness u = e^{i⟨x,ζ⟩} with P(ζ) = 0 every derivative is
//! closed form (D^α u = ζ^α u), and for the heat kernel the Gaussian
//! derivative recurrence (Hermite polynomials plus the evolution equation)
//! removes all numerical differentiation. Fitted constants, not predicted
//! ones: the theory's constants depend on domain geometry the estimates do
//! not quantify.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::hypo::{companion_operator, HypoError};
use crate::numeric::{fit_slope, ln_factorial, rat_to_f64, Rat};
use crate::polyhedron::{NewtonPolyhedron, PolyhedronError, RationalVector};
use crate::roots::complex_roots;
use crate::symbol::{MultiIndex, PolynomialSymbol, SymbolError};

/// Relative residual tolerance for accepting P(ζ) ≈ 0 at a witness
/// frequency (root finding at these degrees is far more accurate).
pub const WITNESS_RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Grid density per axis for sup-norm estimation of non-exponential
/// closed forms.
pub const SUP_NORM_GRID: usize = 64;

#[derive(Debug, Error)]
pub enum GevreyError {
    #[error("derivative table is empty")]
    EmptyTable,
    #[error("norm sequence is empty")]
    EmptyNorms,
    #[error("box is degenerate on axis {axis}")]
    DegenerateBox { axis: usize },
    #[error("univariate restriction along axis {axis} is constant at this base point")]
    ConstantRestriction { axis: usize },
    #[error("witness residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("operation requires an exponential witness")]
    NonExponentialWitness,
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Hypo(#[from] HypoError),
}

/// Axis-aligned closed box, one (lo, hi) interval per axis.
pub type Box = Vec<(f64, f64)>;

fn check_box(domain: &Box) -> Result<(), GevreyError> {
    for (axis, &(lo, hi)) in domain.iter().enumerate() {
        if !(lo < hi) {
            return Err(GevreyError::DegenerateBox { axis });
        }
    }
    Ok(())
}

/// Sup-norm estimates of |D^α u| over a box, per multi-index.
#[derive(Debug, Clone)]
pub struct DerivativeTable {
    pub domain: Box,
    pub entries: BTreeMap<MultiIndex, f64>,
}

/// A closed-form solution of P(D)u = 0 used as a verification witness.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessSolution {
    /// u(x) = e^{i⟨x,ζ⟩} with P(ζ) = 0.
    Exponential { frequency: Vec<Complex64> },
    /// u(t,x) = (4πt)^{-1/2} e^{-x²/(4t)}, the heat kernel; solves
    /// u_t = u_xx, the equation of the symbol iξ₁ + ξ₂².
    HeatKernel,
}

impl WitnessSolution {
    pub fn dimension(&self) -> usize {
        match self {
            WitnessSolution::Exponential { frequency } => frequency.len(),
            WitnessSolution::HeatKernel => 2,
        }
    }

    pub fn frequency(&self) -> Option<&[Complex64]> {
        match self {
            WitnessSolution::Exponential { frequency } => Some(frequency),
            WitnessSolution::HeatKernel => None,
        }
    }

    /// Sup-norm table of |D^α u| for all |α| ≤ max_order over the box.
    pub fn derivative_table(&self, domain: &Box, max_order: u32) -> Result<DerivativeTable, GevreyError> {
        check_box(domain)?;
        match self {
            WitnessSolution::Exponential { frequency } => {
                Ok(exponential_table(frequency, domain, max_order))
            }
            WitnessSolution::HeatKernel => heat_kernel_table(domain, max_order),
        }
    }
}

fn multi_indices_up_to(n: usize, max_order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut alpha = vec![0u32; n];
    loop {
        if alpha.iter().sum::<u32>() <= max_order {
            out.push(MultiIndex::new(alpha.clone()));
        }
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            if alpha[j] < max_order {
                alpha[j] += 1;
                if alpha.iter().sum::<u32>() <= max_order {
                    break;
                }
            }
            alpha[j] = 0;
            j += 1;
        }
    }
}

/// |D^α u| for u = e^{i⟨x,ζ⟩} is |ζ^α| e^{-⟨x, Im ζ⟩}; the sup over a box
/// of the linear exponent sits at a corner, so the table is closed form.
pub fn exponential_table(zeta: &[Complex64], domain: &Box, max_order: u32) -> DerivativeTable {
    let n = zeta.len();
    let sup_ln_u = sup_ln_exponential(zeta, domain);
    let mut entries = BTreeMap::new();
    for alpha in multi_indices_up_to(n, max_order) {
        let ln_zeta_pow: f64 = alpha
            .components()
            .iter()
            .zip(zeta)
            .map(|(&e, z)| {
                if e == 0 {
                    0.0
                } else if z.norm() == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    e as f64 * z.norm().ln()
                }
            })
            .sum();
        entries.insert(alpha, (ln_zeta_pow + sup_ln_u).exp());
    }
    DerivativeTable {
        domain: domain.clone(),
        entries,
    }
}

fn sup_ln_exponential(zeta: &[Complex64], domain: &Box) -> f64 {
    // sup of -⟨x, Im ζ⟩ over the box: take the favorable endpoint per axis.
    zeta.iter()
        .zip(domain)
        .map(|(z, &(lo, hi))| {
            let w = z.im;
            (-w * lo).max(-w * hi)
        })
        .sum()
}

/// Value of e^{i⟨x,ζ⟩} at a real point.
pub fn exponential_value(zeta: &[Complex64], x: &[f64]) -> Complex64 {
    let mut phase = Complex64::new(0.0, 0.0);
    for (z, &xj) in zeta.iter().zip(x) {
        phase += Complex64::new(0.0, xj) * z;
    }
    phase.exp()
}

/// Heat-kernel sup-norm table. Mixed derivatives reduce to pure space
/// derivatives through the evolution equation ∂_t u = ∂_x² u, and
/// ∂_x^m u = (4πt)^{-1/2} (-1)^m (4t)^{-m/2} H_m(x/(2√t)) e^{-x²/(4t)}
/// with physicists' Hermite polynomials. Sup taken on a dense grid.
fn heat_kernel_table(domain: &Box, max_order: u32) -> Result<DerivativeTable, GevreyError> {
    if domain.len() != 2 {
        return Err(GevreyError::DegenerateBox { axis: domain.len().min(1) });
    }
    let (t_lo, t_hi) = domain[0];
    if t_lo <= 0.0 {
        return Err(GevreyError::DegenerateBox { axis: 0 });
    }
    let (x_lo, x_hi) = domain[1];
    let grid = SUP_NORM_GRID;
    let max_m = (2 * max_order) as usize; // ∂_t^a ∂_x^b → ∂_x^{2a+b}
    let mut sup_by_m = vec![0.0f64; max_m + 1];
    for it in 0..grid {
        let t = t_lo + (t_hi - t_lo) * (it as f64 + 0.5) / grid as f64;
        let root4t = (4.0 * t).sqrt();
        for ix in 0..grid {
            let x = x_lo + (x_hi - x_lo) * (ix as f64 + 0.5) / grid as f64;
            let y = x / root4t;
            let envelope = (4.0 * std::f64::consts::PI * t).powf(-0.5) * (-y * y).exp();
            // Hermite recurrence H_{m+1} = 2yH_m − 2mH_{m-1}.
            let mut h_prev = 1.0f64;
            let mut h = 2.0 * y;
            for (m, sup) in sup_by_m.iter_mut().enumerate() {
                let h_m = match m {
                    0 => 1.0,
                    1 => h,
                    _ => {
                        let next = 2.0 * y * h - 2.0 * (m as f64 - 1.0) * h_prev;
                        h_prev = h;
                        h = next;
                        next
                    }
                };
                let value = envelope * h_m.abs() / root4t.powi(m as i32);
                if value > *sup {
                    *sup = value;
                }
            }
        }
    }
    let mut entries = BTreeMap::new();
    for alpha in multi_indices_up_to(2, max_order) {
        let m = (2 * alpha.get(0) + alpha.get(1)) as usize;
        entries.insert(alpha, sup_by_m[m]);
    }
    Ok(DerivativeTable {
        domain: domain.clone(),
        entries,
    })
}

/// Per-derivative and global fitted constants of the class bound.
#[derive(Debug, Clone)]
pub struct GevreyFit {
    pub per_alpha: BTreeMap<MultiIndex, f64>,
    pub global_constant: f64,
    /// Least-squares slope of C(α) against |α|; a growth trend means the
    /// table is escaping the class.
    pub trend_slope: f64,
}

/// Fit C(α) = (‖D^αu‖_K / k(α,Γ)^{sμ(Γ)k(α,Γ)})^{1/(|α|+1)}, with the
/// convention 0⁰ = 1 at α = 0, and the global constant as the max.
pub fn fit_gevrey_constant(
    table: &DerivativeTable,
    gamma: &NewtonPolyhedron,
    s: &Rat,
) -> Result<GevreyFit, GevreyError> {
    if table.entries.is_empty() {
        return Err(GevreyError::EmptyTable);
    }
    let mu = rat_to_f64(&gamma.formal_order()?);
    let s_f = rat_to_f64(s);
    let mut per_alpha = BTreeMap::new();
    let mut global: f64 = 0.0;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (alpha, &norm) in &table.entries {
        let k = rat_to_f64(&gamma.gauge(&RationalVector::from(alpha))?);
        let ln_denominator = if k == 0.0 { 0.0 } else { s_f * mu * k * k.ln() };
        let c = if norm == 0.0 {
            0.0
        } else {
            ((norm.ln() - ln_denominator) / (alpha.order() as f64 + 1.0)).exp()
        };
        per_alpha.insert(alpha.clone(), c);
        global = global.max(c);
        if c > 0.0 {
            xs.push(alpha.order() as f64);
            ys.push(c);
        }
    }
    let trend_slope = fit_slope(&xs, &ys).unwrap_or(0.0);
    Ok(GevreyFit {
        per_alpha,
        global_constant: global,
        trend_slope,
    })
}

/// Bound shape for iterate norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterateBound {
    /// (l!)^{sμ}
    Factorial,
    /// l^{slμ}
    Power,
}

/// Minimal C with ‖P^l u‖ ≤ C^{l+1} g(l) for all provided l, where g is
/// the selected bound shape (g(0) = 1 under both).
pub fn fit_iterate_constant(
    norms: &[f64],
    s: &Rat,
    mu: &Rat,
    mode: IterateBound,
) -> Result<f64, GevreyError> {
    if norms.is_empty() {
        return Err(GevreyError::EmptyNorms);
    }
    let s_mu = rat_to_f64(s) * rat_to_f64(mu);
    let mut c: f64 = 0.0;
    for (l, &norm) in norms.iter().enumerate() {
        if norm <= 0.0 {
            continue;
        }
        let ln_g = match mode {
            IterateBound::Factorial => s_mu * ln_factorial(l as u64),
            IterateBound::Power => {
                if l == 0 {
                    0.0
                } else {
                    s_mu * l as f64 * (l as f64).ln()
                }
            }
        };
        let candidate = ((norm.ln() - ln_g) / (l as f64 + 1.0)).exp();
        c = c.max(candidate);
    }
    Ok(c)
}

/// All exponential witnesses obtained by sliding the variable of `axis`
/// to a complex root of the univariate restriction of P at `base`.
/// Every returned frequency satisfies the residual invariant
/// |P(ζ)| ≤ tolerance · (1 + |ξ|_{Γ(P)} at |Re ζ|).
pub fn witness_exponential(
    symbol: &PolynomialSymbol,
    base: &[f64],
    axis: usize,
) -> Result<Vec<WitnessSolution>, GevreyError> {
    let coeffs = symbol.restrict_along_axis(base, axis)?;
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 || !coeffs[1..].iter().any(|c| c.norm() > 1e-13 * scale) {
        return Err(GevreyError::ConstantRestriction { axis });
    }
    let gamma = NewtonPolyhedron::of_symbol(symbol)?;
    let mut out = Vec::new();
    for root in complex_roots(&coeffs) {
        let mut zeta: Vec<Complex64> =
            base.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        zeta[axis] = root;
        let residual = symbol.evaluate(&zeta)?.modulus();
        let re_abs: Vec<f64> = zeta.iter().map(|z| z.re.abs()).collect();
        let allowance = WITNESS_RESIDUAL_TOLERANCE * (1.0 + gamma.weight(&re_abs)?);
        if residual > allowance {
            return Err(GevreyError::ResidualTooLarge {
                residual,
                tolerance: allowance,
            });
        }
        out.push(WitnessSolution::Exponential { frequency: zeta });
    }
    Ok(out)
}

/// One row of the iterate growth table: ‖Q^j u‖_{L²(ω)} against the bound
/// C^{j+1} j^{σj}.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub power: u32,
    pub norm: f64,
}

/// Outcome of the companion-iterate growth check on one witness.
#[derive(Debug, Clone)]
pub struct IterateGrowth {
    pub rows: Vec<GrowthRow>,
    /// Minimal C with norm ≤ C^{j+1} j^{σj} for all rows (j⁰ = 1 at j=0).
    pub fitted_constant: f64,
    pub companion_at_frequency: Complex64,
    pub witness_l2: f64,
}

/// ‖e^{i⟨·,ζ⟩}‖_{L²(ω)}: a product of one-dimensional integrals of
/// e^{-2 x w} with w = Im ζ_j.
pub fn exponential_l2_norm(zeta: &[Complex64], omega: &Box) -> Result<f64, GevreyError> {
    check_box(omega)?;
    let mut square = 1.0f64;
    for (z, &(lo, hi)) in zeta.iter().zip(omega) {
        let w = z.im;
        let integral = if w == 0.0 {
            hi - lo
        } else {
            ((-2.0 * w * lo).exp() - (-2.0 * w * hi).exp()) / (2.0 * w)
        };
        square *= integral;
    }
    Ok(square.sqrt())
}

/// Growth table of ‖Q_H^j(D)u‖_{L²(ω)} for an exponential witness, where
/// the identity Q_H^j(D)u = Q_H(ζ)^j u makes every row closed form, and
/// the fitted constant of the bound C^{j+1} j^{σj}.
pub fn iterate_growth_check(
    symbol: &PolynomialSymbol,
    h: &NewtonPolyhedron,
    sigma: u64,
    witness: &WitnessSolution,
    omega: &Box,
    j_max: u32,
) -> Result<IterateGrowth, GevreyError> {
    let Some(zeta) = witness.frequency() else {
        return Err(GevreyError::NonExponentialWitness);
    };
    // Re-check the residual invariant at use time.
    let residual = symbol.evaluate(zeta)?.modulus();
    let gamma = NewtonPolyhedron::of_symbol(symbol)?;
    let re_abs: Vec<f64> = zeta.iter().map(|z| z.re.abs()).collect();
    let allowance = WITNESS_RESIDUAL_TOLERANCE * (1.0 + gamma.weight(&re_abs)?);
    if residual > allowance {
        return Err(GevreyError::ResidualTooLarge {
            residual,
            tolerance: allowance,
        });
    }

    let q = companion_operator(h, sigma)?;
    let q_at = q.evaluate(zeta)?.into_complex();
    let u_l2 = exponential_l2_norm(zeta, omega)?;

    let mut rows = Vec::with_capacity(j_max as usize + 1);
    let mut c: f64 = 0.0;
    let q_mod = q_at.norm();
    for j in 0..=j_max {
        let norm = q_mod.powi(j as i32) * u_l2;
        rows.push(GrowthRow { power: j, norm });
        if norm > 0.0 {
            let ln_bound_free = if j == 0 {
                0.0
            } else {
                sigma as f64 * j as f64 * (j as f64).ln()
            };
            c = c.max(((norm.ln() - ln_bound_free) / (j as f64 + 1.0)).exp());
        }
    }
    Ok(IterateGrowth {
        rows,
        fitted_constant: c,
        companion_at_frequency: q_at,
        witness_l2: u_l2,
    })
}

/// Run the growth check over a family of witnesses; reports per-witness
/// constants and their supremum.
#[derive(Debug, Clone)]
pub struct IterateGrowthScan {
    pub per_witness: Vec<f64>,
    pub sup_constant: f64,
}

pub fn iterate_growth_scan(
    symbol: &PolynomialSymbol,
    h: &NewtonPolyhedron,
    sigma: u64,
    witnesses: &[WitnessSolution],
    omega: &Box,
    j_max: u32,
) -> Result<IterateGrowthScan, GevreyError> {
    let mut per_witness = Vec::with_capacity(witnesses.len());
    let mut sup = 0.0f64;
    for w in witnesses {
        let g = iterate_growth_check(symbol, h, sigma, w, omega, j_max)?;
        sup = sup.max(g.fitted_constant);
        per_witness.push(g.fitted_constant);
    }
    Ok(IterateGrowthScan {
        per_witness,
        sup_constant: sup,
    })
}

/// Deterministic family of exponential witnesses for a symbol: bases slide
/// along the first axis, roots are taken along the last axis, and the
/// real parts stay within `re_cap`.
pub fn witness_family(
    symbol: &PolynomialSymbol,
    count: usize,
    re_cap: f64,
) -> Result<Vec<WitnessSolution>, GevreyError> {
    let n = symbol.dimension();
    let axis = n - 1;
    let mut out = Vec::new();
    let bases = count.max(1);
    let mut b = 0;
    while out.len() < count && b < 4 * bases {
        let t = 1.0 + 9.0 * (b as f64) / (bases as f64);
        b += 1;
        let mut base = vec![0.0; n];
        base[0] = t;
        let witnesses = match witness_exponential(symbol, &base, axis) {
            Ok(w) => w,
            Err(GevreyError::ConstantRestriction { .. }) => continue,
            Err(e) => return Err(e),
        };
        for w in witnesses {
            let ok = w
                .frequency()
                .expect("exponential")
                .iter()
                .all(|z| z.re.abs() <= re_cap);
            if ok && out.len() < count {
                out.push(w);
            }
        }
    }
    if out.is_empty() {
        return Err(GevreyError::ConstantRestriction { axis });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::SamplingConfig;
    use crate::hypo::hypoellipticity_polyhedron;
    use crate::numeric::{rat, rat_int};

    fn unit_box(n: usize) -> Box {
        vec![(0.0, 1.0); n]
    }

    #[test]
    fn constant_function_fit() {
        // u ≡ 1: table from ζ = 0.
        let zeta = vec![Complex64::new(0.0, 0.0); 2];
        let table = exponential_table(&zeta, &unit_box(2), 4);
        let gamma = NewtonPolyhedron::of_symbol(&PolynomialSymbol::wave()).unwrap();
        let fit = fit_gevrey_constant(&table, &gamma, &rat_int(1)).unwrap();
        assert!((fit.global_constant - 1.0).abs() < 1e-12);
        assert!((fit.per_alpha[&MultiIndex::zero(2)] - 1.0).abs() < 1e-12);
        assert_eq!(fit.per_alpha[&MultiIndex::new(vec![1, 1])], 0.0);
    }

    #[test]
    fn plane_wave_fit_against_wave_polyhedron() {
        // u = e^{x₁+x₂} on [0,1]²: ‖D^αu‖ = e², C(α) = (e²/k^{2k})^{1/(|α|+1)}.
        let zeta = vec![Complex64::new(0.0, -1.0); 2];
        let table = exponential_table(&zeta, &unit_box(2), 6);
        let gamma = NewtonPolyhedron::of_symbol(&PolynomialSymbol::wave()).unwrap();
        let fit = fit_gevrey_constant(&table, &gamma, &rat_int(1)).unwrap();
        let e2 = std::f64::consts::E.powi(2);
        for (alpha, &c) in &fit.per_alpha {
            let k = alpha.order() as f64 / 2.0;
            let expected = if k == 0.0 {
                e2
            } else {
                (e2 / k.powf(2.0 * k)).powf(1.0 / (alpha.order() as f64 + 1.0))
            };
            let expected = if alpha.order() == 0 { e2 } else { expected };
            assert!(
                (c - expected).abs() < 1e-9 * expected.max(1.0),
                "α = {alpha:?}: {c} vs {expected}"
            );
        }
        assert!(fit.trend_slope < 0.1);
    }

    #[test]
    fn iterate_fit_with_zero_tail() {
        let norms = [3.5, 0.0, 0.0, 0.0];
        let c = fit_iterate_constant(&norms, &rat_int(1), &rat_int(2), IterateBound::Factorial)
            .unwrap();
        assert!((c - 3.5).abs() < 1e-12);
    }

    #[test]
    fn iterate_fit_modes_agree_within_stirling_factor() {
        // Geometric norms; factorial and power fits differ by at most e^{sμ}.
        let norms: Vec<f64> = (0..10).map(|l| 2.0f64.powi(l)).collect();
        let s = rat_int(2);
        let mu = rat(3, 2);
        let cf = fit_iterate_constant(&norms, &s, &mu, IterateBound::Factorial).unwrap();
        let cp = fit_iterate_constant(&norms, &s, &mu, IterateBound::Power).unwrap();
        let factor = (rat_to_f64(&s) * rat_to_f64(&mu)).exp();
        assert!(cp <= cf * (1.0 + 1e-12));
        assert!(cf <= cp * factor * (1.0 + 1e-12), "cf={cf} cp={cp} factor={factor}");
    }

    #[test]
    fn laplacian_witnesses() {
        // base (·, 1), axis 1 → ζ₁² + 1 = 0 → ±i.
        let lap = PolynomialSymbol::laplacian();
        let ws = witness_exponential(&lap, &[0.0, 1.0], 0).unwrap();
        assert_eq!(ws.len(), 2);
        for w in &ws {
            let z = w.frequency().unwrap()[0];
            assert!(z.re.abs() < 1e-12);
            assert!((z.im.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn heat_witnesses() {
        // base (1, ·), axis 2 → ζ₂² = −i → ζ₂ = ±e^{-iπ/4}.
        let heat = PolynomialSymbol::heat();
        let ws = witness_exponential(&heat, &[1.0, 0.0], 1).unwrap();
        assert_eq!(ws.len(), 2);
        for w in &ws {
            let z = w.frequency().unwrap()[1];
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wave_witnesses_are_real() {
        let wave = PolynomialSymbol::wave();
        let ws = witness_exponential(&wave, &[0.0, 1.0], 0).unwrap();
        for w in &ws {
            let z = w.frequency().unwrap()[0];
            assert!(z.im.abs() < 1e-12); // real zeros: the non-hypoelliptic signature
        }
    }

    #[test]
    fn growth_check_on_a_heat_witness() {
        let heat = PolynomialSymbol::heat();
        let cfg = SamplingConfig::default();
        let h = hypoellipticity_polyhedron(&heat, &cfg, 4, &rat_int(2)).unwrap();
        let ws = witness_exponential(&heat, &[1.0, 0.0], 1).unwrap();
        let omega = unit_box(2);
        let g = iterate_growth_check(&heat, &h.polyhedron, h.sigma, &ws[0], &omega, 20).unwrap();
        // On the zero variety of the heat symbol Q_H(ζ) = 1 + ζ₁² + ζ₂⁴ = 1.
        assert!((g.companion_at_frequency - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert_eq!(g.rows.len(), 21);
        assert!((g.rows[0].norm - g.witness_l2).abs() < 1e-12);
        assert!(g.fitted_constant.is_finite());
        // j = 0 anchors C at ‖u‖ when the table is flat.
        assert!(g.fitted_constant >= g.witness_l2 - 1e-12);
    }

    #[test]
    fn growth_check_requires_exponential_witness() {
        let heat = PolynomialSymbol::heat();
        let cfg = SamplingConfig::default();
        let h = hypoellipticity_polyhedron(&heat, &cfg, 4, &rat_int(2)).unwrap();
        let err = iterate_growth_check(
            &heat,
            &h.polyhedron,
            h.sigma,
            &WitnessSolution::HeatKernel,
            &unit_box(2),
            3,
        )
        .unwrap_err();
        assert!(matches!(err, GevreyError::NonExponentialWitness));
    }

    #[test]
    fn heat_kernel_table_small_orders() {
        // ∂_x u at the grid scale: sanity against a finite difference.
        let domain = vec![(1.0, 2.0), (-1.0, 1.0)];
        let table = WitnessSolution::HeatKernel
            .derivative_table(&domain, 2)
            .unwrap();
        let u = |t: f64, x: f64| {
            (4.0 * std::f64::consts::PI * t).powf(-0.5) * (-x * x / (4.0 * t)).exp()
        };
        // |∂_x u| at (1, grid points) has max near |x| where Gaussian slope peaks.
        let eps = 1e-6;
        let mut fd_sup = 0.0f64;
        for i in 0..400 {
            let x = -1.0 + 2.0 * (i as f64 + 0.5) / 400.0;
            let d = (u(1.0, x + eps) - u(1.0, x - eps)) / (2.0 * eps);
            fd_sup = fd_sup.max(d.abs());
        }
        let table_sup = table.entries[&MultiIndex::new(vec![0, 1])];
        assert!(
            (table_sup - fd_sup).abs() < 1e-2 * fd_sup,
            "table {table_sup} vs fd {fd_sup}"
        );
        // ∂_t = ∂_x²: the (1,0) and (0,2) entries agree exactly.
        assert_eq!(
            table.entries[&MultiIndex::new(vec![1, 0])],
            table.entries[&MultiIndex::new(vec![0, 2])]
        );
    }

    #[test]
    fn witness_family_is_deterministic_and_bounded() {
        let heat = PolynomialSymbol::heat();
        let a = witness_family(&heat, 50, 10.0).unwrap();
        let b = witness_family(&heat, 50, 10.0).unwrap();
        assert_eq!(a.len(), 50);
        assert_eq!(a, b);
        for w in &a {
            for z in w.frequency().unwrap() {
                assert!(z.re.abs() <= 10.0);
            }
        }
    }
}
