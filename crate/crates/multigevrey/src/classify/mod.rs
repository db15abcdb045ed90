//! Evidence-based classification of symbols: multi-quasiellipticity and
//! hypoellipticity.
//!
//! Both properties are asymptotic inequalities over R^n, so the verdicts
//! here are sampling evidence with certificates, not proofs. The sweep is
//! geometric in radius, layered in direction (see [`directions`]), and
//! fully determined by the [`SamplingConfig`] including its seed.
//!
//! The "bounded" decision rule, used everywhere a sequence of per-radius
//! values must be judged: the fitted log-log slope must not exceed
//! `growth_tolerance`, and the last value must not exceed ten times the
//! median.

pub mod directions;
pub mod probe;

mod dist;

pub use dist::{distance_proxy, distance_upper_bound, DerivativeFamily, DistanceError};

use serde::Serialize;

use crate::numeric::{fit_slope, lower_median, Rat};
use crate::polyhedron::{NewtonPolyhedron, RationalVector};
use crate::symbol::{CompiledSymbol, PolynomialSymbol, SymbolError};

/// Parameters of the radius/direction sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub radii_count: usize,
    pub directions_count: usize,
    pub seed: u64,
    /// Log-log slope threshold of the bounded rule.
    pub growth_tolerance: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            r_min: 10.0,
            r_max: 1e6,
            radii_count: 13,
            directions_count: 48,
            seed: 0,
            growth_tolerance: 0.05,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max) {
            return Err("require 0 < r_min < r_max".into());
        }
        if self.radii_count < 2 || self.directions_count < 2 {
            return Err("require at least two radii and two directions".into());
        }
        if !(self.growth_tolerance > 0.0) {
            return Err("growth tolerance must be positive".into());
        }
        Ok(())
    }

    /// Geometric radius ladder r_k = r_min (r_max/r_min)^{k/(K-1)}.
    pub fn radii(&self) -> Vec<f64> {
        let k = self.radii_count;
        (0..k)
            .map(|i| self.r_min * (self.r_max / self.r_min).powf(i as f64 / (k - 1) as f64))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Holds,
    Fails,
    Inconclusive,
}

/// Why a verdict failed (serialized into reports).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NonRegularPolyhedron,
    QuasiPrincipalDegeneracy,
    UnboundedWeightRatio,
    RealZerosAtInfinity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub radius: f64,
    pub value: f64,
}

/// Outcome of a sampled inequality test.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationVerdict {
    pub kind: VerdictKind,
    /// Fitted constant of the tested inequality (sup of the sampled ratio).
    pub fitted_constant: f64,
    /// Unit direction where the test fails worst; present whenever
    /// `kind == Fails`.
    pub witness_direction: Option<Vec<f64>>,
    pub reason: Option<FailureReason>,
    /// Per-radius worst values of the sampled ratio.
    pub trace: Vec<TracePoint>,
}

/// Hypoellipticity evidence: the verdict plus the fitted exponents d̂
/// (growth of the zero-variety distance surrogate) and ρ̂ (decay rate of
/// the derivative ratios).
#[derive(Debug, Clone, PartialEq)]
pub struct HypoellipticityReport {
    pub verdict: ClassificationVerdict,
    pub d_hat: Option<f64>,
    pub rho_hat: Option<f64>,
    /// Per-radius minimum of the distance surrogate (log scale fit input).
    pub delta_trace: Vec<TracePoint>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ClassifyError {
    #[error("operation requires a non-zero symbol")]
    ZeroSymbol,
    #[error("quasi-principal part requires a strictly positive weight vector")]
    NonPositiveWeight,
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("invalid sampling configuration: {0}")]
    BadConfig(String),
}

/// The q-quasi-principal part: the sub-symbol of terms attaining
/// d_q = max_α ⟨q,α⟩, compared exactly.
pub fn quasi_principal_part(
    symbol: &PolynomialSymbol,
    q: &RationalVector,
) -> Result<PolynomialSymbol, ClassifyError> {
    if symbol.is_zero() {
        return Err(ClassifyError::ZeroSymbol);
    }
    if q.dimension() != symbol.dimension() {
        return Err(ClassifyError::Symbol(SymbolError::DimensionMismatch {
            expected: symbol.dimension(),
            got: q.dimension(),
        }));
    }
    if !q
        .components()
        .iter()
        .all(num_traits::Signed::is_positive)
    {
        return Err(ClassifyError::NonPositiveWeight);
    }
    let level = symbol
        .exponents()
        .map(|alpha| alpha.pair(q.components()))
        .max()
        .expect("non-zero symbol has terms");
    let terms = symbol
        .terms()
        .filter(|(alpha, _)| alpha.pair(q.components()) == level)
        .map(|(a, c)| (a.clone(), c.clone()));
    Ok(PolynomialSymbol::from_terms(symbol.dimension(), terms).expect("dimensions agree"))
}

/// The quasi-homogeneity level d_q = max_α ⟨q,α⟩ of a symbol.
pub fn quasi_order(symbol: &PolynomialSymbol, q: &RationalVector) -> Option<Rat> {
    symbol.exponents().map(|a| a.pair(q.components())).max()
}

/// Degeneracy directions of all facet quasi-principal parts (used to seed
/// the sweep grids of both tests).
fn facet_degeneracy_directions(
    symbol: &PolynomialSymbol,
    gamma: &NewtonPolyhedron,
    cfg: &SamplingConfig,
) -> Vec<Vec<f64>> {
    let mut special: Vec<Vec<f64>> = Vec::new();
    let Ok(normals) = gamma.facet_normals() else {
        return special;
    };
    for q in normals {
        if !q
            .components()
            .iter()
            .all(num_traits::Signed::is_positive)
        {
            continue;
        }
        let Ok(part) = quasi_principal_part(symbol, q) else {
            continue;
        };
        let dirs = probe::quasi_sphere_zero_directions(&part.compile(), q, cfg);
        special.extend(dirs);
    }
    special
}

/// Shared sweep data: directions × radii sample points.
struct Sweep {
    directions: Vec<Vec<f64>>,
    radii: Vec<f64>,
}

impl Sweep {
    fn point(&self, dir: usize, rad: usize) -> Vec<f64> {
        self.directions[dir]
            .iter()
            .map(|&u| u * self.radii[rad])
            .collect()
    }
}

/// Bounded-rule outcome on a per-radius series of ln-values.
struct BoundedCheck {
    bounded: bool,
    slope: f64,
}

fn bounded_rule(ln_radii: &[f64], ln_values: &[f64], tolerance: f64) -> BoundedCheck {
    let finite_count = ln_values.iter().filter(|v| v.is_finite()).count();
    if finite_count < 3 {
        // Ratio vanishes almost everywhere: trivially bounded.
        return BoundedCheck {
            bounded: true,
            slope: 0.0,
        };
    }
    let slope = fit_slope(ln_radii, ln_values).unwrap_or(f64::INFINITY);
    let median = lower_median(ln_values).unwrap_or(f64::NEG_INFINITY);
    let last = *ln_values.last().expect("non-empty series");
    let last_ok = !last.is_finite() || last <= median + 10f64.ln();
    BoundedCheck {
        bounded: slope <= tolerance && last_ok,
        slope,
    }
}

/// Sampling evidence for Definition of multi-quasiellipticity:
/// |ξ|_P ≤ C (1 + |P(ξ)|) on R^n.
///
/// A non-regular Newton polyhedron fails immediately (the definition
/// presupposes regularity); the sweep still runs so the verdict carries a
/// witness direction and trace.
pub fn multi_quasielliptic_test(
    symbol: &PolynomialSymbol,
    cfg: &SamplingConfig,
) -> Result<ClassificationVerdict, ClassifyError> {
    cfg.validate().map_err(ClassifyError::BadConfig)?;
    if symbol.is_zero() {
        return Err(ClassifyError::ZeroSymbol);
    }
    let gamma = NewtonPolyhedron::of_symbol(symbol).expect("exponents are valid points");
    let special = facet_degeneracy_directions(symbol, &gamma, cfg);
    let sweep = Sweep {
        directions: directions::direction_grid(symbol.dimension(), cfg, &special),
        radii: cfg.radii(),
    };
    let compiled = symbol.compile();
    let ln_radii: Vec<f64> = sweep.radii.iter().map(|r| r.ln()).collect();

    // ln ratio(ξ) = ln |ξ|_P − ln(1 + |P(ξ)|), per direction per radius.
    let mut per_dir: Vec<Vec<f64>> = Vec::with_capacity(sweep.directions.len());
    for d in 0..sweep.directions.len() {
        let mut series = Vec::with_capacity(sweep.radii.len());
        for r in 0..sweep.radii.len() {
            let xi = sweep.point(d, r);
            let ln_weight = gamma.ln_weight(&xi).expect("dimension matches");
            let ln_denom = ln_one_plus_modulus(&compiled, &xi);
            series.push(ln_weight - ln_denom);
        }
        per_dir.push(series);
    }

    let radius_max: Vec<f64> = (0..sweep.radii.len())
        .map(|r| {
            per_dir
                .iter()
                .map(|s| s[r])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let trace: Vec<TracePoint> = sweep
        .radii
        .iter()
        .zip(&radius_max)
        .map(|(&radius, &value)| TracePoint { radius, value })
        .collect();
    let fitted_constant = radius_max
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
        .exp();

    let check = bounded_rule(&ln_radii, &radius_max, cfg.growth_tolerance);

    // Worst direction: largest fitted slope, ties to the earliest (and so
    // to canonical degeneracy directions).
    let witness = per_dir
        .iter()
        .enumerate()
        .map(|(d, s)| (d, fit_slope(&ln_radii, s).unwrap_or(f64::NEG_INFINITY)))
        .max_by(|a, b| a.1.partial_cmp(&b.1).expect("comparable slopes").then(std::cmp::Ordering::Greater))
        .map(|(d, _)| sweep.directions[d].clone());

    if !gamma.is_regular() {
        return Ok(ClassificationVerdict {
            kind: VerdictKind::Fails,
            fitted_constant,
            witness_direction: witness,
            reason: Some(FailureReason::NonRegularPolyhedron),
            trace,
        });
    }

    if check.bounded {
        return Ok(ClassificationVerdict {
            kind: VerdictKind::Holds,
            fitted_constant,
            witness_direction: None,
            reason: None,
            trace,
        });
    }

    let kind = if check.slope <= 3.0 * cfg.growth_tolerance {
        VerdictKind::Inconclusive
    } else {
        VerdictKind::Fails
    };
    let reason = if kind == VerdictKind::Fails {
        let near_probe = witness.as_ref().is_some_and(|w| {
            special.iter().any(|s| {
                s.iter()
                    .zip(w)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
                    < 1e-6
            })
        });
        Some(if near_probe {
            FailureReason::QuasiPrincipalDegeneracy
        } else {
            FailureReason::UnboundedWeightRatio
        })
    } else {
        None
    };
    Ok(ClassificationVerdict {
        kind,
        fitted_constant,
        witness_direction: witness,
        reason,
        trace,
    })
}

fn ln_one_plus_modulus(symbol: &CompiledSymbol, xi: &[f64]) -> f64 {
    let ln_p = symbol.evaluate_real(xi).ln_modulus();
    // ln(1 + e^x), stable at both ends.
    if ln_p == f64::NEG_INFINITY {
        0.0
    } else if ln_p > 50.0 {
        ln_p + (-ln_p).exp().ln_1p()
    } else {
        ln_p.exp().ln_1p()
    }
}

/// Absolute distance cap used in the real-zeros-at-infinity detector: a
/// bounded complex zero distance at radii 10..10⁶ means the zero variety
/// hugs the real sweep.
const REAL_ZERO_DISTANCE_CAP: f64 = 10.0;

/// Sampling evidence for hypoellipticity.
///
/// Fails when some direction shows |P(ξ)|/|ξ|_{Γ(P)} → 0 with complex zeros
/// at bounded distance (real zeros at infinity). Holds when every
/// derivative ratio |∂^α P|/|P| decays with fitted positive ρ̂ and the
/// distance surrogate grows with fitted positive d̂. Otherwise
/// inconclusive. Evidence, not proof.
pub fn hypoellipticity_test(
    symbol: &PolynomialSymbol,
    cfg: &SamplingConfig,
) -> Result<HypoellipticityReport, ClassifyError> {
    cfg.validate().map_err(ClassifyError::BadConfig)?;
    if symbol.is_zero() {
        return Err(ClassifyError::ZeroSymbol);
    }
    let gamma = NewtonPolyhedron::of_symbol(symbol).expect("exponents are valid points");
    let special = facet_degeneracy_directions(symbol, &gamma, cfg);
    let sweep = Sweep {
        directions: directions::direction_grid(symbol.dimension(), cfg, &special),
        radii: cfg.radii(),
    };
    let ln_radii: Vec<f64> = sweep.radii.iter().map(|r| r.ln()).collect();
    let family = DerivativeFamily::new(symbol);
    let compiled = symbol.compile();
    let n_dirs = sweep.directions.len();
    let n_rad = sweep.radii.len();
    let n_derivs = family.derivative_count();

    // Evaluate everything once: ln|P|, ln|∂^α P| (α ≠ 0), ln δ per point.
    let mut ln_p = vec![vec![0.0f64; n_rad]; n_dirs];
    let mut ln_weight = vec![vec![0.0f64; n_rad]; n_dirs];
    let mut ln_delta = vec![vec![0.0f64; n_rad]; n_dirs];
    let mut ln_ratio = vec![vec![vec![0.0f64; n_rad]; n_dirs]; n_derivs];
    for d in 0..n_dirs {
        for r in 0..n_rad {
            let xi = sweep.point(d, r);
            let lp = compiled.evaluate_real(&xi).ln_modulus();
            ln_p[d][r] = lp;
            ln_weight[d][r] = gamma.ln_weight(&xi).expect("dimension matches");
            let derivs = family.ln_derivative_moduli(&xi);
            let mut best_delta = f64::INFINITY;
            for (k, ld) in derivs.iter().enumerate() {
                ln_ratio[k][d][r] = ld - lp;
                if *ld != f64::NEG_INFINITY {
                    let order = family.derivative_order(k) as f64;
                    best_delta = best_delta.min((lp - ld) / order);
                }
            }
            ln_delta[d][r] = best_delta; // −∞ exactly when P(ξ) = 0
        }
    }

    // Fails detector: strong decay of |P|/weight plus bounded complex-zero
    // distance at the largest radii.
    let decay_threshold = -10.0 * cfg.growth_tolerance;
    let mut fail_candidates: Vec<(usize, f64)> = Vec::new();
    for d in 0..n_dirs {
        let series: Vec<f64> = (0..n_rad).map(|r| ln_p[d][r] - ln_weight[d][r]).collect();
        let vanishes = series.iter().all(|&v| v <= 1e-9f64.ln());
        let slope = fit_slope(&ln_radii, &series).unwrap_or(0.0);
        if !(vanishes || slope <= decay_threshold) {
            continue;
        }
        let near = (0..2).all(|back| {
            let xi = sweep.point(d, n_rad - 1 - back);
            match distance_upper_bound(symbol, &xi) {
                Ok(dist) => dist <= REAL_ZERO_DISTANCE_CAP,
                Err(_) => false,
            }
        });
        if near {
            let rank = if vanishes { f64::NEG_INFINITY } else { slope };
            fail_candidates.push((d, rank));
        }
    }

    let delta_trace: Vec<TracePoint> = (0..n_rad)
        .map(|r| TracePoint {
            radius: sweep.radii[r],
            value: (0..n_dirs).map(|d| ln_delta[d][r]).fold(f64::INFINITY, f64::min),
        })
        .collect();

    // Worst derivative ratio per radius (the verdict trace).
    let ratio_max: Vec<f64> = (0..n_rad)
        .map(|r| {
            (0..n_derivs)
                .map(|k| {
                    (0..n_dirs)
                        .map(|d| ln_ratio[k][d][r])
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let trace: Vec<TracePoint> = sweep
        .radii
        .iter()
        .zip(&ratio_max)
        .map(|(&radius, &value)| TracePoint { radius, value })
        .collect();

    if let Some(&(d, _)) = fail_candidates
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("comparable").then(std::cmp::Ordering::Less))
    {
        return Ok(HypoellipticityReport {
            verdict: ClassificationVerdict {
                kind: VerdictKind::Fails,
                fitted_constant: f64::INFINITY,
                witness_direction: Some(sweep.directions[d].clone()),
                reason: Some(FailureReason::RealZerosAtInfinity),
                trace,
            },
            d_hat: None,
            rho_hat: None,
            delta_trace,
        });
    }

    // ρ̂: per derivative, fit the per-radius max of ln|∂^αP| − ln|P|; the
    // decay exponent of condition-(iv) style ratios is −slope/|α|.
    let mut rho_hat = f64::INFINITY;
    let mut any_unfit = false;
    for k in 0..n_derivs {
        let series: Vec<f64> = (0..n_rad)
            .map(|r| {
                (0..n_dirs)
                    .map(|d| ln_ratio[k][d][r])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        if series.iter().any(|v| *v == f64::INFINITY) {
            any_unfit = true; // P vanished somewhere without triggering fails
            continue;
        }
        if series.iter().filter(|v| v.is_finite()).count() < 3 {
            continue; // derivative ratio ≡ 0: no constraint
        }
        let slope = fit_slope(&ln_radii, &series).unwrap_or(f64::INFINITY);
        rho_hat = rho_hat.min(-slope / family.derivative_order(k) as f64);
    }
    if rho_hat == f64::INFINITY {
        rho_hat = f64::NAN;
        any_unfit = true;
    }

    // d̂: growth of the worst-direction distance surrogate over the upper
    // half of the ladder (“stabilized” regime).
    let half = n_rad / 2;
    let tail_x: Vec<f64> = ln_radii[half..].to_vec();
    let tail_y: Vec<f64> = delta_trace[half..].iter().map(|t| t.value).collect();
    let d_hat = if tail_y.iter().any(|v| *v == f64::NEG_INFINITY) {
        f64::NEG_INFINITY
    } else {
        fit_slope(&tail_x, &tail_y).unwrap_or(f64::NEG_INFINITY)
    };

    let holds = !any_unfit && rho_hat > cfg.growth_tolerance && d_hat > cfg.growth_tolerance;

    // Fitted constant of the decay inequality at the fitted ρ̂:
    // sup |∂^αP|/|P| · |ξ|^{ρ̂|α|}.
    let fitted_constant = if holds {
        let mut c = f64::NEG_INFINITY;
        for k in 0..n_derivs {
            let order = family.derivative_order(k) as f64;
            for d in 0..n_dirs {
                for r in 0..n_rad {
                    let v = ln_ratio[k][d][r] + rho_hat * order * ln_radii[r];
                    c = c.max(v);
                }
            }
        }
        c.exp()
    } else {
        f64::NAN
    };

    let kind = if holds {
        VerdictKind::Holds
    } else {
        VerdictKind::Inconclusive
    };
    Ok(HypoellipticityReport {
        verdict: ClassificationVerdict {
            kind,
            fitted_constant,
            witness_direction: None,
            reason: None,
            trace,
        },
        d_hat: if d_hat.is_finite() { Some(d_hat) } else { None },
        rho_hat: if rho_hat.is_finite() { Some(rho_hat) } else { None },
        delta_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use crate::symbol::parse_symbol;

    fn rv(components: Vec<Rat>) -> RationalVector {
        RationalVector::new(components).unwrap()
    }

    #[test]
    fn quasi_principal_of_the_wave_symbol() {
        let wave = PolynomialSymbol::wave();
        let part = quasi_principal_part(&wave, &rv(vec![rat_int(1), rat_int(1)])).unwrap();
        assert_eq!(part, wave); // homogeneous: both terms at level 2
    }

    #[test]
    fn quasi_principal_of_the_heat_symbol() {
        let heat = PolynomialSymbol::heat();
        let part = quasi_principal_part(&heat, &rv(vec![rat_int(1), rat(1, 2)])).unwrap();
        assert_eq!(part, heat); // both terms at level 1
    }

    #[test]
    fn quasi_principal_of_the_fourteen_term_symbol() {
        let text = "i*x1^5 + i*x1*x2^4 - 4*i*x1^4*x2 - 4*i*x1^2*x2^3 + 6*i*x1^3*x2^2 \
                    + i*x1^3 + i*x1*x2^2 + x1^4*x2^2 + x2^6 - 4*x1^3*x2^3 - 4*x1*x2^5 \
                    + 6*x1^2*x2^4 + x2^2*x1^2 + x2^4";
        let p = parse_symbol(text, 2).unwrap();
        let part = quasi_principal_part(&p, &rv(vec![rat_int(1), rat_int(1)])).unwrap();
        let expected = parse_symbol("x2^2*(x1 - x2)^4", 2).unwrap();
        assert_eq!(part, expected);
    }

    #[test]
    fn quasi_principal_rejects_zero_symbol() {
        let z = PolynomialSymbol::zero(2);
        assert_eq!(
            quasi_principal_part(&z, &rv(vec![rat_int(1), rat_int(1)])),
            Err(ClassifyError::ZeroSymbol)
        );
    }

    #[test]
    fn laplacian_is_multi_quasielliptic_with_unit_constant() {
        let cfg = SamplingConfig::default();
        let v = multi_quasielliptic_test(&PolynomialSymbol::laplacian(), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::Holds);
        assert!(v.fitted_constant <= 1.0 + 1e-9, "C = {}", v.fitted_constant);
    }

    #[test]
    fn heat_symbol_is_multi_quasielliptic() {
        let cfg = SamplingConfig::default();
        let v = multi_quasielliptic_test(&PolynomialSymbol::heat(), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::Holds);
    }

    #[test]
    fn wave_symbol_fails_both_tests_along_the_diagonal() {
        let cfg = SamplingConfig::default();
        let wave = PolynomialSymbol::wave();
        let mq = multi_quasielliptic_test(&wave, &cfg).unwrap();
        assert_eq!(mq.kind, VerdictKind::Fails);
        let w = mq.witness_direction.expect("fails carries a witness");
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((w[0] - inv).abs() < 1e-6 && (w[1] - inv).abs() < 1e-6, "{w:?}");

        let hypo = hypoellipticity_test(&wave, &cfg).unwrap();
        assert_eq!(hypo.verdict.kind, VerdictKind::Fails);
        let w = hypo.verdict.witness_direction.expect("witness");
        assert!((w[0] - inv).abs() < 1e-6 && (w[1].abs() - inv).abs() < 1e-6);
    }

    #[test]
    fn laplacian_hypoellipticity_exponents() {
        let cfg = SamplingConfig::default();
        let r = hypoellipticity_test(&PolynomialSymbol::laplacian(), &cfg).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Holds);
        let rho = r.rho_hat.unwrap();
        assert!((rho - 1.0).abs() <= 0.1, "rho_hat = {rho}");
        assert!(r.d_hat.unwrap() > 0.5);
    }

    #[test]
    fn heat_hypoellipticity_exponents() {
        let cfg = SamplingConfig::default();
        let r = hypoellipticity_test(&PolynomialSymbol::heat(), &cfg).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Holds);
        let rho = r.rho_hat.unwrap();
        assert!((rho - 0.5).abs() <= 0.1, "rho_hat = {rho}");
    }

    #[test]
    fn non_regular_symbol_fails_mq_with_reason() {
        // ξ₁²ξ₂² alone: segment polyhedron, not regular.
        let p = parse_symbol("x1^2*x2^2", 2).unwrap();
        let cfg = SamplingConfig::default();
        let v = multi_quasielliptic_test(&p, &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::Fails);
        assert_eq!(v.reason, Some(FailureReason::NonRegularPolyhedron));
        assert!(v.witness_direction.is_some());
    }

    #[test]
    fn verdicts_are_deterministic() {
        let cfg = SamplingConfig {
            seed: 42,
            ..SamplingConfig::default()
        };
        let a = multi_quasielliptic_test(&PolynomialSymbol::heat(), &cfg).unwrap();
        let b = multi_quasielliptic_test(&PolynomialSymbol::heat(), &cfg).unwrap();
        assert_eq!(a, b);
        let ha = hypoellipticity_test(&PolynomialSymbol::wave(), &cfg).unwrap();
        let hb = hypoellipticity_test(&PolynomialSymbol::wave(), &cfg).unwrap();
        assert_eq!(ha, hb);
    }
}
