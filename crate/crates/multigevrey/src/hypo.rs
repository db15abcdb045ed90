//! Polyhedra of hypoellipticity and companion operators.
//!
//! For a hypoelliptic symbol P, a polyhedron of hypoellipticity H is a
//! regular polyhedron with rational vertices such that |ξ|^ν ≤ C(1 + d(ξ))
//! for every ν ∈ H, d being the distance to the complex zero variety. No
//! constructive recipe exists for H in general; here H is built by grid
//! search: candidate exponents ν on a rational grid are accepted when the
//! sweep shows |ξ|^ν / (1 + δ(ξ)) bounded, with δ the derivative-ratio
//! distance surrogate, and H is the hull of the accepted set. The grid
//! maximality is relative to the chosen denominators and the sweep's
//! resolution, and everything downstream carries the "numerical evidence"
//! label of the classification layer.
//!
//! From H, σ is the smallest integer making σ·V(H) even-integral, and the
//! companion operator Q_H(ξ) = Σ_{ν ∈ V(H)} ξ^{σν} is multi-quasielliptic
//! by construction (even exponents, unit coefficients).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::classify::{SamplingConfig, TracePoint};
use crate::classify::directions::direction_grid;
use crate::classify::DerivativeFamily;
use crate::numeric::{fit_slope, lower_median, rat_to_f64, Rat};
use crate::polyhedron::{NewtonPolyhedron, PolyhedronError, RationalVector};
use crate::symbol::{MultiIndex, PolynomialSymbol};

#[derive(Debug, Error)]
pub enum HypoError {
    #[error("symbol shows no hypoellipticity on axis {axis}: no positive exponent accepted ({detail})")]
    NotHypoelliptic { axis: usize, detail: String },
    #[error("grid too coarse: no positive exponent accepted on axis {axis} but the distance surrogate grows (d̂ ≈ {d_hat:.3}); raise --denom-max")]
    GridExhausted { axis: usize, d_hat: f64 },
    #[error("accepted exponents span no regular polyhedron: {0}")]
    IrregularAcceptedSet(String),
    #[error("sigma mismatch: expected {expected}, got {got}")]
    SigmaMismatch { expected: u64, got: u64 },
    #[error("companion operator failed its defining identity: {0}")]
    CompanionIdentity(String),
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Per-vertex certificate: the trace of ln(|ξ|^ν / (1 + δ(ξ))) that backed
/// the vertex's acceptance.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexCertificate {
    pub vertex: RationalVector,
    pub trace: Vec<TracePoint>,
    pub fitted_slope: f64,
}

/// A polyhedron of hypoellipticity with its even-integral scale σ and the
/// acceptance certificates of its vertices.
#[derive(Debug, Clone)]
pub struct HypoPolyhedron {
    pub polyhedron: NewtonPolyhedron,
    pub sigma: u64,
    pub certificates: Vec<VertexCertificate>,
}

/// One Gevrey class G^{s,Γ}: the index s and the polyhedron whose gauge and
/// formal order shape the derivative bounds C^{|α|+1} k(α,Γ)^{sμ(Γ)k(α,Γ)}.
#[derive(Debug, Clone, PartialEq)]
pub struct GevreyClass {
    pub s: Rat,
    pub polyhedron: NewtonPolyhedron,
}

impl GevreyClass {
    /// ln of the derivative bound at α given ln C.
    pub fn ln_derivative_bound(&self, alpha: &MultiIndex, ln_c: f64) -> f64 {
        let k = self
            .polyhedron
            .gauge(&RationalVector::from(alpha))
            .expect("class polyhedra are regular");
        let mu = self.polyhedron.formal_order().expect("regular");
        let k_f = rat_to_f64(&k);
        let exponent = rat_to_f64(&self.s) * rat_to_f64(&mu) * k_f;
        let power = if k_f == 0.0 { 0.0 } else { exponent * k_f.ln() };
        (alpha.order() as f64 + 1.0) * ln_c + power
    }
}

/// Sensitivity of the reported class to the choice of H: shrinking H to
/// H/2 changes σ and the index. Larger H means a sharper class, and the
/// paper-side construction does not pin a canonical H.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSensitivity {
    pub halved_sigma: u64,
    pub halved_paper_exponent: Rat,
}

/// The two Gevrey classes derivable from (H, σ), plus diagnostics.
#[derive(Debug, Clone)]
pub struct GevreyClassReport {
    /// G^{σ/μ_H, H}: the headline class.
    pub paper_class: GevreyClass,
    /// G^{1/μ_H, σH}: the class coming through the companion operator,
    /// sharper at the level of the defining bounds.
    pub sharp_class: GevreyClass,
    pub mu_h: Rat,
    pub mu_q: Rat,
    pub sensitivity: ScaleSensitivity,
}

/// The smallest positive integer σ with σ·v ∈ (2Z₊)ⁿ for every vertex v.
///
/// Componentwise: for v_j = p/q in lowest terms, the minimal scale is
/// 2q/gcd(p, 2q); σ is the lcm over all components of all vertices. The
/// acceptance suite checks this against an exhaustive scan.
pub fn even_integer_scale(polyhedron: &NewtonPolyhedron) -> u64 {
    let mut sigma = BigInt::one();
    for v in polyhedron.vertices() {
        for c in v.components() {
            if c.is_zero() {
                continue; // 0 is even for every σ
            }
            let p = c.numer();
            let q = c.denom();
            let two_q = q * 2;
            let g = p.gcd(&two_q);
            let per_component = two_q / g;
            sigma = sigma.lcm(&per_component);
        }
    }
    sigma.to_u64().expect("scale fits in u64 for sane vertex data")
}

/// The companion operator Q_H(ξ) = Σ_{ν ∈ V(H)} ξ^{σν}: unit coefficients,
/// even exponents (the origin vertex contributes the constant 1).
///
/// Verifies its defining structure before returning: σ must be the minimal
/// even-integral scale of H, every σν must be an even integer vector, the
/// Newton polyhedron of the result must equal H scaled by σ, and
/// |Q_H(ξ)| = Σ|ξ^{σν}| must hold at sample points (even exponents and
/// positive coefficients make the modulus equal the weight).
pub fn companion_operator(
    polyhedron: &NewtonPolyhedron,
    sigma: u64,
) -> Result<PolynomialSymbol, HypoError> {
    let expected = even_integer_scale(polyhedron);
    if sigma != expected {
        return Err(HypoError::SigmaMismatch {
            expected,
            got: sigma,
        });
    }
    let n = polyhedron.dimension();
    let sigma_rat = Rat::from_integer(sigma.into());
    let mut terms = Vec::new();
    for v in polyhedron.vertices() {
        let mut exps = Vec::with_capacity(n);
        for c in v.components() {
            let scaled = c * &sigma_rat;
            if !scaled.denom().is_one() {
                return Err(HypoError::CompanionIdentity(format!(
                    "σ·vertex component {} is not an integer",
                    scaled
                )));
            }
            let int = scaled.to_integer();
            if int.is_odd() {
                return Err(HypoError::CompanionIdentity(format!(
                    "σ·vertex component {} is odd",
                    int
                )));
            }
            exps.push(int.to_u32().ok_or_else(|| {
                HypoError::CompanionIdentity("scaled exponent out of range".into())
            })?);
        }
        terms.push((
            MultiIndex::new(exps),
            num_complex::Complex::new(Rat::one(), Rat::zero()),
        ));
    }
    let q = PolynomialSymbol::from_terms(n, terms)
        .map_err(|e| HypoError::CompanionIdentity(e.to_string()))?;

    // Γ(Q_H) = σ·H exactly.
    let gamma_q = NewtonPolyhedron::of_symbol(&q)?;
    let scaled_h = polyhedron.scale(&sigma_rat)?;
    if gamma_q != scaled_h {
        return Err(HypoError::CompanionIdentity(
            "Newton polyhedron of the companion differs from σ·H".into(),
        ));
    }

    // |Q_H(ξ)| = weight at a few deterministic sample points.
    let compiled = q.compile();
    for (i, sample) in [[3.0, 2.0], [1.5, -2.5], [-4.0, 0.5], [0.0, 1.0]]
        .iter()
        .enumerate()
    {
        let point: Vec<f64> = (0..n).map(|j| sample[j % 2] + i as f64 * 0.125).collect();
        let lhs = compiled.evaluate_real(&point).modulus();
        let rhs = gamma_q.weight(&point)?;
        if !(lhs.is_finite() && rhs.is_finite()) {
            continue;
        }
        if (lhs - rhs).abs() > 1e-9 * rhs.max(1.0) {
            return Err(HypoError::CompanionIdentity(format!(
                "|Q_H| = {} but weight = {} at {:?}",
                lhs, rhs, point
            )));
        }
    }
    Ok(q)
}

/// Candidate grid values {k/D : D ≤ denom_max, k/D ≤ cap}, reduced and
/// sorted, as (numerator, denominator) pairs.
fn farey_values(denom_max: u32, cap: &Rat) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for d in 1..=denom_max as i64 {
        let mut k = 0i64;
        loop {
            let value = Rat::new(k.into(), d.into());
            if &value > cap {
                break;
            }
            let g = k.gcd(&d);
            let reduced = (k / g, d / g);
            out.push(reduced);
            k += 1;
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)).then(a.1.cmp(&b.1)));
    out.dedup();
    out
}

struct SamplePlan {
    /// ln|ξ_j| per point (−∞ at exact zeros).
    ln_coords: Vec<Vec<f64>>,
    /// ln(1 + δ(ξ)) per point.
    ln_one_plus_delta: Vec<f64>,
    /// Index ranges per radius (points are radius-major).
    per_radius: Vec<std::ops::Range<usize>>,
    ln_radii: Vec<f64>,
}

fn build_sample_plan(symbol: &PolynomialSymbol, cfg: &SamplingConfig) -> SamplePlan {
    let n = symbol.dimension();
    let gamma = NewtonPolyhedron::of_symbol(symbol).expect("valid exponents");
    let special = {
        // Reuse the facet degeneracy probe through the public test: the
        // directions that defeat a fixed grid are the same ones that matter
        // for exponent acceptance.
        let mut dirs = Vec::new();
        if let Ok(normals) = gamma.facet_normals() {
            for q in normals {
                if !q.components().iter().all(|c| c.is_positive()) {
                    continue;
                }
                if let Ok(part) = crate::classify::quasi_principal_part(symbol, q) {
                    dirs.extend(crate::classify::probe::quasi_sphere_zero_directions(
                        &part.compile(),
                        q,
                        cfg,
                    ));
                }
            }
        }
        dirs
    };
    let directions = direction_grid(n, cfg, &special);
    let radii = cfg.radii();
    let family = DerivativeFamily::new(symbol);
    let compiled = symbol.compile();

    let mut points = Vec::with_capacity(directions.len() * radii.len());
    let mut per_radius = Vec::with_capacity(radii.len());
    for &r in &radii {
        let start = points.len();
        for d in &directions {
            points.push(d.iter().map(|&u| u * r).collect::<Vec<f64>>());
        }
        per_radius.push(start..points.len());
    }

    let mut ln_coords = Vec::with_capacity(points.len());
    let mut ln_one_plus_delta = Vec::with_capacity(points.len());
    for xi in &points {
        ln_coords.push(
            xi.iter()
                .map(|&x| if x == 0.0 { f64::NEG_INFINITY } else { x.abs().ln() })
                .collect::<Vec<f64>>(),
        );
        let ln_p = compiled.evaluate_real(xi).ln_modulus();
        let mut ln_delta = f64::INFINITY;
        for (k, ld) in family.ln_derivative_moduli(xi).iter().enumerate() {
            if *ld != f64::NEG_INFINITY {
                ln_delta = ln_delta.min((ln_p - ld) / family.derivative_order(k) as f64);
            }
        }
        // ln(1 + e^x), stable at both ends.
        let v = if ln_delta == f64::NEG_INFINITY {
            0.0
        } else if ln_delta > 50.0 {
            ln_delta + (-ln_delta).exp().ln_1p()
        } else if ln_delta == f64::INFINITY {
            f64::INFINITY
        } else {
            ln_delta.exp().ln_1p()
        };
        ln_one_plus_delta.push(v);
    }

    SamplePlan {
        ln_coords,
        ln_one_plus_delta,
        per_radius,
        ln_radii: radii.iter().map(|r| r.ln()).collect(),
    }
}

/// Acceptance series for a candidate exponent: per-radius max of
/// ln(|ξ|^ν / (1 + δ(ξ))).
fn candidate_series(plan: &SamplePlan, nu: &[f64]) -> Vec<f64> {
    plan.per_radius
        .iter()
        .map(|range| {
            let mut best = f64::NEG_INFINITY;
            for idx in range.clone() {
                let mut ln_mono = 0.0f64;
                for (j, &e) in nu.iter().enumerate() {
                    if e == 0.0 {
                        continue;
                    }
                    let lc = plan.ln_coords[idx][j];
                    if lc == f64::NEG_INFINITY {
                        ln_mono = f64::NEG_INFINITY;
                        break;
                    }
                    ln_mono += e * lc;
                }
                let v = ln_mono - plan.ln_one_plus_delta[idx];
                if v > best {
                    best = v;
                }
            }
            best
        })
        .collect()
}

fn accepted(plan: &SamplePlan, nu: &[f64], tolerance: f64) -> (bool, f64) {
    let series = candidate_series(plan, nu);
    let finite = series.iter().filter(|v| v.is_finite()).count();
    if finite < 3 {
        return (true, 0.0);
    }
    let slope = fit_slope(&plan.ln_radii, &series).unwrap_or(f64::INFINITY);
    let median = lower_median(&series).unwrap_or(f64::NEG_INFINITY);
    let last = *series.last().expect("non-empty");
    let last_ok = !last.is_finite() || last <= median + 10f64.ln();
    (slope <= tolerance && last_ok, slope)
}

/// Grid-search construction of a polyhedron of hypoellipticity.
///
/// Callers must have established that the hypoellipticity test did not
/// fail. Candidates ν run over the rational grid with denominators up to
/// `denom_max` and components up to `exponent_cap`; a candidate is accepted
/// when |ξ|^ν/(1+δ) passes the bounded rule over the sweep. H is the hull
/// of {0} and the accepted set. Enlarging the grid never shrinks H.
pub fn hypoellipticity_polyhedron(
    symbol: &PolynomialSymbol,
    cfg: &SamplingConfig,
    denom_max: u32,
    exponent_cap: &Rat,
) -> Result<HypoPolyhedron, HypoError> {
    cfg.validate().map_err(HypoError::InvalidArgument)?;
    if symbol.is_zero() {
        return Err(HypoError::InvalidArgument("zero symbol".into()));
    }
    if denom_max == 0 {
        return Err(HypoError::InvalidArgument("denom_max must be ≥ 1".into()));
    }
    if !exponent_cap.is_positive() {
        return Err(HypoError::InvalidArgument(
            "exponent cap must be positive".into(),
        ));
    }
    let n = symbol.dimension();
    let plan = build_sample_plan(symbol, cfg);
    let axis_values = farey_values(denom_max, exponent_cap);

    // Walk the grid as an odometer over per-axis Farey values.
    let mut indices = vec![0usize; n];
    let mut accepted_points: Vec<Vec<(i64, i64)>> = Vec::new();
    'outer: loop {
        let nu_pairs: Vec<(i64, i64)> = indices.iter().map(|&i| axis_values[i]).collect();
        let nu_f64: Vec<f64> = nu_pairs.iter().map(|&(p, q)| p as f64 / q as f64).collect();
        if nu_f64.iter().any(|&v| v > 0.0) {
            let (ok, _) = accepted(&plan, &nu_f64, cfg.growth_tolerance);
            if ok {
                accepted_points.push(nu_pairs);
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                break 'outer;
            }
            indices[j] += 1;
            if indices[j] < axis_values.len() {
                break;
            }
            indices[j] = 0;
            j += 1;
        }
    }

    // Axis coverage: hypoellipticity demands a positive exponent on every
    // axis. Distinguish a genuinely failing symbol from a too-coarse grid
    // by whether the distance surrogate grows.
    for axis in 0..n {
        let covered = accepted_points
            .iter()
            .any(|nu| nu[axis].0 > 0);
        if covered {
            continue;
        }
        let delta_series: Vec<f64> = plan
            .per_radius
            .iter()
            .map(|range| {
                range
                    .clone()
                    .map(|i| plan.ln_one_plus_delta[i])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let half = delta_series.len() / 2;
        let d_hat = fit_slope(&plan.ln_radii[half..], &delta_series[half..])
            .unwrap_or(f64::NEG_INFINITY);
        if d_hat > cfg.growth_tolerance {
            return Err(HypoError::GridExhausted { axis, d_hat });
        }
        return Err(HypoError::NotHypoelliptic {
            axis,
            detail: format!("distance surrogate slope {d_hat:.3}"),
        });
    }

    // Keep only Pareto-maximal accepted points before the exact hull.
    let dominates = |a: &Vec<(i64, i64)>, b: &Vec<(i64, i64)>| {
        a.iter()
            .zip(b)
            .all(|(&(pa, qa), &(pb, qb))| pa * qb >= pb * qa)
    };
    let mut maximal: Vec<Vec<(i64, i64)>> = Vec::new();
    for nu in accepted_points.iter() {
        if maximal.iter().any(|m| dominates(m, nu)) {
            continue;
        }
        maximal.retain(|m| !dominates(nu, m));
        maximal.push(nu.clone());
    }

    let rational_points: Vec<RationalVector> = maximal
        .iter()
        .map(|nu| {
            RationalVector::new(
                nu.iter()
                    .map(|&(p, q)| Rat::new(p.into(), q.into()))
                    .collect(),
            )
            .expect("grid values are non-negative")
        })
        .collect();
    let polyhedron = NewtonPolyhedron::of_points(rational_points, n)?;
    if !polyhedron.is_regular() {
        return Err(HypoError::IrregularAcceptedSet(format!(
            "vertices {:?}",
            polyhedron
                .vertices()
                .iter()
                .map(|v| v.components().iter().map(crate::numeric::format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        )));
    }

    // Certificates for the hull vertices.
    let mut certificates = Vec::new();
    for v in polyhedron.vertices() {
        if v.is_zero() {
            continue;
        }
        let nu_f64 = v.to_f64();
        let series = candidate_series(&plan, &nu_f64);
        let slope = fit_slope(&plan.ln_radii, &series).unwrap_or(0.0);
        certificates.push(VertexCertificate {
            vertex: v.clone(),
            trace: plan
                .ln_radii
                .iter()
                .zip(&series)
                .map(|(&lr, &val)| TracePoint {
                    radius: lr.exp(),
                    value: val,
                })
                .collect(),
            fitted_slope: slope,
        });
    }

    let sigma = even_integer_scale(&polyhedron);
    Ok(HypoPolyhedron {
        polyhedron,
        sigma,
        certificates,
    })
}

/// The Gevrey classes determined by (H, σ).
///
/// paper class: G^{σ/μ_H, H}. Through the companion operator the same
/// argument lands in G^{σ/μ_Q, Γ(Q_H)} with Γ(Q_H) = σH and μ_Q = σμ_H,
/// i.e. G^{1/μ_H, σH} — a sharper statement at the level of the defining
/// bounds. Both are reported, along with the sensitivity of the index to
/// halving H.
pub fn gevrey_classes(
    polyhedron: &NewtonPolyhedron,
    sigma: u64,
) -> Result<GevreyClassReport, HypoError> {
    let expected = even_integer_scale(polyhedron);
    if sigma != expected {
        return Err(HypoError::SigmaMismatch {
            expected,
            got: sigma,
        });
    }
    let mu_h = polyhedron.formal_order()?;
    let sigma_rat = Rat::from_integer(sigma.into());
    let mu_q = &sigma_rat * &mu_h;
    let paper_class = GevreyClass {
        s: &sigma_rat / &mu_h,
        polyhedron: polyhedron.clone(),
    };
    let sharp_class = GevreyClass {
        s: mu_h.recip(),
        polyhedron: polyhedron.scale(&sigma_rat)?,
    };

    let half = Rat::new(1.into(), 2.into());
    let halved = polyhedron.scale(&half)?;
    let halved_sigma = even_integer_scale(&halved);
    let halved_mu = halved.formal_order()?;
    let sensitivity = ScaleSensitivity {
        halved_sigma,
        halved_paper_exponent: Rat::from_integer(halved_sigma.into()) / halved_mu,
    };

    Ok(GevreyClassReport {
        paper_class,
        sharp_class,
        mu_h,
        mu_q,
        sensitivity,
    })
}
