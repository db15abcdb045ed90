//! Exact Newton-polyhedron geometry.
//!
//! The Newton polyhedron of a point set A ⊂ R̄₊ⁿ is the convex hull of
//! {0} ∪ A. When the hull is full-dimensional and every facet either lies in
//! a coordinate hyperplane or supports the hull with a strictly positive
//! normal, the polyhedron admits the half-space form
//!
//! ```text
//! Γ = { α ≥ 0 : ⟨q, α⟩ ≤ 1  for all q ∈ A(Γ) }
//! ```
//!
//! with A(Γ) the facet normals scaled to offset one. Such polyhedra are
//! *regular*; only they support the gauge k(α,Γ) = max_q ⟨α,q⟩ and the
//! formal order μ(Γ) = max 1/q_j.

mod hull;
mod linalg;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{rat_to_f64, Rat};
use crate::symbol::{MultiIndex, PolynomialSymbol};

/// A vector with exact non-negative rational components: facet normals and
/// polyhedron vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(Vec<Rat>);

impl RationalVector {
    pub fn new(components: Vec<Rat>) -> Result<Self, PolyhedronError> {
        if let Some(idx) = components.iter().position(|c| c.is_negative()) {
            return Err(PolyhedronError::NegativeCoordinate { index: idx });
        }
        Ok(RationalVector(components))
    }

    pub fn zero(n: usize) -> Self {
        RationalVector(vec![Rat::zero(); n])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Rat] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> &Rat {
        &self.0[axis]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// ⟨self, other⟩, exact.
    pub fn dot(&self, other: &RationalVector) -> Rat {
        assert_eq!(self.0.len(), other.0.len());
        let mut acc = Rat::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc += a * b;
        }
        acc
    }

    pub fn scaled(&self, factor: &Rat) -> RationalVector {
        RationalVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

impl From<&MultiIndex> for RationalVector {
    fn from(alpha: &MultiIndex) -> Self {
        RationalVector(alpha.to_rationals())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyhedronError {
    #[error("empty point set")]
    EmptyInput,
    #[error("negative coordinate at index {index}")]
    NegativeCoordinate { index: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} unsupported (hulls are exact and small-scale; n ≤ 8)")]
    DimensionTooLarge(usize),
    #[error("polyhedron is not regular")]
    NotRegular,
    #[error("polyhedron is degenerate (not full-dimensional)")]
    Degenerate,
    #[error("scale factor must be positive")]
    NonPositiveScale,
}

/// The Newton polyhedron Γ: exact vertices (always containing the origin),
/// the facet normal set A(Γ), and the regularity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dimension: usize,
    vertices: Vec<RationalVector>,
    facets: Vec<RationalVector>,
    regular: bool,
    full_dimensional: bool,
}

impl NewtonPolyhedron {
    /// Hull of {0} ∪ points. Vertices come out in lexicographic order.
    pub fn of_points<I>(points: I, dimension: usize) -> Result<Self, PolyhedronError>
    where
        I: IntoIterator<Item = RationalVector>,
    {
        if dimension == 0 || dimension > 8 {
            return Err(PolyhedronError::DimensionTooLarge(dimension));
        }
        let mut raw: Vec<Vec<Rat>> = vec![vec![Rat::zero(); dimension]];
        let mut any = false;
        for p in points {
            if p.dimension() != dimension {
                return Err(PolyhedronError::DimensionMismatch {
                    expected: dimension,
                    got: p.dimension(),
                });
            }
            raw.push(p.components().to_vec());
            any = true;
        }
        if !any {
            return Err(PolyhedronError::EmptyInput);
        }

        let hull = hull::convex_hull(&raw);
        let full_dimensional = hull.affine_dim == dimension;

        let mut facets: Vec<RationalVector> = Vec::new();
        let mut representable = full_dimensional;
        if full_dimensional {
            for f in &hull.facets {
                match classify_facet(f, dimension) {
                    FacetKind::Coordinate => {}
                    FacetKind::Positive(q) => facets.push(q),
                    FacetKind::NonRepresentable => representable = false,
                }
            }
        }
        facets.sort();

        let regular = full_dimensional
            && representable
            && facets
                .iter()
                .all(|q| q.components().iter().all(|c| c.is_positive()));

        let vertices = hull
            .vertices
            .into_iter()
            .map(|v| RationalVector(v))
            .collect();

        Ok(NewtonPolyhedron {
            dimension,
            vertices,
            facets,
            regular,
            full_dimensional,
        })
    }

    /// Newton polyhedron of a symbol: the hull of {0} and its exponents.
    pub fn of_symbol(symbol: &PolynomialSymbol) -> Result<Self, PolyhedronError> {
        Self::of_points(
            symbol.exponents().map(RationalVector::from),
            symbol.dimension(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// The minimal normal set A(Γ) of the half-space form, offset one.
    /// Errors when the polyhedron is not full-dimensional.
    pub fn facet_normals(&self) -> Result<&[RationalVector], PolyhedronError> {
        if !self.full_dimensional {
            return Err(PolyhedronError::Degenerate);
        }
        Ok(&self.facets)
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dimensional
    }

    /// The gauge k(α,Γ) = inf{t > 0 : α/t ∈ Γ} = max_{q∈A(Γ)} ⟨α,q⟩.
    pub fn gauge(&self, alpha: &RationalVector) -> Result<Rat, PolyhedronError> {
        if !self.regular {
            return Err(PolyhedronError::NotRegular);
        }
        if alpha.dimension() != self.dimension {
            return Err(PolyhedronError::DimensionMismatch {
                expected: self.dimension,
                got: alpha.dimension(),
            });
        }
        let mut best = Rat::zero();
        for q in &self.facets {
            let v = q.dot(alpha);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Exact membership test α ∈ Γ for regular polyhedra: k(α,Γ) ≤ 1.
    pub fn contains(&self, alpha: &RationalVector) -> Result<bool, PolyhedronError> {
        Ok(self.gauge(alpha)? <= Rat::one())
    }

    /// The formal order μ(Γ) = max over facet normals and coordinates of
    /// 1/q_j.
    pub fn formal_order(&self) -> Result<Rat, PolyhedronError> {
        if !self.regular {
            return Err(PolyhedronError::NotRegular);
        }
        let mut best: Option<Rat> = None;
        for q in &self.facets {
            for c in q.components() {
                let inv = c.recip();
                if best.as_ref().is_none_or(|b| &inv > b) {
                    best = Some(inv);
                }
            }
        }
        best.ok_or(PolyhedronError::NotRegular)
    }

    /// The weight |ξ|_Γ = Σ_{ν ∈ V(Γ)} |ξ|^ν. At least one since the origin
    /// is always a vertex.
    pub fn weight(&self, point: &[f64]) -> Result<f64, PolyhedronError> {
        Ok(self.ln_weight(point)?.exp())
    }

    /// ln |ξ|_Γ computed by log-sum-exp; immune to overflow at large radii.
    pub fn ln_weight(&self, point: &[f64]) -> Result<f64, PolyhedronError> {
        if point.len() != self.dimension {
            return Err(PolyhedronError::DimensionMismatch {
                expected: self.dimension,
                got: point.len(),
            });
        }
        let mut term_logs: Vec<f64> = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let mut ln_term = 0.0f64;
            for (c, &x) in v.components().iter().zip(point) {
                if c.is_zero() {
                    continue; // |x|^0 = 1, including at x = 0
                }
                let e = rat_to_f64(c);
                let ax = x.abs();
                if ax == 0.0 {
                    ln_term = f64::NEG_INFINITY;
                    break;
                }
                ln_term += e * ax.ln();
            }
            term_logs.push(ln_term);
        }
        let max = term_logs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            // Unreachable: the origin vertex contributes ln 1 = 0.
            return Ok(f64::NEG_INFINITY);
        }
        let sum: f64 = term_logs.iter().map(|&l| (l - max).exp()).sum();
        Ok(max + sum.ln())
    }

    /// Scale by a positive rational: vertices by `c`, facet normals by
    /// `1/c`. The gauge and formal order transform exactly:
    /// k(α, cΓ) = k(α,Γ)/c and μ(cΓ) = c·μ(Γ).
    pub fn scale(&self, factor: &Rat) -> Result<Self, PolyhedronError> {
        if !factor.is_positive() {
            return Err(PolyhedronError::NonPositiveScale);
        }
        if !self.regular {
            return Err(PolyhedronError::NotRegular);
        }
        let inv = factor.recip();
        let mut vertices: Vec<RationalVector> =
            self.vertices.iter().map(|v| v.scaled(factor)).collect();
        vertices.sort();
        let mut facets: Vec<RationalVector> =
            self.facets.iter().map(|q| q.scaled(&inv)).collect();
        facets.sort();
        Ok(NewtonPolyhedron {
            dimension: self.dimension,
            vertices,
            facets,
            regular: self.regular,
            full_dimensional: self.full_dimensional,
        })
    }

    /// Vertex components as f64 rows (cached by callers in hot loops).
    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(RationalVector::to_f64).collect()
    }
}

enum FacetKind {
    Coordinate,
    Positive(RationalVector),
    NonRepresentable,
}

/// Sort a hull facet into the three classes that matter here. Offsets are
/// never negative because the origin lies in every Newton polyhedron.
fn classify_facet(facet: &hull::HullFacet, _dimension: usize) -> FacetKind {
    debug_assert!(!facet.offset.is_negative());
    if facet.offset.is_zero() {
        // Through the origin: a coordinate facet has normal -e_j (up to
        // scale); anything else makes the half-space form unrepresentable.
        let nonzero: Vec<&BigInt> = facet.normal.iter().filter(|x| !x.is_zero()).collect();
        if nonzero.len() == 1 && nonzero[0].is_negative() {
            FacetKind::Coordinate
        } else {
            FacetKind::NonRepresentable
        }
    } else if facet.normal.iter().any(|x| x.is_negative()) {
        FacetKind::NonRepresentable
    } else {
        let offset = Rat::from_integer(facet.offset.clone());
        let q: Vec<Rat> = facet
            .normal
            .iter()
            .map(|x| Rat::from_integer(x.clone()) / offset.clone())
            .collect();
        FacetKind::Positive(RationalVector(q))
    }
}

/// Convenience: rationals from integer literals, used widely in tests.
pub fn rational_point(coords: &[i64]) -> RationalVector {
    RationalVector(
        coords
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use crate::symbol::parse_symbol;
    use num_traits::ToPrimitive;

    fn vertex_ints(p: &NewtonPolyhedron) -> Vec<Vec<i64>> {
        p.vertices()
            .iter()
            .map(|v| {
                v.components()
                    .iter()
                    .map(|c| c.to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn wave_polyhedron() {
        let p = NewtonPolyhedron::of_symbol(&PolynomialSymbol::wave()).unwrap();
        assert_eq!(
            vertex_ints(&p),
            vec![vec![0, 0], vec![0, 2], vec![2, 0]]
        );
        assert!(p.is_regular());
        let normals = p.facet_normals().unwrap();
        assert_eq!(normals.len(), 1);
        assert_eq!(normals[0].components(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(p.formal_order().unwrap(), rat_int(2));
    }

    #[test]
    fn heat_polyhedron() {
        let p = NewtonPolyhedron::of_symbol(&PolynomialSymbol::heat()).unwrap();
        assert_eq!(
            vertex_ints(&p),
            vec![vec![0, 0], vec![0, 2], vec![1, 0]]
        );
        assert!(p.is_regular());
        let normals = p.facet_normals().unwrap();
        assert_eq!(normals.len(), 1);
        assert_eq!(normals[0].components(), &[rat_int(1), rat(1, 2)]);
        assert_eq!(p.formal_order().unwrap(), rat_int(2));
    }

    #[test]
    fn segment_is_not_regular() {
        let p = NewtonPolyhedron::of_points([rational_point(&[2, 2])], 2).unwrap();
        assert_eq!(vertex_ints(&p), vec![vec![0, 0], vec![2, 2]]);
        assert!(!p.is_regular());
        assert!(!p.is_full_dimensional());
        assert_eq!(p.facet_normals(), Err(PolyhedronError::Degenerate));
        assert_eq!(
            p.gauge(&rational_point(&[1, 1])),
            Err(PolyhedronError::NotRegular)
        );
    }

    #[test]
    fn axis_hull_is_not_regular() {
        let p = NewtonPolyhedron::of_points([rational_point(&[2, 0])], 2).unwrap();
        assert!(!p.is_regular());
    }

    #[test]
    fn gauge_values_on_the_wave_polyhedron() {
        let p = NewtonPolyhedron::of_symbol(&PolynomialSymbol::wave()).unwrap();
        assert_eq!(p.gauge(&RationalVector::zero(2)).unwrap(), Rat::zero());
        assert_eq!(p.gauge(&rational_point(&[1, 1])).unwrap(), rat_int(1));
        assert_eq!(p.gauge(&rational_point(&[4, 0])).unwrap(), rat_int(2));
    }

    #[test]
    fn weight_examples() {
        let wave = NewtonPolyhedron::of_symbol(&PolynomialSymbol::wave()).unwrap();
        assert!((wave.weight(&[0.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((wave.weight(&[1.0, 2.0]).unwrap() - 6.0).abs() < 1e-12);
        let heat = NewtonPolyhedron::of_symbol(&PolynomialSymbol::heat()).unwrap();
        assert!((heat.weight(&[3.0, 2.0]).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn scaling_identities() {
        // H = hull{0, (1/2,0), (0,1)} scaled by 4 → hull{0, (2,0), (0,4)}.
        let h = NewtonPolyhedron::of_points(
            [
                RationalVector::new(vec![rat(1, 2), rat_int(0)]).unwrap(),
                RationalVector::new(vec![rat_int(0), rat_int(1)]).unwrap(),
            ],
            2,
        )
        .unwrap();
        let scaled = h.scale(&rat_int(4)).unwrap();
        assert_eq!(vertex_ints(&scaled), vec![vec![0, 0], vec![0, 4], vec![2, 0]]);
        let alpha = rational_point(&[3, 5]);
        let k_h = h.gauge(&alpha).unwrap();
        let k_s = scaled.gauge(&alpha).unwrap();
        assert_eq!(k_s * rat_int(4), k_h);
        assert_eq!(
            scaled.formal_order().unwrap(),
            h.formal_order().unwrap() * rat_int(4)
        );
    }

    #[test]
    fn fourteen_term_symbol_hull() {
        let text = "i*x1^5 + i*x1*x2^4 - 4*i*x1^4*x2 - 4*i*x1^2*x2^3 + 6*i*x1^3*x2^2 \
                    + i*x1^3 + i*x1*x2^2 + x1^4*x2^2 + x2^6 - 4*x1^3*x2^3 - 4*x1*x2^5 \
                    + 6*x1^2*x2^4 + x2^2*x1^2 + x2^4";
        let p = parse_symbol(text, 2).unwrap();
        assert_eq!(p.num_terms(), 14);
        let gamma = NewtonPolyhedron::of_symbol(&p).unwrap();
        assert_eq!(
            vertex_ints(&gamma),
            vec![vec![0, 0], vec![0, 6], vec![4, 2], vec![5, 0]]
        );
        let normals = gamma.facet_normals().unwrap();
        assert_eq!(normals.len(), 2);
        assert_eq!(normals[0].components(), &[rat(1, 6), rat(1, 6)]);
        assert_eq!(normals[1].components(), &[rat(1, 5), rat(1, 10)]);
        assert_eq!(gamma.formal_order().unwrap(), rat_int(10));
        assert!(gamma.is_regular());
    }

    #[test]
    fn non_representable_hull_is_not_regular() {
        // conv{0,(0,1),(1,3)} has a slanted facet through the origin.
        let p = NewtonPolyhedron::of_points(
            [rational_point(&[0, 1]), rational_point(&[1, 3])],
            2,
        )
        .unwrap();
        assert!(p.is_full_dimensional());
        assert!(!p.is_regular());
    }
}
