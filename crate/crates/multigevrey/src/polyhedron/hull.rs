//! Exact incremental convex hull (beneath-beyond with a triangulated
//! boundary).
//!
//! Points are inserted in lexicographic order. Visibility is strict, so a
//! point lying exactly on a facet hyperplane is treated as beneath it; the
//! coplanar boundary simplices this produces are merged at the end by
//! canonical hyperplane key. Everything is exact rational arithmetic —
//! near-collinear exponent rows (a common shape for symbol exponent sets)
//! are classified correctly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::linalg::{affine_coordinates, hyperplane_through, rank, side_of};
use crate::numeric::Rat;

/// A supporting hyperplane `⟨normal, x⟩ ≤ offset` of the hull, in primitive
/// integer form, outer-oriented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

/// Hull of a point set: extreme points, facet hyperplanes (only meaningful
/// when the hull is full-dimensional), and the affine dimension.
#[derive(Debug, Clone)]
pub struct HullOutput {
    pub vertices: Vec<Vec<Rat>>,
    pub facets: Vec<HullFacet>,
    pub affine_dim: usize,
}

pub fn convex_hull(input: &[Vec<Rat>]) -> HullOutput {
    assert!(!input.is_empty(), "hull of an empty set");
    let n = input[0].len();
    debug_assert!(input.iter().all(|p| p.len() == n));

    let mut points: Vec<Vec<Rat>> = input.to_vec();
    points.sort();
    points.dedup();

    if points.len() == 1 {
        return HullOutput {
            vertices: points,
            facets: Vec::new(),
            affine_dim: 0,
        };
    }

    // Affine dimension and a greedy affine basis.
    let origin = points[0].clone();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for p in &points[1..] {
        let candidate: Vec<Rat> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
        let mut rows = basis.clone();
        rows.push(candidate.clone());
        if rank(&rows) == basis.len() + 1 {
            basis.push(candidate);
        }
        if basis.len() == n {
            break;
        }
    }
    let dim = basis.len();

    if dim < n {
        // Lower-dimensional hull: recurse in affine coordinates. The map is
        // an affine isomorphism onto the span, so extreme points correspond.
        let coords: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| affine_coordinates(&origin, &basis, p).expect("point lies in its own span"))
            .collect();
        let sub = convex_hull_full(&coords, dim);
        let mut vertices: Vec<Vec<Rat>> = sub
            .into_iter()
            .map(|idx| points[idx].clone())
            .collect();
        vertices.sort();
        return HullOutput {
            vertices,
            facets: Vec::new(),
            affine_dim: dim,
        };
    }

    let vertex_indices = convex_hull_full(&points, n);
    let facets = facets_of_full_hull(&points, n);

    // A point is a vertex exactly when its active facet normals span R^n.
    let mut vertices: Vec<Vec<Rat>> = vertex_indices
        .into_iter()
        .map(|idx| points[idx].clone())
        .collect();
    vertices.sort();
    HullOutput {
        vertices,
        facets,
        affine_dim: n,
    }
}

/// Extreme-point indices of a full-dimensional point set in R^d.
fn convex_hull_full(points: &[Vec<Rat>], d: usize) -> Vec<usize> {
    let facets = facets_of_full_hull(points, d);
    let mut vertices = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        let active: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|f| side_of(&f.normal, &f.offset, p) == std::cmp::Ordering::Equal)
            .map(|f| {
                f.normal
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        if active.len() >= d && rank(&active) == d {
            vertices.push(idx);
        }
    }
    vertices
}

#[derive(Debug, Clone)]
struct Simplex {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
    /// neighbors[k] is the facet across the ridge verts \ verts[k].
    neighbors: Vec<usize>,
    alive: bool,
}

const UNSET: usize = usize::MAX;

/// All facet hyperplanes of the full-dimensional hull, deduplicated and
/// sorted canonically.
fn facets_of_full_hull(points: &[Vec<Rat>], d: usize) -> Vec<HullFacet> {
    assert!(points.len() >= d + 1, "full-dimensional hull needs d+1 points");
    if d == 0 {
        return Vec::new();
    }

    // Initial simplex: first point plus greedily independent followers.
    let mut simplex_idx: Vec<usize> = vec![0];
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for (idx, p) in points.iter().enumerate().skip(1) {
        let candidate: Vec<Rat> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let mut rows = basis.clone();
        rows.push(candidate.clone());
        if rank(&rows) == basis.len() + 1 {
            basis.push(candidate);
            simplex_idx.push(idx);
        }
        if simplex_idx.len() == d + 1 {
            break;
        }
    }
    assert_eq!(simplex_idx.len(), d + 1, "input is not full-dimensional");

    // Exact interior reference point: the simplex centroid.
    let interior: Vec<Rat> = (0..d)
        .map(|c| {
            let mut acc = Rat::zero();
            for &i in &simplex_idx {
                acc += &points[i][c];
            }
            acc / Rat::from_integer(((d + 1) as i64).into())
        })
        .collect();

    let mut arena: Vec<Simplex> = Vec::new();
    for omit in 0..=d {
        let verts: Vec<usize> = simplex_idx
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != omit)
            .map(|(_, &i)| i)
            .collect();
        let plane_pts: Vec<&[Rat]> = verts.iter().map(|&i| points[i].as_slice()).collect();
        let (normal, offset) =
            hyperplane_through(&plane_pts).expect("simplex facet is non-degenerate");
        let (normal, offset) = orient_outward(normal, offset, &interior);
        arena.push(Simplex {
            verts,
            normal,
            offset,
            neighbors: vec![UNSET; d],
            alive: true,
        });
    }
    // Wire initial adjacency: facets omit(i) and omit(j) share the ridge
    // missing both i and j.
    for a in 0..=d {
        for b in 0..=d {
            if a == b {
                continue;
            }
            // In facet `a` (which omits simplex vertex a), the slot of
            // simplex vertex b is the ridge shared with facet `b`.
            let vb = simplex_idx[b];
            let slot = arena[a].verts.iter().position(|&v| v == vb).unwrap();
            arena[a].neighbors[slot] = b;
        }
    }

    // Insert remaining points in lexicographic order (the points slice is
    // already sorted).
    let in_simplex: Vec<bool> = (0..points.len())
        .map(|i| simplex_idx.contains(&i))
        .collect();
    for (p_idx, point) in points.iter().enumerate() {
        if in_simplex[p_idx] {
            continue;
        }
        insert_point(&mut arena, points, point, p_idx, &interior, d);
    }

    // Deduplicate boundary simplices by hyperplane.
    let mut seen: BTreeMap<(Vec<BigInt>, BigInt), ()> = BTreeMap::new();
    for s in arena.iter().filter(|s| s.alive) {
        seen.entry((s.normal.clone(), s.offset.clone())).or_insert(());
    }
    seen.into_keys()
        .map(|(normal, offset)| HullFacet { normal, offset })
        .collect()
}

fn orient_outward(
    normal: Vec<BigInt>,
    offset: BigInt,
    interior: &[Rat],
) -> (Vec<BigInt>, BigInt) {
    match side_of(&normal, &offset, interior) {
        std::cmp::Ordering::Less => (normal, offset),
        std::cmp::Ordering::Greater => (normal.into_iter().map(|x| -x).collect(), -offset),
        std::cmp::Ordering::Equal => panic!("interior point on candidate facet hyperplane"),
    }
}

fn insert_point(
    arena: &mut Vec<Simplex>,
    points: &[Vec<Rat>],
    point: &[Rat],
    p_idx: usize,
    interior: &[Rat],
    d: usize,
) {
    let live: Vec<usize> = (0..arena.len()).filter(|&i| arena[i].alive).collect();
    let mut visible = vec![false; arena.len()];
    let mut any = false;
    for &f in &live {
        if side_of(&arena[f].normal, &arena[f].offset, point) == std::cmp::Ordering::Greater {
            visible[f] = true;
            any = true;
        }
    }
    if !any {
        return; // inside or on the boundary of the current hull
    }

    // Horizon ridges: between a visible facet and a kept one.
    let mut horizon: Vec<(Vec<usize>, usize)> = Vec::new();
    for &f in &live {
        if !visible[f] {
            continue;
        }
        for k in 0..d {
            let nb = arena[f].neighbors[k];
            debug_assert_ne!(nb, UNSET);
            if !visible[nb] {
                let ridge: Vec<usize> = arena[f]
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(slot, _)| *slot != k)
                    .map(|(_, &v)| v)
                    .collect();
                horizon.push((ridge, nb));
            }
        }
    }

    // New facets: one per horizon ridge, spanning ridge ∪ {p}.
    let mut ridge_map: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for (ridge, kept) in horizon {
        let mut verts = ridge.clone();
        verts.push(p_idx);
        verts.sort_unstable();
        let plane_pts: Vec<&[Rat]> = verts.iter().map(|&i| points[i].as_slice()).collect();
        let (normal, offset) =
            hyperplane_through(&plane_pts).expect("horizon ridge plus apex is non-degenerate");
        let (normal, offset) = orient_outward(normal, offset, interior);
        let new_id = arena.len();
        let mut neighbors = vec![UNSET; d];

        // Slot of the apex: its ridge is the old horizon ridge → kept facet.
        let apex_slot = verts.iter().position(|&v| v == p_idx).unwrap();
        neighbors[apex_slot] = kept;
        // Back-pointer in the kept facet: the slot of its vertex outside the
        // ridge.
        let kept_slot = arena[kept]
            .verts
            .iter()
            .position(|v| !ridge.contains(v))
            .expect("kept facet has one vertex off the ridge");
        arena[kept].neighbors[kept_slot] = new_id;

        arena.push(Simplex {
            verts: verts.clone(),
            normal,
            offset,
            neighbors,
            alive: true,
        });

        // Remaining ridges of the new facet contain the apex; they pair up
        // among the new facets.
        for slot in 0..d {
            if slot == apex_slot {
                continue;
            }
            let key: Vec<usize> = verts
                .iter()
                .enumerate()
                .filter(|(s, _)| *s != slot)
                .map(|(_, &v)| v)
                .collect();
            match ridge_map.remove(&key) {
                None => {
                    ridge_map.insert(key, (new_id, slot));
                }
                Some((other_id, other_slot)) => {
                    arena[new_id].neighbors[slot] = other_id;
                    arena[other_id].neighbors[other_slot] = new_id;
                }
            }
        }
    }
    debug_assert!(ridge_map.is_empty(), "unmatched ridge among new facets");

    for (f, vis) in visible.iter().enumerate() {
        if *vis {
            arena[f].alive = false;
        }
    }
}
