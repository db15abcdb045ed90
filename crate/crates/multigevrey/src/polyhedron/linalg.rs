//! Exact-rational linear algebra for the hull machinery: ranks, hyperplanes
//! through point sets, and coordinates in an affine basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::numeric::Rat;

/// Rank of a small rational matrix (rows are mutated copies).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..ncols {
                let sub = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - sub;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Primitive integer vector proportional to the rational one: clears
/// denominators and divides by the gcd of the numerators.
pub fn to_primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() && gcd != BigInt::from(1) {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    ints
}

/// The hyperplane `⟨normal, x⟩ = offset` through `d` affinely independent
/// points of R^d, as a primitive integer (normal, offset) pair. Returns
/// `None` when the points are affinely dependent. The orientation is
/// arbitrary; callers fix it against a reference point.
pub fn hyperplane_through(points: &[&[Rat]]) -> Option<(Vec<BigInt>, BigInt)> {
    let d = points.len();
    debug_assert!(points.iter().all(|p| p.len() == d));
    // Solve the homogeneous system [p_i | -1]·(n, c)ᵀ = 0.
    let mut m: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<Rat> = p.to_vec();
            row.push(-Rat::from_integer(1.into()));
            row
        })
        .collect();
    let ncols = d + 1;
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..d).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for c in col..ncols {
            m[row][c] = &m[row][c] / &lead;
        }
        for r in 0..d {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - sub;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == d {
            break;
        }
    }
    if row < d {
        // Affinely dependent points: nullspace dimension exceeds one.
        return None;
    }
    let free_col = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut solution = vec![Rat::zero(); ncols];
    solution[free_col] = Rat::from_integer(1.into());
    for (r, &pc) in pivot_cols.iter().enumerate() {
        solution[pc] = -m[r][free_col].clone();
    }
    let primitive = to_primitive_integer(&solution);
    let offset = primitive[d].clone();
    let normal = primitive[..d].to_vec();
    if normal.iter().all(|x| x.is_zero()) {
        return None;
    }
    Some((normal, offset))
}

/// Coordinates of `v - origin` in the given independent basis vectors, all
/// exact. `None` when `v` lies outside the affine span.
pub fn affine_coordinates(origin: &[Rat], basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = origin.len();
    let d = basis.len();
    // Augmented system basisᵀ·x = v - origin, n equations, d unknowns.
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            let mut r: Vec<Rat> = basis.iter().map(|b| b[row].clone()).collect();
            r.push(&v[row] - &origin[row]);
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let pivot = (row..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for c in col..=d {
            m[row][c] = &m[row][c] / &lead;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=d {
                    let sub = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // Consistency: zero rows must have zero rhs.
    for r in row..n {
        if !m[r][d].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); d];
    for &(r, c) in &pivots {
        x[c] = m[r][d].clone();
    }
    Some(x)
}

/// Sign of `⟨normal, p⟩ - offset` with integer hyperplane data against a
/// rational point.
pub fn side_of(normal: &[BigInt], offset: &BigInt, p: &[Rat]) -> std::cmp::Ordering {
    let mut acc = Rat::zero();
    for (n, x) in normal.iter().zip(p) {
        acc += Rat::from_integer(n.clone()) * x;
    }
    let c = Rat::from_integer(offset.clone());
    acc.cmp(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn v(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[1, 2]), v(&[2, 4]), v(&[1, 0])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[v(&[0, 0])]), 0);
    }

    #[test]
    fn hyperplane_in_two_dimensions() {
        let a = v(&[2, 0]);
        let b = v(&[0, 2]);
        let (n, c) = hyperplane_through(&[&a, &b]).unwrap();
        // x + y = 2 up to sign.
        let s = if n[0] < BigInt::from(0) { -1 } else { 1 };
        assert_eq!(n[0], BigInt::from(s));
        assert_eq!(n[1], BigInt::from(s));
        assert_eq!(c, BigInt::from(2 * s));
    }

    #[test]
    fn hyperplane_through_origin_is_allowed() {
        let a = v(&[1, 1]);
        let b = v(&[2, 2]);
        let (n, c) = hyperplane_through(&[&a, &b]).unwrap();
        assert!(c.is_zero());
        assert_eq!(n[0], -n[1].clone());
    }

    #[test]
    fn repeated_points_have_no_hyperplane() {
        let a = v(&[1, 1]);
        assert!(hyperplane_through(&[&a, &a]).is_none());
    }

    #[test]
    fn affine_coordinates_in_plane() {
        let origin = v(&[1, 1, 1]);
        let basis = vec![v(&[1, 0, 0]), v(&[0, 1, 1])];
        let p = vec![rat(3, 2), rat_int(4), rat_int(4)];
        let coords = affine_coordinates(&origin, &basis, &p).unwrap();
        assert_eq!(coords, vec![rat(1, 2), rat_int(3)]);
        let outside = v(&[1, 2, 3]);
        assert!(affine_coordinates(&origin, &basis, &outside).is_none());
    }

    #[test]
    fn primitive_scaling() {
        let ints = to_primitive_integer(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(2)]);
    }
}
