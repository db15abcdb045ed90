//! Deterministic direction grids for radius sweeps.
//!
//! The asymptotic conditions under test often degenerate along thin sets:
//! real zeros of a quasi-principal part, or maximizing families that drift
//! toward a coordinate axis as the radius grows (at angles like r^{-1/2}).
//! A plain uniform sphere grid misses both, so the grid is layered:
//!
//! 1. detected degeneracy directions (canonicalized, most significant first),
//! 2. the coordinate axes ±e_j,
//! 3. log-spaced "approach families" bending from every special direction
//!    toward every axis plane,
//! 4. a low-discrepancy base grid on the sphere,
//! 5. seeded extra samples (the only place the seed enters).
//!
//! Order matters: ties in argmax reductions resolve to the earliest
//! direction, so canonical witnesses are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SamplingConfig;

/// Angles from 1e-4 up to ~π/4, log-spaced. Dense enough that a maximizing
/// family at angle ~r^{-1/2} is sampled within a few percent at every
/// radius of the default sweep.
fn approach_angles() -> Vec<f64> {
    let lo: f64 = 1e-4;
    let hi: f64 = std::f64::consts::FRAC_PI_4;
    let count = 40;
    (0..count)
        .map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64))
        .collect()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}

/// Flip so the first nonzero component is positive.
pub fn canonical_sign(v: &[f64]) -> Vec<f64> {
    let flip = v.iter().find(|&&x| x != 0.0).is_some_and(|&x| x < 0.0);
    if flip {
        v.iter().map(|&x| -x).collect()
    } else {
        v.to_vec()
    }
}

fn base_grid(n: usize, count: usize) -> Vec<Vec<f64>> {
    match n {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / count as f64;
                vec![theta.cos(), theta.sin()]
            })
            .collect(),
        3 => {
            // Fibonacci sphere.
            let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = 2.0 * std::f64::consts::PI * (k as f64) / golden;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            // Halton sequence mapped to the cube, rejected to the ball.
            let primes = [2u64, 3, 5, 7, 11, 13, 17, 19];
            let mut out = Vec::with_capacity(count);
            let mut index = 1u64;
            while out.len() < count {
                let mut v: Vec<f64> = (0..n)
                    .map(|j| 2.0 * halton(index, primes[j]) - 1.0)
                    .collect();
                index += 1;
                let norm2 = v.iter().map(|x| x * x).sum::<f64>();
                if norm2 > 1.0 || norm2 < 0.04 {
                    continue;
                }
                if normalize(&mut v) {
                    out.push(v);
                }
            }
            out
        }
    }
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Rotations of `center` toward `target` (both unit) at the given angle.
fn bend(center: &[f64], target: &[f64], theta: f64) -> Option<Vec<f64>> {
    let dot: f64 = center.iter().zip(target).map(|(a, b)| a * b).sum();
    let mut ortho: Vec<f64> = target
        .iter()
        .zip(center)
        .map(|(t, c)| t - dot * c)
        .collect();
    if !normalize(&mut ortho) {
        return None;
    }
    let (s, c) = theta.sin_cos();
    Some(
        center
            .iter()
            .zip(&ortho)
            .map(|(x, o)| c * x + s * o)
            .collect(),
    )
}

/// The full deterministic direction list for a sweep in `n` variables.
/// `special` carries detected degeneracy directions (unit vectors).
pub fn direction_grid(n: usize, cfg: &SamplingConfig, special: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut dirs: Vec<Vec<f64>> = Vec::new();

    // 1. Degeneracy directions, canonical form, most significant first.
    let mut canon: Vec<Vec<f64>> = special.iter().map(|d| canonical_sign(d)).collect();
    canon.sort_by(|a, b| b.partial_cmp(a).expect("finite directions"));
    canon.dedup();
    dirs.extend(canon.iter().cloned());

    // 2. Axes.
    let mut axes: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        axes.push(e.clone());
        e[j] = -1.0;
        axes.push(e);
    }
    dirs.extend(axes.iter().cloned());

    // 3. Approach families from every special direction and axis toward
    //    every signed axis.
    if n >= 2 {
        let angles = approach_angles();
        let mut centers: Vec<Vec<f64>> = Vec::new();
        centers.extend(canon.iter().cloned());
        centers.extend(canon.iter().map(|d| d.iter().map(|x| -x).collect()));
        centers.extend(axes.iter().cloned());
        for center in &centers {
            for target in &axes {
                for &theta in &angles {
                    if let Some(d) = bend(center, target, theta) {
                        dirs.push(d);
                    }
                }
            }
        }
    }

    // 4. Low-discrepancy base grid.
    dirs.extend(base_grid(n, cfg.directions_count.max(2)));

    // 5. Seeded extras.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let extras = (cfg.directions_count / 4).max(4);
    let mut produced = 0;
    while produced < extras {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
        let norm2 = v.iter().map(|x| x * x).sum::<f64>();
        if norm2 > 1.0 || norm2 < 0.04 {
            continue;
        }
        if normalize(&mut v) {
            dirs.push(v);
            produced += 1;
        }
    }

    // Negations of the special directions close the list.
    dirs.extend(
        canon
            .iter()
            .map(|d| d.iter().map(|x| -x).collect::<Vec<f64>>()),
    );

    // Deduplicate bit-for-bit, keeping first occurrences (and so priority).
    let mut seen: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
    dirs.retain(|d| seen.insert(d.iter().map(|x| x.to_bits()).collect()));
    dirs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_deterministic() {
        let cfg = SamplingConfig::default();
        let a = direction_grid(2, &cfg, &[]);
        let b = direction_grid(2, &cfg, &[]);
        assert_eq!(a, b);
        assert!(a.len() > cfg.directions_count);
    }

    #[test]
    fn special_directions_come_first() {
        let cfg = SamplingConfig::default();
        let inv = 1.0 / 2.0f64.sqrt();
        let grid = direction_grid(2, &cfg, &[vec![-inv, -inv]]);
        assert_eq!(grid[0], vec![inv, inv]); // canonical sign
    }

    #[test]
    fn axes_present_exactly() {
        let cfg = SamplingConfig::default();
        let grid = direction_grid(3, &cfg, &[]);
        assert!(grid.contains(&vec![1.0, 0.0, 0.0]));
        assert!(grid.contains(&vec![0.0, -1.0, 0.0]));
    }

    #[test]
    fn all_unit_vectors() {
        let cfg = SamplingConfig::default();
        for d in direction_grid(2, &cfg, &[vec![0.6, 0.8]]) {
            let n: f64 = d.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
