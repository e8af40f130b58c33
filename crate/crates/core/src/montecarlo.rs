//! Monte Carlo oracles: uniform sampling in polytopes, direct estimation of
//! metric moments, and the Efron plane-splitting functional with exact
//! per-sample volume fractions.
//!
//! Sampling triangulates the polytope once, picks a simplex proportionally to
//! volume, and draws symmetric barycentric weights from `d+2` unit
//! exponentials. Estimation runs in `f64`; only the Efron path keeps exact
//! rational geometry per sample (points snapped to dyadic rationals, the
//! plane solved and the volume split computed exactly) so that the statistic
//! `Γ` carries no geometric error.
//!
//! Reproducibility: samples are generated in fixed-size chunks, each chunk on
//! its own counter-derived RNG stream, and chunk results are reduced in chunk
//! order — estimates are bit-identical for a given seed regardless of thread
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::linalg::{det, solve, sub};
use crate::polytope::Polytope;
use crate::rat::{factorial, from_f64_dyadic, to_f64, Rat};
use crate::section::efron_point_moment;
use crate::{Error, Result};

use num_traits::{One, Signed, Zero};

/// Samples per RNG stream; fixed so parallel runs reduce identically.
const CHUNK: u64 = 1 << 14;

/// Bits kept when snapping sampled points for the exact-Γ path.
const SAMPLE_BITS: u32 = 26;

/// Immutable sampling state: triangulation with a cumulative volume table.
#[derive(Debug, Clone)]
pub struct SamplerState {
    dim: usize,
    /// Simplices as `d+1` vertex coordinate rows, in `f64`.
    simplices: Vec<Vec<Vec<f64>>>,
    /// The same simplices with exact coordinates (for the exact-Γ path).
    simplices_exact: Vec<Vec<Vec<Rat>>>,
    /// Cumulative simplex volumes, ending at the total volume.
    cumulative: Vec<f64>,
    total_volume: Rat,
}

impl SamplerState {
    pub fn new(p: &Polytope) -> Self {
        let d = p.dim();
        let dfact = factorial(d);
        let mut simplices = Vec::new();
        let mut simplices_exact = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for simplex in p.triangulate() {
            let verts: Vec<Vec<Rat>> =
                simplex.iter().map(|&i| p.vertices()[i].clone()).collect();
            let rows: Vec<Vec<Rat>> =
                verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
            let vol = to_f64(&(det(&rows).abs() / &dfact));
            if vol <= 0.0 {
                continue;
            }
            acc += vol;
            cumulative.push(acc);
            simplices.push(
                verts
                    .iter()
                    .map(|v| v.iter().map(to_f64).collect())
                    .collect(),
            );
            simplices_exact.push(verts);
        }
        SamplerState {
            dim: d,
            simplices,
            simplices_exact,
            cumulative,
            total_volume: p.volume(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_volume(&self) -> &Rat {
        &self.total_volume
    }

    fn pick_simplex(&self, rng: &mut ChaCha8Rng) -> usize {
        if self.cumulative.len() == 1 {
            return 0;
        }
        let total = *self.cumulative.last().unwrap();
        let u = rng.random::<f64>() * total;
        self.cumulative.partition_point(|c| *c <= u).min(self.cumulative.len() - 1)
    }

    /// One uniform point, as `f64` coordinates.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let s = &self.simplices[self.pick_simplex(rng)];
        let w = dirichlet_weights(rng, self.dim + 1);
        let mut x = vec![0.0; self.dim];
        for (vi, wi) in s.iter().zip(&w) {
            for (xj, vj) in x.iter_mut().zip(vi) {
                *xj += wi * vj;
            }
        }
        x
    }

    /// One uniform point with coordinates snapped to dyadic rationals.
    fn sample_point_exact(&self, rng: &mut ChaCha8Rng) -> Vec<Rat> {
        self.sample_point(rng)
            .into_iter()
            .map(|c| from_f64_dyadic(c, SAMPLE_BITS))
            .collect()
    }
}

/// Symmetric Dirichlet weights from unit exponentials.
fn dirichlet_weights(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..m)
        .map(|_| {
            let u: f64 = rng.random();
            // Guard against ln(0).
            -(u.max(f64::MIN_POSITIVE)).ln()
        })
        .collect();
    let s: f64 = w.iter().sum();
    for wi in &mut w {
        *wi /= s;
    }
    w
}

/// A Monte Carlo estimate with a normal-theory 95% confidence interval.
#[derive(Debug, Clone, Copy)]
pub struct MomentEstimate {
    pub mean: f64,
    pub ci95: (f64, f64),
    pub n_samples: u64,
}

impl MomentEstimate {
    fn from_sums(sum: f64, sum_sq: f64, n: u64) -> Self {
        let mean = sum / n as f64;
        let var = (sum_sq / n as f64 - mean * mean).max(0.0);
        let hw = 1.96 * (var / n as f64).sqrt();
        MomentEstimate { mean, ci95: (mean - hw, mean + hw), n_samples: n }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci95.0 <= x && x <= self.ci95.1
    }

    pub fn half_width(&self) -> f64 {
        (self.ci95.1 - self.ci95.0) / 2.0
    }
}

fn rng_for_chunk(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk + 1);
    rng
}

/// Chunked, order-stable parallel Monte Carlo mean of `f(rng)`.
fn mc_run<F>(n_samples: u64, seed: u64, f: F) -> MomentEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let n_chunks = n_samples.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = rng_for_chunk(seed, ci);
            let count = CHUNK.min(n_samples - ci * CHUNK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let x = f(&mut rng);
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for (s, q) in partials {
        sum += s;
        sum_sq += q;
    }
    MomentEstimate::from_sums(sum, sum_sq, n_samples)
}

/// Direct Monte Carlo estimate of the metric moment `v_n^(k)(P)`:
/// `E[(vol conv(X_0..X_n) / vol P)^k]` over `n+1` i.i.d. uniform points.
///
/// `n = d` uses the simplex determinant; `n > d` computes the convex hull
/// volume and is supported for `d = 3` only.
pub fn mc_moment(p: &Polytope, n: usize, k: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    let d = p.dim();
    if n < d {
        return Err(Error::Unsupported(format!("need n ≥ d, got n={n}, d={d}")));
    }
    if n > d && d != 3 {
        return Err(Error::Unsupported(
            "hull moments with n > d are supported for d = 3 only".into(),
        ));
    }
    if n_samples < 1_000 {
        return Err(Error::Invalid(
            "fewer than 1000 samples gives a meaningless confidence interval".into(),
        ));
    }
    let state = SamplerState::new(p);
    let vol = to_f64(&state.total_volume);
    let dfact: f64 = (1..=d).map(|i| i as f64).product();
    let est = mc_run(n_samples, seed, |rng| {
        let pts: Vec<Vec<f64>> = (0..=n).map(|_| state.sample_point(rng)).collect();
        let v = if n == d {
            let rows: Vec<Vec<f64>> = pts[1..]
                .iter()
                .map(|q| q.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
                .collect();
            det_f64(&rows).abs() / dfact
        } else {
            hull_volume_3d(&pts)
        };
        (v / vol).powi(k as i32)
    });
    Ok(est)
}

/// Dense `f64` determinant (partial pivoting); sizes here are ≤ 6.
fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut sign = 1.0;
    let mut result = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            sign = -sign;
        }
        result *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                let delta = f * a[col][c];
                a[row][c] -= delta;
            }
        }
    }
    sign * result
}

/// Convex hull volume of a small 3D point set by brute-force facet scan:
/// a triple spans a hull facet iff all remaining points lie on one closed
/// side. Points exactly on the facet plane are merged into one polygonal
/// facet (deduplicated by its point set) so coplanar inputs are not
/// double-counted; the volume is the fan of cones from the centroid.
fn hull_volume_3d(pts: &[Vec<f64>]) -> f64 {
    let m = pts.len();
    let g: Vec<f64> = (0..3)
        .map(|c| pts.iter().map(|p| p[c]).sum::<f64>() / m as f64)
        .collect();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut vol = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let u: Vec<f64> = (0..3).map(|c| pts[j][c] - pts[i][c]).collect();
                let v: Vec<f64> = (0..3).map(|c| pts[k][c] - pts[i][c]).collect();
                let nx = u[1] * v[2] - u[2] * v[1];
                let ny = u[2] * v[0] - u[0] * v[2];
                let nz = u[0] * v[1] - u[1] * v[0];
                if nx == 0.0 && ny == 0.0 && nz == 0.0 {
                    continue; // collinear triple
                }
                let offset = nx * pts[i][0] + ny * pts[i][1] + nz * pts[i][2];
                let mut pos = false;
                let mut neg = false;
                let mut facet = vec![i, j, k];
                for (l, q) in pts.iter().enumerate() {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    let s = nx * q[0] + ny * q[1] + nz * q[2] - offset;
                    if s > 0.0 {
                        pos = true;
                    } else if s < 0.0 {
                        neg = true;
                    } else {
                        facet.push(l);
                    }
                }
                if pos && neg {
                    continue;
                }
                facet.sort_unstable();
                if !seen.insert(facet.clone()) {
                    continue;
                }
                // Order the facet's points around its centroid in-plane.
                let fc: Vec<f64> = (0..3)
                    .map(|c| facet.iter().map(|&l| pts[l][c]).sum::<f64>() / facet.len() as f64)
                    .collect();
                let e1: Vec<f64> = (0..3).map(|c| pts[facet[0]][c] - fc[c]).collect();
                let nvec = [nx, ny, nz];
                let e2 = [
                    nvec[1] * e1[2] - nvec[2] * e1[1],
                    nvec[2] * e1[0] - nvec[0] * e1[2],
                    nvec[0] * e1[1] - nvec[1] * e1[0],
                ];
                let mut ring: Vec<(f64, usize)> = facet
                    .iter()
                    .map(|&l| {
                        let r: Vec<f64> = (0..3).map(|c| pts[l][c] - fc[c]).collect();
                        let x: f64 = r.iter().zip(&e1).map(|(a, b)| a * b).sum();
                        let y: f64 = r.iter().zip(&e2).map(|(a, b)| a * b).sum();
                        (y.atan2(x), l)
                    })
                    .collect();
                ring.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                // Cones from the centroid over the fan triangulation.
                let p0 = &pts[ring[0].1];
                let a: Vec<f64> = (0..3).map(|c| p0[c] - g[c]).collect();
                for t in 1..ring.len() - 1 {
                    let b: Vec<f64> = (0..3).map(|c| pts[ring[t].1][c] - g[c]).collect();
                    let cvec: Vec<f64> =
                        (0..3).map(|c| pts[ring[t + 1].1][c] - g[c]).collect();
                    let dd = a[0] * (b[1] * cvec[2] - b[2] * cvec[1])
                        - a[1] * (b[0] * cvec[2] - b[2] * cvec[0])
                        + a[2] * (b[0] * cvec[1] - b[1] * cvec[0]);
                    vol += dd.abs() / 6.0;
                }
            }
        }
    }
    vol
}

/// Fraction of a 3-simplex with exact vertex heights `h` lying strictly above
/// the plane `height = 0`, by the divided-difference identity
/// `Σ_{h_i>0} h_i³ / Π_{j≠i}(h_i − h_j)` (requires distinct heights).
fn simplex_fraction_above(h: &[Rat; 4]) -> Option<Rat> {
    let positives = h.iter().filter(|x| x.is_positive()).count();
    if positives == 0 {
        return Some(Rat::zero());
    }
    if h.iter().all(|x| x.is_positive() || x.is_zero()) {
        return Some(Rat::one());
    }
    let mut acc = Rat::zero();
    for i in 0..4 {
        if !h[i].is_positive() {
            continue;
        }
        let mut denom = Rat::one();
        for j in 0..4 {
            if j != i {
                let diff = &h[i] - &h[j];
                if diff.is_zero() {
                    return None; // confluent heights: caller falls back
                }
                denom *= diff;
            }
        }
        acc += &h[i] * &h[i] * &h[i] / denom;
    }
    Some(acc)
}

/// Exact volume fraction of `P` strictly above the plane `η·x = 1` (`d = 3`).
fn volume_fraction_exact(state: &SamplerState, eta: &[Rat]) -> Option<Rat> {
    let mut above = Rat::zero();
    let total = &state.total_volume;
    let dfact = factorial(3);
    for verts in &state.simplices_exact {
        let h: [Rat; 4] = std::array::from_fn(|i| {
            verts[i]
                .iter()
                .zip(eta)
                .map(|(a, b)| a * b)
                .sum::<Rat>()
                - Rat::one()
        });
        let rows: Vec<Vec<Rat>> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
        let vol = det(&rows).abs() / &dfact;
        above += vol * simplex_fraction_above(&h)?;
    }
    Some(above / total)
}

/// Monte Carlo estimate of `γ_n = E[Γ^{n-1} + (1-Γ)^{n-1}]` for a 3-polytope:
/// random planes through triples of uniform points, with `Γ` (the volume
/// fraction on one side) computed exactly per sample.
pub fn mc_gamma(p: &Polytope, n: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    if p.dim() != 3 {
        return Err(Error::Unsupported("the plane-splitting functional needs d = 3".into()));
    }
    if n < 3 {
        return Err(Error::Unsupported(format!("need n ≥ 3, got {n}")));
    }
    let state = SamplerState::new(p);
    let exponent = (n - 1) as i32;
    let est = mc_run(n_samples, seed, |rng| {
        loop {
            let pts: Vec<Vec<Rat>> = (0..3).map(|_| state.sample_point_exact(rng)).collect();
            // Plane η·x = 1 through the three points.
            let rhs = vec![Rat::one(), Rat::one(), Rat::one()];
            let m: Vec<Vec<Rat>> = pts.clone();
            let Some(eta) = solve(&m, &rhs) else {
                continue; // degenerate triple (or plane through the origin)
            };
            let Some(gamma) = volume_fraction_exact(&state, &eta) else {
                continue; // confluent heights; resample
            };
            let g = to_f64(&gamma);
            if exponent == 0 {
                return 2.0;
            }
            return g.powi(exponent) + (1.0 - g).powi(exponent);
        }
    });
    Ok(est)
}

/// Efron estimate of `v_n^(1)` for a 3-polytope: `γ_n` by [`mc_gamma`], then
/// the point-moment identity. The confidence interval is the exact linear
/// image of the `γ` interval.
pub fn efron_mean(p: &Polytope, n: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    let gamma = mc_gamma(p, n, n_samples, seed)?;
    let lo = efron_point_moment(n, gamma.ci95.1);
    let hi = efron_point_moment(n, gamma.ci95.0);
    Ok(MomentEstimate {
        mean: efron_point_moment(n, gamma.mean),
        ci95: (lo, hi),
        n_samples,
    })
}
