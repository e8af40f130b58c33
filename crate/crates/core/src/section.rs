//! The odd-moment engine: outer quadrature over hyperplane space with exact
//! per-node geometry.
//!
//! For `k > -1` the volumetric moment of a `d`-polytope `P` reduces to an
//! integral over hyperplanes `{x : η·x = 1}` (Cartesian parametrisation):
//!
//! `v_d^(k)(P) = (d-1)!/d^k ∫ v_{d-1}^(k+1)(σ∩P) · ζ^{d+k+1}(η) · ι^(k)(η) dη`
//!
//! where `σ∩P` is the section, `ζ = vol_{d-1}(σ∩P)/(‖η‖ vol P)` and
//! `ι^(k) = ∫_P |η·x-1|^k dx`. For odd `k` the section moment has even order
//! `k+1` and is an exact rational; `ζ` and `ι` are exact rationals at any
//! rational `η`. The only approximation is the outer quadrature.
//!
//! The domain splits into configuration regions (see [`crate::symmetry`]);
//! each region is an open convex polyhedron integrated by a tensor grid after
//! a per-axis change of variables onto `(0,1)`: affine for bounded axes,
//! `lo + t/(1-t)` for half-lines, and a rational bijection for full lines.
//! Conditional bounds are resolved axis by axis from the region's strict
//! inequalities, so coupled (non-box) regions need no manual transforms.

use rayon::prelude::*;

use crate::lp::StrictIneq;
use crate::moments::{
    even_expansion, even_moment_with, iota_of_slice, segment_moment, segment_moment_real,
    triangle_moment, zeta_of_section, EvenExpansion,
};
use crate::polytope::{Hyperplane, Polytope};
use crate::quadrature::QuadratureSpec;
use crate::rat::{factorial, int, to_f64, Rat};
use crate::symmetry::Configuration;
use crate::{Error, Result};

use num_traits::{One, Signed, Zero};

/// Estimate for a single configuration's contribution (before weighting).
#[derive(Debug, Clone)]
pub struct ConfigEstimate {
    pub label: String,
    pub weight: Rat,
    /// Per-configuration integral value (the quantity the weights multiply).
    pub value: f64,
    /// Error estimate from grid refinement.
    pub error: f64,
    /// Leaf evaluations performed (fine grid plus coarse grid).
    pub nodes: u64,
    /// Whether `error ≤ rel_tol · |value|`.
    pub converged: bool,
}

/// Full odd-moment estimate with per-configuration breakdown.
#[derive(Debug, Clone)]
pub struct OddMomentEstimate {
    pub total: f64,
    pub error_estimate: f64,
    pub per_config: Vec<ConfigEstimate>,
}

/// Exact integrand factors at one quadrature node.
fn node_value(
    p: &Polytope,
    vol: &Rat,
    k: usize,
    expansion: Option<&EvenExpansion>,
    eta: &[Rat],
) -> Result<f64> {
    let d = p.dim();
    let plane = Hyperplane::new(eta.to_vec());
    let slice = p.slice(&plane);
    if slice.section.len() < d {
        return Err(Error::Invalid(
            "degenerate section at an interior quadrature node".into(),
        ));
    }
    let inner: f64 = if d == 1 {
        1.0
    } else if let Some(exp) = expansion {
        let (section_poly, _) = Polytope::section_chart(&slice.section)?;
        to_f64(&even_moment_with(&section_poly, exp))
    } else {
        // Even k: the section moment has odd order k+1; exact closed forms
        // exist for segments (d=2) and triangles (d=3).
        match d {
            2 => to_f64(&segment_moment(k + 1)),
            3 if slice.section.len() == 3 => to_f64(&triangle_moment(k + 1)),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no exact section moment of odd order {} for a {}-vertex section in d={}",
                    k + 1,
                    slice.section.len(),
                    d
                )))
            }
        }
    };
    let zeta = to_f64(&zeta_of_section(&slice.section, d, vol));
    let iota = to_f64(&iota_of_slice(&slice, &plane, d, k));
    Ok(inner * zeta.powi((d + k + 1) as i32) * iota)
}

/// Per-axis resolved bounds with a node `t ∈ (0,1)` mapped to the axis value
/// and the Jacobian of the map.
fn axis_map(lo: Option<&Rat>, hi: Option<&Rat>, t: &Rat) -> (Rat, Rat) {
    match (lo, hi) {
        (Some(lo), Some(hi)) => {
            let width = hi - lo;
            (lo + t * &width, width)
        }
        (Some(lo), None) => {
            let u = Rat::one() - t;
            (lo + t / &u, Rat::one() / (&u * &u))
        }
        (None, Some(hi)) => {
            let u = Rat::one() - t;
            (hi - &u / t, Rat::one() / (t * t))
        }
        (None, None) => {
            let u = Rat::one() - t;
            let tu = t * &u;
            let num = t * t + &u * &u;
            ((t - &u) / &tu, num / (&tu * &tu))
        }
    }
}

/// Last axis with a nonzero coefficient, if any.
fn last_axis(c: &StrictIneq) -> Option<usize> {
    (0..c.normal.len()).rev().find(|&i| !c.normal[i].is_zero())
}

/// Split a region into cells on which every axis has a *unique* active lower
/// and upper bound throughout. The axis-by-axis bound resolution then yields
/// affine bounds per cell, so the mapped integrand is analytic on each cell;
/// without the split, the min/max over competing constraints puts derivative
/// kinks in the interior of the outer integral and degrades the quadrature
/// from spectral to second order.
///
/// Axes are processed from last to first. For a pair of constraints whose
/// last axis is `j`, the locus where their induced bounds on axis `j`
/// coincide is affine in the earlier axes; splitting there separates which
/// constraint is active (same-sense pair) or carves out the projection of
/// the region onto the earlier axes (opposite-sense pair). Split constraints
/// involve only axes `< j` and are themselves processed at their own axis.
/// Empty cells are pruned by exact LP feasibility.
pub fn smooth_cells(region: &[StrictIneq], d: usize) -> Vec<Vec<StrictIneq>> {
    let mut cells = vec![region.to_vec()];
    for j in (1..d).rev() {
        let mut next = Vec::new();
        for cell in cells {
            next.extend(split_axis(cell, j));
        }
        cells = next;
    }
    cells
}

/// Split one cell along every bound-coincidence locus of axis `j`.
fn split_axis(cell: Vec<StrictIneq>, j: usize) -> Vec<Vec<StrictIneq>> {
    let on_axis: Vec<usize> = (0..cell.len())
        .filter(|&i| last_axis(&cell[i]) == Some(j))
        .collect();
    let mut cells = vec![cell];
    for (pi, &a) in on_axis.iter().enumerate() {
        for &b in &on_axis[pi + 1..] {
            // Bound induced by constraint c: x_j ≶ (rhs − Σ_{i<j} n_i x_i)/n_j.
            // The coincidence locus bound_a = bound_b is α·x = β below.
            let (ca, cb) = (&cells[0][a], &cells[0][b]);
            let (na, nb) = (ca.normal[j].clone(), cb.normal[j].clone());
            let alpha: Vec<Rat> = (0..j)
                .map(|i| &ca.normal[i] / &na - &cb.normal[i] / &nb)
                .chain((j..ca.normal.len()).map(|_| Rat::zero()))
                .collect();
            let beta = &ca.rhs / &na - &cb.rhs / &nb;
            if alpha.iter().all(|c| c.is_zero()) {
                continue;
            }
            let below = StrictIneq::new(alpha, beta);
            let above = below.flipped();
            let mut next = Vec::new();
            for cell in cells {
                let mut split = false;
                for side in [&below, &above] {
                    let mut candidate = cell.clone();
                    candidate.push(side.clone());
                    if crate::lp::strict_feasible(&candidate).is_some() {
                        next.push(candidate);
                        split = true;
                    }
                }
                if !split {
                    // Degenerate cell (should have been pruned earlier).
                    next.push(cell);
                }
            }
            cells = next;
        }
    }
    cells
}

/// Constraints of a region grouped by the last axis they involve; constraints
/// touching no axis must hold vacuously.
fn constraints_by_axis(region: &[StrictIneq], d: usize) -> Result<Vec<Vec<usize>>> {
    let mut by_axis: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (i, c) in region.iter().enumerate() {
        match (0..d).rev().find(|&j| !c.normal[j].is_zero()) {
            Some(j) => by_axis[j].push(i),
            None => {
                if c.rhs <= Rat::zero() {
                    return Err(Error::Infeasible);
                }
            }
        }
    }
    Ok(by_axis)
}

/// Resolved interval for axis `j` given values of axes `0..j`.
fn resolve_bounds(
    region: &[StrictIneq],
    axis_constraints: &[usize],
    prefix: &[Rat],
    j: usize,
) -> (Option<Rat>, Option<Rat>) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for &ci in axis_constraints {
        let c = &region[ci];
        let mut residual = c.rhs.clone();
        for (i, x) in prefix.iter().enumerate() {
            residual -= &c.normal[i] * x;
        }
        let a = &c.normal[j];
        let bound = residual / a;
        if a.is_positive() {
            if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|l| bound > *l) {
            lo = Some(bound);
        }
    }
    (lo, hi)
}

struct RegionIntegrator<'a> {
    p: &'a Polytope,
    vol: Rat,
    k: usize,
    expansion: Option<&'a EvenExpansion>,
    region: &'a [StrictIneq],
    by_axis: Vec<Vec<usize>>,
    nodes: Vec<(Rat, f64)>,
}

impl RegionIntegrator<'_> {
    fn run(&self) -> Result<(f64, u64)> {
        let d = self.p.dim();
        if d == 1 {
            let mut prefix = Vec::new();
            return self.descend(0, &mut prefix);
        }
        // Parallelise over the first axis; inner recursion is sequential per
        // branch and the final reduction is in fixed node order, so results
        // are identical across thread counts.
        let (lo, hi) = resolve_bounds(self.region, &self.by_axis[0], &[], 0);
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Ok((0.0, 0));
            }
        }
        let branches: Vec<Result<(f64, u64)>> = self
            .nodes
            .par_iter()
            .map(|(t, w)| {
                let (x, jac) = axis_map(lo.as_ref(), hi.as_ref(), t);
                let mut prefix = vec![x];
                let (v, n) = self.descend(1, &mut prefix)?;
                Ok((w * to_f64(&jac) * v, n))
            })
            .collect();
        let mut sum = 0.0;
        let mut count = 0;
        for b in branches {
            let (v, n) = b?;
            sum += v;
            count += n;
        }
        Ok((sum, count))
    }

    fn descend(&self, depth: usize, prefix: &mut Vec<Rat>) -> Result<(f64, u64)> {
        let d = self.p.dim();
        if depth == d {
            return Ok((node_value(self.p, &self.vol, self.k, self.expansion, prefix)?, 1));
        }
        let (lo, hi) = resolve_bounds(self.region, &self.by_axis[depth], prefix, depth);
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Ok((0.0, 0));
            }
        }
        let mut sum = 0.0;
        let mut count = 0;
        for (t, w) in &self.nodes {
            let (x, jac) = axis_map(lo.as_ref(), hi.as_ref(), t);
            prefix.push(x);
            let (v, n) = self.descend(depth + 1, prefix)?;
            prefix.pop();
            sum += w * to_f64(&jac) * v;
            count += n;
        }
        Ok((sum, count))
    }
}

fn integrate_regions(
    p: &Polytope,
    config: &Configuration,
    k: usize,
    expansion: Option<&EvenExpansion>,
    spec: &QuadratureSpec,
) -> Result<(f64, u64)> {
    let d = p.dim();
    let vol = p.volume();
    let nodes = spec.nodes();
    let mut total = 0.0;
    let mut count = 0;
    for region in &config.regions {
        for cell in smooth_cells(region, d) {
            let integrator = RegionIntegrator {
                p,
                vol: vol.clone(),
                k,
                expansion,
                region: &cell,
                by_axis: constraints_by_axis(&cell, d)?,
                nodes: nodes.clone(),
            };
            let (v, n) = integrator.run()?;
            total += v;
            count += n;
        }
    }
    Ok((total, count))
}

/// Prefactor `(d-1)!/d^k` of the section integral.
fn prefactor(d: usize, k: usize) -> f64 {
    to_f64(&(factorial(d - 1) / int(d as i64).pow(k as i32)))
}

fn section_expansion(d: usize, k: usize) -> Result<Option<EvenExpansion>> {
    if d >= 2 && (k + 1) % 2 == 0 {
        Ok(Some(even_expansion(d - 1, k + 1)?))
    } else {
        Ok(None)
    }
}

/// Integral contribution of one configuration (the value that `w_C`
/// multiplies), with an error estimate from comparing against a coarser grid.
pub fn config_contribution(
    p: &Polytope,
    config: &Configuration,
    k: usize,
    spec: &QuadratureSpec,
) -> Result<ConfigEstimate> {
    if config.is_empty_separation() {
        return Ok(ConfigEstimate {
            label: config.label.clone(),
            weight: config.weight.clone(),
            value: 0.0,
            error: 0.0,
            nodes: 0,
            converged: true,
        });
    }
    let d = p.dim();
    let expansion = section_expansion(d, k)?;
    let pref = prefactor(d, k);
    let (fine, n_fine) = integrate_regions(p, config, k, expansion.as_ref(), spec)?;
    let (coarse, n_coarse) = integrate_regions(p, config, k, expansion.as_ref(), &spec.coarse())?;
    let value = pref * fine;
    let error = pref * (fine - coarse).abs();
    Ok(ConfigEstimate {
        label: config.label.clone(),
        weight: config.weight.clone(),
        value,
        error,
        nodes: n_fine + n_coarse,
        converged: error <= spec.rel_tol * value.abs().max(f64::MIN_POSITIVE),
    })
}

/// Odd volumetric moment `v_d^(k)(P)` by weighted summation over
/// configurations. Accepts even `k` too (the identity holds for any
/// `k > -1`), which is used as a consistency bridge against the exact
/// even-moment expansion where section closed forms exist.
pub fn odd_moment(
    p: &Polytope,
    configs: &[Configuration],
    k: usize,
    spec: &QuadratureSpec,
) -> Result<OddMomentEstimate> {
    if k == 0 {
        return Err(Error::Unsupported("moment order k must be ≥ 1".into()));
    }
    let mut per_config = Vec::new();
    for config in configs {
        if config.is_empty_separation() {
            continue;
        }
        per_config.push(config_contribution(p, config, k, spec)?);
    }
    let mut total = 0.0;
    let mut error_estimate = 0.0;
    for c in &per_config {
        let w = to_f64(&c.weight);
        total += w * c.value;
        error_estimate += w * c.error;
    }
    Ok(OddMomentEstimate { total, error_estimate, per_config })
}

/// The integrand of the section integral at a specific rational `η`, with the
/// `(d-1)!/d^k` prefactor included. Errors if `η` lies in none of the
/// configuration's regions.
pub fn integrand(p: &Polytope, config: &Configuration, k: usize, eta: &[Rat]) -> Result<f64> {
    if eta.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: eta.len() });
    }
    if !config
        .regions
        .iter()
        .any(|r| r.iter().all(|c| c.satisfied_by(eta)))
    {
        return Err(Error::Invalid(format!(
            "η is outside every region of configuration {}",
            config.label
        )));
    }
    let expansion = section_expansion(p.dim(), k)?;
    Ok(prefactor(p.dim(), k) * node_value(p, &p.volume(), k, expansion.as_ref(), eta)?)
}

/// Efron's point-moment identity for `d = 3`:
/// `v_n^(1)(K_3) = n/(n+2) − n(n+1)/12 · γ_n` with
/// `γ_n = E[Γ^{n-1} + (1-Γ)^{n-1}]` over random planes through three uniform
/// points, `Γ` the volume fraction on one side.
pub fn efron_point_moment(n: usize, gamma_n: f64) -> f64 {
    let nf = n as f64;
    nf / (nf + 2.0) - nf * (nf + 1.0) / 12.0 * gamma_n
}

/// Real-order moment `v_d^(k)(P)` for non-integer `k > -1`, supported for
/// `d ≤ 2` where the section moment has the segment closed form. Approximate
/// (float) in the section-moment and `ι` factors; used for the
/// `k → (-1)⁺` limit check.
pub fn odd_moment_real(
    p: &Polytope,
    configs: &[Configuration],
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let d = p.dim();
    if d > 2 {
        return Err(Error::Unsupported(
            "real-order moments are only supported for d ≤ 2".into(),
        ));
    }
    if k <= -1.0 {
        return Err(Error::Unsupported("moment order must exceed -1".into()));
    }
    let vol = p.volume();
    let nodes = spec.nodes();
    let pref = to_f64(&factorial(d - 1)) / (d as f64).powf(k);
    let mut total = 0.0;
    for config in configs {
        for region in &config.regions {
            let by_axis = constraints_by_axis(region, d)?;
            let value = if d == 1 {
                let (lo, hi) = resolve_bounds(region, &by_axis[0], &[], 0);
                let mut sum = 0.0;
                for (t, w) in &nodes {
                    let (x, jac) = axis_map(lo.as_ref(), hi.as_ref(), t);
                    sum += w * to_f64(&jac) * node_value_real(p, &vol, k, &[x])?;
                }
                sum
            } else {
                let (lo, hi) = resolve_bounds(region, &by_axis[0], &[], 0);
                let branches: Vec<Result<f64>> = nodes
                    .par_iter()
                    .map(|(t, w)| {
                        let (x, jac) = axis_map(lo.as_ref(), hi.as_ref(), t);
                        let mut sum = 0.0;
                        for (t2, w2) in &nodes {
                            let (lo2, hi2) = resolve_bounds(region, &by_axis[1], &[x.clone()], 1);
                            if let (Some(l), Some(h)) = (&lo2, &hi2) {
                                if l >= h {
                                    continue;
                                }
                            }
                            let (y, jac2) = axis_map(lo2.as_ref(), hi2.as_ref(), t2);
                            sum += w2
                                * to_f64(&jac2)
                                * node_value_real(p, &vol, k, &[x.clone(), y])?;
                        }
                        Ok(w * to_f64(&jac) * sum)
                    })
                    .collect();
                let mut sum = 0.0;
                for b in branches {
                    sum += b?;
                }
                sum
            };
            total += to_f64(&config.weight) * value;
        }
    }
    Ok(pref * total)
}

/// Integrand factors for real `k` (float, `d ≤ 2`).
fn node_value_real(p: &Polytope, vol: &Rat, k: f64, eta: &[Rat]) -> Result<f64> {
    let d = p.dim();
    let plane = Hyperplane::new(eta.to_vec());
    let slice = p.slice(&plane);
    if slice.section.len() < d {
        return Err(Error::Invalid(
            "degenerate section at an interior quadrature node".into(),
        ));
    }
    let inner = if d == 1 { 1.0 } else { segment_moment_real(k + 1.0) };
    let zeta = to_f64(&zeta_of_section(&slice.section, d, vol));
    let iota = iota_real(&slice, &plane, d, k);
    Ok(inner * zeta.powf(d as f64 + k + 1.0) * iota)
}

/// `ι^(k) = ∫_P |η·x−1|^k dx` for real `k > -1`, via triangulation and
/// divided differences of `x^{k+d}` (confluent cases resolved by exact
/// comparison of the rational vertex heights).
fn iota_real(slice: &crate::polytope::Slice, plane: &Hyperplane, d: usize, k: f64) -> f64 {
    let mut acc = 0.0;
    for piece in [&slice.plus, &slice.minus].into_iter().flatten() {
        for simplex in piece.triangulate() {
            let verts: Vec<&Vec<Rat>> = simplex.iter().map(|&i| &piece.vertices()[i]).collect();
            let rows: Vec<Vec<Rat>> = verts[1..]
                .iter()
                .map(|v| crate::linalg::sub(v, verts[0]))
                .collect();
            let dvol = to_f64(&crate::linalg::det(&rows).abs());
            if dvol == 0.0 {
                continue;
            }
            let c: Vec<Rat> = verts.iter().map(|v| plane.height(v).abs()).collect();
            acc += dvol * simplex_power_divdiff(&c, k, d);
        }
    }
    acc
}

/// `∫_{Δ^d} (Σ λ_i c_i)^k dλ` over the unit `d`-simplex in barycentric
/// coordinates (Lebesgue measure of the parameter simplex), as the `d`-th
/// divided difference of `x^{k+d} / ((k+1)⋯(k+d))` over the exact heights.
fn simplex_power_divdiff(c: &[Rat], k: f64, d: usize) -> f64 {
    let g = |x: &Rat| -> f64 {
        let xf = to_f64(x);
        xf.powf(k + d as f64)
    };
    let scale: f64 = (1..=d).map(|j| k + j as f64).product::<f64>().recip();
    match d {
        1 => {
            let (a, b) = (&c[0], &c[1]);
            if a == b {
                to_f64(a).powf(k)
            } else {
                scale * (g(b) - g(a)) / (to_f64(b) - to_f64(a))
            }
        }
        2 => {
            // Sort so equal values are adjacent; divided differences are
            // symmetric in their arguments.
            let mut s: Vec<&Rat> = c.iter().collect();
            s.sort();
            let (a, b, cc) = (s[0], s[1], s[2]);
            let gp = |x: &Rat| (k + 2.0) * to_f64(x).powf(k + 1.0);
            if a == cc {
                // all equal: G''(a)/2 with G'' (x) = (k+1)(k+2) x^k / ((k+1)(k+2))
                to_f64(a).powf(k) / 2.0
            } else if a == b {
                // [a,a,c] = ([a,c] - G'(a)) / (c - a)
                let d01 = (g(cc) - g(a)) / (to_f64(cc) - to_f64(a));
                scale * (d01 - gp(a)) / (to_f64(cc) - to_f64(a))
            } else if b == cc {
                let d01 = (g(b) - g(a)) / (to_f64(b) - to_f64(a));
                scale * (gp(b) - d01) / (to_f64(b) - to_f64(a))
            } else {
                let d01 = (g(b) - g(a)) / (to_f64(b) - to_f64(a));
                let d12 = (g(cc) - g(b)) / (to_f64(cc) - to_f64(b));
                scale * (d12 - d01) / (to_f64(cc) - to_f64(a))
            }
        }
        _ => unreachable!("real-order ι only used for d ≤ 2"),
    }
}
