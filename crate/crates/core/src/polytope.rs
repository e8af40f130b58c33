//! Exact convex polytope geometry: V/H representations, slicing by
//! hyperplanes, triangulation, volumes and monomial moments.
//!
//! Every operation here is exact over the rationals. Polytopes are stored
//! with both representations: the vertex list drives triangulation and
//! moments, the halfspace list drives face identification and slicing.
//! A hyperplane is always written in the normalised form `η · x = 1`, which
//! is the chart of hyperplane space used by the odd-moment section integral
//! (planes through the origin are excluded, which is harmless because the
//! origin is placed inside the polytope only when such planes never
//! contribute).

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};

use crate::linalg::{det, dot, kernel_vector, rank, solve, sub};
use crate::lp::{strict_feasible, strict_feasible_with_cap, LpOutcome, StrictIneq};
use crate::rat::{factorial, int, Rat};
use crate::{Error, Result};

/// Maximum vertex count accepted by facet enumeration from vertices.
pub const VREP_TO_HREP_VERTEX_CAP: usize = 24;

/// Exponent vector of a monomial `x_1^{α_1} · … · x_d^{α_d}`.
pub type MultiIndex = Vec<u32>;

/// Closed halfspace `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Halfspace { normal, offset }
    }

    /// Signed slack `offset - normal · x` (non-negative inside).
    pub fn slack(&self, x: &[Rat]) -> Rat {
        &self.offset - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.slack(x).is_negative()
    }

    /// Canonical scaling: divide by |first nonzero normal entry| so that
    /// equal halfspaces compare equal.
    fn canonical(&self) -> Halfspace {
        let lead = self
            .normal
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero normal")
            .abs();
        Halfspace {
            normal: self.normal.iter().map(|c| c / &lead).collect(),
            offset: &self.offset / &lead,
        }
    }
}

/// Hyperplane `η · x = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub eta: Vec<Rat>,
}

impl Hyperplane {
    pub fn new(eta: Vec<Rat>) -> Self {
        Hyperplane { eta }
    }

    /// `η · x - 1`: negative strictly below the plane, positive above.
    pub fn height(&self, x: &[Rat]) -> Rat {
        dot(&self.eta, x) - Rat::one()
    }
}

/// A full-dimensional convex polytope with both representations available.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    halfspaces: Vec<Halfspace>,
}

/// Result of cutting a polytope with a hyperplane `η · x = 1`.
#[derive(Debug, Clone)]
pub struct Slice {
    /// Piece on the side `η · x ≥ 1`, when non-degenerate.
    pub plus: Option<Polytope>,
    /// Piece on the side `η · x ≤ 1`, when non-degenerate.
    pub minus: Option<Polytope>,
    /// Vertices of the section polytope `P ∩ {η · x = 1}`.
    pub section: Vec<Vec<Rat>>,
}

/// Affine chart for a section: maps chart coordinates `c ∈ R^{d-1}` to the
/// ambient point `origin + basis · c`.
#[derive(Debug, Clone)]
pub struct Chart {
    pub origin: Vec<Rat>,
    /// Basis vectors (columns), each of ambient dimension.
    pub basis: Vec<Vec<Rat>>,
}

impl Chart {
    pub fn to_ambient(&self, c: &[Rat]) -> Vec<Rat> {
        let mut p = self.origin.clone();
        for (col, coef) in self.basis.iter().zip(c) {
            for (pi, bi) in p.iter_mut().zip(col) {
                *pi += bi * coef;
            }
        }
        p
    }
}

impl Polytope {
    /// Build from vertices; the facet description is derived exactly.
    pub fn from_vertices(vertices: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = check_vertex_dims(&vertices)?;
        if vertices.len() > VREP_TO_HREP_VERTEX_CAP {
            return Err(Error::TooManyVertices {
                got: vertices.len(),
                cap: VREP_TO_HREP_VERTEX_CAP,
            });
        }
        let ar = affine_rank(&vertices);
        if ar != dim {
            return Err(Error::NotFullDimensional { rank: ar, dim });
        }
        let vertices = dedup_points(vertices);
        let halfspaces = hrep_from_vrep(&vertices, dim)?;
        let p = Polytope { dim, vertices, halfspaces };
        Ok(p.drop_non_vertices())
    }

    /// Build from halfspaces; the vertex list is enumerated exactly.
    /// Errors when the intersection is unbounded, empty or lower-dimensional.
    pub fn from_halfspaces(halfspaces: Vec<Halfspace>) -> Result<Self> {
        let dim = halfspaces
            .first()
            .map(|h| h.normal.len())
            .ok_or_else(|| Error::Invalid("empty halfspace list".into()))?;
        if halfspaces.iter().any(|h| h.normal.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: 0 });
        }
        for j in 0..dim {
            let mut c = vec![Rat::zero(); dim];
            c[j] = Rat::one();
            let cons: Vec<(Vec<Rat>, Rat)> = halfspaces
                .iter()
                .map(|h| (h.normal.clone(), h.offset.clone()))
                .collect();
            for obj in [c.clone(), c.iter().map(|x| -x).collect()] {
                match crate::lp::maximize(&obj, &cons) {
                    LpOutcome::Unbounded => return Err(Error::Unbounded),
                    LpOutcome::Infeasible => return Err(Error::Infeasible),
                    LpOutcome::Optimal { .. } => {}
                }
            }
        }
        let vertices = vrep_from_hrep(&halfspaces, dim)?;
        let ar = affine_rank(&vertices);
        if ar != dim {
            return Err(Error::NotFullDimensional { rank: ar, dim });
        }
        // Keep only facet-defining halfspaces.
        let halfspaces = prune_halfspaces(&vertices, halfspaces, dim);
        Ok(Polytope { dim, vertices, halfspaces })
    }

    /// Build from both representations (used by the catalog for solids whose
    /// facet structure is known in closed form). Consistency is checked.
    pub fn with_halfspaces(vertices: Vec<Vec<Rat>>, halfspaces: Vec<Halfspace>) -> Result<Self> {
        let dim = check_vertex_dims(&vertices)?;
        let vertices = dedup_points(vertices);
        let ar = affine_rank(&vertices);
        if ar != dim {
            return Err(Error::NotFullDimensional { rank: ar, dim });
        }
        for v in &vertices {
            if !halfspaces.iter().all(|h| h.contains(v)) {
                return Err(Error::Invalid("vertex violates a declared halfspace".into()));
            }
        }
        for h in &halfspaces {
            let tight: Vec<Vec<Rat>> = vertices
                .iter()
                .filter(|v| h.slack(v).is_zero())
                .cloned()
                .collect();
            if tight.is_empty() || affine_rank(&tight) != dim - 1 {
                return Err(Error::Invalid("declared halfspace is not a facet".into()));
            }
        }
        let p = Polytope { dim, vertices, halfspaces };
        Ok(p.drop_non_vertices())
    }

    /// Ambient (= intrinsic) dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Remove listed points that are not extreme points of the hull.
    /// (A point is a vertex iff its tight halfspace normals span `R^d`.)
    fn drop_non_vertices(mut self) -> Self {
        let dim = self.dim;
        let hs = std::mem::take(&mut self.halfspaces);
        self.vertices.retain(|v| {
            let tight: Vec<Vec<Rat>> = hs
                .iter()
                .filter(|h| h.slack(v).is_zero())
                .map(|h| h.normal.clone())
                .collect();
            rank(&tight) == dim
        });
        self.halfspaces = hs;
        self
    }

    /// Edges as index pairs into `vertices()`, identified exactly: two
    /// vertices are adjacent iff their common tight halfspaces have normal
    /// rank `d - 1`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let tight: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                self.halfspaces
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<Vec<Rat>> = tight[i]
                    .iter()
                    .filter(|k| tight[j].contains(k))
                    .map(|&k| self.halfspaces[k].normal.clone())
                    .collect();
                if common.len() >= self.dim - 1 && rank(&common) == self.dim - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Exact volume.
    pub fn volume(&self) -> Rat {
        let tri = self.triangulate();
        let dfact = factorial(self.dim);
        tri.iter()
            .map(|s| {
                let rows: Vec<Vec<Rat>> = s[1..]
                    .iter()
                    .map(|&i| sub(&self.vertices[i], &self.vertices[s[0]]))
                    .collect();
                det(&rows).abs()
            })
            .sum::<Rat>()
            / dfact
    }

    /// Triangulation into simplices given as vertex index lists
    /// (`dim + 1` indices each), covering the polytope exactly.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        triangulate_rec(&self.vertices, &self.halfspaces, self.dim)
    }

    /// Exact integral `∫_P x^α dx` of a monomial over the polytope.
    pub fn monomial_moment(&self, alpha: &[u32]) -> Rat {
        assert_eq!(alpha.len(), self.dim, "multi-index arity");
        let tri = self.triangulate();
        tri.iter()
            .map(|s| {
                let verts: Vec<&Vec<Rat>> = s.iter().map(|&i| &self.vertices[i]).collect();
                simplex_monomial_integral(&verts, alpha)
            })
            .sum()
    }

    /// A strictly interior point (max-margin, capped).
    pub fn interior_point(&self) -> Result<Vec<Rat>> {
        let sys: Vec<StrictIneq> = self
            .halfspaces
            .iter()
            .map(|h| StrictIneq::new(h.normal.clone(), h.offset.clone()))
            .collect();
        strict_feasible(&sys).ok_or(Error::Infeasible)
    }

    /// Cut the polytope with the hyperplane `η · x = 1`.
    ///
    /// Vertices lying exactly on the plane belong to both pieces and to the
    /// section, so planes through vertices are handled without a special
    /// case.
    pub fn slice(&self, plane: &Hyperplane) -> Slice {
        assert_eq!(plane.eta.len(), self.dim, "hyperplane arity");
        let heights: Vec<Rat> = self.vertices.iter().map(|v| plane.height(v)).collect();
        let mut plus_verts: Vec<Vec<Rat>> = Vec::new();
        let mut minus_verts: Vec<Vec<Rat>> = Vec::new();
        let mut section: Vec<Vec<Rat>> = Vec::new();
        for (v, h) in self.vertices.iter().zip(&heights) {
            if h.is_positive() {
                plus_verts.push(v.clone());
            } else if h.is_negative() {
                minus_verts.push(v.clone());
            } else {
                plus_verts.push(v.clone());
                minus_verts.push(v.clone());
                section.push(v.clone());
            }
        }
        let any_plus = !plus_verts.is_empty();
        let any_minus = !minus_verts.is_empty();
        if any_plus && any_minus {
            for (i, j) in self.edges() {
                let (hi, hj) = (&heights[i], &heights[j]);
                if (hi.is_positive() && hj.is_negative())
                    || (hi.is_negative() && hj.is_positive())
                {
                    // x = v_i + t (v_j - v_i) with t = h_i / (h_i - h_j)
                    let t = hi / (hi - hj);
                    let x: Vec<Rat> = self.vertices[i]
                        .iter()
                        .zip(&self.vertices[j])
                        .map(|(a, b)| a + &t * (b - a))
                        .collect();
                    plus_verts.push(x.clone());
                    minus_verts.push(x.clone());
                    section.push(x);
                }
            }
        }
        let section = dedup_points(section);
        let make = |mut verts: Vec<Vec<Rat>>, cut: Halfspace, nontrivial: bool| {
            if !nontrivial {
                return None;
            }
            verts = dedup_points(verts);
            if affine_rank(&verts) != self.dim {
                return None;
            }
            let mut hs = self.halfspaces.clone();
            hs.push(cut);
            Some(Polytope { dim: self.dim, vertices: verts, halfspaces: hs })
        };
        let eta = &plane.eta;
        let plus = make(
            plus_verts,
            Halfspace::new(eta.iter().map(|c| -c).collect(), -Rat::one()),
            any_plus,
        );
        let minus = make(minus_verts, Halfspace::new(eta.clone(), Rat::one()), any_minus);
        Slice { plus, minus, section }
    }

    /// Chart the section vertices (points on a common hyperplane) into
    /// `R^{d-1}` and return the chart polytope together with the affine map
    /// back to ambient space. The chart is deterministic: vertices are
    /// processed in lexicographic order.
    pub fn section_chart(section: &[Vec<Rat>]) -> Result<(Polytope, Chart)> {
        if section.is_empty() {
            return Err(Error::Invalid("empty section".into()));
        }
        let dim = section[0].len();
        let mut pts = section.to_vec();
        pts.sort();
        pts.dedup();
        let target = dim - 1;
        let ar = affine_rank(&pts);
        if ar != target {
            return Err(Error::NotFullDimensional { rank: ar, dim: target });
        }
        let origin = pts[0].clone();
        // Greedily pick affinely independent difference vectors as basis.
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in &pts[1..] {
            if basis.len() == target {
                break;
            }
            let d = sub(p, &origin);
            let mut cand = basis.clone();
            cand.push(d.clone());
            if rank(&cand) == cand.len() {
                basis.push(d);
            }
        }
        debug_assert_eq!(basis.len(), target);
        // Choose coordinate rows making the basis matrix invertible.
        let rows = independent_rows(&basis, dim, target);
        let chart_points: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| {
                let diff = sub(p, &origin);
                let a: Vec<Vec<Rat>> = rows
                    .iter()
                    .map(|&r| basis.iter().map(|b| b[r].clone()).collect())
                    .collect();
                let b: Vec<Rat> = rows.iter().map(|&r| diff[r].clone()).collect();
                solve(&a, &b).expect("independent rows")
            })
            .collect();
        let poly = Polytope::from_vertices(chart_points)?;
        Ok((poly, Chart { origin, basis }))
    }

    /// Two distinct strictly interior points of the strict inequality system
    /// `ineqs`, used to cross-validate quantities that should not depend on
    /// the choice of witness.
    pub fn strict_witnesses(ineqs: &[StrictIneq]) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let w1 = strict_feasible(ineqs)?;
        let w2 = strict_feasible_with_cap(ineqs, &crate::rat::rat(2, 7))?;
        if w1 != w2 {
            return Some((w1, w2));
        }
        // Same vertex under both caps: average towards another witness.
        let w3 = strict_feasible_with_cap(ineqs, &crate::rat::rat(1, 13))?;
        let mid: Vec<Rat> = w1.iter().zip(&w3).map(|(a, b)| (a + b) / int(2)).collect();
        Some((w1, mid))
    }
}

fn check_vertex_dims(vertices: &[Vec<Rat>]) -> Result<usize> {
    let dim = vertices
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::Invalid("empty vertex list".into()))?;
    if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
    }
    Ok(dim)
}

fn dedup_points(points: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(points.len());
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    for p in points {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs)
}

/// Enumerate facets of `conv(vertices)` by testing all `d`-subsets.
pub fn hrep_from_vrep(vertices: &[Vec<Rat>], dim: usize) -> Result<Vec<Halfspace>> {
    if vertices.len() < dim + 1 {
        return Err(Error::NotFullDimensional { rank: affine_rank(vertices), dim });
    }
    if dim == 1 {
        let lo = vertices.iter().map(|v| &v[0]).min().unwrap().clone();
        let hi = vertices.iter().map(|v| &v[0]).max().unwrap().clone();
        return Ok(vec![
            Halfspace::new(vec![Rat::one()], hi),
            Halfspace::new(vec![-Rat::one()], -lo),
        ]);
    }
    let n = vertices.len();
    let mut found: HashSet<(Vec<Rat>, Rat)> = HashSet::new();
    let mut out: Vec<Halfspace> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        // Hyperplane through the subset, if affinely independent.
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| sub(&vertices[i], &vertices[subset[0]]))
            .collect();
        if let Some(normal) = kernel_vector(&diffs) {
            let offset = dot(&normal, &vertices[subset[0]]);
            let mut above = false;
            let mut below = false;
            for v in vertices {
                match crate::rat::sign(&(dot(&normal, v) - &offset)) {
                    1 => above = true,
                    -1 => below = true,
                    _ => {}
                }
                if above && below {
                    break;
                }
            }
            if !(above && below) {
                let h = if above {
                    Halfspace::new(normal.iter().map(|c| -c).collect(), -offset)
                } else {
                    Halfspace::new(normal, offset)
                };
                let c = h.canonical();
                if found.insert((c.normal.clone(), c.offset.clone())) {
                    out.push(c);
                }
            }
        }
        // Next d-subset in lexicographic order.
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if subset[i] != i + n - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Enumerate vertices of `{x : A x ≤ b}` by testing all `d`-subsets of tight
/// constraints. The system must be bounded (checked by the caller).
fn vrep_from_hrep(halfspaces: &[Halfspace], dim: usize) -> Result<Vec<Vec<Rat>>> {
    let m = halfspaces.len();
    if m < dim + 1 {
        return Err(Error::Unbounded);
    }
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let a: Vec<Vec<Rat>> = subset.iter().map(|&i| halfspaces[i].normal.clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|&i| halfspaces[i].offset.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            if halfspaces.iter().all(|h| h.contains(&x)) && seen.insert(x.clone()) {
                out.push(x);
            }
        }
        let mut i = dim;
        loop {
            if i == 0 {
                if out.is_empty() {
                    return Err(Error::Infeasible);
                }
                return Ok(out);
            }
            i -= 1;
            if subset[i] != i + m - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn prune_halfspaces(vertices: &[Vec<Rat>], halfspaces: Vec<Halfspace>, dim: usize) -> Vec<Halfspace> {
    let mut seen: HashSet<(Vec<Rat>, Rat)> = HashSet::new();
    halfspaces
        .into_iter()
        .filter(|h| {
            let tight: Vec<Vec<Rat>> = vertices
                .iter()
                .filter(|v| h.slack(v).is_zero())
                .cloned()
                .collect();
            !tight.is_empty() && affine_rank(&tight) == dim - 1
        })
        .filter(|h| {
            let c = h.canonical();
            seen.insert((c.normal, c.offset))
        })
        .collect()
}

/// Rows of the (dim × target) column-basis matrix forming an invertible
/// square submatrix.
fn independent_rows(basis: &[Vec<Rat>], dim: usize, target: usize) -> Vec<usize> {
    let mut rows: Vec<usize> = Vec::new();
    for r in 0..dim {
        if rows.len() == target {
            break;
        }
        let mut cand: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&rr| basis.iter().map(|b| b[rr].clone()).collect())
            .collect();
        cand.push(basis.iter().map(|b| b[r].clone()).collect());
        if rank(&cand) == cand.len() {
            rows.push(r);
        }
    }
    debug_assert_eq!(rows.len(), target);
    rows
}

/// Recursive facet-fan triangulation.
///
/// Picks the lexicographically smallest vertex `v0`, triangulates every facet
/// not containing `v0` (recursively, in an exact affine chart of the facet),
/// and cones the facet simplices over `v0`.
fn triangulate_rec(vertices: &[Vec<Rat>], halfspaces: &[Halfspace], dim: usize) -> Vec<Vec<usize>> {
    let n = vertices.len();
    debug_assert!(n >= dim + 1);
    if n == dim + 1 {
        return vec![(0..n).collect()];
    }
    if dim == 1 {
        // Interval: smallest and largest coordinate.
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| vertices[a][0].cmp(&vertices[b][0]));
        return vec![vec![idx[0], idx[n - 1]]];
    }
    let v0 = (0..n)
        .min_by(|&a, &b| vertices[a].cmp(&vertices[b]))
        .expect("nonempty");
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen_facets: HashSet<BTreeSet<usize>> = HashSet::new();
    for h in halfspaces {
        if h.slack(&vertices[v0]).is_zero() {
            continue;
        }
        let tight: Vec<usize> = (0..n).filter(|&i| h.slack(&vertices[i]).is_zero()).collect();
        if tight.len() < dim {
            continue;
        }
        let tight_pts: Vec<Vec<Rat>> = tight.iter().map(|&i| vertices[i].clone()).collect();
        if affine_rank(&tight_pts) != dim - 1 {
            continue;
        }
        if !seen_facets.insert(tight.iter().copied().collect()) {
            continue;
        }
        // Chart the facet into R^{dim-1}.
        let origin = tight_pts[0].clone();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in &tight_pts[1..] {
            if basis.len() == dim - 1 {
                break;
            }
            let d = sub(p, &origin);
            let mut cand = basis.clone();
            cand.push(d.clone());
            if rank(&cand) == cand.len() {
                basis.push(d);
            }
        }
        let rows = independent_rows(&basis, dim, dim - 1);
        let a: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&r| basis.iter().map(|b| b[r].clone()).collect())
            .collect();
        let chart_pts: Vec<Vec<Rat>> = tight_pts
            .iter()
            .map(|p| {
                let diff = sub(p, &origin);
                let b: Vec<Rat> = rows.iter().map(|&r| diff[r].clone()).collect();
                solve(&a, &b).expect("independent rows")
            })
            .collect();
        // Facet halfspaces: restrictions of the remaining global halfspaces.
        let mut sub_hs: Vec<Halfspace> = Vec::new();
        for h2 in halfspaces {
            if std::ptr::eq(h2, h) {
                continue;
            }
            let normal: Vec<Rat> = basis.iter().map(|b| dot(&h2.normal, b)).collect();
            if normal.iter().all(|c| c.is_zero()) {
                continue;
            }
            let offset = &h2.offset - dot(&h2.normal, &origin);
            sub_hs.push(Halfspace::new(normal, offset));
        }
        for simplex in triangulate_rec(&chart_pts, &sub_hs, dim - 1) {
            let mut s: Vec<usize> = vec![v0];
            s.extend(simplex.into_iter().map(|loc| tight[loc]));
            out.push(s);
        }
    }
    out
}

/// Exact `∫_S x^α dx` over a simplex with `dim + 1` vertices, via the
/// barycentric (Dirichlet) integral
/// `∫_S Π λ_j^{β_j} dx = |det| · Π β_j! / (dim + |β|)!`.
pub fn simplex_monomial_integral(verts: &[&Vec<Rat>], alpha: &[u32]) -> Rat {
    let dim = alpha.len();
    debug_assert_eq!(verts.len(), dim + 1);
    let rows: Vec<Vec<Rat>> = verts[1..].iter().map(|v| sub(v, verts[0])).collect();
    let d = det(&rows).abs();
    if d.is_zero() {
        return Rat::zero();
    }
    // Expand Π_i (Σ_j λ_j v_{j,i})^{α_i} into monomials in λ.
    let mut terms: Vec<(Vec<u32>, Rat)> = vec![(vec![0; dim + 1], Rat::one())];
    for (i, &ai) in alpha.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let coords: Vec<Rat> = verts.iter().map(|v| v[i].clone()).collect();
        let mut next: Vec<(Vec<u32>, Rat)> = Vec::new();
        for (beta, coef) in &terms {
            for (comp, multi) in compositions(ai, dim + 1) {
                let mut c = coef * &multi;
                let mut skip = false;
                for (j, &e) in comp.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if coords[j].is_zero() {
                        skip = true;
                        break;
                    }
                    c *= pow_rat(&coords[j], e);
                }
                if skip || c.is_zero() {
                    continue;
                }
                let mut b = beta.clone();
                for (bj, &e) in b.iter_mut().zip(&comp) {
                    *bj += e;
                }
                next.push((b, c));
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Vec<u32>, Rat)> = Vec::new();
        for (b, c) in next {
            match merged.last_mut() {
                Some((lb, lc)) if *lb == b => *lc += c,
                _ => merged.push((b, c)),
            }
        }
        terms = merged;
    }
    let total: u32 = alpha.iter().sum();
    let denom = factorial(dim + total as usize);
    let mut acc = Rat::zero();
    for (beta, coef) in &terms {
        let mut num = Rat::one();
        for &b in beta {
            num *= factorial(b as usize);
        }
        acc += coef * num;
    }
    d * acc / denom
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// All compositions of `total` into `parts` non-negative integers, with the
/// multinomial coefficient of each.
fn compositions(total: u32, parts: usize) -> Vec<(Vec<u32>, Rat)> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(total: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Rat)>) {
        if pos == cur.len() - 1 {
            cur[pos] = total;
            let mut coef = factorial(cur.iter().sum::<u32>() as usize);
            for &e in cur.iter() {
                coef /= factorial(e as usize);
            }
            out.push((cur.clone(), coef));
            return;
        }
        for e in 0..=total {
            cur[pos] = e;
            rec(total - e, pos + 1, cur, out);
        }
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn unit_cube(d: usize) -> Polytope {
        let mut verts = Vec::new();
        for mask in 0..1u32 << d {
            verts.push((0..d).map(|i| int((mask >> i & 1) as i64)).collect());
        }
        Polytope::from_vertices(verts).unwrap()
    }

    fn simplex(d: usize) -> Polytope {
        let mut verts = vec![vec![int(0); d]];
        for i in 0..d {
            let mut v = vec![int(0); d];
            v[i] = int(1);
            verts.push(v);
        }
        Polytope::from_vertices(verts).unwrap()
    }

    #[test]
    fn cube_hrep_has_2d_facets() {
        for d in 2..=4 {
            assert_eq!(unit_cube(d).halfspaces().len(), 2 * d);
        }
    }

    #[test]
    fn octahedron_hrep_has_8_facets() {
        let mut verts = Vec::new();
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut v = vec![int(0); 3];
                v[i] = int(s);
                verts.push(v);
            }
        }
        let p = Polytope::from_vertices(verts).unwrap();
        assert_eq!(p.halfspaces().len(), 8);
        assert_eq!(p.volume(), rat(4, 3));
    }

    #[test]
    fn hrep_vrep_roundtrip() {
        let p = unit_cube(3);
        let q = Polytope::from_halfspaces(p.halfspaces().to_vec()).unwrap();
        let mut a = p.vertices().to_vec();
        let mut b = q.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn unbounded_hrep_rejected() {
        // Only 3 of the 4 square facets.
        let hs = vec![
            Halfspace::new(vec![int(1), int(0)], int(1)),
            Halfspace::new(vec![int(0), int(1)], int(1)),
            Halfspace::new(vec![int(0), int(-1)], int(0)),
        ];
        assert!(matches!(Polytope::from_halfspaces(hs), Err(Error::Unbounded)));
    }

    #[test]
    fn volumes() {
        assert_eq!(unit_cube(3).volume(), int(1));
        assert_eq!(simplex(3).volume(), rat(1, 6));
        assert_eq!(simplex(4).volume(), rat(1, 24));
    }

    #[test]
    fn cube_edge_count() {
        assert_eq!(unit_cube(3).edges().len(), 12);
        assert_eq!(simplex(3).edges().len(), 6);
    }

    #[test]
    fn monomial_moments_cube_factorise() {
        let c = unit_cube(3);
        // ∫ x^a y^b z^c over [0,1]^3 = 1/((a+1)(b+1)(c+1))
        assert_eq!(c.monomial_moment(&[1, 0, 0]), rat(1, 2));
        assert_eq!(c.monomial_moment(&[2, 3, 1]), rat(1, 24));
    }

    #[test]
    fn monomial_moments_simplex() {
        let s = simplex(2);
        // ∫_T x dx over the standard triangle = 1/6
        assert_eq!(s.monomial_moment(&[1, 0]), rat(1, 6));
        // ∫_T x y = 1/24? Dirichlet: 2 vars: 1!1!/(2+2)! · |det|=1 → 1/24.
        assert_eq!(s.monomial_moment(&[1, 1]), rat(1, 24));
        assert_eq!(s.monomial_moment(&[2, 0]), rat(1, 12));
    }

    #[test]
    fn slice_volume_additivity() {
        let c = unit_cube(3);
        let plane = Hyperplane::new(vec![int(1), int(1), int(1)]);
        let s = c.slice(&plane);
        let vp = s.plus.as_ref().unwrap().volume();
        let vm = s.minus.as_ref().unwrap().volume();
        assert_eq!(&vp + &vm, int(1));
        // Section of the cube by x+y+z=1 is a triangle of area sqrt(3)/2;
        // its vertex set is the three unit vectors.
        let mut sec = s.section.clone();
        sec.sort();
        assert_eq!(sec.len(), 3);
    }

    #[test]
    fn slice_through_vertex() {
        let s3 = simplex(3);
        // Plane x = 0? η·x = 1 cannot pass through the origin; use x+y+z=1,
        // which contains three vertices: the section is that facet and the
        // minus piece is the whole simplex.
        let plane = Hyperplane::new(vec![int(1), int(1), int(1)]);
        let sl = s3.slice(&plane);
        assert!(sl.plus.is_none());
        assert_eq!(sl.minus.unwrap().volume(), rat(1, 6));
        assert_eq!(sl.section.len(), 3);
    }

    #[test]
    fn slice_missing_polytope() {
        let c = unit_cube(3);
        let plane = Hyperplane::new(vec![rat(1, 10), int(0), int(0)]);
        let sl = c.slice(&plane);
        assert!(sl.plus.is_none());
        assert!(sl.section.is_empty());
        assert_eq!(sl.minus.unwrap().volume(), int(1));
    }

    #[test]
    fn section_chart_roundtrip() {
        let c = unit_cube(3);
        let plane = Hyperplane::new(vec![int(1), int(1), int(1)]);
        let s = c.slice(&plane);
        let (poly, chart) = Polytope::section_chart(&s.section).unwrap();
        assert_eq!(poly.dim(), 2);
        for (i, v) in poly.vertices().iter().enumerate() {
            let amb = chart.to_ambient(v);
            assert!(s.section.contains(&amb), "vertex {i} maps back");
        }
    }

    #[test]
    fn interior_point_is_interior() {
        for p in [unit_cube(3), simplex(4)] {
            let x = p.interior_point().unwrap();
            assert!(p.halfspaces().iter().all(|h| h.slack(&x).is_positive()));
        }
    }

    #[test]
    fn triangulation_volume_consistency() {
        // Cross-check: fan triangulation of a sliced cube piece.
        let c = unit_cube(3);
        let plane = Hyperplane::new(vec![rat(2, 3), rat(3, 5), rat(1, 2)]);
        let s = c.slice(&plane);
        let vp = s.plus.unwrap().volume();
        let vm = s.minus.unwrap().volume();
        assert_eq!(vp + vm, int(1));
    }
}
