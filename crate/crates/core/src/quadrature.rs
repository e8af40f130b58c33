//! One-dimensional quadrature rules on the open interval `(0, 1)`.
//!
//! Nodes are snapped to dyadic rationals so that downstream evaluations can be
//! carried out in exact arithmetic; only the weights stay floating point. The
//! snap perturbs each node by at most `2^-NODE_BITS`, far below the accuracy
//! of the rules at the sizes used here, and keeps the rational coordinates
//! flowing through the exact inner evaluation small.

use crate::rat::{from_f64_dyadic, Rat};

/// Bits kept when snapping a node to a dyadic rational.
pub const NODE_BITS: u32 = 32;

/// Quadrature rule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Gauss–Legendre, exact for polynomials of degree `2n-1`.
    GaussLegendre,
    /// Tanh-sinh (double exponential), robust to endpoint singularities.
    TanhSinh,
}

/// Outer-quadrature parameters for the section integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rule: Rule,
    /// Nodes per axis of the tensor grid.
    pub points_per_axis: usize,
    /// Target relative tolerance; estimates above it are flagged.
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rule: Rule::TanhSinh, points_per_axis: 33, rel_tol: 1e-4 }
    }
}

impl QuadratureSpec {
    pub fn gauss(points_per_axis: usize) -> Self {
        QuadratureSpec { rule: Rule::GaussLegendre, points_per_axis, rel_tol: 1e-4 }
    }

    pub fn tanh_sinh(points_per_axis: usize) -> Self {
        QuadratureSpec { rule: Rule::TanhSinh, points_per_axis, rel_tol: 1e-4 }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Nodes and weights on `(0, 1)` for this spec.
    pub fn nodes(&self) -> Vec<(Rat, f64)> {
        match self.rule {
            Rule::GaussLegendre => gauss_legendre_01(self.points_per_axis),
            Rule::TanhSinh => tanh_sinh_01(self.points_per_axis),
        }
    }

    /// A coarser spec used for the embedded error estimate.
    pub fn coarse(&self) -> Self {
        QuadratureSpec {
            rule: self.rule,
            points_per_axis: (self.points_per_axis * 2 + 2) / 3,
            rel_tol: self.rel_tol,
        }
    }
}

/// `n`-point Gauss–Legendre rule transplanted to `(0, 1)`.
///
/// Nodes are found by Newton iteration on the Legendre three-term recurrence
/// starting from the Chebyshev-based initial guesses; this is accurate to
/// machine precision for the modest sizes used here.
pub fn gauss_legendre_01(n: usize) -> Vec<(Rat, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                let (p2, d2) = legendre(n, x);
                x -= p2 / d2;
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map (-1,1) -> (0,1); reverse so nodes come out increasing.
        out.push((from_f64_dyadic((1.0 - x) / 2.0, NODE_BITS), w / 2.0));
    }
    out
}

/// Legendre polynomial `P_n` and derivative at `x` via the recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tanh-sinh rule on `(0, 1)` with roughly `n` nodes.
///
/// The substitution `x = (1 + tanh((π/2) sinh(t)))/2` concentrates nodes
/// doubly exponentially at both endpoints; nodes that would snap onto an
/// endpoint or carry negligible weight are dropped.
pub fn tanh_sinh_01(n: usize) -> Vec<(Rat, f64)> {
    assert!(n >= 3);
    // Half-width of the t-grid: beyond |t| ≈ 3.8 the weights underflow the
    // dyadic snap. Choose h so that 2*jmax + 1 ≈ n.
    let jmax = (n / 2).max(1) as i64;
    let h = 3.8 / jmax as f64;
    let mut out = Vec::new();
    for j in -jmax..=jmax {
        let t = j as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let x = 0.5 * (1.0 + s.tanh());
        let w = 0.5 * h * std::f64::consts::FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        if !(w.is_finite()) || w < 1e-300 {
            continue;
        }
        let xr = from_f64_dyadic(x, NODE_BITS);
        if xr <= Rat::from_integer(0.into()) || xr >= Rat::from_integer(1.into()) {
            continue;
        }
        out.push((xr, w));
    }
    out
}
