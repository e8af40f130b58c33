//! Moments of the volume of a random simplex drawn from a convex polytope.
//!
//! The library computes the normalised moments
//! `v_d^(k)(P) = E[vol(conv(X_0..X_d))^k] / vol(P)^k`
//! for i.i.d. uniform points in a convex polytope `P ⊂ R^d`:
//!
//! * **Even moments** are exact rationals, obtained from a signed expansion of
//!   the `k`-th power of the simplex determinant into monomial moments of `P`
//!   (see [`moments::even_moment`]).
//! * **Odd moments** are computed by reducing the problem to sections of `P`
//!   with hyperplanes: an outer numerical quadrature over hyperplane space
//!   drives an inner evaluation that is exact rational at every node
//!   (see [`section::odd_moment`]).
//! * The hyperplane space splits into finitely many *configurations* — orbits
//!   of vertex separations under the symmetry group of `P` — enumerated
//!   exactly in [`symmetry`].
//! * Monte Carlo estimators in [`montecarlo`] provide independent checks.
//!
//! All polytope geometry (slicing, triangulation, volumes, monomial moments,
//! feasibility of strict inequality systems) is carried out in exact rational
//! arithmetic so that the only approximation in the odd-moment pipeline is the
//! outer quadrature rule.

pub mod catalog;
pub mod linalg;
pub mod lp;
pub mod moments;
pub mod montecarlo;
pub mod polytope;
pub mod quadrature;
pub mod rat;
pub mod report;
pub mod section;
pub mod symmetry;

pub use moments::{even_moment, ClosedFormValue};
pub use polytope::{Halfspace, Hyperplane, Polytope};
pub use rat::Rat;
pub use quadrature::QuadratureSpec;
pub use section::odd_moment;
pub use symmetry::{enumerate_configurations, Configuration};

/// Errors produced by geometric and numeric routines in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not full-dimensional (affine rank {rank} < dim {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("vertex set too large for facet enumeration ({got} > {cap})")]
    TooManyVertices { got: usize, cap: usize },
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("halfspace system is infeasible")]
    Infeasible,
    #[error("expansion size {size} exceeds capacity {cap}")]
    ExpansionTooLarge { size: usize, cap: usize },
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("symmetry group generator {index} does not extend to an affine symmetry")]
    BadGenerator { index: usize },
    #[error("group closure exceeded cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("unknown polytope name: {0}")]
    UnknownPolytope(String),
    #[error("{0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
