//! Invariant-based property tests: exact identities that must hold for any
//! admissible input, checked on randomly generated hyperplanes and maps.

use proptest::prelude::*;

use simplex_moments::catalog;
use simplex_moments::moments::{even_moment, iota, triangle_moment, zeta};
use simplex_moments::montecarlo::mc_moment;
use simplex_moments::polytope::{Hyperplane, Polytope};
use simplex_moments::rat::{int, rat, to_f64, Rat};
use simplex_moments::section::odd_moment;
use simplex_moments::symmetry::{enumerate_configurations, SymmetryGroup};
use simplex_moments::QuadratureSpec;

use num_traits::Zero;

fn solid(name: &str) -> Polytope {
    catalog::find(name).unwrap().polytope
}

/// Strategy for one rational coordinate in [-4, 4] with small denominator.
fn coord() -> impl Strategy<Value = Rat> {
    (-16i64..=16, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn eta(dim: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(coord(), dim).prop_filter("nonzero normal", |v| {
        v.iter().any(|c| !c.is_zero())
    })
}

/// Volume of `P ∩ {η·x ≤ t}` for `t > 0`, via the scaled plane `η/t`.
fn halfspace_volume(p: &Polytope, eta: &[Rat], t: &Rat) -> Rat {
    let scaled: Vec<Rat> = eta.iter().map(|e| e / t).collect();
    p.slice(&Hyperplane::new(scaled))
        .minus
        .map(|q| q.volume())
        .unwrap_or_else(Rat::zero)
}

/// Exact derivative at `x0` of the polynomial interpolating `(xs, ys)`
/// (Lagrange form, coefficients accumulated exactly).
fn interpolant_derivative(xs: &[Rat], ys: &[Rat], x0: &Rat) -> Rat {
    let n = xs.len();
    // coefficients of the interpolating polynomial, low degree first
    let mut poly = vec![Rat::zero(); n];
    for i in 0..n {
        let mut basis = vec![Rat::zero(); n];
        basis[0] = int(1);
        let mut denom = int(1);
        let mut deg = 0;
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply basis by (x - xs[j])
            for k in (0..=deg).rev() {
                let c = basis[k].clone();
                basis[k + 1] += &c;
                basis[k] = -&xs[j] * &c;
            }
            deg += 1;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (pc, bc) in poly.iter_mut().zip(&basis) {
            *pc += &scale * bc;
        }
    }
    let mut dv = Rat::zero();
    let mut xpow = int(1);
    for (k, c) in poly.iter().enumerate().skip(1) {
        dv += int(k as i64) * c * &xpow;
        xpow *= x0;
    }
    dv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Cutting a polytope by any hyperplane splits its volume exactly.
    #[test]
    fn slice_volume_additivity(name in prop::sample::select(vec!["T3", "C3", "O3"]),
                               e in eta(3)) {
        let p = solid(name);
        let slice = p.slice(&Hyperplane::new(e));
        let plus = slice.plus.map(|q| q.volume()).unwrap_or_else(Rat::zero);
        let minus = slice.minus.map(|q| q.volume()).unwrap_or_else(Rat::zero);
        prop_assert_eq!(plus + minus, p.volume());
    }

    /// ζ agrees with its dual formula: the derivative at `t = 1` of the
    /// half-space volume `t ↦ vol(P ∩ {η·x ≤ t})`, normalised by `vol P`.
    /// The derivative is taken exactly by polynomial interpolation inside a
    /// window free of vertex heights.
    #[test]
    fn zeta_dual_formula(name in prop::sample::select(vec!["T3", "C3", "O3"]),
                         e in eta(3)) {
        let p = solid(name);
        let heights: Vec<Rat> = p.vertices().iter()
            .map(|v| e.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect();
        let one = int(1);
        prop_assume!(heights.iter().all(|h| *h != one));
        let below = heights.iter().filter(|h| **h < one).max().cloned();
        let above = heights.iter().filter(|h| **h > one).min().cloned();
        let gap_lo = below.map(|b| &one - b).unwrap_or_else(|| int(1));
        let gap_hi = above.map(|a| a - &one).unwrap_or_else(|| int(1));
        let gap = if gap_lo < gap_hi { gap_lo } else { gap_hi };
        // sample points inside (1-gap, 1+gap), all positive
        let d = p.dim();
        let delta = gap / int(2 * (d as i64 + 1));
        prop_assume!(&one - int(d as i64) * &delta > Rat::zero());
        let xs: Vec<Rat> = (0..=d as i64)
            .map(|j| &one + int(2 * j - d as i64) * &delta)
            .collect();
        let ys: Vec<Rat> = xs.iter().map(|t| halfspace_volume(&p, &e, t)).collect();
        let derivative = interpolant_derivative(&xs, &ys, &one);
        prop_assert_eq!(derivative / p.volume(), zeta(&p, &Hyperplane::new(e)));
    }

    /// ι is additive over any partition of the body by a second hyperplane.
    #[test]
    fn iota_additive_over_partition(k in prop::sample::select(vec![1usize, 2, 3]),
                                    e in eta(3), cut in eta(3)) {
        let p = solid("C3");
        let whole = iota(&p, &Hyperplane::new(e.clone()), k);
        let slice = p.slice(&Hyperplane::new(cut));
        let plane = Hyperplane::new(e);
        let mut parts = Rat::zero();
        for piece in [slice.plus, slice.minus].into_iter().flatten() {
            parts += iota(&piece, &plane, k);
        }
        prop_assert_eq!(parts, whole);
    }

    /// Even moments are invariant under invertible affine maps.
    #[test]
    fn even_moment_affine_invariance(m in prop::collection::vec(-3i64..=3, 4),
                                     t in prop::collection::vec(-3i64..=3, 2)) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0);
        let p = solid("T2");
        let mapped: Vec<Vec<Rat>> = p.vertices().iter()
            .map(|v| vec![
                int(m[0]) * &v[0] + int(m[1]) * &v[1] + int(t[0]),
                int(m[2]) * &v[0] + int(m[3]) * &v[1] + int(t[1]),
            ])
            .collect();
        let q = Polytope::from_vertices(mapped).unwrap();
        prop_assert_eq!(even_moment(&q, 2).unwrap(), even_moment(&p, 2).unwrap());
    }

    /// Seeded Monte Carlo is bit-for-bit deterministic.
    #[test]
    fn seeded_mc_deterministic(seed in any::<u64>()) {
        let p = solid("T2");
        let a = mc_moment(&p, 2, 1, 2_000, seed).unwrap();
        let b = mc_moment(&p, 2, 1, 2_000, seed).unwrap();
        prop_assert_eq!(a.mean, b.mean);
        prop_assert_eq!(a.ci95, b.ci95);
    }
}

/// The closed-form triangle moments agree with the exact expansion engine.
#[test]
fn triangle_closed_form_matches_expansion() {
    let p = solid("T2");
    for k in [2usize, 4, 6, 8] {
        assert_eq!(triangle_moment(k), even_moment(&p, k).unwrap(), "k={k}");
    }
}

/// The section-integral engine reproduces an even moment where both routes
/// apply: v₂^(2)(T₂) = 1/72 via the exact expansion and via outer quadrature
/// with exact segment sections.
#[test]
fn even_order_engine_bridge() {
    let p = solid("T2");
    let exact = to_f64(&even_moment(&p, 2).unwrap());
    assert_eq!(exact, 1.0 / 72.0);
    let group = SymmetryGroup::closure(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let configs = enumerate_configurations(&p, &group).unwrap();
    let est = odd_moment(&p, &configs, 2, &QuadratureSpec::gauss(48)).unwrap();
    assert!(
        (est.total - exact).abs() < 1e-6 * exact,
        "section route gave {}, expansion gave {exact}",
        est.total
    );
}
