//! Exact moment machinery: even volumetric moments, the per-hyperplane
//! factors `ζ` and `ι`, and closed-form families (segment, triangle, square,
//! ball, dimension lift).
//!
//! The normalised `k`-th volumetric moment of a polytope `Q ⊂ R^m` is
//! `v_m^(k)(Q) = E[vol(conv(X_0..X_m))^k] / vol(Q)^k` for i.i.d. uniform
//! points. For even `k` the absolute value in the simplex volume disappears
//! and the expectation expands into a signed sum over `(k-1)`-tuples of
//! permutations of monomial moments of `Q` — an exact rational computation.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::det;
use crate::polytope::{Hyperplane, MultiIndex, Polytope};
use crate::rat::{factorial, factorial_usize, harmonic, int, rat, to_f64, Rat};
use crate::{Error, Result};

/// Cap on the number of permutation tuples in the even-moment expansion.
pub const EXPANSION_TERM_CAP: usize = 2_000_000;

/// A value of the form `c0 + c2·π² + c4·π⁴` with rational coefficients, or a
/// floating-point approximation when no such closed form is available.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormValue {
    Exact { c0: Rat, c2: Rat, c4: Rat },
    Approx(f64),
}

impl ClosedFormValue {
    pub fn rational(c0: Rat) -> Self {
        ClosedFormValue::Exact { c0, c2: Rat::zero(), c4: Rat::zero() }
    }

    pub fn pi_terms(c0: Rat, c2: Rat, c4: Rat) -> Self {
        ClosedFormValue::Exact { c0, c2, c4 }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ClosedFormValue::Exact { c0, c2, c4 } if c2.is_zero() && c4.is_zero() => Some(c0),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ClosedFormValue::Exact { c0, c2, c4 } => {
                let pi2 = std::f64::consts::PI * std::f64::consts::PI;
                to_f64(c0) + to_f64(c2) * pi2 + to_f64(c4) * pi2 * pi2
            }
            ClosedFormValue::Approx(x) => *x,
        }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        match self {
            ClosedFormValue::Exact { c0, c2, c4 } => ClosedFormValue::Exact {
                c0: c0 * factor,
                c2: c2 * factor,
                c4: c4 * factor,
            },
            ClosedFormValue::Approx(x) => ClosedFormValue::Approx(x * to_f64(factor)),
        }
    }
}

impl std::fmt::Display for ClosedFormValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormValue::Exact { c0, c2, c4 } => {
                write!(f, "{c0}")?;
                if !c2.is_zero() {
                    write!(f, " + ({c2})*pi^2")?;
                }
                if !c4.is_zero() {
                    write!(f, " + ({c4})*pi^4")?;
                }
                Ok(())
            }
            ClosedFormValue::Approx(x) => write!(f, "{x:.15e}"),
        }
    }
}

/// Signed expansion of the `k`-th power of the simplex determinant into
/// products of normalised monomial moments, grouped by the multiset of
/// per-point multi-indices.
#[derive(Debug, Clone)]
pub struct EvenExpansion {
    m: usize,
    k: usize,
    /// (integer coefficient, sorted multiset of `m+1` multi-indices)
    terms: Vec<(BigInt, Vec<MultiIndex>)>,
    /// `(m+1)! / (m!)^k`
    prefactor: Rat,
}

impl EvenExpansion {
    /// Dimension the expansion applies to.
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.k
    }

    /// All multi-indices whose normalised moments are needed.
    pub fn needed_indices(&self) -> BTreeSet<MultiIndex> {
        self.terms
            .iter()
            .flat_map(|(_, ms)| ms.iter().cloned())
            .collect()
    }

    /// Evaluate against a table of normalised monomial moments
    /// `a[α] = ∫_Q x^α dx / vol(Q)`.
    pub fn evaluate(&self, a: &HashMap<MultiIndex, Rat>) -> Rat {
        let mut acc = Rat::zero();
        for (coef, multis) in &self.terms {
            let mut prod = Rat::from_integer(coef.clone());
            for alpha in multis {
                prod *= &a[alpha];
            }
            acc += prod;
        }
        acc * &self.prefactor
    }
}

/// Build the even-moment expansion for dimension `m` and even order `k`.
///
/// The determinant power expands over `(k-1)`-tuples of permutations of
/// `S_{m+1}` (the first copy is fixed to the identity by row relabelling,
/// which is valid because `k` is even); terms with equal moment multisets are
/// merged.
pub fn even_expansion(m: usize, k: usize) -> Result<EvenExpansion> {
    if k == 0 || k % 2 != 0 {
        return Err(Error::Unsupported(format!("even expansion needs even k ≥ 2, got {k}")));
    }
    let fact = factorial_usize(m + 1);
    let tuples = fact.checked_pow((k - 1) as u32).unwrap_or(usize::MAX);
    if tuples > EXPANSION_TERM_CAP {
        return Err(Error::ExpansionTooLarge { size: tuples, cap: EXPANSION_TERM_CAP });
    }
    // All permutations of 0..=m with their signs.
    let mut perms: Vec<(Vec<usize>, i8)> = Vec::with_capacity(fact);
    let mut idx: Vec<usize> = (0..=m).collect();
    permute_with_signs(&mut idx, 0, &mut perms);
    let mut grouped: HashMap<Vec<MultiIndex>, BigInt> = HashMap::new();
    let mut odo = vec![0usize; k - 1];
    loop {
        let mut sign = 1i8;
        for &pi in &odo {
            sign *= perms[pi].1;
        }
        // Multi-index of point i: counts of nonzero row labels over the k
        // copies (identity plus the k-1 chosen permutations).
        let mut multis: Vec<MultiIndex> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut alpha = vec![0u32; m];
            if i > 0 {
                alpha[i - 1] += 1; // identity copy
            }
            for &pi in &odo {
                let row = perms[pi].0[i];
                if row > 0 {
                    alpha[row - 1] += 1;
                }
            }
            multis.push(alpha);
        }
        multis.sort();
        let e = grouped.entry(multis).or_insert_with(BigInt::zero);
        if sign > 0 {
            *e += 1;
        } else {
            *e -= 1;
        }
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == odo.len() {
                let mut terms: Vec<(BigInt, Vec<MultiIndex>)> = grouped
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(ms, c)| (c, ms))
                    .collect();
                terms.sort_by(|a, b| a.1.cmp(&b.1));
                let prefactor = factorial(m + 1)
                    / (0..k).fold(Rat::one(), |acc, _| acc * factorial(m));
                return Ok(EvenExpansion { m, k, terms, prefactor });
            }
            odo[pos] += 1;
            if odo[pos] < fact {
                break;
            }
            odo[pos] = 0;
            pos += 1;
        }
    }
}

fn permute_with_signs(idx: &mut Vec<usize>, start: usize, out: &mut Vec<(Vec<usize>, i8)>) {
    if start == idx.len() {
        let mut inv = 0usize;
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if idx[i] > idx[j] {
                    inv += 1;
                }
            }
        }
        out.push((idx.clone(), if inv % 2 == 0 { 1 } else { -1 }));
        return;
    }
    for i in start..idx.len() {
        idx.swap(start, i);
        permute_with_signs(idx, start + 1, out);
        idx.swap(start, i);
    }
}

/// Exact even volumetric moment `v_m^(k)(Q)` for even `k ≥ 2`.
pub fn even_moment(q: &Polytope, k: usize) -> Result<Rat> {
    let expansion = even_expansion(q.dim(), k)?;
    Ok(even_moment_with(q, &expansion))
}

/// Same as [`even_moment`] but with a precomputed expansion (the odd-moment
/// engine reuses one expansion across quadrature nodes).
pub fn even_moment_with(q: &Polytope, expansion: &EvenExpansion) -> Rat {
    let vol = q.volume();
    let a: HashMap<MultiIndex, Rat> = expansion
        .needed_indices()
        .into_iter()
        .map(|alpha| {
            let m = q.monomial_moment(&alpha) / &vol;
            (alpha, m)
        })
        .collect();
    // The expansion yields E[(m! Δ_m)^k] with per-point normalised moments;
    // dividing by (m! vol)^k gives the volume-normalised moment.
    expansion.evaluate(&a) / vol.pow(expansion.k as i32)
}

/// Normalised section area factor
/// `ζ(η) = vol_{d-1}(P ∩ {η·x=1}) / (|η| vol P)`.
///
/// Exact via the cone identity: for a section simplex with vertices
/// `u_1, …, u_d` on the plane `η·x = 1`, the cone over the origin has volume
/// `|det(u_1 … u_d)|/d!` and height `1/|η|`, so
/// `vol_{d-1}/|η| = Σ |det| / (d-1)!`.
pub fn zeta(p: &Polytope, plane: &Hyperplane) -> Rat {
    let slice = p.slice(plane);
    zeta_of_section(&slice.section, p.dim(), &p.volume())
}

/// [`zeta`] from an already-computed section vertex set.
pub fn zeta_of_section(section: &[Vec<Rat>], d: usize, vol: &Rat) -> Rat {
    if section.len() < d {
        return Rat::zero();
    }
    if d == 1 {
        // The section is a single point u with η·u = 1; the 1×1 cone
        // determinant is |u|.
        return section[0][0].abs() / vol;
    }
    let Ok((chart_poly, chart)) = Polytope::section_chart(section) else {
        return Rat::zero();
    };
    let fact = factorial(d - 1);
    let mut acc = Rat::zero();
    for simplex in chart_poly.triangulate() {
        let rows: Vec<Vec<Rat>> = simplex
            .iter()
            .map(|&i| chart.to_ambient(&chart_poly.vertices()[i]))
            .collect();
        acc += det(&rows).abs();
    }
    acc / (fact * vol)
}

/// Distance-moment factor `ι_k(η) = ∫_P |η·x - 1|^k dx` for integer `k ≥ 0`,
/// exact via triangulation of the two pieces of the slice.
pub fn iota(p: &Polytope, plane: &Hyperplane, k: usize) -> Rat {
    let slice = p.slice(plane);
    iota_of_slice(&slice, plane, p.dim(), k)
}

/// [`iota`] from an already-computed slice.
pub fn iota_of_slice(slice: &crate::polytope::Slice, plane: &Hyperplane, d: usize, k: usize) -> Rat {
    let scale = factorial(k) / factorial(d + k);
    let mut acc = Rat::zero();
    for piece in [&slice.plus, &slice.minus].into_iter().flatten() {
        for simplex in piece.triangulate() {
            let verts: Vec<&Vec<Rat>> = simplex.iter().map(|&i| &piece.vertices()[i]).collect();
            let rows: Vec<Vec<Rat>> = verts[1..]
                .iter()
                .map(|v| crate::linalg::sub(v, verts[0]))
                .collect();
            let dvol = det(&rows).abs();
            if dvol.is_zero() {
                continue;
            }
            let c: Vec<Rat> = verts.iter().map(|v| plane.height(v).abs()).collect();
            acc += dvol * complete_homogeneous(k, &c);
        }
    }
    acc * scale
}

/// Complete homogeneous symmetric polynomial `h_k(c_1, …, c_n)`.
pub fn complete_homogeneous(k: usize, c: &[Rat]) -> Rat {
    let mut h = vec![Rat::zero(); k + 1];
    h[0] = Rat::one();
    for ci in c {
        for j in 1..=k {
            let add = ci * &h[j - 1];
            h[j] += add;
        }
    }
    h[k].clone()
}

/// `v_1^(k)(T_1) = 2/((1+k)(2+k))`: moments of the distance of two uniform
/// points in a segment (valid for any real `k > -1`; exact for integers).
pub fn segment_moment(k: usize) -> Rat {
    rat(2, ((1 + k as i64) * (2 + k as i64)) as i64)
}

/// Real-order variant of [`segment_moment`].
pub fn segment_moment_real(k: f64) -> f64 {
    2.0 / ((1.0 + k) * (2.0 + k))
}

/// `v_2^(k)(T_2)`: all moments of the triangle area ratio,
/// `48 k!/((2+k)(3+k)) Σ_{j=0}^{k+1} j!/((k-j+2)(k+j+3)!)`.
pub fn triangle_moment(k: usize) -> Rat {
    let mut sum = Rat::zero();
    for j in 0..=k + 1 {
        sum += factorial(j) / (int((k as i64) - (j as i64) + 2) * factorial(k + j + 3));
    }
    int(48) * factorial(k) / (int(2 + k as i64) * int(3 + k as i64)) * sum
}

/// `v_2^(k)(C_2) = 24 H_{k+2} / (2^k (1+k)(2+k)²(3+k)²)`: all moments of the
/// triangle area ratio in the square (`H_n` the harmonic number).
pub fn square_moment(k: usize) -> Rat {
    let k_ = k as i64;
    let denom = int(2).pow(k as i32)
        * int(1 + k_)
        * int(2 + k_).pow(2)
        * int(3 + k_).pow(2);
    int(24) * harmonic(k + 2) / denom
}

/// Dimension lift: `v_{d+1}^(1)(K_d) = (d+2)/2 · v_d^(1)(K_d)` — the mean
/// volume of a simplex with one extra point equals the mean simplex volume
/// scaled by `(d+2)/2`.
pub fn buchta_lift(v: &ClosedFormValue, d: usize) -> ClosedFormValue {
    v.scale(&rat(d as i64 + 2, 2))
}

/// `Γ(two/2)` as `coef · √π^{pi_half}` with `pi_half ∈ {0, 1}`.
fn gamma_half(two: i64) -> (Rat, i64) {
    assert!(two >= 1, "gamma at a non-positive half-integer");
    if two % 2 == 0 {
        (factorial((two / 2 - 1) as usize), 0)
    } else {
        // Γ(n + 1/2) = (2n)! / (4^n n!) √π
        let n = (two - 1) / 2;
        let coef =
            factorial(2 * n as usize) / (int(4).pow(n as i32) * factorial(n as usize));
        (coef, 1)
    }
}

/// Exact value tracker of the form `coef · π^{half/2}`.
#[derive(Clone, Debug)]
struct PiPow {
    coef: Rat,
    half: i64,
}

impl PiPow {
    fn one() -> Self {
        PiPow { coef: Rat::one(), half: 0 }
    }
    fn gamma(two: i64) -> Self {
        let (coef, h) = gamma_half(two);
        PiPow { coef, half: h }
    }
    fn mul(mut self, other: &PiPow) -> Self {
        self.coef *= &other.coef;
        self.half += other.half;
        self
    }
    fn div(mut self, other: &PiPow) -> Self {
        self.coef /= &other.coef;
        self.half -= other.half;
        self
    }
    fn powi(&self, e: i64) -> Self {
        let mut acc = PiPow::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            PiPow::one().div(&acc)
        } else {
            acc
        }
    }
    fn scale(mut self, r: &Rat) -> Self {
        self.coef *= r;
        self
    }
    fn into_value(self) -> ClosedFormValue {
        if self.half == 0 {
            ClosedFormValue::rational(self.coef)
        } else {
            let pi_pow = std::f64::consts::PI.powf(self.half as f64 / 2.0);
            ClosedFormValue::Approx(to_f64(&self.coef) * pi_pow)
        }
    }
}

/// `v_d^(k)(B_d)`: volumetric moments of the ball, via the product of Gamma
/// factors at integer and half-integer arguments
/// (`(Γ(d/2+1)/(π^{d/2} d!))^k (d/(d+k))^{d+1}
///   Γ((d+1)(d+k)/2+1)/Γ(d(d+k+1)/2+1) (Γ(d/2)/Γ((d+k)/2))^d
///   Π_{l=1}^{d-1} Γ((k+l)/2)/Γ(l/2)`).
/// The π powers cancel exactly whenever the result is rational.
pub fn ball_moment(d: usize, k: usize) -> ClosedFormValue {
    let (d_, k_) = (d as i64, k as i64);
    let mut acc = PiPow::gamma(d_ + 2)
        .div(&PiPow { coef: factorial(d), half: d_ })
        .powi(k_);
    acc = acc.scale(&rat(d_, d_ + k_).pow((d + 1) as i32));
    acc = acc.mul(&PiPow::gamma((d_ + 1) * (d_ + k_) + 2));
    acc = acc.div(&PiPow::gamma(d_ * (d_ + k_ + 1) + 2));
    acc = acc.mul(&PiPow::gamma(d_).div(&PiPow::gamma(d_ + k_)).powi(d_));
    for l in 1..d_ {
        acc = acc.mul(&PiPow::gamma(k_ + l).div(&PiPow::gamma(l)));
    }
    acc.into_value()
}

/// Mean simplex volume ratio in the ball, `v_d^(1)(B_d)`.
pub fn ball_mean(d: usize) -> ClosedFormValue {
    ball_moment(d, 1)
}

/// Normalised moment table from a polytope, used by the brute-force oracle.
pub fn normalised_moments(q: &Polytope, indices: &BTreeSet<MultiIndex>) -> HashMap<MultiIndex, Rat> {
    let vol = q.volume();
    indices
        .iter()
        .map(|alpha| (alpha.clone(), q.monomial_moment(alpha) / &vol))
        .collect()
}

/// Brute-force even moment: expand `det^k` of the symbolic point matrix as a
/// polynomial and integrate monomial by monomial. Exponential in everything —
/// test oracle only.
pub fn even_moment_bruteforce(q: &Polytope, k: usize) -> Rat {
    assert!(k % 2 == 0 && k >= 2);
    let m = q.dim();
    // Variables: x_{i,v} for point i in 0..=m, coordinate v in 0..m.
    // A monomial maps to its exponent matrix.
    type Poly = HashMap<Vec<u32>, BigInt>;
    let nvars = (m + 1) * m;
    let mut perms: Vec<(Vec<usize>, i8)> = Vec::new();
    let mut idx: Vec<usize> = (0..=m).collect();
    permute_with_signs(&mut idx, 0, &mut perms);
    // det of the (m+1)×(m+1) matrix with rows (1, x_i) over points i.
    let mut detp: Poly = HashMap::new();
    for (p, s) in &perms {
        let mut mono = vec![0u32; nvars];
        for i in 0..=m {
            let col = p[i];
            if col == 0 {
                continue; // constant 1 column
            }
            mono[i * m + (col - 1)] += 1;
        }
        let e = detp.entry(mono).or_insert_with(BigInt::zero);
        *e += *s as i64;
    }
    // detp^k by repeated multiplication.
    let mut acc: Poly = HashMap::new();
    acc.insert(vec![0u32; nvars], BigInt::one());
    for _ in 0..k {
        let mut next: Poly = HashMap::new();
        for (ma, ca) in &acc {
            for (mb, cb) in &detp {
                let mono: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let e = next.entry(mono).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    // Expectation: product over points of normalised monomial moments.
    let vol = q.volume();
    let mut cache: HashMap<MultiIndex, Rat> = HashMap::new();
    let mut total = Rat::zero();
    for (mono, coef) in &acc {
        let mut prod = Rat::from_integer(coef.clone());
        for i in 0..=m {
            let alpha: MultiIndex = mono[i * m..(i + 1) * m].to_vec();
            let a = cache
                .entry(alpha.clone())
                .or_insert_with(|| q.monomial_moment(&alpha) / &vol)
                .clone();
            prod *= a;
        }
        total += prod;
    }
    // E[Δ^k] = E[det^k] / (m!)^k; dividing by vol^k gives v_m^(k).
    let mfact = factorial(m);
    for _ in 0..k {
        total /= mfact.clone();
        total /= vol.clone();
    }
    total
}
