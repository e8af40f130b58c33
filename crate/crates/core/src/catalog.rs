//! Built-in polytope catalog: coordinates, symmetry groups, published
//! configuration tables, and reference values.
//!
//! Coordinates are rational; since volumetric moments are affine invariants,
//! any rational realisation is as good as the textbook one. Symmetry groups
//! are shipped as vertex-permutation generators: for simplices the full
//! symmetric group, for cube/orthoplex families the coordinate
//! permute-and-flip group, for the centred 3-polytopes the signed coordinate
//! permutations preserving the vertex set, and for the remaining solids
//! handwritten generators validated as affine symmetries at construction.
//!
//! Each entry may carry the published per-configuration table
//! (label, weight `w_C`, section order `n_C`) used to attach conventional
//! roman-numeral labels to enumerated configurations — matching is by
//! signature, and ambiguous signatures are flagged rather than guessed — and
//! a registry of reference values (exact `c0 + c2·π² + c4·π⁴` forms or
//! floating-point constants) with provenance notes.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::moments::ClosedFormValue;
use crate::polytope::{Halfspace, Polytope};
use crate::rat::{int, rat, Rat};
use crate::symmetry::{enumerate_configurations, Configuration, Perm, SymmetryGroup};
use crate::{Error, Result};

/// One published configuration row: conventional label, weight, and section
/// order (`order == 0` marks an entry whose published order is missing or
/// inconsistent; it is flagged, not matched).
#[derive(Debug, Clone)]
pub struct ConfigSignature {
    pub label: &'static str,
    pub weight: i64,
    pub order: usize,
}

/// A reference value with provenance.
#[derive(Debug, Clone)]
pub struct Reference {
    /// Key of the referenced quantity: `v{k}` for the full moment of order
    /// `k`, `v{k}[LABEL]` for a per-configuration contribution.
    pub key: String,
    pub value: ClosedFormValue,
    /// Where the value comes from; never empty (enforced by [`lint`]).
    pub provenance: &'static str,
}

/// A catalog entry: a named polytope with symmetry data and references.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: Vec<&'static str>,
    pub polytope: Polytope,
    pub group: SymmetryGroup,
    /// Published configuration table (excluding the empty separation `N`);
    /// empty when no table is published for this solid.
    pub config_signatures: Vec<ConfigSignature>,
    pub references: Vec<Reference>,
    /// Caveats about the shipped data (published-table inconsistencies etc.).
    pub notes: Vec<&'static str>,
}

/// Outcome of matching enumerated configurations against the published table.
#[derive(Debug, Clone)]
pub struct LabelMatch {
    /// Conventional label per configuration (same indexing as the input;
    /// `None` where the match is ambiguous or failed).
    pub labels: Vec<Option<String>>,
    /// Human-readable problems: ambiguities, mismatches, count differences.
    pub flags: Vec<String>,
}

impl CatalogEntry {
    /// Enumerate the configurations of this entry.
    pub fn configurations(&self) -> Result<Vec<Configuration>> {
        enumerate_configurations(&self.polytope, &self.group)
    }

    /// Attach conventional labels to enumerated configurations by matching
    /// (weight, order) signatures against the published table.
    ///
    /// When all weights are distinct the match is by weight and order
    /// disagreements are flagged; otherwise the exact (weight, order) pair
    /// must be unique to yield a label.
    pub fn label_match(&self, configs: &[Configuration]) -> LabelMatch {
        let mut labels: Vec<Option<String>> = vec![None; configs.len()];
        let mut flags = Vec::new();
        let sigs = &self.config_signatures;
        // The empty separation is always `N`.
        let real: Vec<usize> = (0..configs.len())
            .filter(|&i| {
                if configs[i].is_empty_separation() {
                    labels[i] = Some("N".into());
                    false
                } else {
                    true
                }
            })
            .collect();
        if sigs.is_empty() {
            flags.push("no published configuration table for this solid".into());
            return LabelMatch { labels, flags };
        }
        let mut weights_unique = true;
        for s in sigs {
            if sigs.iter().filter(|t| t.weight == s.weight).count() > 1 {
                weights_unique = false;
            }
        }
        let mut used = vec![false; sigs.len()];
        let mut ambiguous = vec![false; configs.len()];
        for &ci in &real {
            let c = &configs[ci];
            let w = &c.weight;
            let mut candidates: Vec<usize> = sigs
                .iter()
                .enumerate()
                .filter(|(si, s)| {
                    !used[*si]
                        && &int(s.weight) == w
                        && (weights_unique || s.order == c.order)
                })
                .map(|(si, _)| si)
                .collect();
            if candidates.is_empty() {
                // Fall back on rows whose published order is missing (0).
                candidates = sigs
                    .iter()
                    .enumerate()
                    .filter(|(si, s)| !used[*si] && &int(s.weight) == w && s.order == 0)
                    .map(|(si, _)| si)
                    .collect();
            }
            match candidates.len() {
                1 => {
                    let si = candidates[0];
                    used[si] = true;
                    labels[ci] = Some(sigs[si].label.to_string());
                    if sigs[si].order == 0 {
                        flags.push(format!(
                            "configuration {} (matched to {}): published section order is \
                             missing; computed order is {}",
                            c.label, sigs[si].label, c.order
                        ));
                    } else if sigs[si].order != c.order {
                        flags.push(format!(
                            "configuration {} (matched to {}): computed section order {} \
                             differs from the published {}",
                            c.label, sigs[si].label, c.order, sigs[si].order
                        ));
                    }
                }
                0 => {} // Revisited by the complementary-pair pass below.
                _ => {
                    ambiguous[ci] = true;
                    flags.push(format!(
                        "configuration {} (weight {}, order {}) is ambiguous among \
                         published rows {{{}}}",
                        c.label,
                        c.weight,
                        c.order,
                        candidates
                            .iter()
                            .map(|&si| sigs[si].label)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
            }
        }
        // Published tables list a complementary pair of middle-level orbits
        // as a single row with the combined weight. Match any two unmatched
        // middle-level configurations with equal signatures against a row of
        // twice the weight.
        let n_verts = configs
            .iter()
            .map(|c| c.rep.iter().copied().max().map_or(0, |v| v + 1))
            .max()
            .unwrap_or(0);
        let unmatched: Vec<usize> = real
            .iter()
            .copied()
            .filter(|&ci| {
                labels[ci].is_none() && !ambiguous[ci] && 2 * configs[ci].level >= n_verts
            })
            .collect();
        for pair in unmatched.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if labels[a].is_some() || labels[b].is_some() {
                continue;
            }
            let (ca, cb) = (&configs[a], &configs[b]);
            if ca.weight != cb.weight || ca.order != cb.order || ca.level != cb.level {
                continue;
            }
            let combined = &ca.weight + &cb.weight;
            let rows: Vec<usize> = sigs
                .iter()
                .enumerate()
                .filter(|(si, s)| {
                    !used[*si]
                        && int(s.weight) == combined
                        && (s.order == ca.order || s.order == 0)
                })
                .map(|(si, _)| si)
                .collect();
            if let [si] = rows[..] {
                used[si] = true;
                labels[a] = Some(sigs[si].label.to_string());
                labels[b] = Some(sigs[si].label.to_string());
                flags.push(format!(
                    "configurations {} and {} are a complementary orbit pair matched \
                     jointly to published row {} (combined weight {})",
                    ca.label, cb.label, sigs[si].label, combined
                ));
            }
        }
        for &ci in &real {
            if labels[ci].is_none() && !ambiguous[ci] {
                let c = &configs[ci];
                flags.push(format!(
                    "configuration {} (weight {}, order {}) matches no published row",
                    c.label, c.weight, c.order
                ));
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            let leftovers: Vec<&str> = (unused..sigs.len())
                .filter(|&si| !used[si])
                .map(|si| sigs[si].label)
                .collect();
            if !leftovers.is_empty() {
                flags.push(format!(
                    "published rows with no enumerated match: {{{}}}",
                    leftovers.join(", ")
                ));
            }
        }
        LabelMatch { labels, flags }
    }

    /// Look up a reference value by key (`v1`, `v2`, `v1[I]`, …).
    pub fn reference(&self, key: &str) -> Option<&Reference> {
        self.references.iter().find(|r| r.key == key)
    }
}

/// Reject registry entries without provenance or with non-finite values.
pub fn lint(entries: &[CatalogEntry]) -> Result<()> {
    for e in entries {
        for r in &e.references {
            if r.provenance.trim().is_empty() {
                return Err(Error::Invalid(format!(
                    "reference {}::{} has no provenance",
                    e.name, r.key
                )));
            }
            if !r.value.to_f64().is_finite() {
                return Err(Error::Invalid(format!(
                    "reference {}::{} is not finite",
                    e.name, r.key
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for r in &e.references {
            if !seen.insert(&r.key) {
                return Err(Error::Invalid(format!(
                    "duplicate reference key {}::{}",
                    e.name, r.key
                )));
            }
        }
    }
    Ok(())
}

/// Find an entry by name or alias (case-insensitive; spaces and underscores
/// are treated as hyphens).
pub fn find(name: &str) -> Result<CatalogEntry> {
    let norm = normalise(name);
    catalog()
        .into_iter()
        .find(|e| {
            normalise(e.name) == norm || e.aliases.iter().any(|a| normalise(a) == norm)
        })
        .ok_or(Error::UnknownPolytope(name.to_string()))
}

fn normalise(name: &str) -> String {
    name.trim()
        .to_ascii_lowercase()
        .replace([' ', '_'], "-")
}

/// All built-in entries, in stable order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    out.extend((1..=6).map(simplex_entry));
    out.extend((2..=6).map(cube_entry));
    out.extend((2..=6).map(orthoplex_entry));
    out.push(square_pyramid());
    out.push(triangular_prism());
    out.push(triangular_bipyramid());
    out.push(triakis_tetrahedron());
    out.push(cuboctahedron());
    out.push(truncated_tetrahedron());
    out.push(rhombic_dodecahedron());
    out.push(tetrakis_hexahedron());
    out.push(truncated_octahedron());
    out
}

// ---------------------------------------------------------------------------
// Coordinate constructors
// ---------------------------------------------------------------------------

fn simplex_polytope(d: usize) -> Polytope {
    let mut verts = vec![vec![int(0); d]];
    for i in 0..d {
        let mut v = vec![int(0); d];
        v[i] = int(1);
        verts.push(v);
    }
    Polytope::from_vertices(verts).expect("simplex")
}

fn cube_polytope(d: usize) -> Polytope {
    let verts: Vec<Vec<Rat>> = (0..1u32 << d)
        .map(|mask| (0..d).map(|i| int((mask >> i & 1) as i64)).collect())
        .collect();
    if verts.len() <= crate::polytope::VREP_TO_HREP_VERTEX_CAP {
        Polytope::from_vertices(verts).expect("cube")
    } else {
        // Too many vertices for facet enumeration; the facets are known.
        let mut hs = Vec::new();
        for i in 0..d {
            let mut n = vec![int(0); d];
            n[i] = int(1);
            hs.push(Halfspace::new(n.clone(), int(1)));
            n[i] = int(-1);
            hs.push(Halfspace::new(n, int(0)));
        }
        Polytope::with_halfspaces(verts, hs).expect("cube")
    }
}

fn orthoplex_polytope(d: usize) -> Polytope {
    // Vertex order: e_1..e_d then -e_1..-e_d.
    let mut verts = Vec::new();
    for sign in [1i64, -1] {
        for i in 0..d {
            let mut v = vec![int(0); d];
            v[i] = int(sign);
            verts.push(v);
        }
    }
    Polytope::from_vertices(verts).expect("orthoplex")
}

// ---------------------------------------------------------------------------
// Symmetry group constructors
// ---------------------------------------------------------------------------

/// Full symmetric group on `n` vertices (every vertex permutation of a
/// simplex extends to an affine symmetry).
fn symmetric_group(n: usize) -> SymmetryGroup {
    let mut gens: Vec<Perm> = Vec::new();
    if n >= 2 {
        let mut t: Perm = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        let cycle: Perm = (1..n).chain([0]).collect();
        gens.push(cycle);
    }
    SymmetryGroup::closure(n, &gens).expect("symmetric group")
}

/// Vertex permutations of the unit cube induced by swapping the first two
/// axes, cycling all axes, and flipping the first axis.
fn cube_group(d: usize) -> SymmetryGroup {
    let n = 1usize << d;
    let swap: Perm = (0..n)
        .map(|m| {
            let (a, b) = (m & 1, m >> 1 & 1);
            (m & !3) | (a << 1) | b
        })
        .collect();
    let cycle: Perm = (0..n).map(|m| ((m << 1) | (m >> (d - 1))) & (n - 1)).collect();
    let flip: Perm = (0..n).map(|m| m ^ 1).collect();
    SymmetryGroup::closure(n, &[swap, cycle, flip]).expect("cube group")
}

/// Vertex permutations of the orthoplex (`e_i` at index `i`, `-e_i` at
/// `i + d`) induced by the same coordinate operations.
fn orthoplex_group(d: usize) -> SymmetryGroup {
    let n = 2 * d;
    let axis = |i: usize| i % d;
    let neg = |i: usize| i / d == 1;
    let mk = |f: &dyn Fn(usize, bool) -> (usize, bool)| -> Perm {
        (0..n)
            .map(|i| {
                let (a, s) = f(axis(i), neg(i));
                a + if s { d } else { 0 }
            })
            .collect()
    };
    let swap = mk(&|a, s| (if a == 0 { 1 } else if a == 1 { 0 } else { a }, s));
    let cycle = mk(&|a, s| ((a + 1) % d, s));
    let flip = mk(&|a, s| (a, if a == 0 { !s } else { s }));
    SymmetryGroup::closure(n, &[swap, cycle, flip]).expect("orthoplex group")
}

/// All vertex permutations induced by signed coordinate permutations
/// (the full symmetry search for centred, axis-aligned 3-polytopes).
fn signed_perm_group(p: &Polytope) -> SymmetryGroup {
    let d = p.dim();
    let index: HashMap<Vec<Rat>, usize> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut elements: Vec<Perm> = Vec::new();
    let axes: Vec<usize> = (0..d).collect();
    for axis_perm in permutations(&axes) {
        for signs in 0..1u32 << d {
            let mut perm = Vec::with_capacity(p.vertices().len());
            let mut ok = true;
            for v in p.vertices() {
                let img: Vec<Rat> = (0..d)
                    .map(|i| {
                        let c = v[axis_perm[i]].clone();
                        if signs >> i & 1 == 1 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                match index.get(&img) {
                    Some(&j) => perm.push(j),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                elements.push(perm);
            }
        }
    }
    SymmetryGroup::closure(p.vertices().len(), &elements).expect("signed perm group")
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &y)| y)
            .collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Check that a vertex permutation extends to an affine map of the ambient
/// space (used to validate handwritten generators at construction).
fn is_affine_symmetry(p: &Polytope, perm: &Perm) -> bool {
    use crate::linalg::{solve, sub};
    let d = p.dim();
    let verts = p.vertices();
    if perm.len() != verts.len() {
        return false;
    }
    // Affine basis: the first vertex plus d more spanning the space.
    let mut basis = vec![0usize];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 1..verts.len() {
        if basis.len() == d + 1 {
            break;
        }
        let cand = sub(&verts[i], &verts[0]);
        let mut trial = rows.clone();
        trial.push(cand.clone());
        if crate::linalg::rank(&trial) == trial.len() {
            rows.push(cand);
            basis.push(i);
        }
    }
    if basis.len() != d + 1 {
        return false;
    }
    // Matrix whose columns are the basis differences: mat·λ = v - v0 gives
    // the barycentric-style coefficients of v in the affine basis.
    let mat: Vec<Vec<Rat>> = (0..d)
        .map(|i| (0..d).map(|j| rows[j][i].clone()).collect())
        .collect();
    for (vi, v) in verts.iter().enumerate() {
        let rhs = sub(v, &verts[0]);
        let Some(lambda) = solve(&mat, &rhs) else {
            return false;
        };
        // f(v) = f(v0) + sum lambda_i (f(v_bi) - f(v_b0))
        let mut img = verts[perm[0]].clone();
        for (i, l) in lambda.iter().enumerate() {
            let diff = sub(&verts[perm[basis[i + 1]]], &verts[perm[0]]);
            for (a, b) in img.iter_mut().zip(&diff) {
                *a += l * b;
            }
        }
        if img != verts[perm[vi]] {
            return false;
        }
    }
    true
}

fn validated_group(p: &Polytope, generators: &[Perm]) -> SymmetryGroup {
    for g in generators {
        assert!(is_affine_symmetry(p, g), "generator {g:?} is not an affine symmetry");
    }
    SymmetryGroup::closure(p.vertices().len(), generators).expect("group closure")
}

// ---------------------------------------------------------------------------
// Reference-value helpers
// ---------------------------------------------------------------------------

/// Parse a rational from `"p/q"` (arbitrary precision).
fn big(s: &str) -> Rat {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    Rat::new(
        BigInt::parse_bytes(p.as_bytes(), 10).expect("numerator"),
        BigInt::parse_bytes(q.as_bytes(), 10).expect("denominator"),
    )
}

fn exact(key: &str, c0: &str, provenance: &'static str) -> Reference {
    Reference {
        key: key.into(),
        value: ClosedFormValue::rational(big(c0)),
        provenance,
    }
}

fn pi2(key: &str, c0: &str, c2: &str, provenance: &'static str) -> Reference {
    Reference {
        key: key.into(),
        value: ClosedFormValue::pi_terms(big(c0), big(c2), Rat::from_integer(0.into())),
        provenance,
    }
}

fn pi4(key: &str, c0: &str, c2: &str, c4: &str, provenance: &'static str) -> Reference {
    Reference {
        key: key.into(),
        value: ClosedFormValue::pi_terms(big(c0), big(c2), big(c4)),
        provenance,
    }
}

fn approx(key: &str, value: f64, provenance: &'static str) -> Reference {
    Reference {
        key: key.into(),
        value: ClosedFormValue::Approx(value),
        provenance,
    }
}

const EVEN_TABLE: &str =
    "published table of exact even volumetric moments for the simplex/cube/orthoplex families";
const ODD_SOURCE: &str =
    "published exact odd volumetric moment (canonical section integral evaluation)";
const CONFIG_SOURCE: &str =
    "published per-configuration section integral value";
const SOLID_TABLE: &str =
    "published table of mean tetrahedron volumes in 3-polytopes";
const SOLID_TABLE_EVAL: &str =
    "published closed form (with logarithmic/dilogarithm terms) evaluated to 15 digits";

fn sig(label: &'static str, weight: i64, order: usize) -> ConfigSignature {
    ConfigSignature { label, weight, order }
}

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

fn simplex_entry(d: usize) -> CatalogEntry {
    let names: [&'static str; 6] = ["T1", "T2", "T3", "T4", "T5", "T6"];
    let polytope = simplex_polytope(d);
    let group = symmetric_group(d + 1);
    let (aliases, config_signatures, references): (
        Vec<&'static str>,
        Vec<ConfigSignature>,
        Vec<Reference>,
    ) = match d {
        1 => (
            vec!["segment", "unit-segment"],
            vec![sig("I", 1, 1)],
            vec![
                exact("v2", "1/6", EVEN_TABLE),
                exact("v4", "1/15", EVEN_TABLE),
                exact("v6", "1/28", EVEN_TABLE),
                exact("v1", "1/3", "closed form 2/((1+k)(2+k)) at k = 1"),
                exact("v3", "1/10", "closed form 2/((1+k)(2+k)) at k = 3"),
            ],
        ),
        2 => (
            vec!["triangle", "unit-triangle"],
            vec![sig("I", 3, 2)],
            vec![
                exact("v2", "1/72", EVEN_TABLE),
                exact("v4", "1/900", EVEN_TABLE),
                exact("v6", "403/2116800", EVEN_TABLE),
                exact("v1", "1/12", "classical expected triangle area ratio"),
                exact("v3", "31/9000", "published triangle area moment table"),
            ],
        ),
        3 => (
            vec!["tetrahedron"],
            vec![sig("I", 4, 3), sig("II", 3, 4)],
            vec![
                exact("v2", "3/4000", EVEN_TABLE),
                exact("v4", "871/123480000", EVEN_TABLE),
                exact("v6", "2797/11202105600", EVEN_TABLE),
                pi2("v1", "13/720", "-1/15015", ODD_SOURCE),
                pi2("v3", "733/12600000", "79/2424922500", ODD_SOURCE),
                exact("v1[I]", "3/2000", CONFIG_SOURCE),
                pi2("v1[II]", "217/54000", "-1/45045", CONFIG_SOURCE),
                exact("v2[I]", "279/4000000", "derived: weighted decomposition of the exact even moment over configurations"),
            ],
        ),
        4 => (
            vec!["pentachoron", "4-simplex"],
            vec![sig("I", 5, 4), sig("II", 10, 6)],
            vec![
                exact("v2", "1/33750", EVEN_TABLE),
                exact("v4", "2083/96808320000", EVEN_TABLE),
                pi2("v1", "97/27000", "-2173/52026975", ODD_SOURCE),
                pi2("v3", "1955399/3403417500000", "63065881/39669996140775000", ODD_SOURCE),
                exact("v1[I]", "1/16875", CONFIG_SOURCE),
                pi2("v1[II]", "89/270000", "-2173/520269750", CONFIG_SOURCE),
            ],
        ),
        5 => (
            vec!["hexateron", "5-simplex"],
            vec![sig("I", 6, 5), sig("II", 15, 8), sig("III", 10, 9)],
            vec![
                exact("v2", "5/5445468", EVEN_TABLE),
                pi4(
                    "v1",
                    "2207/3265920",
                    "-244129/14522729760",
                    "73522/541513323351",
                    ODD_SOURCE,
                ),
                exact("v1[I]", "5/2722734", CONFIG_SOURCE),
                pi4(
                    "v1[II]",
                    "12732911/653456160000",
                    "-1394234873/3353951824423200",
                    "1622/2707566616755",
                    CONFIG_SOURCE,
                ),
                pi4(
                    "v1[III]",
                    "146034151/3920736960000",
                    "-3546684881/3353951824423200",
                    "4904/386795230965",
                    CONFIG_SOURCE,
                ),
            ],
        ),
        6 => (
            vec!["heptapeton", "6-simplex"],
            vec![sig("I", 7, 6), sig("II", 21, 10), sig("III", 35, 12)],
            vec![pi4(
                "v1",
                "26609/217818720",
                "-3396146609/621871356506400",
                "1318349152898/12180206401298390455",
                ODD_SOURCE,
            )],
        ),
        _ => unreachable!(),
    };
    CatalogEntry {
        name: names[d - 1],
        aliases,
        polytope,
        group,
        config_signatures,
        references,
        notes: Vec::new(),
    }
}

fn cube_entry(d: usize) -> CatalogEntry {
    let names: [&'static str; 5] = ["C2", "C3", "C4", "C5", "C6"];
    let polytope = cube_polytope(d);
    // C5/C6 exceed the configuration vertex cap; skip group construction.
    let group = if d <= 4 {
        cube_group(d)
    } else {
        SymmetryGroup::trivial(1 << d)
    };
    let (aliases, config_signatures, references, notes): (
        Vec<&'static str>,
        Vec<ConfigSignature>,
        Vec<Reference>,
        Vec<&'static str>,
    ) = match d {
        2 => (
            vec!["square", "unit-square"],
            vec![sig("I", 4, 2), sig("II", 2, 2)],
            vec![
                exact("v2", "1/96", EVEN_TABLE),
                exact("v4", "1/2400", EVEN_TABLE),
                exact("v6", "761/27095040", EVEN_TABLE),
                exact("v1", "11/144", "published square area moment table"),
                exact("v3", "137/72000", "published square area moment table"),
            ],
            vec![],
        ),
        3 => (
            vec!["cube"],
            vec![
                sig("I", 8, 3),
                sig("II", 12, 4),
                sig("III", 24, 5),
                sig("IV", 4, 6),
                sig("V", 3, 4),
            ],
            vec![
                exact("v2", "1/2592", EVEN_TABLE),
                exact("v4", "701/839808000", EVEN_TABLE),
                exact("v6", "29563/7466363412480", EVEN_TABLE),
                pi2("v1", "3977/216000", "-1/2160", ODD_SOURCE),
                pi2("v3", "8411819/450084600000", "-1/3402000", ODD_SOURCE),
                exact("v1[I]", "391/82944000", CONFIG_SOURCE),
                exact("v1[II]", "34309/186624000", CONFIG_SOURCE),
                pi2("v1[III]", "-792503149/5225472000", "3191/207360", CONFIG_SOURCE),
                pi2("v1[IV]", "198785357/217728000", "-71/768", CONFIG_SOURCE),
                exact("v1[V]", "7/5184", CONFIG_SOURCE),
            ],
            vec![],
        ),
        4 => (
            vec!["tesseract", "4-cube"],
            vec![
                sig("I", 16, 4),
                sig("II", 32, 6),
                sig("III", 96, 8),
                sig("IV", 24, 8),
                sig("V", 64, 10),
                sig("VI", 16, 12),
                sig("VII", 192, 10),
                sig("VIII", 96, 10),
                sig("IX", 96, 12),
                sig("X", 64, 10),
                sig("XI", 192, 12),
                sig("XII", 4, 8),
                sig("XIII", 32, 12),
                sig("XIV", 16, 12),
            ],
            vec![
                exact("v2", "5/497664", EVEN_TABLE),
                exact("v4", "887/1146617856000", EVEN_TABLE),
                approx(
                    "v1",
                    0.002129529435644580,
                    "published closed form (log and zeta(3) terms) evaluated to 15 digits",
                ),
                exact("v1[I]", "65598041/3386742443900928000000", CONFIG_SOURCE),
                exact("v1[II]", "102608713871/3292649334374400000", CONFIG_SOURCE),
                pi2(
                    "v1[III]",
                    "256081766015430731/345728180109312000000",
                    "-6302191/83980800000",
                    CONFIG_SOURCE,
                ),
                exact("v1[IV]", "7383631/1862358220800", CONFIG_SOURCE),
                exact("v1[XII]", "17/311040", CONFIG_SOURCE),
                pi2(
                    "v1[XIII]",
                    "746581063847040871/6602447884032000000",
                    "-641346209/55987200000",
                    CONFIG_SOURCE,
                ),
            ],
            vec![
                "the published row for configuration XIV prints weight 64, which \
                 fails the total-weight identity (exhaustive enumeration gives a \
                 total of 940, and the orbit of 32 middle-level vertex sets forms \
                 16 unordered separations); the corrected weight 16 is used here",
            ],
        ),
        5 => (
            vec!["5-cube"],
            vec![],
            vec![exact("v2", "1/4976640", EVEN_TABLE)],
            vec!["configuration enumeration is unsupported (vertex count exceeds the cap)"],
        ),
        6 => (
            vec!["6-cube"],
            vec![],
            vec![],
            vec!["configuration enumeration is unsupported (vertex count exceeds the cap)"],
        ),
        _ => unreachable!(),
    };
    CatalogEntry {
        name: names[d - 2],
        aliases,
        polytope,
        group,
        config_signatures,
        references,
        notes,
    }
}

fn orthoplex_entry(d: usize) -> CatalogEntry {
    let names: [&'static str; 5] = ["O2", "O3", "O4", "O5", "O6"];
    let polytope = orthoplex_polytope(d);
    let group = orthoplex_group(d);
    let (aliases, config_signatures, references, notes): (
        Vec<&'static str>,
        Vec<ConfigSignature>,
        Vec<Reference>,
        Vec<&'static str>,
    ) = match d {
        2 => (
            vec!["diamond"],
            vec![],
            // O2 is an affine image of the square; its moments coincide.
            vec![
                exact("v2", "1/96", "affine image of the unit square"),
                exact("v4", "1/2400", "affine image of the unit square"),
                exact("v1", "11/144", "affine image of the unit square"),
            ],
            vec![],
        ),
        3 => (
            vec!["octahedron"],
            vec![sig("I", 6, 4), sig("II", 12, 6), sig("III", 4, 6)],
            vec![
                exact("v2", "3/8000", EVEN_TABLE),
                exact("v4", "4259/5268480000", EVEN_TABLE),
                exact("v6", "7200523/1835352981504000", EVEN_TABLE),
                pi2("v1", "-6619/184320", "19297/3843840", ODD_SOURCE),
                pi2("v3", "-81932629/103219200000", "1628355709/19864965120000", ODD_SOURCE),
                pi2("v1[I]", "2569561/230400", "-11571/10240", CONFIG_SOURCE),
                pi2("v1[II]", "-12023076361/1548288000", "72588071/92252160", CONFIG_SOURCE),
                pi2("v1[III]", "376079789/57344000", "-2721/4096", CONFIG_SOURCE),
            ],
            vec![],
        ),
        4 => (
            vec!["hexadecachoron", "16-cell", "4-orthoplex"],
            vec![
                sig("I", 8, 6),
                sig("II", 24, 10),
                sig("III", 32, 12),
                sig("IV", 8, 0),
            ],
            vec![
                exact("v2", "1/108000", EVEN_TABLE),
                exact("v4", "3959/5664669696000", EVEN_TABLE),
            ],
            vec![
                "the published row for configuration IV lacks a section order and \
                 prints weight 16, which fails the total-weight identity (the 16 \
                 separable middle-level vertex sets form 8 unordered separations); \
                 the corrected weight 8 is used here",
            ],
        ),
        5 => (
            vec!["5-orthoplex"],
            vec![],
            vec![exact("v2", "5/29042496", EVEN_TABLE)],
            vec![],
        ),
        6 => (vec!["6-orthoplex"], vec![], vec![], vec![]),
        _ => unreachable!(),
    };
    CatalogEntry {
        name: names[d - 2],
        aliases,
        polytope,
        group,
        config_signatures,
        references,
        notes,
    }
}

fn square_pyramid() -> CatalogEntry {
    let polytope = Polytope::from_vertices(vec![
        vec![int(-1), int(-1), int(0)],
        vec![int(1), int(-1), int(0)],
        vec![int(1), int(1), int(0)],
        vec![int(-1), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ])
    .expect("square pyramid");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "square-pyramid",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 1, 4),
            sig("II", 4, 3),
            sig("III", 4, 5),
            sig("IV", 4, 4),
        ],
        references: vec![pi2("v1", "-977/8640", "941/72072", SOLID_TABLE)],
        notes: Vec::new(),
    }
}

fn triangular_prism() -> CatalogEntry {
    // Right triangle × unit interval (affine image of the regular prism).
    let mut verts = Vec::new();
    for z in [0i64, 1] {
        verts.push(vec![int(0), int(0), int(z)]);
        verts.push(vec![int(1), int(0), int(z)]);
        verts.push(vec![int(0), int(1), int(z)]);
    }
    let polytope = Polytope::from_vertices(verts).expect("prism");
    // Triangle rotation, triangle reflection, height flip.
    let generators: Vec<Perm> = vec![
        vec![1, 2, 0, 4, 5, 3],
        vec![1, 0, 2, 4, 3, 5],
        vec![3, 4, 5, 0, 1, 2],
    ];
    let group = validated_group(&polytope, &generators);
    CatalogEntry {
        name: "triangular-prism",
        aliases: vec!["prism"],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 6, 3),
            sig("II", 6, 4),
            sig("III", 3, 4),
            sig("IV", 1, 3),
            sig("V", 6, 5),
        ],
        references: vec![pi2("v1", "1859/116640", "-1/17010", SOLID_TABLE)],
        notes: Vec::new(),
    }
}

fn triangular_bipyramid() -> CatalogEntry {
    // Equilateral-free affine model: base triangle plus apexes above and
    // below the base centroid.
    let polytope = Polytope::from_vertices(vec![
        vec![int(0), int(0), int(0)],
        vec![int(1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![rat(1, 3), rat(1, 3), int(1)],
        vec![rat(1, 3), rat(1, 3), int(-1)],
    ])
    .expect("bipyramid");
    let generators: Vec<Perm> = vec![
        vec![1, 2, 0, 3, 4],
        vec![1, 0, 2, 3, 4],
        vec![0, 1, 2, 4, 3],
    ];
    let group = validated_group(&polytope, &generators);
    CatalogEntry {
        name: "triangular-bipyramid",
        aliases: vec!["bipyramid"],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 3, 4),
            sig("II", 2, 3),
            sig("III", 3, 6),
            sig("IV", 6, 5),
        ],
        references: vec![approx("v1", 0.0150824273269304, SOLID_TABLE_EVAL)],
        notes: Vec::new(),
    }
}

fn triakis_tetrahedron() -> CatalogEntry {
    // Large tetrahedron (even sign changes of (1,1,1), scaled by 5/3) plus
    // the dual small tetrahedron (odd sign changes).
    let mut verts = Vec::new();
    for (signs, scale) in [(true, rat(5, 3)), (false, int(1))] {
        for mask in 0..8u32 {
            let even = (mask.count_ones() % 2 == 0) == signs;
            if !even {
                continue;
            }
            verts.push(
                (0..3)
                    .map(|i| {
                        let s = if mask >> i & 1 == 1 { -1i64 } else { 1 };
                        int(s) * scale.clone()
                    })
                    .collect(),
            );
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("triakis tetrahedron");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "triakis-tetrahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 4, 3),
            sig("II", 4, 6),
            sig("III", 12, 7),
            sig("IV", 6, 10),
            sig("V", 12, 8),
            sig("VI", 12, 9),
            sig("VII", 3, 8),
            sig("VIII", 4, 9),
        ],
        references: Vec::new(),
        notes: vec!["no published value for the mean tetrahedron volume (starred entry)"],
    }
}

fn cuboctahedron() -> CatalogEntry {
    let mut verts = Vec::new();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let mut v = vec![int(0); 3];
            v[i] = int(si);
            v[j] = int(sj);
            verts.push(v);
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("cuboctahedron");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "cuboctahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 12, 4),
            sig("II", 24, 6),
            sig("III", 24, 8),
            sig("IV", 8, 6),
            sig("V", 6, 8),
            sig("VI", 48, 8),
            sig("VII", 24, 8),
            sig("VIII", 12, 8),
            sig("IX", 12, 8),
        ],
        references: vec![approx("v1", 0.01300251568103, SOLID_TABLE_EVAL)],
        notes: Vec::new(),
    }
}

fn truncated_tetrahedron() -> CatalogEntry {
    // Even sign changes of all permutations of (1,1,3).
    let mut verts = Vec::new();
    for perm in permutations(&[0, 1, 2]) {
        let base = [int(1), int(1), int(3)];
        let coords: Vec<Rat> = perm.iter().map(|&i| base[i].clone()).collect();
        if coords[0] == coords[1] && perm[0] > perm[1] {
            continue; // duplicate permutation of the repeated coordinate
        }
        for mask in 0..8u32 {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            verts.push(
                (0..3)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            -coords[i].clone()
                        } else {
                            coords[i].clone()
                        }
                    })
                    .collect(),
            );
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("truncated tetrahedron");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "truncated-tetrahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 12, 3),
            sig("II", 12, 4),
            sig("III", 6, 4),
            sig("IV", 4, 3),
            sig("V", 24, 5),
            sig("VI", 12, 4),
            sig("VII", 12, 6),
            sig("VIII", 24, 5),
            sig("IX", 12, 5),
            sig("X", 24, 7),
            sig("XI", 3, 4),
            sig("XII", 12, 6),
            sig("XIII", 4, 6),
            sig("XIV", 12, 6),
        ],
        references: vec![approx("v1", 0.0148451019028954, SOLID_TABLE_EVAL)],
        notes: vec![
            "the published genealogy lists the second block of rows under repeated \
             labels I–VII; they are stored here as VIII–XIV in print order",
        ],
    }
}

fn rhombic_dodecahedron() -> CatalogEntry {
    let mut verts: Vec<Vec<Rat>> = (0..8u32)
        .map(|mask| {
            (0..3)
                .map(|i| int(if mask >> i & 1 == 1 { -1 } else { 1 }))
                .collect()
        })
        .collect();
    for i in 0..3 {
        for s in [2i64, -2] {
            let mut v = vec![int(0); 3];
            v[i] = int(s);
            verts.push(v);
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("rhombic dodecahedron");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "rhombic-dodecahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![
            sig("I", 8, 3),
            sig("II", 6, 4),
            sig("III", 24, 5),
            sig("IV", 24, 6),
            sig("V", 24, 7),
            sig("VI", 12, 6),
            sig("VII", 6, 8),
            sig("VIII", 4, 6),
            sig("IX", 12, 8),
            sig("X", 24, 8),
            sig("XI", 24, 7),
            sig("XII", 48, 7),
            sig("XIII", 8, 9),
            sig("XIV", 24, 7),
            sig("XV", 24, 8),
        ],
        references: vec![approx("v1", 0.0129384816563456, SOLID_TABLE_EVAL)],
        notes: vec![
            "the published genealogy table repeats label V in its second block \
             header; the rows are stored here as VI–X in print order",
        ],
    }
}

fn tetrakis_hexahedron() -> CatalogEntry {
    let mut verts: Vec<Vec<Rat>> = (0..8u32)
        .map(|mask| {
            (0..3)
                .map(|i| int(if mask >> i & 1 == 1 { -1 } else { 1 }))
                .collect()
        })
        .collect();
    for i in 0..3 {
        for s in [1i64, -1] {
            let mut v = vec![int(0); 3];
            v[i] = rat(3, 2) * int(s);
            verts.push(v);
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("tetrakis hexahedron");
    let group = signed_perm_group(&polytope);
    CatalogEntry {
        name: "tetrakis-hexahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: vec![],
        references: Vec::new(),
        notes: vec![
            "no published value for the mean tetrahedron volume (starred entry)",
            "no published configuration table for this solid",
        ],
    }
}

fn truncated_octahedron() -> CatalogEntry {
    let mut verts = Vec::new();
    for perm in permutations(&[0, 1, 2]) {
        let base = [int(0), int(1), int(2)];
        let coords: Vec<Rat> = perm.iter().map(|&i| base[i].clone()).collect();
        for mask in 0..8u32 {
            let v: Vec<Rat> = (0..3)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -coords[i].clone()
                    } else {
                        coords[i].clone()
                    }
                })
                .collect();
            // The zero coordinate makes sign flips collide; keep first copies.
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
    }
    let polytope = Polytope::from_vertices(verts).expect("truncated octahedron");
    let group = signed_perm_group(&polytope);
    let table: [(&'static str, i64, usize); 47] = [
        ("I", 24, 3),
        ("II", 24, 4),
        ("III", 12, 4),
        ("IV", 48, 5),
        ("V", 24, 5),
        ("VI", 24, 6),
        ("VII", 24, 6),
        ("VIII", 24, 6),
        ("IX", 6, 4),
        ("X", 48, 7),
        ("XI", 48, 7),
        ("XII", 48, 7),
        ("XIII", 24, 5),
        ("XIV", 8, 6),
        ("XV", 48, 8),
        ("XVI", 48, 6),
        ("XVII", 12, 8),
        ("XVIII", 24, 6),
        ("XIX", 48, 7),
        ("XX", 48, 7),
        ("XXI", 48, 9),
        ("XXII", 24, 7),
        ("XXIII", 24, 7),
        ("XXIV", 24, 6),
        ("XXV", 24, 8),
        ("XXVI", 48, 8),
        ("XXVII", 48, 8),
        ("XXVIII", 6, 8),
        ("XXIX", 48, 7),
        ("XXX", 48, 7),
        ("XXXI", 24, 9),
        ("XXXII", 48, 9),
        ("XXXIII", 24, 6),
        ("XXXIV", 24, 8),
        ("XXXV", 48, 8),
        ("XXXVI", 24, 8),
        ("XXXVII", 24, 10),
        ("XXXVIII", 48, 7),
        ("XXXIX", 48, 7),
        ("XL", 48, 9),
        ("XLI", 48, 9),
        ("XLII", 24, 7),
        ("XLIII", 4, 6),
        ("XLIV", 24, 8),
        ("XLV", 6, 6),
        ("XLVI", 12, 10),
        ("XLVII", 12, 8),
    ];
    CatalogEntry {
        name: "truncated-octahedron",
        aliases: vec![],
        polytope,
        group,
        config_signatures: table.iter().map(|&(l, w, n)| sig(l, w, n)).collect(),
        references: Vec::new(),
        notes: vec!["no published value for the mean tetrahedron volume (starred entry)"],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn lookup_by_alias_and_case() {
        assert_eq!(find("tetrahedron").unwrap().name, "T3");
        assert_eq!(find("Unit Square").unwrap().name, "C2");
        assert_eq!(find("16-CELL").unwrap().name, "O4");
        assert!(find("dodecahedron").is_err());
    }

    #[test]
    fn registry_lint_passes() {
        lint(&catalog()).unwrap();
    }

    #[test]
    fn volumes_match_construction() {
        assert_eq!(find("T3").unwrap().polytope.volume(), rat(1, 6));
        assert_eq!(find("C4").unwrap().polytope.volume(), int(1));
        assert_eq!(find("O3").unwrap().polytope.volume(), rat(4, 3));
        assert_eq!(find("O4").unwrap().polytope.volume(), rat(2, 3));
    }

    #[test]
    fn group_orders() {
        assert_eq!(find("T3").unwrap().group.order(), 24);
        assert_eq!(find("C3").unwrap().group.order(), 48);
        assert_eq!(find("O3").unwrap().group.order(), 48);
        assert_eq!(find("C4").unwrap().group.order(), 384);
        assert_eq!(find("O4").unwrap().group.order(), 384);
        assert_eq!(find("square-pyramid").unwrap().group.order(), 8);
        assert_eq!(find("triangular-prism").unwrap().group.order(), 12);
        assert_eq!(find("triangular-bipyramid").unwrap().group.order(), 12);
        assert_eq!(find("cuboctahedron").unwrap().group.order(), 48);
        assert_eq!(find("truncated-tetrahedron").unwrap().group.order(), 24);
        assert_eq!(find("triakis-tetrahedron").unwrap().group.order(), 24);
    }

    #[test]
    fn vertex_counts() {
        for (name, n) in [
            ("cuboctahedron", 12),
            ("truncated-tetrahedron", 12),
            ("rhombic-dodecahedron", 14),
            ("tetrakis-hexahedron", 14),
            ("truncated-octahedron", 24),
            ("triakis-tetrahedron", 8),
        ] {
            assert_eq!(find(name).unwrap().polytope.vertices().len(), n, "{name}");
        }
    }

    #[test]
    fn tetrahedron_labels_match() {
        let e = find("T3").unwrap();
        let configs = e.configurations().unwrap();
        let m = e.label_match(&configs);
        assert!(m.flags.is_empty(), "{:?}", m.flags);
        let labels: Vec<_> = m.labels.iter().map(|l| l.clone().unwrap()).collect();
        assert_eq!(labels, ["N", "I", "II"]);
    }

    #[test]
    fn octahedron_labels_match() {
        let e = find("O3").unwrap();
        let configs = e.configurations().unwrap();
        let m = e.label_match(&configs);
        assert!(m.flags.is_empty(), "{:?}", m.flags);
        let weights: Vec<i64> = configs[1..]
            .iter()
            .map(|c| c.weight.to_integer().to_i64().unwrap())
            .collect();
        let mut sorted = weights.clone();
        sorted.sort();
        assert_eq!(sorted, [4, 6, 12]);
    }

    #[test]
    fn big_parses_wide_rationals() {
        let r = big("6207797/38533602917272780800");
        assert_eq!(r.numer().to_string(), "6207797");
        assert_eq!(r.denom().to_string(), "38533602917272780800");
    }
}
