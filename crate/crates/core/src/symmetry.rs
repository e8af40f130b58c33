//! Vertex-separation configurations under the symmetry group of a polytope.
//!
//! A hyperplane that meets the interior of a polytope `P` separates its
//! vertex set `V` into the part strictly above and the part strictly below.
//! Two separations are equivalent when a symmetry of `P` maps one onto the
//! other, and a selection `S` is identified with its complement `V ∖ S`
//! (the same planes realise both descriptions). Each equivalence class is a
//! *configuration*; the odd-moment integral decomposes into a finite sum of
//! per-configuration contributions weighted by the class sizes.
//!
//! Enumeration walks levels `|S| = 0, 1, …, ⌊|V|/2⌋`, generating candidates
//! by adding a single vertex to a representative of each realisable class of
//! the previous level, canonicalising under the group, and deciding
//! realisability exactly: `S` is realisable iff the strict system
//! `η·v > 1 (v ∈ S)`, `η·v < 1 (v ∉ S)` — or its flipped variant — has a
//! solution. (Every realisable class has a realisable predecessor: scaling a
//! witness `η` moves the separated vertices across the plane one at a time.)
//!
//! In hyperplane space, the set of planes inducing the separation class of a
//! representative `S` is the union of the feasible systems among the two
//! options above; a configuration therefore stores *all* feasible regions,
//! and integrals over a configuration sum over them. The weight `w_C` is the
//! orbit size `o_C`, halved at the self-complementary level `|S| = |V|/2`
//! (where the orbit pair of `S` and `V ∖ S` would otherwise be counted
//! twice). Weights can be half-integers for asymmetric inputs, so they are
//! kept rational.

use std::collections::{HashMap, HashSet};

use num_traits::One;

use crate::lp::{strict_feasible, StrictIneq};
use crate::polytope::{Hyperplane, Polytope};
use crate::rat::{int, rat, Rat};
use crate::{Error, Result};

/// A permutation of `0..n`, stored as the image list.
pub type Perm = Vec<usize>;

/// Compose two permutations: `(a ∘ b)(i) = a[b[i]]`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

/// A finite permutation group given by its full element list.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    n: usize,
    elements: Vec<Perm>,
}

/// Cap on group closure size (guards against malformed generator input).
pub const GROUP_SIZE_CAP: usize = 100_000;

impl SymmetryGroup {
    /// Close a generator set under composition (breadth-first).
    pub fn closure(n: usize, generators: &[Perm]) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::BadGenerator { index: i });
            }
        }
        let identity: Perm = (0..n).collect();
        let mut elements: Vec<Perm> = vec![identity.clone()];
        let mut seen: HashSet<Perm> = elements.iter().cloned().collect();
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > GROUP_SIZE_CAP {
                        return Err(Error::GroupTooLarge { cap: GROUP_SIZE_CAP });
                    }
                    elements.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        elements.sort();
        Ok(SymmetryGroup { n, elements })
    }

    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { n, elements: vec![(0..n).collect()] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    /// Image of a vertex-subset bitmask under a permutation.
    fn apply_mask(perm: &Perm, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << perm[i];
            m &= m - 1;
        }
        out
    }

    /// Orbit of a subset (as bitmasks), sorted ascending.
    pub fn orbit(&self, mask: u32) -> Vec<u32> {
        let mut set: Vec<u32> = self
            .elements
            .iter()
            .map(|g| Self::apply_mask(g, mask))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Canonical representative (minimum bitmask of the orbit).
    pub fn canonical(&self, mask: u32) -> u32 {
        self.elements
            .iter()
            .map(|g| Self::apply_mask(g, mask))
            .min()
            .unwrap_or(mask)
    }
}

/// A configuration: an orbit class of realisable vertex separations.
#[derive(Debug, Clone)]
pub struct Configuration {
    /// Display label: `N` for the empty separation, then Roman numerals in
    /// discovery order (level-major, canonical-mask-minor).
    pub label: String,
    /// Selected vertex indices of the canonical representative.
    pub rep: Vec<usize>,
    /// Canonical representative as a bitmask.
    pub mask: u32,
    /// Level `|S|`.
    pub level: usize,
    /// Orbit size `o_C` under the plain group action.
    pub orbit_size: usize,
    /// Weight `w_C` in the moment decomposition.
    pub weight: Rat,
    /// Number of vertices of the section polytope (0 for `N`).
    pub order: usize,
    /// Feasible strict inequality systems (one or two): first the option with
    /// `S` strictly above the plane when feasible, then the flipped option
    /// when it is also feasible. Empty for `N`.
    pub regions: Vec<Vec<StrictIneq>>,
    /// A strictly interior point of each entry of `regions`.
    pub witnesses: Vec<Vec<Rat>>,
}

impl Configuration {
    pub fn is_empty_separation(&self) -> bool {
        self.mask == 0
    }
}

/// Parent→child edges of the configuration genealogy (indices into the
/// configuration list). A child arises from a parent by adding one vertex.
#[derive(Debug, Clone)]
pub struct Genealogy {
    pub edges: Vec<(usize, usize)>,
}

/// Strict separation system for option A: `η·v > 1` on `S`, `η·v < 1` off `S`.
fn separation_system(polytope: &Polytope, mask: u32) -> Vec<StrictIneq> {
    polytope
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if mask >> i & 1 == 1 {
                // η·v > 1  ⇔  -η·v < -1
                StrictIneq::new(v.iter().map(|c| -c).collect(), -Rat::one())
            } else {
                StrictIneq::new(v.clone(), Rat::one())
            }
        })
        .collect()
}

/// Feasible regions (with witnesses) realising a selection, if any.
fn realise(polytope: &Polytope, mask: u32) -> (Vec<Vec<StrictIneq>>, Vec<Vec<Rat>>) {
    let sys_a = separation_system(polytope, mask);
    let sys_b: Vec<StrictIneq> = sys_a.iter().map(StrictIneq::flipped).collect();
    let mut regions = Vec::new();
    let mut witnesses = Vec::new();
    for sys in [sys_a, sys_b] {
        if let Some(w) = strict_feasible(&sys) {
            regions.push(sys);
            witnesses.push(w);
        }
    }
    (regions, witnesses)
}

/// Section order `n_C`: vertex count of `P ∩ {η·x = 1}` at an interior
/// witness of the region, cross-checked at a second witness.
fn section_order(polytope: &Polytope, region: &[StrictIneq]) -> Result<usize> {
    let (w1, w2) = Polytope::strict_witnesses(region)
        .ok_or_else(|| Error::Invalid("region lost feasibility".into()))?;
    let n1 = polytope.slice(&Hyperplane::new(w1)).section.len();
    let n2 = polytope.slice(&Hyperplane::new(w2)).section.len();
    if n1 != n2 {
        return Err(Error::Invalid(format!(
            "section order differs between witnesses ({n1} vs {n2})"
        )));
    }
    Ok(n1)
}

/// Enumerate all configurations of `polytope` under `group`.
///
/// The result is ordered level-major; the first entry is always the empty
/// separation `N`.
pub fn enumerate_configurations(
    polytope: &Polytope,
    group: &SymmetryGroup,
) -> Result<Vec<Configuration>> {
    let n = polytope.vertices().len();
    if group.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, got: group.degree() });
    }
    if n > 31 {
        return Err(Error::TooManyVertices { got: n, cap: 31 });
    }
    let mut configs: Vec<Configuration> = vec![Configuration {
        label: "N".into(),
        rep: Vec::new(),
        mask: 0,
        level: 0,
        orbit_size: 1,
        weight: Rat::one(),
        order: 0,
        regions: Vec::new(),
        witnesses: Vec::new(),
    }];
    let mut prev_level: Vec<u32> = vec![0];
    let mut counter = 0usize;
    for level in 1..=n / 2 {
        let mut candidates: Vec<u32> = Vec::new();
        let mut seen: HashSet<u32> = HashSet::new();
        for &rep in &prev_level {
            for v in 0..n {
                if rep >> v & 1 == 1 {
                    continue;
                }
                let canon = group.canonical(rep | 1 << v);
                if seen.insert(canon) {
                    candidates.push(canon);
                }
            }
        }
        candidates.sort_unstable();
        let mut next_level: Vec<u32> = Vec::new();
        for mask in candidates {
            let (regions, witnesses) = realise(polytope, mask);
            if regions.is_empty() {
                continue;
            }
            let orbit_size = group.orbit(mask).len();
            let weight = if 2 * level == n {
                rat(orbit_size as i64, 2)
            } else {
                int(orbit_size as i64)
            };
            let order = section_order(polytope, &regions[0])?;
            counter += 1;
            configs.push(Configuration {
                label: roman(counter),
                rep: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
                mask,
                level,
                orbit_size,
                weight,
                order,
                regions,
                witnesses,
            });
            next_level.push(mask);
        }
        prev_level = next_level;
    }
    Ok(configs)
}

/// Build the genealogy (Hasse diagram of one-vertex additions) over an
/// enumerated configuration list.
pub fn build_genealogy(configs: &[Configuration], group: &SymmetryGroup) -> Genealogy {
    let index: HashMap<u32, usize> =
        configs.iter().enumerate().map(|(i, c)| (c.mask, i)).collect();
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for (child_idx, child) in configs.iter().enumerate() {
        if child.level == 0 {
            continue;
        }
        for &v in &child.rep {
            let parent = group.canonical(child.mask & !(1u32 << v));
            if let Some(&parent_idx) = index.get(&parent) {
                edges.insert((parent_idx, child_idx));
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    Genealogy { edges }
}

/// Render a genealogy in Graphviz DOT format.
pub fn export_dot(name: &str, configs: &[Configuration], genealogy: &Genealogy) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n  rankdir=TB;\n"));
    for c in configs {
        out.push_str(&format!(
            "  \"{}\" [label=\"{} (w={}, n={})\"];\n",
            c.label, c.label, c.weight, c.order
        ));
    }
    for &(p, c) in &genealogy.edges {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            configs[p].label, configs[c].label
        ));
    }
    out.push_str("}\n");
    out
}

/// Roman numeral for configuration labels (1-based).
pub fn roman(mut n: usize) -> String {
    const TABLE: [(usize, &str); 13] = [
        (1000, "M"),
        (900, "CM"),
        (500, "D"),
        (400, "CD"),
        (100, "C"),
        (90, "XC"),
        (50, "L"),
        (40, "XL"),
        (10, "X"),
        (9, "IX"),
        (5, "V"),
        (4, "IV"),
        (1, "I"),
    ];
    let mut out = String::new();
    for (value, glyph) in TABLE {
        while n >= value {
            out.push_str(glyph);
            n -= value;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex3() -> Polytope {
        let verts = vec![
            vec![int(0), int(0), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        Polytope::from_vertices(verts).unwrap()
    }

    fn s4() -> SymmetryGroup {
        // S_4 on the simplex vertices.
        SymmetryGroup::closure(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
    }

    #[test]
    fn closure_of_s4() {
        assert_eq!(s4().order(), 24);
    }

    #[test]
    fn orbit_of_singleton_spans_all_vertices() {
        let g = s4();
        assert_eq!(g.orbit(0b0001).len(), 4);
        assert_eq!(g.canonical(0b1000), 0b0001);
    }

    #[test]
    fn bad_generator_rejected() {
        assert!(SymmetryGroup::closure(3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn tetrahedron_configurations() {
        let p = simplex3();
        let configs = enumerate_configurations(&p, &s4()).unwrap();
        // N plus two configurations: single vertex (w=4, triangle section)
        // and vertex pair (w=3 after halving, quadrilateral section).
        assert_eq!(configs.len(), 3);
        let mut wn: Vec<(Rat, usize)> = configs[1..]
            .iter()
            .map(|c| (c.weight.clone(), c.order))
            .collect();
        wn.sort();
        assert_eq!(wn, vec![(int(3), 4), (int(4), 3)]);
        // A selection never strictly dominates the origin side: the origin
        // vertex forces a single feasible option here.
        assert_eq!(configs[1].regions.len(), 1);
        assert_eq!(configs[2].regions.len(), 1);
    }

    #[test]
    fn tetrahedron_genealogy_is_a_chain() {
        let p = simplex3();
        let g = s4();
        let configs = enumerate_configurations(&p, &g).unwrap();
        let gen = build_genealogy(&configs, &g);
        assert_eq!(gen.edges, vec![(0, 1), (1, 2)]);
        let dot = export_dot("tetrahedron", &configs, &gen);
        assert!(dot.contains("\"N\" -> \"I\""));
        assert!(dot.contains("\"I\" -> \"II\""));
    }

    #[test]
    fn trivial_group_gets_half_weights_at_middle_level() {
        let p = simplex3();
        let g = SymmetryGroup::trivial(4);
        let configs = enumerate_configurations(&p, &g).unwrap();
        // N, 4 singleton classes, C(4,2)=6 pair classes.
        assert_eq!(configs.len(), 11);
        // Weights: each singleton counts once; each middle-level pair class
        // is half of a complementary pair of classes.
        let total: Rat = configs[1..].iter().map(|c| c.weight.clone()).sum();
        assert_eq!(total, int(4) + int(6) * rat(1, 2));
        // Weighted sums must agree with the symmetric enumeration:
        // 4 (singletons) and 3 (pairs after identification).
        let pair_sum: Rat = configs[1..]
            .iter()
            .filter(|c| c.level == 2)
            .map(|c| c.weight.clone())
            .sum();
        assert_eq!(pair_sum, int(3));
    }

    #[test]
    fn roman_numerals() {
        assert_eq!(roman(1), "I");
        assert_eq!(roman(4), "IV");
        assert_eq!(roman(14), "XIV");
        assert_eq!(roman(47), "XLVII");
    }
}
