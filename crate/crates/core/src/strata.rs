//! Graded stratifications as ranked posets, the three compactified-Jacobian
//! instances, and a verifier for the combinatorial axioms.
//!
//! A stratification here is a poset of strata, each with a dimension and a
//! count of pieces. [`verify_graded`] checks that the order is a partial
//! order, that dimension is strictly monotone, that every cover raises the
//! dimension by exactly one, and that all maximal strata share the top
//! dimension.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, WeightedGraph};
use crate::homology::spanning_tree_count;
use crate::orientations::{orientation_class_poset, ClassKind, OrientationClass};
use crate::poset::Poset;

#[derive(Debug, Clone)]
pub struct Stratum<L> {
    pub label: L,
    /// Human-readable name used in reports.
    pub name: String,
    pub dim: u32,
    pub pieces: u64,
}

#[derive(Debug, Clone)]
pub struct GradedStratification<L> {
    poset: Poset<Stratum<L>>,
}

impl<L> GradedStratification<L> {
    pub fn new(poset: Poset<Stratum<L>>) -> Self {
        GradedStratification { poset }
    }

    pub fn poset(&self) -> &Poset<Stratum<L>> {
        &self.poset
    }

    pub fn poset_mut(&mut self) -> &mut Poset<Stratum<L>> {
        &mut self.poset
    }

    pub fn strata(&self) -> &[Stratum<L>] {
        self.poset.elements()
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn top_dimension(&self) -> Option<u32> {
        self.strata().iter().map(|s| s.dim).max()
    }

    /// Number of strata in each dimension `0..=top`.
    pub fn dimension_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.top_dimension().map_or(0, |d| d as usize + 1)];
        for s in self.strata() {
            counts[s.dim as usize] += 1;
        }
        counts
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.poset
            .to_dot(name, |_, s| format!("{} (dim {})", s.name, s.dim))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status}  {}", self.name)?;
        if let Some(w) = &self.witness {
            write!(f, "  [{w}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn verify_graded<L>(strat: &GradedStratification<L>) -> Report {
    let p = &strat.poset;
    let name = |i: usize| format!("{} (dim {})", p.get(i).name, p.get(i).dim);

    let order = p.order_violations(1).first().map(|v| match *v {
        crate::poset::OrderViolation::Antisymmetry(a, b) => {
            format!("{} and {} are mutually below each other", name(a), name(b))
        }
        crate::poset::OrderViolation::Transitivity(a, b, c) => {
            format!("{} <= {} <= {} but not {0} <= {2}", name(a), name(b), name(c))
        }
    });

    let mut monotone = None;
    'outer: for a in 0..p.len() {
        for b in p.up_set(a) {
            if a != b && p.get(a).dim >= p.get(b).dim {
                monotone = Some(format!("{} < {}", name(a), name(b)));
                break 'outer;
            }
        }
    }

    let covers = p
        .covers()
        .into_iter()
        .find(|&(a, b)| p.get(b).dim != p.get(a).dim + 1)
        .map(|(a, b)| format!("{} is covered by {}", name(a), name(b)));

    let maximal = p.maximal();
    let top = maximal.iter().map(|&m| p.get(m).dim).max();
    let equidimensional = maximal
        .iter()
        .find(|&&m| Some(p.get(m).dim) != top)
        .map(|&m| format!("maximal {} below top dimension {}", name(m), top.unwrap()));

    Report {
        checks: vec![
            Check::new("partial order", order),
            Check::new("dimension strictly monotone", monotone),
            Check::new("covers raise dimension by one", covers),
            Check::new("maximal strata share top dimension", equidimensional),
        ],
    }
}

pub fn subset_name(g: &WeightedGraph, s: EdgeSet) -> String {
    format!("S={{{}}}", g.edge_ids(s).join(","))
}

pub fn class_name(g: &WeightedGraph, c: &OrientationClass) -> String {
    format!("{} d={}", subset_name(g, c.removed), c.degree.labelled(g))
}

fn count(n: num_bigint::BigUint) -> u64 {
    n.to_u64().expect("count fits in u64")
}

/// Strata `N_S` over `S` with `G - S` connected; `dim = g(G - S)`,
/// `pieces = |Φ_{G-S}|`.
pub fn neron_stratification(g: &WeightedGraph) -> Result<GradedStratification<EdgeSet>> {
    let poset = g.connected_spanning_subgraph_poset()?;
    let all = g.all_edges();
    let mut pieces = Vec::with_capacity(poset.len());
    for &s in poset.elements() {
        pieces.push(count(spanning_tree_count(&g.delete_edges(s)?)?));
    }
    let mut pieces = pieces.into_iter();
    Ok(GradedStratification::new(poset.map(|s| Stratum {
        name: subset_name(g, s),
        dim: g.genus_of(all.difference(s)),
        pieces: pieces.next().unwrap(),
        label: s,
    })))
}

fn class_stratification(g: &WeightedGraph, kind: ClassKind) -> Result<GradedStratification<OrientationClass>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let poset = orientation_class_poset(g, kind)?;
    Ok(GradedStratification::new(poset.map(|c| Stratum {
        name: class_name(g, &c),
        dim: g.genus_of(c.support(g)),
        pieces: 1,
        label: c,
    })))
}

/// Strata indexed by classes of totally cyclic orientations of all `G - S`.
pub fn pic_gminus1_stratification(g: &WeightedGraph) -> Result<GradedStratification<OrientationClass>> {
    class_stratification(g, ClassKind::TotallyCyclic)
}

/// Strata indexed by classes of rooted 1-orientations of connected `G - S`.
pub fn pic_g_stratification(g: &WeightedGraph) -> Result<GradedStratification<OrientationClass>> {
    class_stratification(g, ClassKind::RootedOne)
}

/// Checks that `O_S ↦ S` maps the degree-`g` stratification onto the Néron
/// one, preserves order, and has fibers of size `|Φ_{G-S}|`.
pub fn neron_projection_report(
    picg: &GradedStratification<OrientationClass>,
    neron: &GradedStratification<EdgeSet>,
) -> Report {
    let mut fibers: BTreeMap<EdgeSet, u64> = BTreeMap::new();
    for s in picg.strata() {
        *fibers.entry(s.label.removed).or_default() += 1;
    }
    let index: BTreeMap<EdgeSet, usize> = neron
        .strata()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.label, i))
        .collect();

    let unknown = picg
        .strata()
        .iter()
        .find(|s| !index.contains_key(&s.label.removed))
        .map(|s| format!("{} has no Néron stratum", s.name));
    let surjective = neron
        .strata()
        .iter()
        .find(|s| !fibers.contains_key(&s.label))
        .map(|s| format!("{} has an empty fiber", s.name));
    let fiber_sizes = neron
        .strata()
        .iter()
        .find(|s| fibers.get(&s.label).copied().unwrap_or(0) != s.pieces)
        .map(|s| {
            format!(
                "{}: fiber {} vs |Φ| = {}",
                s.name,
                fibers.get(&s.label).copied().unwrap_or(0),
                s.pieces
            )
        });
    let mut monotone = None;
    let p = picg.poset();
    'outer: for a in 0..p.len() {
        for b in p.up_set(a) {
            let (sa, sb) = (p.get(a).label.removed, p.get(b).label.removed);
            match (index.get(&sa), index.get(&sb)) {
                (Some(&ia), Some(&ib)) if neron.poset().leq(ia, ib) => {}
                _ => {
                    monotone = Some(format!("{} <= {} not preserved", p.get(a).name, p.get(b).name));
                    break 'outer;
                }
            }
        }
    }
    Report {
        checks: vec![
            Check::new("projection lands in Néron strata", unknown),
            Check::new("projection surjective", surjective),
            Check::new("fiber sizes equal |Φ_{G-S}|", fiber_sizes),
            Check::new("projection order-preserving", monotone),
        ],
    }
}
