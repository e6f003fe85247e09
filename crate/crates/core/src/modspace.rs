//! Stable graphs of genus `g` with `n` unlabeled legs, ordered by contraction.
//!
//! Graphs are generated from the smooth graph (one vertex of weight `g`
//! carrying all legs) by repeatedly undoing a single edge contraction: either
//! trading one unit of vertex weight for a loop, or splitting a vertex in two
//! joined by a new edge. Every stable graph with an edge contracts onto a
//! stable graph with one edge fewer, so the search reaches every class.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, EdgeSet, WeightedGraph};
use crate::poset::Poset;
use crate::strata::{GradedStratification, Stratum};

fn check_type(g: u32, n: u32) -> Result<()> {
    if 2 * g + n <= 2 {
        Err(Error::UnstableType { genus: g, legs: n })
    } else {
        Ok(())
    }
}

/// One vertex of weight `g` with `n` legs and no edges.
pub fn smooth_graph(g: u32, n: u32) -> WeightedGraph {
    WeightedGraph::from_parts(&[g], &[n], &[]).expect("one vertex")
}

/// Graphs that contract onto `g` by contracting a single (new) edge.
fn one_edge_splittings(g: &WeightedGraph, out: &mut impl FnMut(WeightedGraph)) {
    let n = g.vertex_count();
    let weights: Vec<u32> = g.vertices().iter().map(|v| v.weight).collect();
    let legs: Vec<u32> = g.vertices().iter().map(|v| v.legs).collect();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| e.ends).collect();

    for v in 0..n {
        if weights[v] > 0 {
            let mut w = weights.clone();
            w[v] -= 1;
            let mut es = edges.clone();
            es.push((v, v));
            out(WeightedGraph::from_parts(&w, &legs, &es).unwrap());
        }

        let mut kept = Vec::new();
        let mut loops = 0u32;
        let mut neighbours: BTreeMap<usize, u32> = BTreeMap::new();
        for &(a, b) in &edges {
            match (a == v, b == v) {
                (true, true) => loops += 1,
                (true, false) => *neighbours.entry(b).or_default() += 1,
                (false, true) => *neighbours.entry(a).or_default() += 1,
                (false, false) => kept.push((a, b)),
            }
        }
        let neighbours: Vec<(usize, u32)> = neighbours.into_iter().collect();
        // How many edges to each neighbour stay at `v`; the rest move to the new vertex.
        let mut stay = vec![0u32; neighbours.len()];
        loop {
            for h1 in 0..=weights[v] {
                for l1 in 0..=legs[v] {
                    for at_v in 0..=loops {
                        for at_new in 0..=loops - at_v {
                            let mut w = weights.clone();
                            w[v] = h1;
                            w.push(weights[v] - h1);
                            let mut ls = legs.clone();
                            ls[v] = l1;
                            ls.push(legs[v] - l1);
                            let mut es = kept.clone();
                            for (&(u, m), &s) in neighbours.iter().zip(&stay) {
                                es.extend(std::iter::repeat((u, v)).take(s as usize));
                                es.extend(std::iter::repeat((u, n)).take((m - s) as usize));
                            }
                            es.extend(std::iter::repeat((v, v)).take(at_v as usize));
                            es.extend(std::iter::repeat((n, n)).take(at_new as usize));
                            es.extend(std::iter::repeat((v, n)).take((loops - at_v - at_new) as usize + 1));
                            let split = WeightedGraph::from_parts(&w, &ls, &es).unwrap();
                            if split.is_stable() {
                                out(split);
                            }
                        }
                    }
                }
            }
            let Some(i) = (0..stay.len()).find(|&i| stay[i] < neighbours[i].1) else {
                break;
            };
            stay[i] += 1;
            stay[..i].iter_mut().for_each(|s| *s = 0);
        }
    }
}

/// All stable graphs of genus `g` with `n` legs, one per isomorphism class,
/// sorted by canonical form.
pub fn enumerate_stable_graphs(g: u32, n: u32) -> Result<Vec<WeightedGraph>> {
    check_type(g, n)?;
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut frontier = vec![smooth_graph(g, n).canonical_form()];
    seen.insert(frontier[0].clone());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            one_edge_splittings(&c.to_graph(), &mut |h| {
                let k = h.canonical_form();
                if !seen.contains(&k) {
                    seen.insert(k.clone());
                    next.push(k);
                }
            });
        }
        frontier = next;
    }
    Ok(seen.into_iter().map(|c| c.to_graph()).collect())
}

fn type_of(g: &WeightedGraph) -> (u32, u32) {
    (g.genus(), g.total_legs())
}

/// Canonical forms of every contraction `g / S`.
fn contractions(g: &WeightedGraph) -> HashSet<CanonicalForm> {
    g.all_edges()
        .subsets()
        .map(|s| g.contract_edges(s).unwrap().canonical_form())
        .collect()
}

/// True when `g2 ≅ g1 / S` for some edge set `S` of `g1`.
pub fn contraction_geq(g2: &WeightedGraph, g1: &WeightedGraph) -> Result<bool> {
    let (a, b) = (type_of(g2), type_of(g1));
    if a != b {
        return Err(Error::TypeMismatch(a.0, a.1, b.0, b.1));
    }
    if g2.edge_count() > g1.edge_count() {
        return Ok(false);
    }
    let k = g1.edge_count() - g2.edge_count();
    let target = g2.canonical_form();
    Ok(g1
        .all_edges()
        .subsets()
        .filter(|s: &EdgeSet| s.len() == k)
        .any(|s| g1.contract_edges(s).unwrap().canonical_form() == target))
}

/// `Σ_v (3h(v) - 3 + val(v)) = 3g - 3 + n - |E|`.
pub fn stratum_dimension(g: &WeightedGraph) -> Result<u32> {
    if let Some(v) = g.first_unstable_vertex() {
        return Err(Error::Unstable(g.vertices()[v].id.clone()));
    }
    let total: u32 = (0..g.vertex_count())
        .map(|v| 3 * g.vertices()[v].weight + g.valence(v) - 3)
        .sum();
    Ok(total)
}

/// Short isomorphism-invariant description, e.g. `h=(1,0) legs=(0,1) E=2`.
pub fn describe(g: &WeightedGraph) -> String {
    let w: Vec<String> = g.vertices().iter().map(|v| v.weight.to_string()).collect();
    let l: Vec<String> = g.vertices().iter().map(|v| v.legs.to_string()).collect();
    let e: Vec<String> = g
        .edges()
        .iter()
        .map(|e| format!("{}{}", e.ends.0, e.ends.1))
        .collect();
    format!("h=({}) legs=({}) E=[{}]", w.join(","), l.join(","), e.join(" "))
}

/// The contraction poset `S_{g,n}`: `a <= b` when `b` is a contraction of `a`.
#[derive(Debug, Clone)]
pub struct StableGraphPoset {
    genus: u32,
    legs: u32,
    strat: GradedStratification<WeightedGraph>,
}

impl StableGraphPoset {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn legs(&self) -> u32 {
        self.legs
    }

    pub fn graphs(&self) -> impl Iterator<Item = &WeightedGraph> {
        self.strat.strata().iter().map(|s| &s.label)
    }

    pub fn len(&self) -> usize {
        self.strat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strat.is_empty()
    }

    pub fn stratification(&self) -> &GradedStratification<WeightedGraph> {
        &self.strat
    }

    /// The reversed order, in which the smooth graph is the unique minimum.
    pub fn dual(&self) -> Poset<Stratum<WeightedGraph>> {
        self.strat.poset().dual()
    }
}

pub fn stable_graph_poset(g: u32, n: u32) -> Result<StableGraphPoset> {
    let graphs = enumerate_stable_graphs(g, n)?;
    let forms: Vec<CanonicalForm> = graphs.iter().map(WeightedGraph::canonical_form).collect();
    let position: BTreeMap<&CanonicalForm, usize> = forms.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut pairs = Vec::new();
    for (i, h) in graphs.iter().enumerate() {
        for c in contractions(h) {
            pairs.push((i, position[&c]));
        }
    }
    let strata = graphs
        .into_iter()
        .map(|h| {
            Ok(Stratum {
                name: describe(&h),
                dim: stratum_dimension(&h)?,
                pieces: 1,
                label: h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StableGraphPoset {
        genus: g,
        legs: n,
        strat: GradedStratification::new(Poset::from_relation(strata, pairs)),
    })
}
