//! Named graph families and exhaustive enumeration of small connected multigraphs.

use std::collections::BTreeSet;

use crate::graph::{CanonicalForm, WeightedGraph};

/// `n` vertices in a ring; `n = 1` is a single loop, `n = 2` a 2-cycle.
pub fn cycle(n: usize) -> WeightedGraph {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    WeightedGraph::unweighted(n, &edges).expect("small family")
}

/// Two vertices joined by `k` parallel edges (`k = 3` is the theta graph).
pub fn banana(k: usize) -> WeightedGraph {
    WeightedGraph::unweighted(2, &vec![(0, 1); k]).expect("small family")
}

pub fn theta() -> WeightedGraph {
    banana(3)
}

pub fn path(n: usize) -> WeightedGraph {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    WeightedGraph::unweighted(n, &edges).expect("small family")
}

pub fn complete(n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    WeightedGraph::unweighted(n, &edges).expect("small family")
}

/// Every connected multigraph with at most `max_vertices` vertices and
/// `max_edges` edges, one per isomorphism class, weights and legs zero.
/// Sorted by vertex count, edge count, then canonical form.
pub fn connected_multigraphs(max_vertices: usize, max_edges: usize, loops: bool) -> Vec<WeightedGraph> {
    let mut all: BTreeSet<(usize, usize, CanonicalForm)> = BTreeSet::new();
    let single = WeightedGraph::unweighted(1, &[]).unwrap();
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    if max_vertices >= 1 {
        level.insert(single.canonical_form());
    }
    for m in 0..=max_edges {
        for c in &level {
            all.insert((c.as_slice()[0] as usize, m, c.clone()));
        }
        if m == max_edges {
            break;
        }
        // Every connected graph with m + 1 edges is obtained from one with m
        // edges by adding an edge, a loop, or a pendant edge to a new vertex.
        let mut next = BTreeSet::new();
        for c in &level {
            let g = c.to_graph();
            let n = g.vertex_count();
            let base: Vec<(usize, usize)> = g.edges().iter().map(|e| e.ends).collect();
            let mut push = |n: usize, extra: (usize, usize)| {
                let mut edges = base.clone();
                edges.push(extra);
                let h = WeightedGraph::unweighted(n, &edges).unwrap();
                next.insert(h.canonical_form());
            };
            for a in 0..n {
                for b in a..n {
                    if a == b && !loops {
                        continue;
                    }
                    push(n, (a, b));
                }
                if n < max_vertices {
                    push(n + 1, (a, n));
                }
            }
        }
        level = next;
    }
    all.into_iter().map(|(_, _, c)| c.to_graph()).collect()
}

/// Every multigraph (connected or not) with at most `max_vertices` vertices
/// and `max_edges` edges, one per isomorphism class: each is a multiset of
/// connected components. Sorted by vertex count, edge count, canonical form.
pub fn multigraphs(max_vertices: usize, max_edges: usize, loops: bool) -> Vec<WeightedGraph> {
    let parts = connected_multigraphs(max_vertices, max_edges, loops);
    let mut all: BTreeSet<(usize, usize, CanonicalForm)> = BTreeSet::new();
    // Components are chosen in non-decreasing index order to visit each multiset once.
    let mut stack: Vec<(usize, WeightedGraph)> = (0..parts.len()).map(|i| (i, parts[i].clone())).collect();
    while let Some((last, g)) = stack.pop() {
        all.insert((g.vertex_count(), g.edge_count(), g.canonical_form()));
        for (i, p) in parts.iter().enumerate().skip(last) {
            if g.vertex_count() + p.vertex_count() <= max_vertices && g.edge_count() + p.edge_count() <= max_edges {
                stack.push((i, disjoint_union(&g, p)));
            }
        }
    }
    all.into_iter().map(|(_, _, c)| c.to_graph()).collect()
}

pub fn disjoint_union(a: &WeightedGraph, b: &WeightedGraph) -> WeightedGraph {
    let n = a.vertex_count();
    let vs = a.vertices().iter().chain(b.vertices());
    let weights: Vec<u32> = vs.clone().map(|v| v.weight).collect();
    let legs: Vec<u32> = vs.map(|v| v.legs).collect();
    let edges: Vec<(usize, usize)> = a
        .edges()
        .iter()
        .map(|e| e.ends)
        .chain(b.edges().iter().map(|e| (e.ends.0 + n, e.ends.1 + n)))
        .collect();
    WeightedGraph::from_parts(&weights, &legs, &edges).expect("sizes already bounded")
}

/// All assignments of weights in `0..=max_weight` to the vertices of `g`.
pub fn weightings(g: &WeightedGraph, max_weight: u32) -> Vec<WeightedGraph> {
    let n = g.vertex_count();
    let base = max_weight as usize + 1;
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| e.ends).collect();
    let legs: Vec<u32> = g.vertices().iter().map(|v| v.legs).collect();
    (0..base.pow(n as u32))
        .map(|mut code| {
            let weights: Vec<u32> = (0..n)
                .map(|_| {
                    let w = (code % base) as u32;
                    code /= base;
                    w
                })
                .collect();
            WeightedGraph::from_parts(&weights, &legs, &edges).unwrap()
        })
        .collect()
}
