//! Vertex-weighted multigraphs with loops and legs: the dual graphs of nodal
//! curves.
//!
//! Vertices carry a genus weight `h(v)` and an unlabeled leg count. Edges
//! carry string ids that survive deletion, so subsets of edges of a fixed
//! ambient graph are stored as [`EdgeSet`] bitmasks over its edge indices.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Upper bound on edges and vertices; edge subsets and reachability sets are `u64` masks.
pub const MAX_EDGES: usize = 64;
pub const MAX_VERTICES: usize = 64;

/// A set of edges of a fixed ambient graph, by edge index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        EdgeSet(1 << e)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSet(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Self {
        EdgeSet(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// All subsets, in increasing order of their bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(EdgeSet(cur))
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(EdgeSet::EMPTY, EdgeSet::with)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
    pub legs: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `v0, v1, ..` and edges `e0, e1, ..` given by index pairs.
    pub fn from_parts(weights: &[u32], legs: &[u32], edges: &[(usize, usize)]) -> Result<Self> {
        assert_eq!(weights.len(), legs.len(), "weights and legs must align");
        let mut g = WeightedGraph::new();
        for (i, (&w, &l)) in weights.iter().zip(legs).enumerate() {
            g.add_vertex(format!("v{i}"), w, l)?;
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            g.add_edge_by_index(format!("e{i}"), a, b)?;
        }
        Ok(g)
    }

    /// Unweighted, legless graph on `n` vertices.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_parts(&vec![0; n], &vec![0; n], edges)
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, weight: u32, legs: u32) -> Result<usize> {
        let id = id.into();
        if self.vertices.iter().any(|v| v.id == id) {
            return Err(Error::DuplicateVertex(id));
        }
        if self.vertices.len() >= MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertices",
                found: self.vertices.len() + 1,
                limit: MAX_VERTICES,
            });
        }
        self.vertices.push(Vertex { id, weight, legs });
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, id: impl Into<String>, a: &str, b: &str) -> Result<usize> {
        let a = self
            .vertex_index(a)
            .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let b = self
            .vertex_index(b)
            .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        self.add_edge_by_index(id, a, b)
    }

    pub fn add_edge_by_index(&mut self, id: impl Into<String>, a: usize, b: usize) -> Result<usize> {
        let id = id.into();
        for v in [a, b] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        if self.edges.iter().any(|e| e.id == id) {
            return Err(Error::DuplicateEdge(id));
        }
        if self.edges.len() >= MAX_EDGES {
            return Err(Error::TooLarge {
                what: "edges",
                found: self.edges.len() + 1,
                limit: MAX_EDGES,
            });
        }
        self.edges.push(Edge { id, ends: (a, b) });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn loops(&self) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_loop())
            .map(|(i, _)| i)
            .collect()
    }

    /// Resolves edge ids into an [`EdgeSet`].
    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet> {
        ids.iter()
            .map(|id| {
                self.edge_index(id.as_ref())
                    .ok_or_else(|| Error::UnknownEdge(id.as_ref().to_string()))
            })
            .collect()
    }

    pub fn edge_ids(&self, set: EdgeSet) -> Vec<&str> {
        set.iter().map(|e| self.edges[e].id.as_str()).collect()
    }

    pub fn check_edge_set(&self, set: EdgeSet) -> Result<()> {
        match set.difference(self.all_edges()).iter().next() {
            Some(e) => Err(Error::UnknownEdge(format!("#{e}"))),
            None => Ok(()),
        }
    }

    pub fn total_weight(&self) -> u32 {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    pub fn total_legs(&self) -> u32 {
        self.vertices.iter().map(|v| v.legs).sum()
    }

    /// Edge-ends at `v` (a loop counts twice) plus legs.
    pub fn valence(&self, v: usize) -> u32 {
        self.edge_degree(v) + self.vertices[v].legs
    }

    /// Edge-ends at `v`, loops counting twice, legs ignored.
    pub fn edge_degree(&self, v: usize) -> u32 {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as u32 + (e.ends.1 == v) as u32)
            .sum()
    }

    /// Connected-component label of every vertex in the spanning subgraph
    /// with edge set `support`, plus the number of components. Labels are
    /// the smallest vertex index in each component.
    pub fn components_of(&self, support: EdgeSet) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut count = self.vertices.len();
        for e in support.iter() {
            let (a, b) = self.edges[e].ends;
            if uf.union(a, b) {
                count -= 1;
            }
        }
        let labels = (0..self.vertices.len()).map(|v| uf.find(v)).collect();
        (count, labels)
    }

    pub fn component_count_of(&self, support: EdgeSet) -> usize {
        self.components_of(support).0
    }

    pub fn component_count(&self) -> usize {
        self.component_count_of(self.all_edges())
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_connected_on(&self, support: EdgeSet) -> bool {
        self.component_count_of(support) == 1
    }

    /// `b1` of the spanning subgraph with edges `support`.
    pub fn first_betti_of(&self, support: EdgeSet) -> u32 {
        let c = self.component_count_of(support);
        (support.len() + c - self.vertices.len()) as u32
    }

    pub fn first_betti(&self) -> u32 {
        self.first_betti_of(self.all_edges())
    }

    /// Genus of the spanning subgraph with edges `support`.
    pub fn genus_of(&self, support: EdgeSet) -> u32 {
        self.first_betti_of(support) + self.total_weight()
    }

    pub fn genus(&self) -> u32 {
        self.genus_of(self.all_edges())
    }

    pub fn is_stable(&self) -> bool {
        self.first_unstable_vertex().is_none()
    }

    pub fn first_unstable_vertex(&self) -> Option<usize> {
        (0..self.vertices.len()).find(|&v| 2 * self.vertices[v].weight + self.valence(v) <= 2)
    }

    /// Non-loop edges whose removal disconnects their component (Tarjan low-link).
    pub fn bridges(&self) -> EdgeSet {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.ends.0].push((e.ends.1, i));
                adj[e.ends.1].push((e.ends.0, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut out = EdgeSet::EMPTY;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter, next adjacency position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (v, via) = (top.0, top.1);
                if top.2 < adj[v].len() {
                    let (w, e) = adj[v][top.2];
                    top.2 += 1;
                    if e == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out = out.with(via);
                        }
                    }
                }
            }
        }
        out
    }

    /// `G - S`: the same vertices, without the edges in `removed`. Edge ids are kept.
    pub fn delete_edges(&self, removed: EdgeSet) -> Result<WeightedGraph> {
        self.check_edge_set(removed)?;
        Ok(WeightedGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(*i))
                .map(|(_, e)| e.clone())
                .collect(),
        })
    }

    /// `G / S`. Merged vertices keep the id of their lowest-index member;
    /// weights and legs add, and every edge of `S` closing a cycle adds 1 to
    /// the weight, so genus is preserved.
    pub fn contract_edges(&self, contracted: EdgeSet) -> Result<WeightedGraph> {
        self.check_edge_set(contracted)?;
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        let mut cycles = Vec::new();
        for e in contracted.iter() {
            let (a, b) = self.edges[e].ends;
            if !uf.union(a, b) {
                cycles.push(a);
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut vertices: Vec<Vertex> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if r == v {
                index[v] = vertices.len();
                vertices.push(Vertex {
                    id: self.vertices[v].id.clone(),
                    weight: 0,
                    legs: 0,
                });
            }
        }
        for v in 0..n {
            let r = index[uf.find(v)];
            vertices[r].weight += self.vertices[v].weight;
            vertices[r].legs += self.vertices[v].legs;
        }
        for a in cycles {
            vertices[index[uf.find(a)]].weight += 1;
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !contracted.contains(*i))
            .map(|(_, e)| Edge {
                id: e.id.clone(),
                ends: (index[uf.find(e.ends.0)], index[uf.find(e.ends.1)]),
            })
            .collect();
        Ok(WeightedGraph { vertices, edges })
    }

    /// Symmetric edge-multiplicity matrix; loops on the diagonal.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u32; n]; n];
        for e in &self.edges {
            let (a, b) = e.ends;
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &WeightedGraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// The poset of edge sets `S` with `G - S` connected, ordered by reverse
    /// inclusion. Elements are sorted by `|S|`, then by bit pattern.
    pub fn connected_spanning_subgraph_poset(&self) -> Result<Poset<EdgeSet>> {
        let elements = self.connected_complements()?;
        Ok(Poset::from_fn(elements, |a, b| b.is_subset(*a)))
    }

    /// All `S` with `G - S` connected, sorted by `|S|` then bits.
    pub fn connected_complements(&self) -> Result<Vec<EdgeSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let all = self.all_edges();
        let mut out = Vec::new();
        // Removable sets are closed under taking subsets; extend in index order.
        let mut stack = vec![(EdgeSet::EMPTY, 0usize)];
        while let Some((s, next)) = stack.pop() {
            out.push(s);
            for e in next..self.edges.len() {
                let t = s.with(e);
                if self.is_connected_on(all.difference(t)) {
                    stack.push((t, e + 1));
                }
            }
        }
        out.sort_by_key(|s| (s.len(), s.bits()));
        Ok(out)
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                let mut s = v.id.clone();
                if v.weight > 0 {
                    s.push_str(&format!("[h={}]", v.weight));
                }
                if v.legs > 0 {
                    s.push_str(&format!("[legs={}]", v.legs));
                }
                s
            })
            .collect();
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "{}:{}-{}",
                    e.id, self.vertices[e.ends.0].id, self.vertices[e.ends.1].id
                )
            })
            .collect();
        write!(f, "V={{{}}} E={{{}}}", vs.join(", "), es.join(", "))
    }
}

/// Isomorphism-invariant encoding of a weighted graph with legs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Rebuilds a representative graph (vertices `v0..`, edges `e0..`).
    pub fn to_graph(&self) -> WeightedGraph {
        let n = self.0[0] as usize;
        let weights: Vec<u32> = (0..n).map(|i| self.0[1 + 2 * i]).collect();
        let legs: Vec<u32> = (0..n).map(|i| self.0[2 + 2 * i]).collect();
        let mut edges = Vec::new();
        let mut k = 1 + 2 * n;
        for a in 0..n {
            for b in a..n {
                for _ in 0..self.0[k] {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        WeightedGraph::from_parts(&weights, &legs, &edges).expect("canonical form is well formed")
    }
}

mod canonical {
    //! Individualization-refinement over an ordered vertex partition.
    //! Leaves of the search tree are discrete partitions; the canonical form
    //! is the lexicographically least encoding over all leaves.

    use super::{CanonicalForm, WeightedGraph};

    struct Ctx {
        n: usize,
        mult: Vec<Vec<u32>>,
        label: Vec<(u32, u32)>,
        best: Option<Vec<u32>>,
    }

    pub(super) fn canonical_form(g: &WeightedGraph) -> CanonicalForm {
        let n = g.vertex_count();
        let mut ctx = Ctx {
            n,
            mult: g.multiplicity_matrix(),
            label: g.vertices().iter().map(|v| (v.weight, v.legs)).collect(),
            best: None,
        };
        let init: Vec<(u32, u32, u32, u32)> = (0..n)
            .map(|v| (ctx.label[v].0, ctx.label[v].1, ctx.mult[v][v], g.edge_degree(v)))
            .collect();
        let colors = rank(&init);
        let colors = refine(&ctx, colors);
        search(&mut ctx, colors);
        CanonicalForm(ctx.best.unwrap_or_else(|| vec![0]))
    }

    fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
        let mut sorted: Vec<K> = keys.to_vec();
        sorted.sort();
        sorted.dedup();
        keys.iter()
            .map(|k| sorted.binary_search(k).unwrap())
            .collect()
    }

    fn cell_count(colors: &[usize]) -> usize {
        colors.iter().max().map_or(0, |m| m + 1)
    }

    fn refine(ctx: &Ctx, mut colors: Vec<usize>) -> Vec<usize> {
        loop {
            let before = cell_count(&colors);
            let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..ctx.n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> = (0..ctx.n)
                        .filter(|&u| u != v && ctx.mult[v][u] > 0)
                        .map(|u| (colors[u], ctx.mult[v][u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            colors = rank(&sigs);
            if cell_count(&colors) == before {
                return colors;
            }
        }
    }

    fn encode(ctx: &Ctx, colors: &[usize]) -> Vec<u32> {
        let mut order = vec![0; ctx.n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let mut out = Vec::with_capacity(1 + 2 * ctx.n + ctx.n * (ctx.n + 1) / 2);
        out.push(ctx.n as u32);
        for &v in &order {
            out.push(ctx.label[v].0);
            out.push(ctx.label[v].1);
        }
        for i in 0..ctx.n {
            for j in i..ctx.n {
                out.push(ctx.mult[order[i]][order[j]]);
            }
        }
        out
    }

    fn search(ctx: &mut Ctx, colors: Vec<usize>) {
        let cells = cell_count(&colors);
        if cells == ctx.n {
            let code = encode(ctx, &colors);
            if ctx.best.as_ref().map_or(true, |b| code < *b) {
                ctx.best = Some(code);
            }
            return;
        }
        // first smallest non-singleton cell
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .unwrap();
        let members: Vec<usize> = (0..ctx.n).filter(|&v| colors[v] == target).collect();
        for v in members {
            let split: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if c > target || (c == target && u != v) { c + 1 } else { c })
                .collect();
            let refined = refine(ctx, split);
            search(ctx, refined);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> WeightedGraph {
        WeightedGraph::unweighted(2, &[(0, 1), (0, 1)]).unwrap()
    }

    fn theta() -> WeightedGraph {
        WeightedGraph::unweighted(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn betti_examples() {
        assert_eq!(WeightedGraph::unweighted(1, &[]).unwrap().first_betti(), 0);
        assert_eq!(two_cycle().first_betti(), 1);
        assert_eq!(theta().first_betti(), 2);
    }

    #[test]
    fn genus_examples() {
        let g = WeightedGraph::from_parts(&[1], &[0], &[(0, 0)]).unwrap();
        assert_eq!(g.genus(), 2);
        let tree = WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.genus(), 0);
        let t = WeightedGraph::from_parts(&[1, 0], &[0, 0], &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(t.genus(), 3);
    }

    #[test]
    fn stability_examples() {
        assert!(WeightedGraph::from_parts(&[0], &[1], &[(0, 0)]).unwrap().is_stable());
        assert!(!WeightedGraph::from_parts(&[1], &[0], &[]).unwrap().is_stable());
        assert!(WeightedGraph::from_parts(&[0], &[3], &[]).unwrap().is_stable());
        // rational bridge vertex with only two edge-ends
        let g = WeightedGraph::from_parts(&[1, 0, 1], &[0; 3], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.first_unstable_vertex(), Some(1));
    }

    #[test]
    fn bridge_examples() {
        assert!(two_cycle().bridges().is_empty());
        let single = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert_eq!(single.bridges(), EdgeSet::singleton(0));
        let pendant = WeightedGraph::unweighted(3, &[(0, 1), (0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(pendant.bridges(), EdgeSet::singleton(3));
        let looped = WeightedGraph::unweighted(1, &[(0, 0)]).unwrap();
        assert!(looped.bridges().is_empty());
    }

    #[test]
    fn deletion_keeps_ids() {
        let g = theta();
        let h = g.delete_edges(EdgeSet::singleton(1)).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edges()[1].id, "e2");
        assert!(h.is_isomorphic(&two_cycle()));
        assert_eq!(g.delete_edges(EdgeSet::EMPTY).unwrap(), g);
        let path = two_cycle().delete_edges(EdgeSet::singleton(0)).unwrap();
        assert_eq!(path.first_betti(), 0);
        assert!(path.is_connected());
        assert!(matches!(
            g.delete_edges(EdgeSet::singleton(7)),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn contraction_examples() {
        let c = two_cycle().contract_edges(EdgeSet::singleton(0)).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.vertices()[0].weight, 0);
        assert_eq!(c.edge_count(), 1);
        assert!(c.edges()[0].is_loop());

        let loop1 = WeightedGraph::unweighted(1, &[(0, 0)]).unwrap();
        let c = loop1.contract_edges(EdgeSet::singleton(0)).unwrap();
        assert_eq!(c.vertices()[0].weight, 1);
        assert_eq!(c.edge_count(), 0);

        let g = theta();
        assert_eq!(g.contract_edges(EdgeSet::EMPTY).unwrap(), g);
    }

    #[test]
    fn contraction_merges_legs() {
        let g = WeightedGraph::from_parts(&[1, 2], &[1, 2], &[(0, 1)]).unwrap();
        let c = g.contract_edges(EdgeSet::singleton(0)).unwrap();
        assert_eq!(c.vertices()[0], Vertex { id: "v0".into(), weight: 3, legs: 3 });
    }

    #[test]
    fn isomorphism_examples() {
        let a = WeightedGraph::from_parts(&[0, 1], &[0, 0], &[(0, 1), (0, 1)]).unwrap();
        let b = WeightedGraph::from_parts(&[1, 0], &[0, 0], &[(0, 1), (0, 1)]).unwrap();
        let c = WeightedGraph::from_parts(&[0, 0], &[0, 0], &[(0, 1), (0, 1)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!c.is_isomorphic(&a));
        let p = WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        let q = WeightedGraph::unweighted(4, &[(3, 2), (2, 1), (1, 0), (0, 0)]).unwrap();
        assert!(p.is_isomorphic(&q));
        assert_eq!(p.canonical_form().to_graph().canonical_form(), p.canonical_form());
    }

    #[test]
    fn spanning_subgraph_poset_examples() {
        let p = two_cycle().connected_spanning_subgraph_poset().unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.maximal(), vec![0]);
        assert_eq!(p.minimal(), vec![1, 2]);

        let tree = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(tree.connected_spanning_subgraph_poset().unwrap().len(), 1);

        let p = theta().connected_spanning_subgraph_poset().unwrap();
        assert_eq!(p.len(), 7);
        assert!(p.is_partial_order());

        let disc = WeightedGraph::unweighted(2, &[]).unwrap();
        assert_eq!(
            disc.connected_spanning_subgraph_poset().unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn edge_set_subsets() {
        let s: EdgeSet = [1, 3, 4].into_iter().collect();
        let subs: Vec<EdgeSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(EdgeSet::EMPTY.subsets().count(), 1);
    }
}
