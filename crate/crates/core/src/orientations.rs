//! Orientations and 1-orientations of spanning subgraphs, their multidegrees,
//! the classes of totally cyclic orientations and of rooted 1-orientations,
//! and the posets these classes form over all spanning subgraphs.
//!
//! Every orientation lives on a spanning subgraph `G - S` of a fixed ambient
//! graph `G` and is stored as a pair of edge masks: the `support` (edges of
//! `G - S`) and the non-loop edges pointing along their declared ends. Loops
//! have a single direction. Restriction to a smaller spanning subgraph is a
//! mask intersection, so edge identity is automatic.
//!
//! Two (1-)orientations are equivalent when their multidegrees
//! `d_v = h(v) - 1 + t_v` agree, `t_v` counting edge heads at `v`; a
//! bioriented edge puts a head at both ends.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::graph::{EdgeSet, WeightedGraph, MAX_VERTICES};
use crate::poset::Poset;

/// Largest support for which orientations are enumerated.
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    support: EdgeSet,
    forward: EdgeSet,
}

impl Orientation {
    /// `forward` lists the non-loop edges directed from `ends.0` to `ends.1`;
    /// other edges of `support` point the other way.
    pub fn new(g: &WeightedGraph, support: EdgeSet, forward: EdgeSet) -> Result<Self> {
        g.check_edge_set(support)?;
        if let Some(e) = forward.difference(support).iter().next() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        Ok(Orientation {
            support,
            forward: forward.difference(g.loops()),
        })
    }

    /// Every edge of `g` directed along its declared ends.
    pub fn along_declared(g: &WeightedGraph) -> Self {
        Orientation {
            support: g.all_edges(),
            forward: g.all_edges().difference(g.loops()),
        }
    }

    pub fn support(&self) -> EdgeSet {
        self.support
    }

    pub fn forward(&self) -> EdgeSet {
        self.forward
    }

    /// `(source, target)` of edge `e`.
    pub fn ends(&self, g: &WeightedGraph, e: usize) -> (usize, usize) {
        let (a, b) = g.edges()[e].ends;
        if a == b || self.forward.contains(e) {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn restrict(&self, support: EdgeSet) -> Orientation {
        Orientation {
            support: self.support.intersection(support),
            forward: self.forward.intersection(support),
        }
    }

    /// Number of edge heads at each vertex.
    pub fn targets(&self, g: &WeightedGraph) -> Vec<i64> {
        let mut t = vec![0; g.vertex_count()];
        for e in self.support.iter() {
            t[self.ends(g, e).1] += 1;
        }
        t
    }

    fn out_masks(&self, g: &WeightedGraph) -> [u64; MAX_VERTICES] {
        let mut out = [0u64; MAX_VERTICES];
        for e in self.support.iter() {
            let (s, t) = self.ends(g, e);
            out[s] |= 1 << t;
        }
        out
    }

    /// Edge sets of all directed simple cycles (loops included).
    pub fn directed_cycles(&self, g: &WeightedGraph) -> Vec<EdgeSet> {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for e in self.support.iter() {
            let (s, t) = self.ends(g, e);
            adj[s].push((t, e));
        }
        let mut cycles = Vec::new();
        for start in 0..n {
            let mut stack = vec![(start, 1u64 << start, EdgeSet::EMPTY, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (u, seen, path, pos) = (top.0, top.1, top.2, top.3);
                if pos == adj[u].len() {
                    stack.pop();
                    continue;
                }
                top.3 += 1;
                let (w, e) = adj[u][pos];
                if w == start {
                    cycles.push(path.with(e));
                } else if w > start && seen >> w & 1 == 0 {
                    stack.push((w, seen | 1 << w, path.with(e), 0));
                }
            }
        }
        cycles
    }
}

fn reach(out: &[u64], start: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= out[v];
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen
}

fn vertex_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An orientation of `support - {bioriented}` together with a bioriented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneOrientation {
    bioriented: usize,
    rest: Orientation,
}

impl OneOrientation {
    pub fn new(g: &WeightedGraph, support: EdgeSet, bioriented: usize, forward: EdgeSet) -> Result<Self> {
        if !support.contains(bioriented) || bioriented >= g.edge_count() {
            return Err(Error::UnknownEdge(format!("#{bioriented}")));
        }
        let rest = Orientation::new(g, support.without(bioriented), forward.without(bioriented))?;
        Ok(OneOrientation { bioriented, rest })
    }

    pub fn bioriented(&self) -> usize {
        self.bioriented
    }

    /// The orientation on the remaining edges.
    pub fn rest(&self) -> Orientation {
        self.rest
    }

    pub fn support(&self) -> EdgeSet {
        self.rest.support.with(self.bioriented)
    }

    /// `None` when the bioriented edge is not in `support`.
    pub fn restrict(&self, support: EdgeSet) -> Option<OneOrientation> {
        support.contains(self.bioriented).then(|| OneOrientation {
            bioriented: self.bioriented,
            rest: self.rest.restrict(support),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(values: Vec<i64>) -> Self {
        Multidegree(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `vertex id -> degree`.
    pub fn to_map(&self, g: &WeightedGraph) -> BTreeMap<String, i64> {
        g.vertices()
            .iter()
            .zip(&self.0)
            .map(|(v, &d)| (v.id.clone(), d))
            .collect()
    }

    pub fn labelled<'a>(&'a self, g: &'a WeightedGraph) -> impl fmt::Display + 'a {
        struct L<'a>(&'a Multidegree, &'a WeightedGraph);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self
                    .1
                    .vertices()
                    .iter()
                    .zip(&self.0 .0)
                    .map(|(v, d)| format!("{}: {d}", v.id))
                    .collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
        L(self, g)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `h(v) - 1 + t_v`.
pub fn multidegree(g: &WeightedGraph, o: &Orientation) -> Multidegree {
    let mut d = Vec::new();
    fill_degree(g, o, &mut d);
    Multidegree(d)
}

fn fill_degree(g: &WeightedGraph, o: &Orientation, d: &mut Vec<i64>) {
    d.clear();
    d.extend(g.vertices().iter().map(|v| v.weight as i64 - 1));
    for e in o.support.iter() {
        d[o.ends(g, e).1] += 1;
    }
}

fn fill_degree_one(g: &WeightedGraph, o: &OneOrientation, d: &mut Vec<i64>) {
    fill_degree(g, &o.rest, d);
    let (a, b) = g.edges()[o.bioriented].ends;
    d[a] += 1;
    d[b] += 1;
}

/// `h(v) - 1 + t_v` with one head at each end of the bioriented edge.
pub fn multidegree_one(g: &WeightedGraph, o: &OneOrientation) -> Multidegree {
    let mut d = Vec::new();
    fill_degree_one(g, o, &mut d);
    Multidegree(d)
}

/// Each connected component of the support graph is strongly connected.
/// The empty orientation of an edgeless graph is totally cyclic.
pub fn is_totally_cyclic(g: &WeightedGraph, o: &Orientation) -> bool {
    let out = o.out_masks(g);
    // Strongly connected components iff the head of every edge reaches its tail.
    o.support.iter().all(|e| {
        let (s, t) = o.ends(g, e);
        s == t || reach(&out, 1 << t) >> s & 1 == 1
    })
}

/// Every vertex is reachable by a directed path starting at an end of the
/// bioriented edge.
pub fn is_rooted(g: &WeightedGraph, o: &OneOrientation) -> bool {
    let out = o.rest.out_masks(g);
    let (a, b) = g.edges()[o.bioriented].ends;
    reach(&out, 1 << a | 1 << b) == vertex_mask(g.vertex_count())
}

fn check_enumerable(g: &WeightedGraph, support: EdgeSet) -> Result<()> {
    g.check_edge_set(support)?;
    let free = support.difference(g.loops()).len();
    if free > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "non-loop edges to orient",
            found: free,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn spread(bits: u64, positions: &[usize]) -> EdgeSet {
    positions
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// All `2^(non-loop edges)` orientations of the spanning subgraph with edges `support`.
pub fn orientations_on(g: &WeightedGraph, support: EdgeSet) -> Result<Vec<Orientation>> {
    check_enumerable(g, support)?;
    let free: Vec<usize> = support.difference(g.loops()).iter().collect();
    Ok((0..1u64 << free.len())
        .map(|bits| Orientation {
            support,
            forward: spread(bits, &free),
        })
        .collect())
}

pub fn enumerate_orientations(g: &WeightedGraph) -> Result<Vec<Orientation>> {
    orientations_on(g, g.all_edges())
}

/// All 1-orientations of the spanning subgraph with edges `support`.
pub fn one_orientations_on(g: &WeightedGraph, support: EdgeSet) -> Result<Vec<OneOrientation>> {
    check_enumerable(g, support)?;
    let mut out = Vec::new();
    for e in support.iter() {
        for rest in orientations_on(g, support.without(e))? {
            out.push(OneOrientation { bioriented: e, rest });
        }
    }
    Ok(out)
}

pub fn enumerate_one_orientations(g: &WeightedGraph) -> Result<Vec<OneOrientation>> {
    one_orientations_on(g, g.all_edges())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    TotallyCyclic,
    RootedOne,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::TotallyCyclic => "totally_cyclic",
            ClassKind::RootedOne => "rooted_one",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representative {
    Plain(Orientation),
    One(OneOrientation),
    /// The empty 1-orientation of a single vertex with no edges.
    Empty,
}

/// An equivalence class of totally cyclic orientations or rooted
/// 1-orientations on `G - removed`, named by its multidegree.
#[derive(Debug, Clone)]
pub struct OrientationClass {
    pub removed: EdgeSet,
    pub kind: ClassKind,
    pub degree: Multidegree,
    pub witness: Representative,
}

impl OrientationClass {
    fn key(&self) -> (usize, EdgeSet, ClassKind, &Multidegree) {
        (self.removed.len(), self.removed, self.kind, &self.degree)
    }

    pub fn support(&self, g: &WeightedGraph) -> EdgeSet {
        g.all_edges().difference(self.removed)
    }
}

impl PartialEq for OrientationClass {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for OrientationClass {}

impl PartialOrd for OrientationClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// By `|S|`, then `S`, then multidegree (lexicographic in vertex order).
impl Ord for OrientationClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Classes of totally cyclic orientations of `G - removed`.
pub fn totally_cyclic_classes_without(g: &WeightedGraph, removed: EdgeSet) -> Result<Vec<OrientationClass>> {
    let support = g.all_edges().difference(removed);
    let mut classes: BTreeMap<Multidegree, Orientation> = BTreeMap::new();
    for o in orientations_on(g, support)? {
        if is_totally_cyclic(g, &o) {
            classes.entry(multidegree(g, &o)).or_insert(o);
        }
    }
    Ok(classes
        .into_iter()
        .map(|(degree, o)| OrientationClass {
            removed,
            kind: ClassKind::TotallyCyclic,
            degree,
            witness: Representative::Plain(o),
        })
        .collect())
}

/// `Ō⁰(G)`.
pub fn totally_cyclic_classes(g: &WeightedGraph) -> Result<Vec<OrientationClass>> {
    totally_cyclic_classes_without(g, EdgeSet::EMPTY)
}

/// Classes of rooted 1-orientations of `G - removed`. The one-vertex edgeless
/// graph has a single class, the empty orientation, of degree `h`.
pub fn rooted_classes_without(g: &WeightedGraph, removed: EdgeSet) -> Result<Vec<OrientationClass>> {
    let support = g.all_edges().difference(removed);
    if support.is_empty() {
        return Ok(if g.vertex_count() == 1 {
            vec![empty_rooted_class(g)]
        } else {
            Vec::new()
        });
    }
    let mut classes: BTreeMap<Multidegree, OneOrientation> = BTreeMap::new();
    for o in one_orientations_on(g, support)? {
        if is_rooted(g, &o) {
            classes.entry(multidegree_one(g, &o)).or_insert(o);
        }
    }
    Ok(classes
        .into_iter()
        .map(|(degree, o)| OrientationClass {
            removed,
            kind: ClassKind::RootedOne,
            degree,
            witness: Representative::One(o),
        })
        .collect())
}

fn empty_rooted_class(g: &WeightedGraph) -> OrientationClass {
    OrientationClass {
        removed: g.all_edges(),
        kind: ClassKind::RootedOne,
        degree: Multidegree(vec![g.vertices()[0].weight as i64]),
        witness: Representative::Empty,
    }
}

/// `Ō¹(G)`; empty for disconnected `G`.
pub fn rooted_one_orientation_classes(g: &WeightedGraph) -> Result<Vec<OrientationClass>> {
    rooted_classes_without(g, EdgeSet::EMPTY)
}

/// Two orientations of `G` with equal multidegree, exactly one totally cyclic.
pub fn totally_cyclic_conflict(g: &WeightedGraph) -> Result<Option<(Orientation, Orientation)>> {
    let mut seen: HashMap<Multidegree, (bool, Orientation)> = HashMap::new();
    for o in enumerate_orientations(g)? {
        let tc = is_totally_cyclic(g, &o);
        match seen.get(&multidegree(g, &o)) {
            Some(&(prev, p)) if prev != tc => return Ok(Some((p, o))),
            Some(_) => {}
            None => {
                seen.insert(multidegree(g, &o), (tc, o));
            }
        }
    }
    Ok(None)
}

/// Two 1-orientations of `G` with equal multidegree, exactly one rooted.
pub fn rooted_conflict(g: &WeightedGraph) -> Result<Option<(OneOrientation, OneOrientation)>> {
    let mut seen: HashMap<Multidegree, (bool, OneOrientation)> = HashMap::new();
    for o in enumerate_one_orientations(g)? {
        let rooted = is_rooted(g, &o);
        let d = multidegree_one(g, &o);
        match seen.get(&d) {
            Some(&(prev, p)) if prev != rooted => return Ok(Some((p, o))),
            Some(_) => {}
            None => {
                seen.insert(d, (rooted, o));
            }
        }
    }
    Ok(None)
}

/// `OP⁰(G)` (all `S ⊆ E`) or `OP¹(G)` (`S` with `G - S` connected).
///
/// `c1 <= c2` when `S1 ⊇ S2` and some representative of `c2`, restricted to
/// `G - S1`, is a representative of `c1` (for 1-orientations the bioriented
/// edge must survive; the empty class of a one-vertex graph lies below all).
/// The relation is computed exhaustively over representatives; it is not
/// closed transitively.
pub fn orientation_class_poset(g: &WeightedGraph, kind: ClassKind) -> Result<Poset<OrientationClass>> {
    match kind {
        ClassKind::TotallyCyclic => totally_cyclic_poset(g),
        ClassKind::RootedOne => rooted_poset(g),
    }
}

/// Class position by removed set, then by degree vector.
struct ClassIndex(FxHashMap<EdgeSet, FxHashMap<Vec<i64>, usize>>);

impl ClassIndex {
    fn new(classes: &[OrientationClass]) -> Self {
        let mut map: FxHashMap<EdgeSet, FxHashMap<Vec<i64>, usize>> = FxHashMap::default();
        for (i, c) in classes.iter().enumerate() {
            map.entry(c.removed).or_default().insert(c.degree.0.clone(), i);
        }
        ClassIndex(map)
    }

    fn get(&self, removed: EdgeSet, degree: &[i64]) -> usize {
        *self
            .0
            .get(&removed)
            .and_then(|m| m.get(degree))
            .expect("restriction of a representative lands in a listed class")
    }
}

fn totally_cyclic_poset(g: &WeightedGraph) -> Result<Poset<OrientationClass>> {
    let all = g.all_edges();
    check_enumerable(g, all)?;
    let mut classes = Vec::new();
    let mut cyclic: Vec<Orientation> = Vec::new();
    for removed in all.subsets() {
        let mut found: BTreeMap<Multidegree, Orientation> = BTreeMap::new();
        for o in orientations_on(g, all.difference(removed))? {
            if is_totally_cyclic(g, &o) {
                cyclic.push(o);
                found.entry(multidegree(g, &o)).or_insert(o);
            }
        }
        classes.extend(found.into_iter().map(|(degree, o)| OrientationClass {
            removed,
            kind: ClassKind::TotallyCyclic,
            degree,
            witness: Representative::Plain(o),
        }));
    }
    classes.sort();
    let index = ClassIndex::new(&classes);
    let mut poset = Poset::from_relation(classes, []);

    let mut degree = Vec::new();
    for o in &cyclic {
        fill_degree(g, o, &mut degree);
        let upper = index.get(all.difference(o.support), &degree);
        // Totally cyclic restrictions are exactly the unions of directed cycles.
        let mut unions: HashSet<EdgeSet> = HashSet::from([EdgeSet::EMPTY]);
        for c in o.directed_cycles(g) {
            let grown: Vec<EdgeSet> = unions.iter().map(|u| u.union(c)).collect();
            unions.extend(grown);
        }
        for kept in unions {
            fill_degree(g, &o.restrict(kept), &mut degree);
            let lower = index.get(all.difference(kept), &degree);
            poset.relate(lower, upper);
        }
    }
    Ok(poset)
}

fn rooted_poset(g: &WeightedGraph) -> Result<Poset<OrientationClass>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let all = g.all_edges();
    check_enumerable(g, all)?;
    // Smallest supports first, so every restriction is seen before its extensions.
    let mut complements = g.connected_complements()?;
    complements.reverse();

    let mut rooted: Vec<(OneOrientation, Vec<i64>)> = Vec::new();
    let mut classes = Vec::new();
    for &removed in &complements {
        let support = all.difference(removed);
        if support.is_empty() {
            classes.push(empty_rooted_class(g));
            continue;
        }
        let mut found: BTreeMap<Multidegree, OneOrientation> = BTreeMap::new();
        for o in one_orientations_on(g, support)? {
            if is_rooted(g, &o) {
                let d = multidegree_one(g, &o);
                rooted.push((o, d.0.clone()));
                found.entry(d).or_insert(o);
            }
        }
        classes.extend(found.into_iter().map(|(degree, o)| OrientationClass {
            removed,
            kind: ClassKind::RootedOne,
            degree,
            witness: Representative::One(o),
        }));
    }
    classes.sort();
    let n = classes.len();
    let index = ClassIndex::new(&classes);
    let empty = (g.vertex_count() == 1).then(|| index.get(all, &empty_rooted_class(g).degree.0));

    // Rooted restrictions are closed under adding edges back, so the classes
    // below a representative are its own plus those below each rooted
    // restriction that drops one more edge.
    let mut below: FxHashMap<OneOrientation, FixedBitSet> = FxHashMap::default();
    let mut down_sets = vec![FixedBitSet::with_capacity(n); n];
    for (o, degree) in &rooted {
        let own = index.get(all.difference(o.support()), degree);
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(own);
        if let Some(bottom) = empty {
            set.insert(bottom);
        }
        for e in o.rest.support.iter() {
            let r = o.restrict(o.support().without(e)).unwrap();
            if let Some(sub) = below.get(&r) {
                set.union_with(sub);
            }
        }
        down_sets[own].union_with(&set);
        below.insert(*o, set);
    }
    let mut poset = Poset::from_relation(classes, []);
    for (upper, set) in down_sets.iter().enumerate() {
        for lower in set.ones() {
            poset.relate(lower, upper);
        }
    }
    Ok(poset)
}
