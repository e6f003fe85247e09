//! Exhaustive identity suites over generated graph families.
//!
//! Each suite runs a fixed list of checks on every graph of a family and
//! reports, per check, the first failing case in family order. Families are
//! generated up to isomorphism with at most [`Options::max_vertices`] vertices
//! and [`Options::max_edges`] edges, loops allowed.

use std::collections::BTreeMap;
use std::thread;

use num_bigint::BigUint;
use serde::Serialize;

use crate::generate::{connected_multigraphs, multigraphs, weightings};
use crate::graph::{EdgeSet, WeightedGraph};
use crate::homology::{component_group, spanning_tree_count, spanning_tree_count_oracle};
use crate::modspace::{stable_graph_poset, stratum_dimension};
use crate::orientations::{
    enumerate_one_orientations, enumerate_orientations, multidegree, multidegree_one, orientation_class_poset,
    rooted_conflict, rooted_one_orientation_classes, totally_cyclic_classes, totally_cyclic_conflict, ClassKind,
};
use crate::strata::{
    neron_projection_report, neron_stratification, pic_gminus1_stratification, verify_graded, Check, Report,
    GradedStratification, Stratum,
};
use crate::tropical::{euler_characteristic, f_vector, pic_g_cell_complex, CellComplex, EdgeLength, MetricGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Vertex weights range over `0..=max_weight` in the degree-total suite.
    pub max_weight: u32,
    pub workers: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_vertices: 5,
            max_edges: 8,
            max_weight: 2,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SUITES: &[&str] = &[
    "graph",
    "kirchhoff",
    "orientation-counts",
    "degree-totals",
    "well-defined",
    "stratifications",
    "tropical",
    "moduli",
    "instances",
];

pub fn run_suite(name: &str, opts: &Options) -> Option<SuiteReport> {
    let connected = || connected_multigraphs(opts.max_vertices, opts.max_edges, true);
    let all = || multigraphs(opts.max_vertices, opts.max_edges, true);
    let report = match name {
        "graph" => tally(name, &all(), opts.workers, graph_case),
        "kirchhoff" => tally(name, &connected(), opts.workers, kirchhoff_case),
        "orientation-counts" => tally(name, &all(), opts.workers, orientation_count_case),
        "degree-totals" => tally(name, &connected(), opts.workers, |g| degree_total_case(g, opts.max_weight)),
        "well-defined" => tally(name, &all(), opts.workers, well_defined_case),
        "stratifications" => tally(name, &connected(), opts.workers, stratification_case),
        "tropical" => tally(name, &connected(), opts.workers, tropical_case),
        "moduli" => tally(name, MODULI_TYPES, opts.workers, |&(g, n)| moduli_case(g, n)),
        "instances" => instances(),
        _ => return None,
    };
    Some(report)
}

pub fn run_all(opts: &Options) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, opts).unwrap()).collect()
}

type Outcome = Vec<(&'static str, Option<String>)>;

/// Maps `f` over `items` on `workers` threads, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn tally<T: Sync>(name: &str, items: &[T], workers: usize, f: impl Fn(&T) -> Outcome + Sync) -> SuiteReport {
    let outcomes = par_map(items, workers, f);
    let mut order: Vec<&'static str> = Vec::new();
    let mut first: BTreeMap<&'static str, Option<String>> = BTreeMap::new();
    for outcome in outcomes {
        for (check, witness) in outcome {
            let slot = first.entry(check).or_insert_with(|| {
                order.push(check);
                None
            });
            if slot.is_none() {
                *slot = witness;
            }
        }
    }
    SuiteReport {
        name: name.to_string(),
        cases: items.len(),
        checks: order
            .into_iter()
            .map(|c| Check::new(c, first.remove(c).unwrap()))
            .collect(),
    }
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    cond.then(msg)
}

fn first_failure(r: &Report) -> Option<String> {
    r.failures().next().map(|c| match &c.witness {
        Some(w) => format!("{}: {w}", c.name),
        None => c.name.clone(),
    })
}

fn graph_case(g: &WeightedGraph) -> Outcome {
    let all = g.all_edges();
    let genus = g.genus();
    let mut contraction = None;
    let mut deletion = None;
    for s in all.subsets() {
        let h = g.contract_edges(s).unwrap();
        if contraction.is_none() && h.genus() != genus {
            contraction = Some(format!("{g}: contracting {:?} gives genus {}", g.edge_ids(s), h.genus()));
        }
        let d = g.delete_edges(s).unwrap();
        if deletion.is_none()
            && d.component_count() == g.component_count()
            && d.first_betti() as i64 != g.first_betti() as i64 - s.len() as i64
        {
            deletion = Some(format!("{g}: deleting {:?}", g.edge_ids(s)));
        }
    }
    let oracle: EdgeSet = (0..g.edge_count())
        .filter(|&e| g.component_count_of(all.without(e)) > g.component_count())
        .collect();
    let bridges = fail_if(g.bridges() != oracle, || {
        format!("{g}: bridges {:?} vs {:?}", g.edge_ids(g.bridges()), g.edge_ids(oracle))
    });

    let n = g.vertex_count();
    let relabel = |perm: &dyn Fn(usize) -> usize| {
        let ws: Vec<u32> = (0..n).map(|i| g.vertices()[perm(i)].weight).collect();
        let ls: Vec<u32> = (0..n).map(|i| g.vertices()[perm(i)].legs).collect();
        let mut inv = vec![0; n];
        for i in 0..n {
            inv[perm(i)] = i;
        }
        let es: Vec<(usize, usize)> = g.edges().iter().rev().map(|e| (inv[e.ends.1], inv[e.ends.0])).collect();
        WeightedGraph::from_parts(&ws, &ls, &es).unwrap()
    };
    let reversed = relabel(&|i| n - 1 - i);
    let rotated = relabel(&|i| (i + 1) % n);
    let canonical = fail_if(
        reversed.canonical_form() != g.canonical_form() || rotated.canonical_form() != g.canonical_form(),
        || format!("{g}: relabelled copy has a different canonical form"),
    );

    let trees = g.is_connected().then(|| {
        let minimal = g.connected_spanning_subgraph_poset().unwrap().minimal().len();
        let count = spanning_tree_count(g).unwrap();
        fail_if(BigUint::from(minimal) != count, || {
            format!("{g}: {minimal} minimal elements, {count} spanning trees")
        })
    });
    vec![
        ("genus preserved by every contraction", contraction),
        ("b1 drops by |S| when components are kept", deletion),
        ("bridges match deletion oracle", bridges),
        ("canonical form invariant under relabelling", canonical),
        ("minimal elements of C(G) number the spanning trees", trees.flatten()),
    ]
}

fn kirchhoff_case(g: &WeightedGraph) -> Outcome {
    let phi = component_group(g).unwrap();
    let det = spanning_tree_count(g).unwrap();
    let oracle = spanning_tree_count_oracle(g).unwrap();
    let chain = phi.invariant_factors.windows(2).all(|w| &w[1] % &w[0] == BigUint::from(0u32))
        && phi.invariant_factors.iter().all(|f| *f >= BigUint::from(2u32));
    vec![
        (
            "|Φ_G| = spanning-tree count",
            fail_if(phi.order() != det, || format!("{g}: |Φ| = {}, det = {det}", phi.order())),
        ),
        (
            "spanning-tree count = deletion-contraction",
            fail_if(det != oracle, || format!("{g}: det = {det}, oracle = {oracle}")),
        ),
        (
            "invariant factors form a divisibility chain",
            fail_if(!chain, || format!("{g}: {phi}")),
        ),
    ]
}

fn orientation_count_case(g: &WeightedGraph) -> Outcome {
    let one = rooted_one_orientation_classes(g).unwrap().len();
    let zero = totally_cyclic_classes(g).unwrap().len();
    let bridged = !g.bridges().is_empty();
    let bridge_check = fail_if((zero == 0) != bridged, || {
        format!("{g}: |Ō⁰| = {zero}, bridges {:?}", g.edge_ids(g.bridges()))
    });
    if !g.is_connected() {
        return vec![
            ("|Ō¹| = |Φ_G| for connected G", None),
            ("Ō¹ empty for disconnected G", fail_if(one != 0, || format!("{g}: |Ō¹| = {one}"))),
            ("Ō⁰ empty iff G has a bridge", bridge_check),
            ("|Ō⁰| <= |Φ_G| with equality iff |V| = 1", None),
        ];
    }
    let phi = component_group(g).unwrap().order();
    let (one_b, zero_b) = (BigUint::from(one), BigUint::from(zero));
    let single = g.vertex_count() == 1;
    vec![
        ("|Ō¹| = |Φ_G| for connected G", fail_if(one_b != phi, || format!("{g}: |Ō¹| = {one}, |Φ| = {phi}"))),
        ("Ō¹ empty for disconnected G", None),
        ("Ō⁰ empty iff G has a bridge", bridge_check),
        (
            "|Ō⁰| <= |Φ_G| with equality iff |V| = 1",
            fail_if(zero_b > phi || (zero_b == phi) != single, || {
                format!("{g}: |Ō⁰| = {zero}, |Φ| = {phi}")
            }),
        ),
    ]
}

fn degree_total_case(g: &WeightedGraph, max_weight: u32) -> Outcome {
    let plain = enumerate_orientations(g).unwrap();
    let ones = enumerate_one_orientations(g).unwrap();
    let mut zero = None;
    let mut one = None;
    for w in weightings(g, max_weight) {
        let genus = w.genus() as i64;
        if zero.is_none() {
            if let Some(o) = plain.iter().find(|o| multidegree(&w, o).total() != genus - 1) {
                zero = Some(format!("{w}: orientation {:?} has total {}", o, multidegree(&w, o).total()));
            }
        }
        if one.is_none() {
            if let Some(o) = ones.iter().find(|o| multidegree_one(&w, o).total() != genus) {
                one = Some(format!("{w}: 1-orientation {:?} has total {}", o, multidegree_one(&w, o).total()));
            }
        }
    }
    vec![
        ("every orientation has total g - 1", zero),
        ("every 1-orientation has total g", one),
    ]
}

fn well_defined_case(g: &WeightedGraph) -> Outcome {
    let tc = totally_cyclic_conflict(g)
        .unwrap()
        .map(|(a, b)| format!("{g}: {a:?} vs {b:?}"));
    let rooted = rooted_conflict(g).unwrap().map(|(a, b)| format!("{g}: {a:?} vs {b:?}"));
    vec![
        ("totally cyclic status constant on classes", tc),
        ("rooted status constant on classes", rooted),
    ]
}

fn stratification_case(g: &WeightedGraph) -> Outcome {
    let neron = neron_stratification(g).unwrap();
    let picg1 = pic_gminus1_stratification(g).unwrap();
    let op1 = orientation_class_poset(g, ClassKind::RootedOne).unwrap();
    let picg = GradedStratification::new(op1.clone().map(|c| Stratum {
        name: crate::strata::class_name(g, &c),
        dim: g.genus_of(c.support(g)),
        pieces: 1,
        label: c,
    }));
    let cells = CellComplex::from_classes(g, &op1);
    let with_name = |what: &str, r: &Report| first_failure(r).map(|w| format!("{g}: {what}: {w}"));
    let trees = spanning_tree_count(g).unwrap();
    let minimal = neron.poset().minimal().len();
    let genus = g.genus();
    let max_check = [
        ("neron", maximal_dims(&neron)),
        ("picg1", maximal_dims(&picg1)),
        ("picg", maximal_dims(&picg)),
    ]
    .into_iter()
    .find(|(what, dims)| dims.iter().any(|&d| d != genus) || (*what == "neron" && dims.len() != 1))
    .map(|(what, dims)| format!("{g}: {what} maximal dims {dims:?}, genus {genus}"));
    vec![
        ("neron stratification graded", with_name("neron", &verify_graded(&neron))),
        ("degree g-1 stratification graded", with_name("picg1", &verify_graded(&picg1))),
        ("degree g stratification graded", with_name("picg", &verify_graded(&picg))),
        ("tropical cell complex graded", with_name("tropical", &verify_graded(&cells.to_stratification()))),
        (
            "degree g projects onto Néron with fibers |Φ_{G-S}|",
            with_name("projection", &neron_projection_report(&picg, &neron)),
        ),
        (
            "minimal Néron strata number the spanning trees",
            fail_if(BigUint::from(minimal) != trees, || format!("{g}: {minimal} vs {trees}")),
        ),
        ("maximal strata have dimension genus(G), Néron has one", max_check),
    ]
}

fn maximal_dims<L>(p: &GradedStratification<L>) -> Vec<u32> {
    p.poset().maximal().iter().map(|&m| p.strata()[m].dim).collect()
}

/// Deterministic length assignments used to probe metric independence.
pub fn sample_lengths(g: &WeightedGraph) -> Vec<Vec<EdgeLength>> {
    let m = g.edge_count();
    vec![
        (0..m).map(|i| EdgeLength::Finite(1.0 + i as f64)).collect(),
        (0..m).map(|i| EdgeLength::Finite(1.0 / (1.0 + i as f64))).collect(),
    ]
}

/// Face poset as comparable data: cell names and dims plus the relation.
pub fn complex_signature(c: &CellComplex) -> (Vec<(String, u32)>, Vec<(usize, usize)>) {
    let p = c.face_poset();
    let cells = c.cells().iter().map(|x| (x.name.clone(), x.dim)).collect();
    let mut rel = Vec::new();
    for a in 0..p.len() {
        rel.extend(p.up_set(a).map(|b| (a, b)));
    }
    (cells, rel)
}

fn tropical_case(g: &WeightedGraph) -> Outcome {
    let base = pic_g_cell_complex(&MetricGraph::unit(g.clone())).unwrap();
    let b1 = g.first_betti();
    let chi = euler_characteristic(&base);
    let expected_chi = if b1 >= 1 { 0 } else { 1 };
    let phi = component_group(g).unwrap().order();
    let top = base.top_cells();
    let top_ok = BigUint::from(top.len()) == phi
        && base.dimension() == Some(b1)
        && top.iter().all(|&i| g.first_betti_of(base.cells()[i].label.support(g)) == 0);
    let p = base.face_poset();
    let vertices_ok = p
        .minimal()
        .iter()
        .all(|&i| base.cells()[i].dim == 0 && base.cells()[i].label.removed.is_empty());
    let signature = complex_signature(&base);
    let fv = f_vector(&base);
    let metric = sample_lengths(g).into_iter().find_map(|lengths| {
        let m = MetricGraph::new(g.clone(), lengths).unwrap();
        let c = pic_g_cell_complex(&m).unwrap();
        (complex_signature(&c) != signature || f_vector(&c) != fv).then(|| format!("{g}: lengths {:?}", m.lengths()))
    });
    vec![
        (
            "Euler characteristic 0 for b1 >= 1, 1 for trees",
            fail_if(chi != expected_chi, || format!("{g}: χ = {chi}, f = {fv:?}")),
        ),
        (
            "top cells are the |Φ_G| spanning-tree cells of dim b1",
            fail_if(!top_ok, || format!("{g}: {} top cells, |Φ| = {phi}, f = {fv:?}", top.len())),
        ),
        (
            "minimal cells are the S = ∅ vertices",
            fail_if(!vertices_ok, || format!("{g}: f = {fv:?}")),
        ),
        ("face poset independent of edge lengths", metric),
    ]
}

pub const MODULI_TYPES: &[(u32, u32)] = &[(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0)];

fn moduli_case(genus: u32, legs: u32) -> Outcome {
    let p = stable_graph_poset(genus, legs).unwrap();
    let strat = p.stratification();
    let tag = format!("({genus}, {legs})");
    let top_dim = 3 * genus + legs - 3;
    let typed = p.graphs().find(|h| !h.is_stable() || h.genus() != genus || h.total_legs() != legs);
    let maximal = strat.poset().maximal();
    let smooth_ok = maximal.len() == 1
        && strat.strata()[maximal[0]].label.edge_count() == 0
        && strat.strata()[maximal[0]].dim == top_dim;
    let cover = strat.poset().covers().into_iter().find(|&(a, b)| {
        let (ga, gb) = (&strat.strata()[a].label, &strat.strata()[b].label);
        ga.edge_count() != gb.edge_count() + 1
    });
    let dims = p
        .graphs()
        .find(|h| stratum_dimension(h).unwrap() as usize + h.edge_count() != top_dim as usize);
    let degenerate = p.graphs().any(|h| h.edge_count() == top_dim as usize);
    vec![
        ("graphs are stable of the given type", typed.map(|h| format!("{tag}: {h}"))),
        ("moduli poset graded", first_failure(&verify_graded(strat)).map(|w| format!("{tag}: {w}"))),
        (
            "unique maximal element is smooth of dim 3g-3+n",
            fail_if(!smooth_ok, || format!("{tag}: maximal {maximal:?}")),
        ),
        (
            "covers contract exactly one edge",
            cover.map(|(a, b)| format!("{tag}: {} < {}", strat.strata()[a].name, strat.strata()[b].name)),
        ),
        ("dimension = 3g-3+n-|E|", dims.map(|h| format!("{tag}: {h}"))),
        (
            "maximally degenerate graphs have 3g-3+n edges",
            fail_if(!degenerate, || format!("{tag}: no graph with {top_dim} edges")),
        ),
    ]
}

fn instances() -> SuiteReport {
    use crate::generate::{banana, cycle, theta};
    let phi4 = component_group(&cycle(4)).unwrap().order();
    let one4 = rooted_one_orientation_classes(&cycle(4)).unwrap().len();
    let zero2 = totally_cyclic_classes(&banana(2)).unwrap().len();
    let phi2 = component_group(&banana(2)).unwrap().order();
    let theta_complex = pic_g_cell_complex(&MetricGraph::unit(theta())).unwrap();
    let fv = f_vector(&theta_complex);
    let chi = euler_characteristic(&theta_complex);
    let counts: Vec<(u32, u32, usize)> = [(0, 3), (1, 1), (2, 0)]
        .iter()
        .map(|&(g, n)| (g, n, stable_graph_poset(g, n).unwrap().len()))
        .collect();
    let checks = vec![
        Check::new(
            "4-cycle: |Φ| = |Ō¹| = 4",
            fail_if(phi4 != BigUint::from(4u32) || one4 != 4, || format!("|Φ| = {phi4}, |Ō¹| = {one4}")),
        ),
        Check::new(
            "2-cycle: |Ō⁰| = 1 < 2 = |Φ|",
            fail_if(zero2 != 1 || phi2 != BigUint::from(2u32), || format!("|Ō⁰| = {zero2}, |Φ| = {phi2}")),
        ),
        Check::new(
            "theta: f-vector (3, 6, 3), χ = 0",
            fail_if(fv != vec![3, 6, 3] || chi != 0, || format!("f = {fv:?}, χ = {chi}")),
        ),
        Check::new(
            "stable graph counts (0,3): 1, (1,1): 2, (2,0): 7",
            fail_if(
                counts.iter().map(|c| c.2).collect::<Vec<_>>() != vec![1, 2, 7],
                || format!("{counts:?}"),
            ),
        ),
    ];
    SuiteReport {
        name: "instances".into(),
        cases: 4,
        checks,
    }
}
