use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use jacstrata::generate;
use jacstrata::homology::{component_group, spanning_tree_count, spanning_tree_count_oracle};
use jacstrata::io::{graph_to_json, parse_document};
use jacstrata::modspace::stable_graph_poset;
use jacstrata::orientations::{
    orientation_class_poset, rooted_classes_without, rooted_conflict, totally_cyclic_classes_without,
    totally_cyclic_conflict, ClassKind, OrientationClass,
};
use jacstrata::strata::{
    neron_projection_report, neron_stratification, pic_g_stratification, pic_gminus1_stratification, subset_name,
    verify_graded, Check, GradedStratification,
};
use jacstrata::tropical::{euler_characteristic, f_vector, jacobian_dimension, pic_g_cell_complex, MetricGraph};
use jacstrata::verify::{self, Options, SUITES};
use jacstrata::{EdgeSet, Poset, WeightedGraph};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::Report;
use crate::{Cli, Command, Family, Format, Model, OrientKind, PosetKind};

/// Environment variable holding the number of worker threads for `verify`.
pub const WORKERS_VAR: &str = "JACSTRATA_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: jacstrata::Error,
    },
    #[error(transparent)]
    Graph(#[from] jacstrata::Error),
    #[error("unknown suite `{0}` (expected one of: {1})")]
    UnknownSuite(String, String),
    #[error("{0} must be a positive integer, got `{1}`")]
    BadWorkers(&'static str, String),
}

pub enum Output {
    Report(Report),
    Raw(String),
}

struct Input {
    bytes: Vec<u8>,
    text: String,
    path: PathBuf,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes).into_owned();
    Ok(Input {
        bytes,
        text,
        path: path.to_path_buf(),
    })
}

impl Input {
    fn input_error(&self, source: jacstrata::Error) -> CliError {
        CliError::Input {
            path: self.path.clone(),
            source,
        }
    }

    fn graph(&self) -> Result<WeightedGraph, CliError> {
        parse_document(&self.text)
            .and_then(|d| d.to_graph())
            .map_err(|e| self.input_error(e))
    }

    /// Uses the document's lengths when present, unit lengths otherwise.
    fn metric_graph(&self) -> Result<MetricGraph, CliError> {
        let doc = parse_document(&self.text).map_err(|e| self.input_error(e))?;
        if doc.lengths.is_some() {
            doc.to_metric_graph().map_err(|e| self.input_error(e))
        } else {
            Ok(MetricGraph::unit(doc.to_graph().map_err(|e| self.input_error(e))?))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Info { file } => info(&read_input(file)?),
        Command::Phi { file } => phi(&read_input(file)?),
        Command::Trees { file } => trees(&read_input(file)?),
        Command::Orient { file, kind, removed } => orient(&read_input(file)?, *kind, removed),
        Command::Poset { file, kind, format } => poset(&read_input(file)?, *kind, *format),
        Command::Strata { file, model, format } => strata(&read_input(file)?, *model, *format),
        Command::Tropical { file, format } => tropical(&read_input(file)?, *format),
        Command::Modspace { genus, legs, format } => modspace(*genus, *legs, *format),
        Command::Verify {
            all,
            suite,
            max_edges,
            max_vertices,
        } => run_verify(*all, suite, *max_edges, *max_vertices),
        Command::Generate { family, size } => Ok(Output::Raw(generate_family(*family, *size) + "\n")),
    }
}

fn edge_list(g: &WeightedGraph, s: EdgeSet) -> Vec<String> {
    g.edge_ids(s).into_iter().map(String::from).collect()
}

fn class_record(g: &WeightedGraph, c: &OrientationClass) -> Value {
    json!({
        "S": edge_list(g, c.removed),
        "degree": c.degree.to_map(g),
        "kind": c.kind.as_str(),
    })
}

/// Sorts by multidegree read in sorted vertex-id order.
fn sort_by_sorted_ids(g: &WeightedGraph, classes: &mut [OrientationClass]) {
    classes.sort_by_key(|c| {
        (
            c.removed.len(),
            c.removed,
            c.degree.to_map(g).into_values().collect::<Vec<i64>>(),
        )
    });
}

fn info(input: &Input) -> Result<Output, CliError> {
    let g = input.graph()?;
    let mut r = Report::new("info", &input.bytes);
    r.put("vertices", g.vertex_count());
    r.put("edges", g.edge_count());
    r.put("components", g.component_count());
    r.put("first_betti", g.first_betti());
    r.put("genus", g.genus());
    r.put("legs", g.total_legs());
    r.put("bridges", edge_list(&g, g.bridges()));
    r.put("stable", g.is_stable());
    if let Some(v) = g.first_unstable_vertex() {
        r.put("unstable_vertex", &g.vertices()[v].id);
    }
    Ok(Output::Report(r))
}

fn phi(input: &Input) -> Result<Output, CliError> {
    let g = input.graph()?;
    let group = component_group(&g)?;
    let trees = spanning_tree_count(&g)?;
    let mut r = Report::new("phi", &input.bytes);
    r.put("group", group.to_string());
    let factors: Vec<String> = group.invariant_factors.iter().map(ToString::to_string).collect();
    r.put("invariant_factors", factors);
    r.put("order", group.order().to_string());
    r.check(Check::new(
        "order equals spanning-tree count",
        (group.order() != trees).then(|| format!("{} vs {trees}", group.order())),
    ));
    Ok(Output::Report(r))
}

fn trees(input: &Input) -> Result<Output, CliError> {
    let g = input.graph()?;
    let det = spanning_tree_count(&g)?;
    let mut r = Report::new("trees", &input.bytes);
    r.put("spanning_trees", det.to_string());
    if g.edge_count() <= 24 {
        let oracle = spanning_tree_count_oracle(&g)?;
        r.check(Check::new(
            "determinant equals deletion-contraction",
            (det != oracle).then(|| format!("{det} vs {oracle}")),
        ));
    }
    Ok(Output::Report(r))
}

fn orient(input: &Input, kind: OrientKind, removed: &[String]) -> Result<Output, CliError> {
    let g = input.graph()?;
    let s = g.edge_set(removed)?;
    let h = g.delete_edges(s)?;
    let (mut classes, kind) = match kind {
        OrientKind::Tc => (totally_cyclic_classes_without(&g, s)?, ClassKind::TotallyCyclic),
        OrientKind::Rooted => (rooted_classes_without(&g, s)?, ClassKind::RootedOne),
    };
    sort_by_sorted_ids(&g, &mut classes);
    let mut r = Report::new("orient", &input.bytes);
    r.put("kind", kind.as_str());
    r.put("S", edge_list(&g, s));
    r.put("count", classes.len());
    let records: Vec<Value> = classes.iter().map(|c| class_record(&g, c)).collect();
    r.put("classes", records);
    match kind {
        ClassKind::TotallyCyclic => {
            let bridged = !h.bridges().is_empty();
            r.check(Check::new(
                "empty exactly when G - S has a bridge",
                (classes.is_empty() != bridged).then(|| format!("{} classes, bridges {:?}", classes.len(), h.edge_ids(h.bridges()))),
            ));
            r.check(Check::new(
                "totally cyclic status constant on classes",
                totally_cyclic_conflict(&h)?.map(|(a, b)| format!("{a:?} vs {b:?}")),
            ));
        }
        ClassKind::RootedOne => {
            if h.is_connected() {
                let order = component_group(&h)?.order();
                r.check(Check::new(
                    "count equals |Φ_{G-S}|",
                    (order != classes.len().into()).then(|| format!("{} vs {order}", classes.len())),
                ));
            }
            if h.edge_count() > 0 {
                r.check(Check::new(
                    "rooted status constant on classes",
                    rooted_conflict(&h)?.map(|(a, b)| format!("{a:?} vs {b:?}")),
                ));
            }
        }
    }
    Ok(Output::Report(r))
}

fn poset_records<T>(p: &Poset<T>, mut element: impl FnMut(usize, &T) -> Value) -> (Vec<Value>, Vec<[usize; 2]>) {
    let elements = p.elements().iter().enumerate().map(|(i, x)| element(i, x)).collect();
    let covers = p.covers().into_iter().map(|(a, b)| [a, b]).collect();
    (elements, covers)
}

fn order_check(violations: Vec<jacstrata::poset::OrderViolation>) -> Check {
    Check::new("partial order", violations.first().map(ToString::to_string))
}

fn poset(input: &Input, kind: PosetKind, format: Format) -> Result<Output, CliError> {
    let g = input.graph()?;
    let mut r = Report::new("poset", &input.bytes);
    let (name, dot, elements, covers, check) = match kind {
        PosetKind::C => {
            let p = g.connected_spanning_subgraph_poset()?;
            let all = g.all_edges();
            let dot = p.to_dot("C", |_, &s| format!("{} (rank {})", subset_name(&g, s), g.genus_of(all.difference(s))));
            let (e, c) = poset_records(&p, |i, &s| {
                json!({"index": i, "S": edge_list(&g, s), "rank": g.genus_of(all.difference(s))})
            });
            ("c", dot, e, c, order_check(p.order_violations(1)))
        }
        PosetKind::Op0 | PosetKind::Op1 => {
            let (name, ck) = if kind == PosetKind::Op0 {
                ("op0", ClassKind::TotallyCyclic)
            } else {
                ("op1", ClassKind::RootedOne)
            };
            let p = orientation_class_poset(&g, ck)?;
            let dot = p.to_dot(name, |_, c| jacstrata::strata::class_name(&g, c));
            let (e, c) = poset_records(&p, |i, c| {
                let mut rec = class_record(&g, c);
                rec["index"] = json!(i);
                rec
            });
            (name, dot, e, c, order_check(p.order_violations(1)))
        }
    };
    if format == Format::Dot {
        return Ok(Output::Raw(dot));
    }
    r.put("kind", name);
    r.put("size", elements.len());
    r.put("elements", elements);
    r.put("covers", covers);
    r.check(check);
    Ok(Output::Report(r))
}

fn strat_records<L>(s: &GradedStratification<L>) -> (Vec<Value>, Vec<[usize; 2]>) {
    poset_records(s.poset(), |i, x| {
        json!({"index": i, "name": x.name, "dim": x.dim, "pieces": x.pieces})
    })
}

fn put_stratification<L>(r: &mut Report, model: &str, s: &GradedStratification<L>) {
    let (elements, covers) = strat_records(s);
    r.put("model", model);
    r.put("size", s.len());
    r.put("top_dimension", s.top_dimension());
    r.put("dimension_counts", s.dimension_counts());
    r.put("strata", elements);
    r.put("covers", covers);
    r.checks(verify_graded(s).checks);
}

fn strata(input: &Input, model: Model, format: Format) -> Result<Output, CliError> {
    let mut r = Report::new("strata", &input.bytes);
    let dot = match model {
        Model::Neron => {
            let g = input.graph()?;
            let s = neron_stratification(&g)?;
            put_stratification(&mut r, "neron", &s);
            s.to_dot("neron")
        }
        Model::Picg1 => {
            let g = input.graph()?;
            let s = pic_gminus1_stratification(&g)?;
            put_stratification(&mut r, "picg1", &s);
            s.to_dot("picg1")
        }
        Model::Picg => {
            let g = input.graph()?;
            let s = pic_g_stratification(&g)?;
            put_stratification(&mut r, "picg", &s);
            let neron = neron_stratification(&g)?;
            r.checks(neron_projection_report(&s, &neron).checks);
            s.to_dot("picg")
        }
        Model::Tropical => {
            let m = input.metric_graph()?;
            let s = pic_g_cell_complex(&m)?.to_stratification();
            put_stratification(&mut r, "tropical", &s);
            s.to_dot("tropical")
        }
    };
    Ok(if format == Format::Dot {
        Output::Raw(dot)
    } else {
        Output::Report(r)
    })
}

fn tropical(input: &Input, format: Format) -> Result<Output, CliError> {
    let m = input.metric_graph()?;
    let c = pic_g_cell_complex(&m)?;
    let s = c.to_stratification();
    if format == Format::Dot {
        return Ok(Output::Raw(s.to_dot("tropical")));
    }
    let mut r = Report::new("tropical", &input.bytes);
    let b1 = jacobian_dimension(&m)?;
    let chi = euler_characteristic(&c);
    r.put("jacobian_dimension", b1);
    r.put("f_vector", f_vector(&c));
    r.put("euler_characteristic", chi);
    r.put("top_cells", c.top_cells().len());
    let (cells, covers) = strat_records(&s);
    r.put("cells", cells);
    r.put("faces", covers);
    let expected = if b1 >= 1 { 0 } else { 1 };
    r.check(Check::new(
        "Euler characteristic of a torus or point",
        (chi != expected).then(|| format!("χ = {chi}, expected {expected}")),
    ));
    let order = component_group(m.graph())?.order();
    r.check(Check::new(
        "top cells number |Φ_G|",
        (order != c.top_cells().len().into()).then(|| format!("{} vs {order}", c.top_cells().len())),
    ));
    r.checks(verify_graded(&s).checks);
    Ok(Output::Report(r))
}

fn modspace(genus: u32, legs: u32, format: Format) -> Result<Output, CliError> {
    let p = stable_graph_poset(genus, legs)?;
    let s = p.stratification();
    if format == Format::Dot {
        return Ok(Output::Raw(s.to_dot(&format!("M{genus},{legs}"))));
    }
    let mut r = Report::new("modspace", format!("genus={genus} legs={legs}").as_bytes());
    r.put("genus", genus);
    r.put("legs", legs);
    r.put("size", p.len());
    r.put("top_dimension", s.top_dimension());
    r.put("dimension_counts", s.dimension_counts());
    let (elements, covers) = poset_records(s.poset(), |i, x| {
        json!({"index": i, "name": x.name, "dim": x.dim, "edges": x.label.edge_count()})
    });
    r.put("graphs", elements);
    r.put("covers", covers);
    r.checks(verify_graded(s).checks);
    Ok(Output::Report(r))
}

fn workers() -> Result<usize, CliError> {
    match std::env::var(WORKERS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::BadWorkers(WORKERS_VAR, v)),
        },
    }
}

fn run_verify(all: bool, suites: &[String], max_edges: usize, max_vertices: usize) -> Result<Output, CliError> {
    let opts = Options {
        max_edges,
        max_vertices,
        workers: workers()?,
        ..Options::default()
    };
    let names: Vec<&str> = if all {
        SUITES.to_vec()
    } else {
        suites.iter().map(String::as_str).collect()
    };
    let mut reports = Vec::new();
    for name in names {
        let rep = verify::run_suite(name, &opts)
            .ok_or_else(|| CliError::UnknownSuite(name.to_string(), SUITES.join(", ")))?;
        reports.push(rep);
    }
    let params = format!("verify suites={} max_edges={max_edges} max_vertices={max_vertices}", reports.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(","));
    let mut r = Report::new("verify", params.as_bytes());
    r.put("max_edges", max_edges);
    r.put("max_vertices", max_vertices);
    let summary: BTreeMap<&str, Value> = reports
        .iter()
        .map(|s| (s.name.as_str(), json!({"cases": s.cases, "passed": s.passed()})))
        .collect();
    r.put("suites", summary);
    for rep in reports {
        for c in rep.checks {
            r.check(Check {
                name: format!("{}: {}", rep.name, c.name),
                ..c
            });
        }
    }
    Ok(Output::Report(r))
}

fn generate_family(family: Family, size: usize) -> String {
    let g = match family {
        Family::Cycle => generate::cycle(size.max(1)),
        Family::Banana => generate::banana(size),
        Family::Path => generate::path(size.max(1)),
        Family::Complete => generate::complete(size),
    };
    graph_to_json(&g)
}
