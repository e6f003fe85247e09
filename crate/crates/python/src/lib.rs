//! Python bindings: `import jacstrata_py`.

use jacstrata::generate;
use jacstrata::homology;
use jacstrata::io;
use jacstrata::modspace;
use jacstrata::orientations::{self, OrientationClass};
use jacstrata::strata::{self, GradedStratification};
use jacstrata::tropical::{self, EdgeLength, MetricGraph};
use jacstrata::{EdgeSet, WeightedGraph};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: jacstrata::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A vertex-weighted multigraph with loops and legs.
#[pyclass(name = "Graph", module = "jacstrata_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: WeightedGraph,
}

impl PyGraph {
    fn edge_set(&self, ids: Vec<String>) -> PyResult<EdgeSet> {
        self.inner.edge_set(&ids).map_err(err)
    }
}

#[pymethods]
impl PyGraph {
    /// `vertices`: `(id, weight, legs)` triples; `edges`: `(id, end, end)` triples.
    #[new]
    #[pyo3(signature = (vertices, edges))]
    fn new(vertices: Vec<(String, u32, u32)>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let mut g = WeightedGraph::new();
        for (id, w, l) in vertices {
            g.add_vertex(id, w, l).map_err(err)?;
        }
        for (id, a, b) in edges {
            g.add_edge(id, &a, &b).map_err(err)?;
        }
        Ok(PyGraph { inner: g })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::parse_graph(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph {
            inner: generate::cycle(n.max(1)),
        }
    }

    #[staticmethod]
    fn banana(k: usize) -> Self {
        PyGraph {
            inner: generate::banana(k),
        }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph {
            inner: generate::path(n.max(1)),
        }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: generate::complete(n),
        }
    }

    fn to_json(&self) -> String {
        io::graph_to_json(&self.inner)
    }

    #[getter]
    fn vertex_ids(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.id.clone()).collect()
    }

    #[getter]
    fn edge_ids(&self) -> Vec<String> {
        self.inner.edges().iter().map(|e| e.id.clone()).collect()
    }

    fn first_betti(&self) -> u32 {
        self.inner.first_betti()
    }

    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_stable(&self) -> bool {
        self.inner.is_stable()
    }

    fn bridges(&self) -> Vec<String> {
        self.inner.edge_ids(self.inner.bridges()).into_iter().map(String::from).collect()
    }

    fn delete_edges(&self, ids: Vec<String>) -> PyResult<Self> {
        let s = self.edge_set(ids)?;
        Ok(PyGraph {
            inner: self.inner.delete_edges(s).map_err(err)?,
        })
    }

    fn contract_edges(&self, ids: Vec<String>) -> PyResult<Self> {
        let s = self.edge_set(ids)?;
        Ok(PyGraph {
            inner: self.inner.contract_edges(s).map_err(err)?,
        })
    }

    fn canonical_form(&self) -> Vec<u32> {
        self.inner.canonical_form().as_slice().to_vec()
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.inner)
    }
}

/// Invariant factors of the component group (empty for the trivial group).
#[pyfunction]
fn component_group(g: &PyGraph) -> PyResult<Vec<BigUint>> {
    Ok(homology::component_group(&g.inner).map_err(err)?.invariant_factors)
}

#[pyfunction]
fn spanning_tree_count(g: &PyGraph) -> PyResult<BigUint> {
    homology::spanning_tree_count(&g.inner).map_err(err)
}

#[pyfunction]
fn laplacian(g: &PyGraph) -> Vec<Vec<String>> {
    let m = homology::laplacian(&g.inner);
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect())
        .collect()
}

fn class_dict<'py>(py: Python<'py>, g: &WeightedGraph, c: &OrientationClass) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let removed: Vec<&str> = g.edge_ids(c.removed);
    d.set_item("S", removed)?;
    d.set_item("degree", c.degree.to_map(g))?;
    d.set_item("kind", c.kind.as_str())?;
    Ok(d)
}

/// Orientation classes of `G - removed`; `kind` is `"tc"` or `"rooted"`.
#[pyfunction]
#[pyo3(signature = (g, kind, removed = Vec::new()))]
fn orientation_classes<'py>(
    py: Python<'py>,
    g: &PyGraph,
    kind: &str,
    removed: Vec<String>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let s = g.edge_set(removed)?;
    let classes = match kind {
        "tc" => orientations::totally_cyclic_classes_without(&g.inner, s),
        "rooted" => orientations::rooted_classes_without(&g.inner, s),
        other => return Err(PyValueError::new_err(format!("unknown kind `{other}`"))),
    }
    .map_err(err)?;
    classes.iter().map(|c| class_dict(py, &g.inner, c)).collect()
}

fn stratification_dict<'py, L>(py: Python<'py>, s: &GradedStratification<L>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let strata: Vec<(String, u32, u64)> = s.strata().iter().map(|x| (x.name.clone(), x.dim, x.pieces)).collect();
    d.set_item("strata", strata)?;
    d.set_item("covers", s.poset().covers())?;
    d.set_item("dimension_counts", s.dimension_counts())?;
    let checks: Vec<(String, bool, Option<String>)> = strata::verify_graded(s)
        .checks
        .into_iter()
        .map(|c| (c.name, c.passed, c.witness))
        .collect();
    d.set_item("checks", checks)?;
    Ok(d)
}

/// `model` is one of `"neron"`, `"picg1"`, `"picg"`, `"tropical"`.
#[pyfunction]
fn stratification<'py>(py: Python<'py>, g: &PyGraph, model: &str) -> PyResult<Bound<'py, PyDict>> {
    let g = &g.inner;
    match model {
        "neron" => stratification_dict(py, &strata::neron_stratification(g).map_err(err)?),
        "picg1" => stratification_dict(py, &strata::pic_gminus1_stratification(g).map_err(err)?),
        "picg" => stratification_dict(py, &strata::pic_g_stratification(g).map_err(err)?),
        "tropical" => {
            let c = tropical::pic_g_cell_complex(&MetricGraph::unit(g.clone())).map_err(err)?;
            stratification_dict(py, &c.to_stratification())
        }
        other => Err(PyValueError::new_err(format!("unknown model `{other}`"))),
    }
}

/// f-vector and Euler characteristic of the `Pic^g` cell complex. `lengths`
/// maps edge ids to positive floats (`float("inf")` for infinite edges).
#[pyfunction]
#[pyo3(signature = (g, lengths = None))]
fn tropical_complex<'py>(
    py: Python<'py>,
    g: &PyGraph,
    lengths: Option<std::collections::HashMap<String, f64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let m = match lengths {
        None => MetricGraph::unit(g.inner.clone()),
        Some(map) => {
            let mut ls = Vec::new();
            for e in g.inner.edges() {
                let x = *map
                    .get(&e.id)
                    .ok_or_else(|| err(jacstrata::Error::MissingLength(e.id.clone())))?;
                ls.push(if x == f64::INFINITY {
                    EdgeLength::Infinite
                } else {
                    EdgeLength::Finite(x)
                });
            }
            MetricGraph::new(g.inner.clone(), ls).map_err(err)?
        }
    };
    let c = tropical::pic_g_cell_complex(&m).map_err(err)?;
    let d = stratification_dict(py, &c.to_stratification())?;
    d.set_item("f_vector", tropical::f_vector(&c))?;
    d.set_item("euler_characteristic", tropical::euler_characteristic(&c))?;
    d.set_item("jacobian_dimension", tropical::jacobian_dimension(&m).map_err(err)?)?;
    Ok(d)
}

#[pyfunction]
fn stable_graphs(genus: u32, legs: u32) -> PyResult<Vec<PyGraph>> {
    Ok(modspace::enumerate_stable_graphs(genus, legs)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyGraph { inner })
        .collect())
}

#[pyfunction]
fn moduli_poset<'py>(py: Python<'py>, genus: u32, legs: u32) -> PyResult<Bound<'py, PyDict>> {
    let p = modspace::stable_graph_poset(genus, legs).map_err(err)?;
    stratification_dict(py, p.stratification())
}

#[pymodule]
fn jacstrata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(component_group, m)?)?;
    m.add_function(wrap_pyfunction!(spanning_tree_count, m)?)?;
    m.add_function(wrap_pyfunction!(laplacian, m)?)?;
    m.add_function(wrap_pyfunction!(orientation_classes, m)?)?;
    m.add_function(wrap_pyfunction!(stratification, m)?)?;
    m.add_function(wrap_pyfunction!(tropical_complex, m)?)?;
    m.add_function(wrap_pyfunction!(stable_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(moduli_poset, m)?)?;
    Ok(())
}
