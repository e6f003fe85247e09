//! Metric graphs and the break-divisor cell decomposition of the degree-`g`
//! tropical Picard group.
//!
//! Cells are indexed by classes of rooted 1-orientations `O_S` of connected
//! spanning subgraphs `G - S`. A cell is a face of another when its class lies
//! above it in the orientation-class poset, so the face order is the reverse of
//! that poset. The cell of `O_S` has dimension `b1(G) - b1(G - S) = |S|`: the
//! classes with `S = ∅` are the vertices, and those with `G - S` a spanning
//! tree are the top-dimensional parallelotopes.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::orientations::{orientation_class_poset, ClassKind, OrientationClass};
use crate::poset::Poset;
use crate::strata::{class_name, GradedStratification, Stratum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLength {
    Finite(f64),
    Infinite,
}

impl EdgeLength {
    pub fn is_finite(self) -> bool {
        matches!(self, EdgeLength::Finite(_))
    }
}

impl fmt::Display for EdgeLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLength::Finite(x) => write!(f, "{x}"),
            EdgeLength::Infinite => f.write_str("inf"),
        }
    }
}

/// A weighted graph with a positive, possibly infinite, length on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    graph: WeightedGraph,
    lengths: Vec<EdgeLength>,
}

impl MetricGraph {
    /// `lengths[i]` belongs to the `i`-th edge of `graph`.
    pub fn new(graph: WeightedGraph, lengths: Vec<EdgeLength>) -> Result<Self> {
        if lengths.len() < graph.edge_count() {
            return Err(Error::MissingLength(graph.edges()[lengths.len()].id.clone()));
        }
        if lengths.len() > graph.edge_count() {
            return Err(Error::UnknownEdge(format!("#{}", graph.edge_count())));
        }
        for (e, &l) in graph.edges().iter().zip(&lengths) {
            if let EdgeLength::Finite(x) = l {
                if !(x.is_finite() && x > 0.0) {
                    return Err(Error::InvalidLength {
                        edge: e.id.clone(),
                        length: x.to_string(),
                    });
                }
            }
        }
        Ok(MetricGraph { graph, lengths })
    }

    /// Every edge of length 1.
    pub fn unit(graph: WeightedGraph) -> Self {
        let lengths = vec![EdgeLength::Finite(1.0); graph.edge_count()];
        MetricGraph { graph, lengths }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[EdgeLength] {
        &self.lengths
    }

    pub fn length(&self, edge: usize) -> EdgeLength {
        self.lengths[edge]
    }

    pub fn is_compact(&self) -> bool {
        self.lengths.iter().all(|l| l.is_finite())
    }

    fn require_compact(&self) -> Result<()> {
        match self.lengths.iter().position(|l| !l.is_finite()) {
            Some(e) => Err(Error::InfiniteLength(self.graph.edges()[e].id.clone())),
            None => Ok(()),
        }
    }
}

/// Dimension of the real torus `Pic^0(Γ)`, the first Betti number.
pub fn jacobian_dimension(gamma: &MetricGraph) -> Result<u32> {
    gamma.require_compact()?;
    Ok(gamma.graph.first_betti())
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub label: OrientationClass,
    pub name: String,
    pub dim: u32,
}

/// Cells ordered by the face relation: `a <= b` when `a` is a face of `b`.
#[derive(Debug, Clone)]
pub struct CellComplex {
    faces: Poset<Cell>,
}

impl CellComplex {
    /// Builds the complex from the poset of rooted 1-orientation classes of `g`.
    pub fn from_classes(g: &WeightedGraph, classes: &Poset<OrientationClass>) -> Self {
        let b1 = g.first_betti();
        let faces = classes.dual().map(|c| Cell {
            name: class_name(g, &c),
            dim: b1 - g.first_betti_of(c.support(g)),
            label: c,
        });
        CellComplex { faces }
    }

    pub fn face_poset(&self) -> &Poset<Cell> {
        &self.faces
    }

    pub fn cells(&self) -> &[Cell] {
        self.faces.elements()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dimension(&self) -> Option<u32> {
        self.cells().iter().map(|c| c.dim).max()
    }

    /// Indices of the cells of maximal dimension.
    pub fn top_cells(&self) -> Vec<usize> {
        let top = self.dimension();
        (0..self.len()).filter(|&i| Some(self.cells()[i].dim) == top).collect()
    }

    /// Same cells, with the containment order reversed.
    pub fn dual(&self) -> Poset<Cell> {
        self.faces.dual()
    }

    /// The complex as a stratification by open cells.
    pub fn to_stratification(&self) -> GradedStratification<OrientationClass> {
        GradedStratification::new(self.faces.clone().map(|c| Stratum {
            label: c.label,
            name: c.name,
            dim: c.dim,
            pieces: 1,
        }))
    }
}

/// The decomposition of `Pic^g(Γ)` into cells indexed by rooted 1-orientation
/// classes. Lengths are validated but do not affect the combinatorics.
pub fn pic_g_cell_complex(gamma: &MetricGraph) -> Result<CellComplex> {
    gamma.require_compact()?;
    let g = &gamma.graph;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let classes = orientation_class_poset(g, ClassKind::RootedOne)?;
    Ok(CellComplex::from_classes(g, &classes))
}

/// Number of cells in each dimension `0..=dim`.
pub fn f_vector(c: &CellComplex) -> Vec<usize> {
    let mut f = vec![0; c.dimension().map_or(0, |d| d as usize + 1)];
    for cell in c.cells() {
        f[cell.dim as usize] += 1;
    }
    f
}

pub fn euler_characteristic(c: &CellComplex) -> i64 {
    f_vector(c)
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}
