pub mod error;
pub mod generate;
pub mod graph;
pub mod homology;
pub mod io;
pub mod modspace;
pub mod orientations;
pub mod poset;
pub mod strata;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, EdgeSet, WeightedGraph};
pub use poset::Poset;
