pub mod error;
pub mod graph;
pub mod linalg;
pub mod tolerance;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::{Matrix, Spectrum, SymMatrix};
pub mod space;
pub use space::{NormedSpace, SupportFunctional};
pub mod framework;
pub use framework::{make_framework, Framework, Placement, RigidityReport, SearchBudget};
pub mod linf;
pub use linf::{exact_linf_connectivity, monochrome_decompose, Decomposition, LinfResult};
pub mod bounds;
pub use bounds::{BoundCheck, RedundancyReport};
pub mod io;
pub mod experiments;
pub mod reproduce;
