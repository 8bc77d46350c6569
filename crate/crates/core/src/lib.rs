//! Validation, synthesis and comparison of set filtrations on sampled
//! metric spaces.
//!
//! A space is a finite point cloud with a distance matrix and a resolution;
//! balls of that radius define a neighborhood graph, and interiors,
//! closures and Hausdorff distances are read off the graph. A filtration is
//! a nested family of subsets over a 1-D or product index grid. The crate
//! checks the hypotheses under which such a family arises from sub-level
//! sets (nesting, finite stability, completeness), synthesizes an explicit
//! filtering function realizing the family exactly, and compares
//! filtrations both through their functions (max-norm, cyclic
//! pseudo-distance) and through persistence diagrams (bottleneck).
//!
//! Everything is generic over the scalar type through [`num_traits::Float`];
//! the aliases below fix `f64` for common use.

pub mod comparison;
pub mod corpus;
pub mod error;
pub mod filtration;
pub mod io;
pub mod space;
pub mod subset;
pub mod synthesis;

pub use error::{Error, Result};
pub use subset::Subset;

/// `f64` aliases for the generic core types.
pub type Space = space::SampledSpace<f64>;
pub type Index = filtration::Index1D<f64>;
pub type Filtration = filtration::Filtration1D<f64>;
pub type FiltrationGrid = filtration::FiltrationND<f64>;
pub type Function = synthesis::FilteringFunction<f64>;
pub type Diagram = comparison::PersistenceDiagram<f64>;
pub type Report = filtration::ValidationReport<f64>;
