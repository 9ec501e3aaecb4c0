//! Certification of distance-regular graphs and the spectral theory of their
//! adjacency Jacobi operators.
//!
//! * [`graph`]: simple connected graphs, BFS distances, distance-k matrices.
//! * [`drg`]: intersection sequences, certification, the distance-k recurrence.
//! * [`jacobi`]: `J_tau`, first-kind polynomials, Sturm bisection, spectral measures.
//! * [`families`]: infinite-diameter families, exact moments, tree density.
//! * [`oracle`]: dense brute-force reference computations.
//! * [`generators`]: named built-in graphs.

pub mod drg;
pub mod error;
pub mod families;
pub mod generators;
pub mod graph;
pub mod jacobi;
pub mod oracle;

pub use drg::{
    certify_distance_regular, Certification, IntersectionSequence, NonRegularityWitness,
};
pub use error::{Error, Result};
pub use families::FamilyGenerator;
pub use graph::{DistanceKMatrix, Graph};
pub use jacobi::{JacobiOperator, SpectralMeasure};
