//! Acyclic matchings (discrete gradient vector fields) on independence
//! complexes of graphs with simplicial vertices.
//!
//! The matching on `I(G)` is built recursively by eliminating a simplicial
//! vertex and lifting matchings from the independence complexes of the
//! graphs `G - N[u]`. For chordal graphs and the blown-up grid-poset family
//! every critical simplex except possibly one vertex is maximal, which pins
//! down the homotopy type as a point or a wedge of spheres. Independent
//! oracles (integer homology, brute-force optimal matchings) check the
//! results.

pub mod chordal;
pub mod complex;
pub mod counts;
pub mod error;
pub mod generators;
pub mod graph;
pub mod homology;
pub mod homotopy;
pub mod matching;
pub mod morse;

pub use chordal::{is_chordal, maximum_cardinality_search, verify_peo, EliminationOrder};
pub use complex::{independence_complex, FVector, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use generators::{grid_graph, power_graph_cyclic, random_chordal, standard_graph, GridSpec, StandardKind};
pub use graph::{Graph, VertexSet};
pub use homology::HomologyProfile;
pub use homotopy::HomotopyType;
pub use matching::{CriticalFVector, Matching};
pub use morse::{ConstructionResult, Driver, MorseBuilder};
