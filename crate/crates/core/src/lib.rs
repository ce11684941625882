//! Exact computations for moment-angle complexes `Z_K`: integer homology
//! from the cellular chain complex, the cohomology ring from the Koszul
//! model, and generators and relations of the loop homology
//! `H_*(ΩZ_K)` when `K` is a flag complex.

pub mod cellular;
pub mod error;
pub mod generators;
pub mod koszul;
pub mod linalg;
pub mod loopalg;
pub mod presets;
pub mod relations;
pub mod simplicial;
pub mod smith;

pub use cellular::{boundary, homology_coordinates, is_cycle, zk_homology, Cell, CellularChain, ZkHomology};
pub use error::{Error, Result};
pub use generators::{enumerate_gptw_generators, generator_cycle_table, hurewicz_image, GeneratorDescriptor};
pub use koszul::{evaluate, CohomologyClass, KoszulAlgebra, KoszulElement, KoszulMonomial, PairingTable};
pub use loopalg::{CommutatorExpr, LoopAlgebra, NormalForm, TensorElement, Word};
pub use relations::{build_hexagon_template, build_pentagon_relation, solve_coefficients, verify_zero, RelationTemplate, SolutionSet};
pub use simplicial::{hochster_cohomology, BettiVector, SimplicialComplex, VertexSet};
