//! Weighted directed clustering and closure coefficients.
//!
//! This crate implements local and global clustering coefficients for
//! weighted directed and undirected graphs under several definitions
//! (binary, Barrat, Onnela, Zhang--Horvath, continuous, Miyajima
//! harmonic-mean), the four directed triangle modes (cycle, middleman,
//! fan-in, fan-out) plus their total, and local closure coefficients in
//! both a fully-weighted and a continuous style.
//!
//! It also ships seeded synthetic generators (core-periphery,
//! directed Watts--Strogatz, Erdos--Renyi, preferential attachment),
//! weight-shuffle null models, a noise-overlay composer, and an
//! epsilon-edge perturbation harness used to probe the continuity of
//! each definition.
//!
//! Every metric has two independent computation routes: a fast path
//! based on sparse node sums and a brute-force pair-enumeration oracle
//! (see [`oracle`]), which the test suite cross-checks to 1e-12.

pub mod closure;
pub mod clustering;
pub mod directed;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod perturb;
pub mod weights;

mod util;

pub use closure::{closure, closure_all, ClosurePattern, ClosureStyle, ClosureVariant};
pub use clustering::{
    clustering_all, global_clustering, local_clustering, local_intensities, mean_local_clustering,
    IntensityPair, Method,
};
pub use directed::{
    directed_clustering, directed_global, directed_intensities, total_clustering_continuous,
    total_clustering_zhang, BarratDenominator, Mode,
};
pub use error::GraphError;
pub use generators::{
    apply_weight_law, gen_core_periphery, gen_erdos_renyi, gen_scale_free,
    gen_watts_strogatz_directed, generate_topology, GeneratorKind, NoiseBlock, ScenarioConfig,
    WeightLaw,
};
pub use graph::{BuildOptions, DuplicatePolicy, SelfLoopPolicy, WeightedDigraph};
pub use perturb::{overlay_noise, perturb_epsilon, shuffle_weights, ShuffleScope};
pub use weights::{NodeStats, NormalizedWeights};
