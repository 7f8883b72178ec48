//! Generic rigidity of linearly constrained bar-joint frameworks.
//!
//! A looped simple graph together with a realisation (points for vertices,
//! normals for loops) defines a rigidity matrix; this crate computes its
//! generic rank exactly over a prime field or the rationals, runs the
//! matching counting games on the graph alone, and cross-checks the two.

pub mod algebra;
pub mod characterisation;
pub mod generators;
pub mod graph;
pub mod rigidity;
pub mod sparsity;

pub use algebra::{
    AlgebraError, Field, Matrix, PrimeField, RandomSource, Rationals, DEFAULT_PRIME,
};
pub use characterisation::{
    combinatorial_independent, combinatorial_rigid, conjecture_instance_check, one_extension,
    pinned_sufficiency, zero_extension, CharacterisationError, CharacterisationVerdict,
    ConjectureCheck, Witness,
};
pub use graph::{ElementId, GraphError, LoopedGraph, VertexSubset};
pub use rigidity::{
    build_matrix, build_pinned_matrix, find_circuit, fixed_vertex_check, generic_rank,
    generic_rank_estimate, is_independent, is_rigid, motion_space, pinned_independent,
    random_prime_realisation, random_rational_realisation, CircuitWitness, Motion, RankEstimate,
    RankOptions, Realisation, RigidityError, RigidityMatrix,
};
pub use sparsity::{
    brute_force_sparse, has_tight_spanning_subgraph, is_tight, pebble_game, BruteForceVerdict,
    Insertion, PebbleGame, SparsityError, SparsityParams, SparsityVerdict,
};
