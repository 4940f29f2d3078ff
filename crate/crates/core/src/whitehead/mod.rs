//! Whitehead graphs, Whitehead automorphisms and primitivity.

mod automorphism;
mod blocking;
mod graph;
mod primitivity;

pub use automorphism::{all_whitehead_automorphisms, nielsen_permutations, WhiteheadAutomorphism};
pub use blocking::{blocking_witness, BlockingReport};
pub use graph::{
    connectivity_report, whitehead_graph, whitehead_separability_test, ConnectivityReport, Separability, WhiteheadGraph,
};
pub use primitivity::{
    enumerate_classes, enumerate_primitive_classes, enumerate_primitive_classes_with, minimize, primitivity_oracle,
    PrimitiveClosure, PrimitivityVerdict,
};
