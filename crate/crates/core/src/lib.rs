//! Weisfeiler-Lehman style graph refinement: subgraph WL over vertex pairs,
//! local and folklore 2-WL, generalized distance WL, Furer-graph
//! counterexamples and pebble-game verification.

pub mod algorithm;
pub mod catalog;
pub mod corpus;
pub mod error;
pub mod furer;
pub mod fwl;
pub mod gdwl;
pub mod graph;
pub mod hierarchy;
pub mod iso;
pub mod pebble;
pub mod policy;
pub mod refine;
pub mod rng;
pub mod swl;

pub use algorithm::{AlgorithmKind, AlgorithmSpec, JointRun, Verdict};
pub use error::{Error, Result};
pub use graph::{Graph, VertexPermutation, UNREACHABLE};
pub use refine::Certificate;
