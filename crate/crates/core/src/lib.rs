//! Certificate engine for the caterpillar dichotomy: given a graph `G` and a
//! caterpillar `T`, produce either a linear-size anti-adjacent or fully
//! adjacent pair of vertex sets, or an induced copy of a template caterpillar
//! `T_{h,d,t}` containing `T` (or of its complement). Every output is a
//! [`oracle::Certificate`] that [`oracle::verify_certificate`] re-checks
//! from scratch.
//!
//! Module map:
//!
//! * [`graph`]: immutable graphs, colourings, caterpillar templates, file formats.
//! * [`oracle`]: induced-subgraph search, brute-force pair search, certificate checks.
//! * [`structures`]: buds, ferns and junior caterpillars, each with a validator.
//! * [`algorithms`]: path growing, bud growing, leg attachment, fern conversion
//!   and the iterative junior-caterpillar search.
//! * [`pipeline`]: constant schedule, sparsification and the end-to-end driver.

pub mod algorithms;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod structures;

pub use graph::{CaterpillarShape, ColouredGraph, Graph, VertexSet};
pub use oracle::{Certificate, CertificateKind, Embedding};
pub use rational::Rational;
