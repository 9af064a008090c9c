//! Metrics on `F_q^n` induced by directed graphs.
//!
//! The weight of a word is the number of vertices reachable from its support.
//! The crate covers canonical forms of the generating graph, reconstruction of
//! a metric from partial weight data, the linear isometry group, canonical
//! decomposition and packing radii of linear codes, and exhaustive checks of
//! the MacWilliams identity and extension property. The [`oracle`] module holds
//! naive reference implementations used by the test suites.

pub mod canonical;
pub mod codes;
pub mod error;
pub mod graph;
pub mod io;
pub mod isometry;
pub mod linalg;
pub mod macwilliams;
pub mod metric;
pub mod oracle;
pub mod reconstruction;

pub use canonical::{
    expanded_form, is_hierarchical, isomorphic_metrics, reduced_form, same_metric,
    strongly_connected_components, ReducedForm, WeightedDigraph,
};
pub use error::{Error, Result};
pub use graph::{Digraph, SupportSet};
pub use linalg::{FqVector, LinearCode, LinearMap};
pub use macwilliams::{Prediction, WeightEnumerator};
pub use metric::{g_distance, g_weight, g_weight_reduced, MaskMetric, WeightTable};
