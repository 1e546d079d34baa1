//! Exact spectral analysis of Boolean functions.
//!
//! The crate computes Walsh spectra, Fourier entropy, min-entropy and total
//! influence as exact quantities, builds disjoint compositions and
//! palindromic extensions analytically, and runs exhaustive sweeps over
//! general, symmetric and rotation-symmetric functions.

pub mod anf;
pub mod construct;
pub mod error;
pub mod exact;
pub mod metrics;
pub mod report;
pub mod search;
pub mod truth_table;
pub mod verify;
pub mod walsh;

pub use anf::{from_anf, AnfExpression};
pub use error::{Error, Result};
pub use exact::{ExactValue, Exactness};
pub use metrics::{analyze, classify, MetricsReport, SpectralSummary};
pub use search::{sweep, FunctionClass, Metric, SearchJob, SearchResult};
pub use truth_table::TruthTable;
pub use walsh::{walsh_transform, DenseCap, Spectrum};
