//! Spectral community detection on ratios of eigenvectors (SCORE and SCORE+),
//! a degree-corrected block model sampler, and diagnostics for comparing
//! detected communities against ground truth.

pub mod bench;
pub mod datasets;
pub mod dcbm;
pub mod diagnostics;
pub mod error;
pub mod gml;
pub mod graph;
pub mod kmeans;
pub mod manifest;
pub mod pipeline;
pub mod published;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, DegreeInfo, Graph, ParsedGraph};
pub use gml::parse_gml;
pub use pipeline::{run_pipeline, DetectionResult, Method, PipelineConfig};
