//! Batch front end for `rshar-core`: configuration, a synthetic sales-data
//! generator, the end-to-end pipeline and the RSHAR vs Apriori benchmark.

pub mod bench;
pub mod config;
mod error;
pub mod output;
pub mod pipeline;
pub mod synth;

pub use bench::{run_benchmark, BenchReport};
pub use config::{Algorithm, RunConfig};
pub use error::PipelineError;
pub use pipeline::{run_pipeline, PipelineOutput};
pub use synth::{generate_sales, SynthSpec};
