//! Simulated reply-graph censorship and its detection.
//!
//! Generate power-law directed multigraphs, delete edges uniformly or along
//! repost cascades, summarize each graph as a 60-dimensional feature vector,
//! and train an RBF SVM to tell censored graphs from untouched ones.

pub mod atomic;
pub mod censor;
pub mod error;
pub mod features;
pub mod graph;
pub mod learn;
pub mod netgen;
pub mod pipeline;
pub mod seed;

pub use error::{Error, Result};
pub use pipeline::{run_experiment, EvalReport, ExperimentConfig};
pub use seed::{derive_seed, rng_for, SeedLabel, SimRng};
