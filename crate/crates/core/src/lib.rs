//! Batch pipeline for continuous multimodal emotion regression.
//!
//! Per-frame feature encoding (HOG over aligned faces, Fisher vectors on a
//! diagonal-covariance GMM, bag-of-audio-words histograms), per-dimension
//! MLP regression of arousal/valence/liking, CCC scoring, and weighted late
//! fusion of per-modality prediction tracks.

pub mod data;
pub mod encoding;
pub mod error;
pub mod files;
pub mod fusion;
pub mod linalg;
pub mod metrics;
pub mod regressor;
pub mod rng;
pub mod synth;
pub mod vision;

pub use error::{Error, Result};
