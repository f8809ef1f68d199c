//! Library side of the pisotlab CLI: run configuration, report builders,
//! value parsing, and deterministic sample generation. The binary in
//! `main.rs` is a thin clap wrapper over these.

pub mod report;
pub mod sampling;
pub mod value;

use std::sync::Arc;

use pisot_core::PisotPolynomial;

/// Resolved run configuration shared by all subcommands.
pub struct RunConfig {
    pub field: Arc<PisotPolynomial>,
    pub precision: u32,
    pub height: u64,
    pub ext_height: u64,
    pub steps: usize,
    pub json: bool,
    pub seed: u64,
    pub samples: usize,
}
