//! Detection and repair of bad-partitioning vulnerabilities in
//! trusted-application C code.
//!
//! TEE applications exchange data with the untrusted normal world through
//! shared parameters, and three recurring mistakes break the isolation
//! boundary: copying plaintext secrets out, trusting input sizes and
//! indices, and operating directly on shared memory. This crate detects
//! those patterns, instantiates DSL-defined repair rules into patch
//! templates, resolves the remaining `$`-placeholders (deterministically
//! where possible, through a pluggable model client otherwise), applies
//! the patches, and re-runs the detector as a fast static oracle. A
//! harness layer generates normal-side test clients and oracle test cases
//! for on-hardware validation.
//!
//! The `examples/` directory walks through each capability; the `teepatch`
//! binary wires them into `detect` / `repair` / `gen-client` / `eval` /
//! `metrics` subcommands.

pub mod cli;
pub mod cmodel;
pub mod detector;
pub mod dsl;
pub mod harness;
pub mod metrics;
pub mod patcher;
pub mod synth;
pub mod templates;

use std::path::Path;

use thiserror::Error;

/// Crate-level error for file handling and cross-module plumbing.
/// Each analysis module keeps its own focused error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dsl {
        path: String,
        #[source]
        source: dsl::DslError,
    },
    #[error(transparent)]
    Model(#[from] cmodel::ModelError),
    #[error(transparent)]
    Template(#[from] templates::TemplateError),
    #[error(transparent)]
    Synth(#[from] synth::SynthError),
    #[error(transparent)]
    Patch(#[from] patcher::PatchError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
