//! Command-line reports, bundled reference data and the self-test behind the `ellreg` binary.

pub mod golden;
pub mod modfile;
pub mod report;
pub mod selftest;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ellreg_core::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("module file: {0}")]
    Module(String),
}

/// Fixed default for `--seed`.
pub const DEFAULT_SEED: u64 = ellreg_core::weylgrp::DEFAULT_SEED;

/// Classes larger than this are only enumerated with `--deep`.
pub const DEEP_CLASS_LIMIT: u64 = 1_000_000;

/// Starting radius for alcove sums; grown until the outer shell contributes nothing.
pub const BASE_RADIUS: usize = 5;

/// Upper bound for radius growth.
pub const MAX_RADIUS: usize = 12;
