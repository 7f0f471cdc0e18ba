//! Run configuration, dispatch, output formats and the append-only run log.
//!
//! A [`RunConfig`] names one command with all of its parameters and a seed;
//! [`run`] executes it and appends a [`RunRecord`] to a JSON-lines log.
//! Identical configs produce identical outcomes.

mod config;
mod outcome;
mod run;

pub use config::{Command, Emit, OutputSpec, RunConfig};
pub use outcome::{sig9, Cell, Outcome, Section};
pub use run::{
    append_record, default_log_path, deliver, execute, read_log, render, run, RunRecord,
    DEFAULT_LOG, LOG_ENV,
};
