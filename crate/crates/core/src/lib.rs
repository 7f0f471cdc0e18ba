//! Random bipartite-graph parity-check codes and fractional graph capacity.
//!
//! The crate is split along four lines:
//!
//! - [`gf2core`]: packed binary words and matrices, GF(2) rank and nullspace,
//!   and the usual code metrics (distance, rate, redundancy, binary entropy).
//! - [`bipartite`]: the random bipartite code ensemble, its diversity index and
//!   graph constraints, closed-form probability bounds, a seeded rejection
//!   search and Monte Carlo estimators.
//! - [`capacity`]: simple graphs, restricted strong powers `G(r, k)`, an exact
//!   maximum stable set solver and the fractional capacity bounds.
//! - [`harness`]: run configuration, dispatch, output formats and the run log
//!   behind the `graphcap` binary.
//!
//! Data-parallel loops go through [`exec::Backend`]; with the `parallel`
//! feature disabled every backend runs sequentially.

pub mod bipartite;
pub mod capacity;
pub mod error;
pub mod exec;
pub mod gf2core;
pub mod harness;

pub use error::{Error, Result};
pub use exec::Backend;
