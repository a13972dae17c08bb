//! Simulation of approximate quantum cloning and deleting machines, and of the
//! quantum correlations their output modes carry.
//!
//! The crate has four layers:
//!
//! - [`qmat`] — dense complex linear algebra for small multiqubit systems:
//!   Kronecker products, partial trace / partial transpose, a cyclic Jacobi
//!   eigensolver, Dicke states and density-matrix validation.
//! - [`correlations`] — negativity, logarithmic negativity, quantum discord
//!   (optimizer-backed), geometric discord (closed form plus a
//!   definition-based oracle), and the bipartite discord of multiqubit states.
//! - [`machines`] — the traced-out output states of the cloning and deleting
//!   machines: the universal 1→2 copier, the state-dependent 2→1 deleter,
//!   both composite orderings, the 1→N cloner and the N→M / N→1 deleters.
//! - [`formulas`] — transcription-faithful evaluation of the printed
//!   closed-form correlation expressions, with validity flags, so they can be
//!   audited against the numeric pipeline.
//!
//! The [`sweep`] module drives parameter sweeps over machine settings, emits
//! figure datasets as CSV, produces the printed-vs-numeric compatibility
//! report and runs the acceptance suite. The `clonedel` binary exposes all of
//! it on the command line.
//!
//! Everything is pure and deterministic: identical inputs (including optimizer
//! seeds) reproduce identical outputs bit for bit, and all values are safe to
//! share across threads.

pub mod correlations;
mod error;
pub mod formulas;
pub mod machines;
pub mod qmat;
pub mod sweep;
pub mod tol;

pub use error::{Error, Result};
