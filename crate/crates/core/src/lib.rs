//! Trace invariants of Fibonacci-labelled mapping tori, estimated on one
//! clean qubit.
//!
//! The pipeline, bottom to top:
//!
//! * [`category`]: the two-label fusion system (admissibility, F and S
//!   symbols, twist phases).
//! * [`spine`]: standard genus-g spine graphs, admissible edge labelings,
//!   transfer-matrix counting, and completion counts after a prefix.
//! * [`rep`]: the mapping-class-group generator matrices on the labeling
//!   space, words in the generators, and the trace invariant itself.
//! * [`encoding`]: fixed-point interval encoding of labelings into
//!   beta-bit registers, encoded generator unitaries, and exact traces of
//!   encoded words via rank sectors.
//! * [`dqc1`]: gate circuits, one-clean-qubit probability formulas and
//!   their sampled estimates, and the absolute-trace circuit reduction.
//! * [`qudits`]: planning base-b register sizes for qudit trace
//!   simulations with a controlled norm deficit.
//!
//! [`cli`] wires the above into the `fibwrt` binary; [`checks`] bundles
//! self-contained consistency checks reachable from the CLI.

pub mod category;
pub mod checks;
pub mod cli;
pub mod dqc1;
pub mod encoding;
pub mod error;
pub mod mat;
pub mod qudits;
pub mod rep;
pub mod spine;

pub use error::{Error, Result};
