//! Front end for the `nodal` binary: configuration, multi-prime consensus,
//! parameter sweeps, and the verification suite.

pub mod config;
pub mod consensus;
pub mod sweep;
pub mod tables;
pub mod verify;
