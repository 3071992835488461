//! Qualitative inversion toolkit.
//!
//! Estimates point unknowns (angles of arrival) and scatterer locations from
//! wave data by sweeping sampling-type indicator functionals over a candidate
//! grid. The indicator family ranges from plain beamforming / direct sampling
//! through Capon's method and the full infimum criterion, with the sparse
//! variants (`kdsm`, `errdsm`) interpolating between the two ends via a
//! greedy sparse least-squares solve.
//!
//! The crate also ships the synthetic forward models used to exercise the
//! indicators (narrowband array snapshots and Born point-scatterer near-field
//! matrices), SNR-calibrated Gaussian noise injection, a deterministic grid
//! evaluation engine, and a CLI (`qinv`) that runs declarative experiment
//! configs to CSV / PGM / peak-list outputs.

pub mod config;
pub mod demo;
pub mod error;
pub mod forward;
pub mod grid;
pub mod indicators;
pub mod io;
pub mod num;
pub mod runner;
pub mod sparse;
pub mod steering;

pub use error::{Error, Result};
