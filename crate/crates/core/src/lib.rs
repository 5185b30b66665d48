//! Simulator for the two-dimensional alternate discrete-time quantum walk
//! with a step-dependent phase gate on the coin.
//!
//! One time step `t` applies, in order: Hadamard, `P(phi_x, t)`, shift along
//! x, Hadamard, `P(phi_y, t)`, shift along y, where
//! `P(phi, t) = diag(exp(-i phi t / 2), exp(i phi t / 2))`.

pub mod cli_io;
pub mod eigen;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod lattice_state;
pub mod observables;

pub use error::WalkError;
pub use evolution::{evolve, evolve_with, walk1d, DisorderKind, DisorderSpec, DisorderTarget, WalkParams};
pub use lattice_state::{Axis, CoinState, WalkerState};
pub use observables::{coherence_norm, DensityMatrix, SeriesRecord};
