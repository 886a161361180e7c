//! Simulation laboratory for a two-qubit quantum channel whose Alice-side
//! qubit interacts with a two-level environment.
//!
//! A maximally entangled pair shared by Alice (`A`) and Bob (`B`) is coupled
//! to an environment qubit (`E`) through an arbitrary two-qubit unitary acting
//! on `(A, E)`. The library builds the resulting three-qubit pure state,
//! extracts both Kraus representations of the induced channel, measures how
//! the initial entanglement is distributed among the three parties
//! (concurrence, singlet fraction, three-tangle), and simulates the standard
//! teleportation scheme over the decohered channel.
//!
//! - [`qmat`] — dense complex matrices, pure states, density matrices,
//!   Hermitian eigendecomposition, and the Wootters λ spectrum.
//! - [`measures`] — two-qubit entanglement quantities and the three-qubit
//!   monogamy bookkeeping.
//! - [`channel`] — the interaction model, Kraus extraction, and the
//!   amplitude-damping-like `(p, q)` family with its closed forms.
//! - [`sampling`] — seeded Haar-random unitaries (circular unitary ensemble)
//!   and uniform Bloch vectors.
//! - [`teleport`] — Bell measurement, optimal correction, exact
//!   sphere-averaged fidelity, and the fidelity bounds/decomposition.
//! - [`harness`] — experiment orchestration: Monte Carlo sweeps, grid scans,
//!   record emission, and the verification suite.
//!
//! # Example
//!
//! Damp half of Alice's excitation into the environment and check that the
//! simulated teleportation fidelity attains `(2 F_AB + 1)/3`:
//!
//! ```
//! use qchannel::channel::{evolve, pq_unitary, PQParams};
//! use qchannel::harness::default_channel_state;
//! use qchannel::measures::EntanglementSummary;
//! use qchannel::teleport::fidelity_report;
//!
//! let interaction = pq_unitary(&PQParams::new(0.5, 0.0)?)?;
//! let total = evolve(&interaction, &default_channel_state())?;
//! let summary = EntanglementSummary::from_state(&total)?;
//! assert!((summary.c_ab - 0.5f64.sqrt()).abs() < 1e-12);
//!
//! let report = fidelity_report(&total, &summary)?;
//! assert!((report.f_simulated - (2.0 * summary.f_ab + 1.0) / 3.0).abs() < 1e-9);
//! assert!((report.f_simulated - report.f_formula).abs() < 1e-9);
//! # Ok::<(), qchannel::Error>(())
//! ```

pub mod channel;
mod error;
pub mod harness;
pub mod measures;
pub mod qmat;
pub mod sampling;
pub mod teleport;
pub mod tol;

pub use error::{Error, Result};
