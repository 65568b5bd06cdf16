//! Fermiline simulates a pair of fermionic wave-packet modes coupled to a
//! discretized band of bosonic continuum modes, the way a transmission-line
//! circuit-QED device would realize them.
//!
//! The pipeline, bottom to top:
//!
//! - [`hilbert`] — composite qubit ⊗ truncated-Fock spaces, a sparse complex
//!   operator algebra, matrix exponentials (dense and Krylov).
//! - [`fields`] — momentum grids, dispersions, wave-packet envelopes, the
//!   comoving-mode coefficients Λ₁/Λ₂, and per-mode coupling profiles.
//! - [`encoding`] — Jordan–Wigner maps from fermionic modes to qubit operator
//!   strings, plus the qubit encoding of the fermion sectors.
//! - [`model`] — the interaction Hamiltonian assembled in two independent
//!   representations (fermionic bilinears vs. Pauli blocks), the free boson
//!   Hamiltonian, and the hardware-side Hamiltonian.
//! - [`gates`] — Mølmer–Sørensen gates, qubit-conditioned multimode
//!   displacements, and the compiler turning Hamiltonian terms into one
//!   digital Trotter step.
//! - [`evolve`] — exact (midpoint-propagator) and Trotterized time evolution
//!   with convergence and truncation diagnostics.
//! - [`observables`] — survival/pair/vacuum probabilities, per-mode boson
//!   occupations, and CSV-ready time series.
//! - [`circuitqed`] — closed-form circuit parameter extraction (charging
//!   energies, β/λ coupling coefficients) and coupling feasibility matching.
//! - [`cli`] — config-driven experiment presets and deterministic output
//!   emission; the `fermiline` binary is a thin wrapper over [`cli::run`].
//!
//! A narrative guide with runnable snippets lives in the repository's
//! `book/` directory (`mdbook serve book`); the same snippets are compiled
//! as doc-tests by the `guide` crate.

pub mod circuitqed;
pub mod cli;
pub mod encoding;
mod error;
pub mod evolve;
pub mod fields;
pub mod gates;
pub mod hilbert;
pub mod model;
pub mod observables;

pub use error::{Error, Result};

/// Crate version echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
