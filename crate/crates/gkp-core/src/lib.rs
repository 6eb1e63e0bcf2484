//! Simulation core for preparing Gottesman–Kitaev–Preskill (GKP) qubits by
//! interacting squeezed vacuum with a Fock-superposition ancilla through a
//! cross-Kerr medium and post-selecting on a homodyne measurement of the
//! ancilla.
//!
//! The same conditional state is computed three independent ways, which is the
//! backbone of the test suite:
//!
//! * [`protocol::run_analytic`] — the closed-form output comb: Gaussian peaks
//!   on the GKP grid weighted by an envelope times Hermite-polynomial ratios
//!   in the measurement outcome.
//! * [`protocol::run_branch_oracle`] — exact branch-resolved Gaussian
//!   evolution: every ancilla Fock component tags one displaced squeezed
//!   branch of the signal, tracked as (center, momentum, phase) without any
//!   truncation, valid for arbitrarily large displacements.
//! * [`protocol::run_fock_oracle`] — a literal truncated Fock-space pipeline
//!   (squeeze → Kerr → displace → inverse Kerr → homodyne → displace) for
//!   small parameters.
//!
//! Conventions used throughout: ħ = 1, vacuum quadrature variance
//! ⟨q²⟩ = 1/2, α = (q + ip)/√2, and a squeezing level of s dB means a peak
//! position variance σ² = 10^(−s/10)/2 with comb width Δ² = κ² = 2σ².
//! Everything is deterministic: no RNG, no time-dependent state.

pub mod baseline;
pub mod comb;
pub mod error;
pub mod fock;
pub mod hermite;
pub mod metrics;
pub mod protocol;
pub mod quad;

pub use error::{Error, Result};
