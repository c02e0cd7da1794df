//! Simulation library for two-level temporal-orientation dynamics.
//!
//! A "time qubit" labels the sign of the evolution generator: its two
//! basis states evolve a system under `H0 + V` and `H0 - V` respectively,
//! so coherent superpositions of the two orientations interfere. The crate
//! covers:
//!
//! - [`qla`]: dense 2x2/4x4 complex linear algebra (Kronecker products,
//!   Hermitian eigendecomposition, unitary exponentials, partial trace);
//! - [`timequbit`]: Pauli operators, Bloch-sphere states and rotations;
//! - [`dynamics`]: the controlled Hamiltonian, branch-resolved evolution,
//!   and the even/odd conditional Kraus pair;
//! - [`mz`]: the Mach-Zehnder realization with opposite-field arms,
//!   time-parity fringes, and which-path dephasing;
//! - [`bell`]: time-spin CHSH correlations, Born-rule sampling, and the
//!   local-hidden-variable table;
//! - [`dirac`]: the Dirac Hamiltonian as a spin-time coupling, gamma
//!   matrices, helicity reduction, and zitterbewegung precession;
//! - [`cli`]: the experiment front end used by the `tqsim` binary.

pub mod bell;
pub mod cli;
pub mod dirac;
pub mod dynamics;
pub mod error;
pub mod mz;
pub mod qla;
pub mod rng;
pub mod timequbit;

pub use error::{Error, Result};
pub use qla::{ComplexMatrix, DensityMatrix, StateVector};
