//! Controlled temporal-orientation dynamics: the Hamiltonian pair
//! `H_plus = H0 + V`, `H_minus = H0 - V`, the composite ("controlled")
//! Hamiltonian on the time (x) system space, branch-resolved evolution,
//! and the even/odd conditional Kraus pair.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qla::{ComplexMatrix, StateVector, HERM_TOL};
use crate::timequbit::{pauli, pauli_dot, PauliAxis};

/// Pair `(H0, V)` of 2x2 Hermitian matrices: `H0` is orientation-even,
/// `V` flips sign with the temporal orientation.
#[derive(Debug, Clone)]
pub struct ControlledHamiltonian {
    h0: ComplexMatrix,
    v: ComplexMatrix,
}

impl ControlledHamiltonian {
    pub fn new(h0: ComplexMatrix, v: ComplexMatrix) -> Result<Self> {
        for (name, m) in [("H0", &h0), ("V", &v)] {
            if m.dim() != 2 {
                return Err(Error::InvalidDimension {
                    expected: "2",
                    got: m.dim(),
                });
            }
            let defect = m.hermiticity_defect();
            if defect > HERM_TOL {
                return Err(Error::Domain(format!(
                    "{name} must be Hermitian (defect {defect:.3e})"
                )));
            }
        }
        Ok(Self { h0, v })
    }

    pub fn h0(&self) -> &ComplexMatrix {
        &self.h0
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }
}

/// Larmor parameters: angular frequency `omega` and unit field axis.
/// The orientation-odd coupling is `V = (omega/2) axis . sigma`.
#[derive(Debug, Clone, Copy)]
pub struct ZeemanParams {
    omega: f64,
    axis: [f64; 3],
}

impl ZeemanParams {
    pub fn new(omega: f64, axis: [f64; 3]) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "field axis must be a unit vector, got |n| = {norm}"
            )));
        }
        Ok(Self { omega, axis })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    /// `(omega/2) axis . sigma`.
    pub fn coupling(&self) -> ComplexMatrix {
        pauli_dot(self.axis).scale(Complex64::new(self.omega / 2.0, 0.0))
    }

    /// Controlled Hamiltonian with no orientation-even part.
    pub fn controlled(&self) -> ControlledHamiltonian {
        let h0 = ComplexMatrix::zeros(2).expect("2x2");
        ControlledHamiltonian::new(h0, self.coupling()).expect("Zeeman coupling is Hermitian")
    }
}

/// `(H0 + V, H0 - V)`.
pub fn h_plus_minus(ch: &ControlledHamiltonian) -> (ComplexMatrix, ComplexMatrix) {
    (&ch.h0 + &ch.v, &ch.h0 - &ch.v)
}

/// The composite Hamiltonian `I (x) H0 + tau_z (x) V` on the 4-dimensional
/// space; block-diagonal with `H0 + V` in the upper-left and `H0 - V` in
/// the lower-right block.
pub fn h_tot(ch: &ControlledHamiltonian) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).expect("2x2");
    let even = id.tensor(&ch.h0).expect("2x2 operands");
    let odd = pauli(PauliAxis::Z).tensor(&ch.v).expect("2x2 operands");
    &even + &odd
}

/// Evolves a normalized composite state under `exp(-i H_tot t)`. Each
/// temporal branch evolves under its own Hamiltonian sign.
pub fn evolve_composite(
    psi0: &StateVector,
    ch: &ControlledHamiltonian,
    t: f64,
) -> Result<StateVector> {
    if psi0.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: "4",
            got: psi0.dim(),
        });
    }
    h_tot(ch).expm_i(t)?.apply(psi0)
}

/// The conditional Kraus pair for a time qubit prepared and read out in
/// the parity basis:
/// `U_even = (exp(-i H_plus t) + exp(-i H_minus t)) / 2`,
/// `U_odd  = (exp(-i H_plus t) - exp(-i H_minus t)) / 2`.
/// Completeness: `U_even^dag U_even + U_odd^dag U_odd = I`.
pub fn kraus_pair(ch: &ControlledHamiltonian, t: f64) -> (ComplexMatrix, ComplexMatrix) {
    let (hp, hm) = h_plus_minus(ch);
    let up = hp.expm_i(t).expect("Hermitian by construction");
    let um = hm.expm_i(t).expect("Hermitian by construction");
    let half = Complex64::new(0.5, 0.0);
    let even = (&up + &um).scale(half);
    let odd = (&up - &um).scale(half);
    (even, odd)
}
