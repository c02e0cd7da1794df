//! The free Dirac Hamiltonian as a coupling between a spin qubit and a
//! time qubit: `H_D = tau_z (x) m + tau_x (x) p . sigma` (natural units,
//! c = hbar = 1). The mass term is a longitudinal field on the temporal
//! Bloch sphere, motion is a transverse one, and superpositions of the
//! two energy branches precess about the resulting effective field at
//! angular frequency `2 E(p)` -- the zitterbewegung beat.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qla::{ComplexMatrix, StateVector, HERM_TOL};
use crate::timequbit::{
    bloch_vector, density_from_bloch, pauli, pauli_dot, BlochVector, PauliAxis,
};

/// Mass and momentum of a free particle, natural units.
#[derive(Debug, Clone, Copy)]
pub struct DiracParams {
    mass: f64,
    momentum: [f64; 3],
}

impl DiracParams {
    pub fn new(mass: f64, momentum: [f64; 3]) -> Result<Self> {
        if mass < 0.0 {
            return Err(Error::Domain(format!(
                "mass must be nonnegative, got {mass}"
            )));
        }
        Ok(Self { mass, momentum })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> [f64; 3] {
        self.momentum
    }

    pub fn momentum_norm(&self) -> f64 {
        let [px, py, pz] = self.momentum;
        (px * px + py * py + pz * pz).sqrt()
    }
}

/// Spin projection along the momentum, `s = +/-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn sign(&self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// The field `(s |p|, 0, m)` seen by the time qubit at fixed helicity;
/// its magnitude is the relativistic energy `E(p)`.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveField {
    pub b_x: f64,
    pub b_y: f64,
    pub b_z: f64,
    pub helicity: Helicity,
}

impl EffectiveField {
    pub fn magnitude(&self) -> f64 {
        (self.b_x * self.b_x + self.b_y * self.b_y + self.b_z * self.b_z).sqrt()
    }

    /// Unit direction of the field; errors when the field vanishes
    /// (massless particle at rest).
    pub fn direction(&self) -> Result<[f64; 3]> {
        let mag = self.magnitude();
        if mag == 0.0 {
            return Err(Error::Degenerate("effective field vanishes".into()));
        }
        Ok([self.b_x / mag, self.b_y / mag, self.b_z / mag])
    }
}

/// `H_D = tau_z (x) m + tau_x (x) p . sigma`, time factor on the left.
/// Squares to `(m^2 + |p|^2) I`.
pub fn dirac_hamiltonian(params: &DiracParams) -> ComplexMatrix {
    let m = Complex64::new(params.mass, 0.0);
    let mass_term = pauli(PauliAxis::Z)
        .tensor(&ComplexMatrix::identity(2).expect("2x2").scale(m))
        .expect("2x2 operands");
    let momentum_term = pauli(PauliAxis::X)
        .tensor(&pauli_dot(params.momentum))
        .expect("2x2 operands");
    &mass_term + &momentum_term
}

/// The positive dispersion branch `E(p) = sqrt(m^2 + |p|^2)`.
pub fn energy(params: &DiracParams) -> f64 {
    let p = params.momentum_norm();
    (params.mass * params.mass + p * p).sqrt()
}

/// True iff `a^2 = I`, `b^2 = I`, and `ab + ba = 0`, all within 1e-12.
/// Inputs must be Hermitian 2x2 matrices.
pub fn clifford_check(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    for m in [a, b] {
        if m.dim() != 2 {
            return Err(Error::InvalidDimension {
                expected: "2",
                got: m.dim(),
            });
        }
        let defect = m.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(Error::Domain(format!(
                "clifford check requires Hermitian inputs (defect {defect:.3e})"
            )));
        }
    }
    let id = ComplexMatrix::identity(2).expect("2x2");
    let zero = ComplexMatrix::zeros(2).expect("2x2");
    let squares = (a * a).max_abs_diff(&id) <= 1e-12 && (b * b).max_abs_diff(&id) <= 1e-12;
    let anti = (&(a * b) + &(b * a)).max_abs_diff(&zero) <= 1e-12;
    Ok(squares && anti)
}

/// The gamma matrices in the time-qubit representation:
/// `g0 = tau_z (x) I`, `g_i = i tau_y (x) sigma_i`. They satisfy
/// `{g_mu, g_nu} = 2 eta_{mu nu} I` with metric signature (+, -, -, -).
pub fn gamma_matrices() -> [ComplexMatrix; 4] {
    let id = ComplexMatrix::identity(2).expect("2x2");
    let i_tau_y = pauli(PauliAxis::Y).scale(Complex64::new(0.0, 1.0));
    let g0 = pauli(PauliAxis::Z).tensor(&id).expect("2x2 operands");
    let g1 = i_tau_y.tensor(&pauli(PauliAxis::X)).expect("2x2 operands");
    let g2 = i_tau_y.tensor(&pauli(PauliAxis::Y)).expect("2x2 operands");
    let g3 = i_tau_y.tensor(&pauli(PauliAxis::Z)).expect("2x2 operands");
    [g0, g1, g2, g3]
}

/// Helicity eigenstates `sigma . p chi_s = s |p| chi_s`, returned as
/// `(chi_plus, chi_minus)` with phases fixed by the eigendecomposition
/// convention. Requires `|p| > 0`.
pub fn helicity_states(momentum: [f64; 3]) -> Result<(StateVector, StateVector)> {
    let norm = (momentum[0] * momentum[0] + momentum[1] * momentum[1] + momentum[2] * momentum[2])
        .sqrt();
    if norm == 0.0 {
        return Err(Error::Degenerate(
            "helicity is undefined at zero momentum".into(),
        ));
    }
    let (_, vecs) = pauli_dot(momentum).herm_eig()?;
    // Ascending eigenvalue order: column 0 is the -|p| state.
    let chi_minus = StateVector::new(vec![vecs.get(0, 0), vecs.get(1, 0)])?;
    let chi_plus = StateVector::new(vec![vecs.get(0, 1), vecs.get(1, 1)])?;
    Ok((chi_plus, chi_minus))
}

/// `B_eff = (s |p|, 0, m)` for helicity `s`.
pub fn effective_field(params: &DiracParams, helicity: Helicity) -> EffectiveField {
    EffectiveField {
        b_x: helicity.sign() * params.momentum_norm(),
        b_y: 0.0,
        b_z: params.mass,
        helicity,
    }
}

/// The Dirac Hamiltonian restricted to one helicity sector:
/// `m tau_z + s |p| tau_x = B_eff . tau`, acting on the time qubit alone.
pub fn reduced_hamiltonian(params: &DiracParams, helicity: Helicity) -> ComplexMatrix {
    let field = effective_field(params, helicity);
    pauli_dot([field.b_x, field.b_y, field.b_z])
}

/// Precesses a time-qubit Bloch vector under the helicity-reduced
/// Hamiltonian, sampling `rho(t) = U(t) rho U(t)^dagger` at the given
/// times. Conserves `|r|` and the angle to the effective field; the
/// transverse component oscillates at angular frequency `2 E(p)`.
pub fn precess_bloch(
    initial: &BlochVector,
    params: &DiracParams,
    helicity: Helicity,
    times: &[f64],
) -> Result<Vec<BlochVector>> {
    if times.is_empty() {
        return Err(Error::Domain("precession needs at least one time".into()));
    }
    let h = reduced_hamiltonian(params, helicity);
    let rho0 = density_from_bloch(initial)?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let u = h.expm_i(t)?;
        let rho_t = &(&u * rho0.matrix()) * &u.adjoint();
        let rho_t = crate::qla::DensityMatrix::new(rho_t)?;
        out.push(bloch_vector(&rho_t));
    }
    Ok(out)
}

/// Ket-input variant of [`precess_bloch`].
pub fn precess_state(
    initial: &StateVector,
    params: &DiracParams,
    helicity: Helicity,
    times: &[f64],
) -> Result<Vec<BlochVector>> {
    if initial.dim() != 2 {
        return Err(Error::InvalidDimension {
            expected: "2",
            got: initial.dim(),
        });
    }
    precess_bloch(&bloch_vector(&initial.to_density()), params, helicity, times)
}

/// Rotates the time-qubit basis of a 4x4 operator about `tau_z`:
/// conjugation by `exp(-i (angle/2) tau_z) (x) I`. A quarter turn maps
/// `tau_x (x) M` terms into `tau_y (x) M` while preserving spectrum and
/// algebra.
pub fn representation_rotate(h: &ComplexMatrix, angle: f64) -> Result<ComplexMatrix> {
    if h.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: "4",
            got: h.dim(),
        });
    }
    let u_t = pauli(PauliAxis::Z)
        .scale(Complex64::new(0.5, 0.0))
        .expm_i(angle)?;
    let u = u_t.tensor(&ComplexMatrix::identity(2).expect("2x2"))?;
    Ok(&(&u * h) * &u.adjoint())
}

/// Field-axis diagnostic for a traceless Hermitian 2x2 operator
/// `h = b . tau`: returns the unit axis and whether it is transverse
/// (equatorial), i.e. `|b_z| / |b| < 1e-10`. Eigenstates are equal-weight
/// superpositions of the two temporal orientations exactly in the
/// transverse case.
pub fn majorana_axis_check(h2: &ComplexMatrix) -> Result<([f64; 3], bool)> {
    if h2.dim() != 2 {
        return Err(Error::InvalidDimension {
            expected: "2",
            got: h2.dim(),
        });
    }
    let defect = h2.hermiticity_defect();
    if defect > HERM_TOL {
        return Err(Error::Domain(format!(
            "axis check requires a Hermitian input (defect {defect:.3e})"
        )));
    }
    let tr = h2.trace();
    if tr.norm() > HERM_TOL {
        return Err(Error::Domain(format!(
            "axis check requires a traceless input (trace {tr})"
        )));
    }
    let component = |axis| ((h2 * &pauli(axis)).trace().re) / 2.0;
    let b = [
        component(PauliAxis::X),
        component(PauliAxis::Y),
        component(PauliAxis::Z),
    ];
    let mag = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    if mag == 0.0 {
        return Err(Error::Degenerate("zero field has no axis".into()));
    }
    let axis = [b[0] / mag, b[1] / mag, b[2] / mag];
    let transverse = axis[2].abs() < 1e-10;
    Ok((axis, transverse))
}
