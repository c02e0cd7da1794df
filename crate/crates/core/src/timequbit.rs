//! The time qubit: Pauli operators on the temporal-orientation space,
//! Bloch-angle state construction, Bloch-vector extraction, and rigid
//! rotations of states and Bloch vectors.
//!
//! Basis convention: |+> = (1, 0) labels forward evolution, |-> = (0, 1)
//! backward. The north pole of the Bloch sphere is |+>, the equator holds
//! coherent superpositions of the two orientations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qla::{ComplexMatrix, DensityMatrix, StateVector, C_I, C_ONE, C_ZERO};

/// Axis label for the Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The standard Pauli matrix in the {|+>, |->} basis.
pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let rows = match axis {
        PauliAxis::X => [[C_ZERO, C_ONE], [C_ONE, C_ZERO]],
        PauliAxis::Y => [[C_ZERO, -C_I], [C_I, C_ZERO]],
        PauliAxis::Z => [[C_ONE, C_ZERO], [C_ZERO, -C_ONE]],
    };
    ComplexMatrix::from_rows(rows).expect("2x2 is a supported dimension")
}

/// `n . tau = n_x tau_x + n_y tau_y + n_z tau_z` for a real 3-vector `n`.
pub fn pauli_dot(n: [f64; 3]) -> ComplexMatrix {
    let re = |x: f64| Complex64::new(x, 0.0);
    let x = pauli(PauliAxis::X).scale(re(n[0]));
    let y = pauli(PauliAxis::Y).scale(re(n[1]));
    let z = pauli(PauliAxis::Z).scale(re(n[2]));
    &(&x + &y) + &z
}

/// Real 3-vector image of a qubit density matrix; |r| <= 1, with pure
/// states on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Polar angles (theta, phi) on the Bloch sphere, theta in [0, pi] and
/// phi in [0, 2*pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::Domain(format!(
                "phi must lie in [0, 2*pi), got {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `cos(theta/2)|+> + e^{i phi} sin(theta/2)|->`.
///
/// Phase convention: the |+> coefficient is real nonnegative; at
/// theta = pi, where it vanishes, the |-> coefficient is made real
/// nonnegative instead.
pub fn state_from_angles(angles: &BlochAngles) -> StateVector {
    if angles.theta == std::f64::consts::PI {
        return StateVector::new(vec![C_ZERO, C_ONE]).expect("basis ket is normalized");
    }
    let half = angles.theta / 2.0;
    let amps = vec![
        Complex64::new(half.cos(), 0.0),
        Complex64::from_polar(half.sin(), angles.phi),
    ];
    StateVector::new(amps).expect("cos/sin parametrization is normalized")
}

/// Bloch vector `r_k = Tr(rho tau_k)`; the imaginary residue (at most
/// 1e-12 for a valid density matrix) is discarded.
pub fn bloch_vector(rho: &DensityMatrix) -> BlochVector {
    debug_assert_eq!(rho.dim(), 2);
    let component = |axis| {
        let m = rho.matrix() * &pauli(axis);
        m.trace().re
    };
    BlochVector::new(
        component(PauliAxis::X),
        component(PauliAxis::Y),
        component(PauliAxis::Z),
    )
}

/// `rho = (I + r . tau) / 2`; errors when |r| > 1 beyond tolerance.
pub fn density_from_bloch(r: &BlochVector) -> Result<DensityMatrix> {
    let norm = r.norm();
    if norm > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "Bloch vector must satisfy |r| <= 1, got |r| = {norm}"
        )));
    }
    let half = Complex64::new(0.5, 0.0);
    let m = (&ComplexMatrix::identity(2).expect("2x2") + &pauli_dot([r.x, r.y, r.z])).scale(half);
    DensityMatrix::new(m)
}

fn check_unit_axis(axis: [f64; 3]) -> Result<()> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "rotation axis must be a unit vector, got |n| = {norm}"
        )));
    }
    Ok(())
}

/// The rotation unitary `exp(-i (angle/2) n . tau)`, in closed form.
pub fn rotation_unitary(axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    check_unit_axis(axis)?;
    let half = angle / 2.0;
    let id = ComplexMatrix::identity(2).expect("2x2");
    let cos_part = id.scale(Complex64::new(half.cos(), 0.0));
    let sin_part = pauli_dot(axis).scale(Complex64::new(0.0, -half.sin()));
    Ok(&cos_part + &sin_part)
}

/// Rotates a Bloch vector rigidly about `axis` by `angle` (right-hand
/// rule), matching conjugation of the state by [`rotation_unitary`].
pub fn rotate_bloch(r: &BlochVector, axis: [f64; 3], angle: f64) -> Result<BlochVector> {
    check_unit_axis(axis)?;
    let (sin, cos) = angle.sin_cos();
    let [nx, ny, nz] = axis;
    let cross = [
        ny * r.z - nz * r.y,
        nz * r.x - nx * r.z,
        nx * r.y - ny * r.x,
    ];
    let ndot = nx * r.x + ny * r.y + nz * r.z;
    Ok(BlochVector::new(
        r.x * cos + cross[0] * sin + nx * ndot * (1.0 - cos),
        r.y * cos + cross[1] * sin + ny * ndot * (1.0 - cos),
        r.z * cos + cross[2] * sin + nz * ndot * (1.0 - cos),
    ))
}

/// Applies `exp(-i (angle/2) n . tau)` to a ket.
pub fn rotate_state(psi: &StateVector, axis: [f64; 3], angle: f64) -> Result<StateVector> {
    if psi.dim() != 2 {
        return Err(Error::InvalidDimension {
            expected: "2",
            got: psi.dim(),
        });
    }
    rotation_unitary(axis, angle)?.apply(psi)
}
