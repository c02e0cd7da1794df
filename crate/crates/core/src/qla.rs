//! Dense complex linear algebra for the 2x2 and 4x4 operators the rest of
//! the crate is built on: products, adjoints, Kronecker products, Hermitian
//! eigendecomposition, unitary exponentials, and the partial trace.
//!
//! Composite operators and states use a fixed Kronecker ordering: the
//! time-qubit factor is always the LEFT factor, so the 4-dimensional basis
//! is |+up>, |+down>, |-up>, |-down>. Every tensor product in the crate goes
//! through [`ComplexMatrix::tensor`] / [`StateVector::tensor`], which pin
//! that convention in one place.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Tolerance for Hermiticity and state-invariant checks.
pub const HERM_TOL: f64 = 1e-12;
/// Eigenvalue floor below which a density matrix is rejected as non-positive.
pub const EIG_FLOOR: f64 = -1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension {
            expected: "2 or 4",
            got: dim,
        })
    }
}

/// Dense square complex matrix of dimension 2 or 4, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![C_ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, C_ONE);
        }
        Ok(m)
    }

    /// Builds a matrix from row arrays; the dimension is the array size.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Result<Self> {
        check_dim(N)?;
        let mut data = Vec::with_capacity(N * N);
        for row in rows.iter() {
            data.extend_from_slice(row);
        }
        Ok(Self { dim: N, data })
    }

    /// Outer product `ket * bra^dagger` of two equal-length vectors.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::InvalidDimension {
                expected: "equal lengths",
                got: bra.len(),
            });
        }
        let dim = ket.len();
        let mut m = Self::zeros(dim)?;
        for (i, k) in ket.iter().enumerate() {
            for (j, b) in bra.iter().enumerate() {
                m.set(i, j, k * b.conj());
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim).expect("dim already validated");
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(j, i).conj());
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Matrix-vector product on raw amplitudes (no normalization contract).
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dim");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Applies the matrix to a normalized state, revalidating the result.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        StateVector::new(self.mul_vec(psi.amps()))
    }

    /// Largest entrywise modulus of the difference `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max |M - M^dagger| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Max |M^dagger M - I| over all entries.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.adjoint() * self;
        let id = Self::identity(self.dim).expect("dim already validated");
        prod.max_abs_diff(&id)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Kronecker product of two 2x2 matrices, left factor first:
    /// `(A (x) B)[2a+s][2b+t] = A[a][b] * B[s][t]`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.dim != 2 {
            return Err(Error::InvalidDimension {
                expected: "2",
                got: self.dim,
            });
        }
        if other.dim != 2 {
            return Err(Error::InvalidDimension {
                expected: "2",
                got: other.dim,
            });
        }
        let mut m = Self::zeros(4)?;
        for a in 0..2 {
            for b in 0..2 {
                for s in 0..2 {
                    for t in 0..2 {
                        m.set(2 * a + s, 2 * b + t, self.get(a, b) * other.get(s, t));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations (convergence when the off-diagonal norm drops below 1e-14,
    /// at most 100 sweeps).
    ///
    /// Returns eigenvalues in ascending order together with a unitary matrix
    /// whose k-th column is the k-th eigenvector. Each eigenvector is
    /// phase-fixed so its first nonzero component is real positive; equal
    /// eigenvalues are ordered by ascending lexicographic comparison of the
    /// phase-fixed components.
    pub fn herm_eig(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        let defect = self.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let n = self.dim;
        let mut a = self.clone();
        let mut v = Self::identity(n)?;

        for _ in 0..JACOBI_MAX_SWEEPS {
            if off_diag_norm(&a) < JACOBI_OFF_TOL {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    let beta = apq.norm();
                    if beta == 0.0 {
                        continue;
                    }
                    let alpha = a.get(p, p).re;
                    let gamma = a.get(q, q).re;
                    let phi = apq.arg();
                    // Smaller-angle root of t^2 + 2*tau*t - 1 = 0.
                    let tau = (alpha - gamma) / (2.0 * beta);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // G = diag(1, e^{-i phi}) . [[c, -s], [s, c]] embedded at (p, q);
                    // G^dagger A G zeroes the (p, q) entry.
                    let mut g = Self::identity(n)?;
                    let em = Complex64::from_polar(1.0, -phi);
                    g.set(p, p, Complex64::new(c, 0.0));
                    g.set(p, q, Complex64::new(-s, 0.0));
                    g.set(q, p, em * s);
                    g.set(q, q, em * c);

                    a = &(&g.adjoint() * &a) * &g;
                    v = &v * &g;
                }
            }
        }

        let mut vals: Vec<f64> = (0..n).map(|k| a.get(k, k).re).collect();
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|k| phase_fix((0..n).map(|i| v.get(i, k)).collect()))
            .collect();

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            vals[i]
                .partial_cmp(&vals[j])
                .expect("eigenvalues are finite")
                .then_with(|| lex_cmp(&cols[i], &cols[j]))
        });
        vals = order.iter().map(|&k| vals[k]).collect();
        cols = order.iter().map(|&k| cols[k].clone()).collect();

        let mut vec_mat = Self::zeros(n)?;
        for (k, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                vec_mat.set(i, k, *z);
            }
        }
        Ok((vals, vec_mat))
    }

    /// `exp(-i H t)` for Hermitian `H`, computed by spectral decomposition:
    /// `sum_k exp(-i lambda_k t) v_k v_k^dagger`.
    pub fn expm_i(&self, t: f64) -> Result<Self> {
        let (vals, vecs) = self.herm_eig()?;
        let n = self.dim;
        let mut u = Self::zeros(n)?;
        for (k, &lambda) in vals.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -lambda * t);
            let col: Vec<Complex64> = (0..n).map(|i| vecs.get(i, k)).collect();
            u = &u + &Self::outer(&col, &col)?.scale(phase);
        }
        Ok(u)
    }
}

fn off_diag_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Rescales a vector by a global phase so its first component with modulus
/// above 1e-12 becomes real positive.
fn phase_fix(mut col: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12) {
        let phase = lead / lead.norm();
        let correction = phase.conj();
        for z in col.iter_mut() {
            *z *= correction;
        }
    }
    col
}

fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x
            .re
            .partial_cmp(&y.re)
            .expect("finite")
            .then(x.im.partial_cmp(&y.im).expect("finite"));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut m = ComplexMatrix::zeros(n).expect("dim already validated");
        for i in 0..n {
            for j in 0..n {
                let mut acc = C_ZERO;
                for k in 0..n {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                m.set(i, j, acc);
            }
        }
        m
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Normalized ket of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within 1e-12.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        check_dim(amps.len())?;
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > HERM_TOL {
            return Err(Error::InvalidState(format!(
                "ket is not normalized (|psi|^2 = {norm_sqr})"
            )));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        check_dim(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Kronecker product of two 2-dimensional kets, left factor first.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.dim() != 2 || other.dim() != 2 {
            return Err(Error::InvalidDimension {
                expected: "2",
                got: if self.dim() != 2 { self.dim() } else { other.dim() },
            });
        }
        let mut amps = Vec::with_capacity(4);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::new(amps)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            m: ComplexMatrix::outer(&self.amps, &self.amps).expect("equal lengths"),
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), unit trace (1e-12), and positivity
    /// (eigenvalues above -1e-10).
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > HERM_TOL || tr.im.abs() > HERM_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let (vals, _) = m.herm_eig()?;
        if let Some(&lo) = vals.first() {
            if lo < EIG_FLOOR {
                return Err(Error::InvalidState(format!(
                    "density matrix has negative eigenvalue {lo:.3e}"
                )));
            }
        }
        Ok(Self { m })
    }

    pub fn from_state(psi: &StateVector) -> Self {
        psi.to_density()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    /// Traces out the right (system/spin) factor of a 4x4 composite state:
    /// `(rho_T)[a][b] = sum_s rho[2a+s][2b+s]`.
    pub fn partial_trace_system(&self) -> Result<DensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::InvalidDimension {
                expected: "4",
                got: self.dim(),
            });
        }
        let mut m = ComplexMatrix::zeros(2)?;
        for a in 0..2 {
            for b in 0..2 {
                let val = self.m.get(2 * a, 2 * b) + self.m.get(2 * a + 1, 2 * b + 1);
                m.set(a, b, val);
            }
        }
        DensityMatrix::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timequbit::{pauli, PauliAxis};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(matches!(
            ComplexMatrix::zeros(3),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(StateVector::new(vec![C_ONE]).is_err());
    }

    #[test]
    fn tensor_identity_case() {
        let i2 = ComplexMatrix::identity(2).unwrap();
        let i4 = ComplexMatrix::identity(4).unwrap();
        assert!(i2.tensor(&i2).unwrap().max_abs_diff(&i4) == 0.0);
    }

    #[test]
    fn tensor_tau_z_identity() {
        // Hand-expanded Kronecker product: diag(1, 1, -1, -1).
        let tz = pauli(PauliAxis::Z);
        let i2 = ComplexMatrix::identity(2).unwrap();
        let got = tz.tensor(&i2).unwrap();
        let want = ComplexMatrix::from_rows([
            [C_ONE, C_ZERO, C_ZERO, C_ZERO],
            [C_ZERO, C_ONE, C_ZERO, C_ZERO],
            [C_ZERO, C_ZERO, -C_ONE, C_ZERO],
            [C_ZERO, C_ZERO, C_ZERO, -C_ONE],
        ])
        .unwrap();
        assert!(got.max_abs_diff(&want) == 0.0);
    }

    #[test]
    fn tensor_tau_z_sigma_z() {
        // Hand-expanded Kronecker product: diag(1, -1, -1, 1).
        let tz = pauli(PauliAxis::Z);
        let got = tz.tensor(&tz).unwrap();
        let want = ComplexMatrix::from_rows([
            [C_ONE, C_ZERO, C_ZERO, C_ZERO],
            [C_ZERO, -C_ONE, C_ZERO, C_ZERO],
            [C_ZERO, C_ZERO, -C_ONE, C_ZERO],
            [C_ZERO, C_ZERO, C_ZERO, C_ONE],
        ])
        .unwrap();
        assert!(got.max_abs_diff(&want) == 0.0);
    }

    #[test]
    fn tensor_rejects_4x4_operands() {
        let i4 = ComplexMatrix::identity(4).unwrap();
        let i2 = ComplexMatrix::identity(2).unwrap();
        assert!(matches!(
            i4.tensor(&i2),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            i2.tensor(&i4),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn herm_eig_diagonal_input() {
        let (vals, vecs) = pauli(PauliAxis::Z).herm_eig().unwrap();
        assert_eq!(vals, vec![-1.0, 1.0]);
        // Ascending order puts the -1 eigenvector (0, 1) first.
        assert_eq!(vecs.get(0, 0), C_ZERO);
        assert_eq!(vecs.get(1, 0), C_ONE);
        assert_eq!(vecs.get(0, 1), C_ONE);
        assert_eq!(vecs.get(1, 1), C_ZERO);
    }

    #[test]
    fn herm_eig_tau_x() {
        let (vals, vecs) = pauli(PauliAxis::X).herm_eig().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // (1, -1)/sqrt(2) for -1, (1, 1)/sqrt(2) for +1, leading entry positive.
        assert!((vecs.get(0, 0) - c(s, 0.0)).norm() < 1e-12);
        assert!((vecs.get(1, 0) - c(-s, 0.0)).norm() < 1e-12);
        assert!((vecs.get(0, 1) - c(s, 0.0)).norm() < 1e-12);
        assert!((vecs.get(1, 1) - c(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn herm_eig_effective_field_magnitude() {
        // m tau_z + q tau_x has eigenvalues +/- sqrt(m^2 + q^2).
        let m = 3.0;
        let q = 4.0;
        let h = &pauli(PauliAxis::Z).scale(c(m, 0.0)) + &pauli(PauliAxis::X).scale(c(q, 0.0));
        let (vals, _) = h.herm_eig().unwrap();
        assert!((vals[0] + 5.0).abs() < 1e-12);
        assert!((vals[1] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows([[C_ZERO, C_ONE], [C_ZERO, C_ZERO]]).unwrap();
        assert!(matches!(m.herm_eig(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn expm_i_at_zero_is_identity() {
        let h = &pauli(PauliAxis::X) + &pauli(PauliAxis::Z).scale(c(0.3, 0.0));
        let u = h.expm_i(0.0).unwrap();
        let id = ComplexMatrix::identity(2).unwrap();
        assert!(u.max_abs_diff(&id) < 1e-14);
    }

    #[test]
    fn expm_i_zeeman_phases() {
        // exp(-i (Omega/2) sigma_z T) = diag(e^{-i Omega T/2}, e^{+i Omega T/2}).
        let omega = 1.7;
        let t = 2.3;
        let h = pauli(PauliAxis::Z).scale(c(omega / 2.0, 0.0));
        let u = h.expm_i(t).unwrap();
        let want = ComplexMatrix::from_rows([
            [Complex64::from_polar(1.0, -omega * t / 2.0), C_ZERO],
            [C_ZERO, Complex64::from_polar(1.0, omega * t / 2.0)],
        ])
        .unwrap();
        assert!(u.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn expm_i_tau_x_at_pi() {
        // Closed form e^{-i theta n.tau} = cos(theta) I - i sin(theta) n.tau,
        // so theta = pi gives -I.
        let u = pauli(PauliAxis::X).expm_i(std::f64::consts::PI).unwrap();
        let want = ComplexMatrix::identity(2).unwrap().scale(-C_ONE);
        assert!(u.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_t = StateVector::normalized(vec![c(1.0, 0.0), c(0.5, 0.5)])
            .unwrap()
            .to_density();
        let rho_s = StateVector::normalized(vec![c(0.2, -0.1), c(0.9, 0.0)])
            .unwrap()
            .to_density();
        let joint = DensityMatrix::new(rho_t.matrix().tensor(rho_s.matrix()).unwrap()).unwrap();
        let back = joint.partial_trace_system().unwrap();
        assert!(back.matrix().max_abs_diff(rho_t.matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_of_maximally_entangled_state() {
        // Hand computation: |Phi+><Phi+| traced over the system is I/2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = StateVector::new(vec![c(s, 0.0), C_ZERO, C_ZERO, c(s, 0.0)]).unwrap();
        let reduced = phi.to_density().partial_trace_system().unwrap();
        let half = ComplexMatrix::identity(2).unwrap().scale(c(0.5, 0.0));
        assert!(reduced.matrix().max_abs_diff(&half) < 1e-14);
    }

    #[test]
    fn partial_trace_of_basis_state() {
        let psi = StateVector::new(vec![C_ONE, C_ZERO, C_ZERO, C_ZERO]).unwrap();
        let reduced = psi.to_density().partial_trace_system().unwrap();
        let want =
            ComplexMatrix::from_rows([[C_ONE, C_ZERO], [C_ZERO, C_ZERO]]).unwrap();
        assert!(reduced.matrix().max_abs_diff(&want) == 0.0);
    }

    #[test]
    fn density_matrix_rejects_bad_inputs() {
        // Trace 2.
        let double = ComplexMatrix::identity(2).unwrap();
        assert!(matches!(
            DensityMatrix::new(double),
            Err(Error::InvalidState(_))
        ));
        // Non-Hermitian.
        let skew = ComplexMatrix::from_rows([[c(0.5, 0.0), C_ONE], [C_ZERO, c(0.5, 0.0)]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::InvalidState(_))
        ));
        // Hermitian, trace 1, but indefinite.
        let indefinite =
            ComplexMatrix::from_rows([[c(1.5, 0.0), C_ZERO], [C_ZERO, c(-0.5, 0.0)]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(indefinite),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn state_vector_validation() {
        assert!(StateVector::new(vec![C_ONE, C_ONE]).is_err());
        assert!(StateVector::normalized(vec![C_ZERO, C_ZERO]).is_err());
        let psi = StateVector::normalized(vec![C_ONE, C_ONE]).unwrap();
        assert!((psi.inner(&psi).re - 1.0).abs() < 1e-15);
    }
}
