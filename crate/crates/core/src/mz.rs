//! Mach-Zehnder realization of the time qubit: the two interferometer
//! arms carry fields of equal magnitude and opposite sign, so the path
//! degree of freedom labels the sign of the evolution generator. The
//! second beam splitter reads the path out in the parity basis, making
//! the output ports the time-even and time-odd channels.

use num_complex::Complex64;

use crate::dynamics::{h_plus_minus, kraus_pair, ControlledHamiltonian, ZeemanParams};
use crate::error::{Error, Result};
use crate::qla::{ComplexMatrix, DensityMatrix, StateVector};

/// Interferometer configuration: arm coupling, traversal time, input spin
/// state, and which-path dephasing strength `lambda` in [0, 1].
#[derive(Debug, Clone)]
pub struct MzConfig {
    zeeman: ZeemanParams,
    traversal_time: f64,
    spin_in: StateVector,
    dephasing: f64,
}

impl MzConfig {
    pub fn new(
        zeeman: ZeemanParams,
        traversal_time: f64,
        spin_in: StateVector,
        dephasing: f64,
    ) -> Result<Self> {
        if traversal_time < 0.0 {
            return Err(Error::Domain(format!(
                "traversal time must be nonnegative, got {traversal_time}"
            )));
        }
        if spin_in.dim() != 2 {
            return Err(Error::InvalidDimension {
                expected: "2",
                got: spin_in.dim(),
            });
        }
        if !(0.0..=1.0).contains(&dephasing) {
            return Err(Error::Domain(format!(
                "dephasing must lie in [0, 1], got {dephasing}"
            )));
        }
        Ok(Self {
            zeeman,
            traversal_time,
            spin_in,
            dephasing,
        })
    }

    pub fn zeeman(&self) -> &ZeemanParams {
        &self.zeeman
    }

    pub fn traversal_time(&self) -> f64 {
        self.traversal_time
    }

    pub fn spin_in(&self) -> &StateVector {
        &self.spin_in
    }

    pub fn dephasing(&self) -> f64 {
        self.dephasing
    }
}

/// Port detection probabilities and the conditional spin amplitudes.
///
/// `spin_out_d1` / `spin_out_d2` are the unnormalized coherent-path
/// amplitudes `U_even chi0` and `U_odd chi0`. At `lambda = 0` the port
/// probabilities are exactly their squared norms; for `lambda > 0` the
/// conditional spin state at a port is mixed and the probabilities come
/// from the dephased density matrix instead.
#[derive(Debug, Clone)]
pub struct PortResult {
    pub p_d1: f64,
    pub p_d2: f64,
    pub spin_out_d1: [Complex64; 2],
    pub spin_out_d2: [Complex64; 2],
}

/// The symmetric 50/50 beam splitter `(1/sqrt 2) [[1, 1], [1, -1]]`,
/// self-inverse, mapping the input port onto the parity basis.
pub fn beamsplitter() -> ComplexMatrix {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_rows([[s, s], [s, -s]]).expect("2x2")
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Runs the interferometer: beam splitter, opposite-field arms for the
/// traversal time, optional which-path dephasing, second beam splitter,
/// port readout.
pub fn run_interferometer(cfg: &MzConfig) -> PortResult {
    let ch = cfg.zeeman.controlled();
    let (u_even, u_odd) = kraus_pair(&ch, cfg.traversal_time);
    let amp1 = u_even.mul_vec(cfg.spin_in.amps());
    let amp2 = u_odd.mul_vec(cfg.spin_in.amps());

    let (p_d1, p_d2) = if cfg.dephasing == 0.0 {
        (norm_sqr(&amp1), norm_sqr(&amp2))
    } else {
        dephased_port_probabilities(cfg, &ch)
    };

    PortResult {
        p_d1,
        p_d2,
        spin_out_d1: [amp1[0], amp1[1]],
        spin_out_d2: [amp2[0], amp2[1]],
    }
}

/// Density-matrix route: build the post-arm composite state, scale the
/// path-coherence blocks by `1 - lambda`, apply the second beam splitter,
/// and read the diagonal path blocks.
fn dephased_port_probabilities(cfg: &MzConfig, ch: &ControlledHamiltonian) -> (f64, f64) {
    let (hp, hm) = h_plus_minus(ch);
    let up = hp.expm_i(cfg.traversal_time).expect("Hermitian");
    let um = hm.expm_i(cfg.traversal_time).expect("Hermitian");
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    // |Psi(T)> = (|+> (x) U+ chi0 + |-> (x) U- chi0) / sqrt 2.
    let a: Vec<Complex64> = up.mul_vec(cfg.spin_in.amps()).iter().map(|z| z * s).collect();
    let b: Vec<Complex64> = um.mul_vec(cfg.spin_in.amps()).iter().map(|z| z * s).collect();
    let psi = [a[0], a[1], b[0], b[1]];
    let mut rho = ComplexMatrix::outer(&psi, &psi).expect("equal lengths");

    let keep = Complex64::new(1.0 - cfg.dephasing, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            if (i < 2) != (j < 2) {
                rho.set(i, j, rho.get(i, j) * keep);
            }
        }
    }

    let bs2 = beamsplitter()
        .tensor(&ComplexMatrix::identity(2).expect("2x2"))
        .expect("2x2 operands");
    let rho_out = &(&bs2 * &rho) * &bs2.adjoint();
    let p_d1 = (rho_out.get(0, 0) + rho_out.get(1, 1)).re;
    let p_d2 = (rho_out.get(2, 2) + rho_out.get(3, 3)).re;
    (p_d1, p_d2)
}

/// One row of a fringe sweep, keyed by the Larmor phase `Omega T`.
#[derive(Debug, Clone, Copy)]
pub struct FringePoint {
    pub phase: f64,
    pub p_d1: f64,
    pub p_d2: f64,
}

/// Sweeps the interferometer over `steps` uniformly spaced Larmor phases
/// from 0 to `phase_max` inclusive. Port probabilities depend on the arms
/// only through the phase, so each point is evaluated at unit frequency
/// with the traversal time set to the phase.
pub fn fringe_sweep(cfg: &MzConfig, phase_max: f64, steps: usize) -> Result<Vec<FringePoint>> {
    if steps < 2 {
        return Err(Error::Domain(format!(
            "fringe sweep needs at least 2 steps, got {steps}"
        )));
    }
    if phase_max < 0.0 {
        return Err(Error::Domain(format!(
            "phase_max must be nonnegative, got {phase_max}"
        )));
    }
    let unit = ZeemanParams::new(1.0, cfg.zeeman.axis())?;
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let phase = phase_max * k as f64 / (steps - 1) as f64;
        let point_cfg = MzConfig::new(unit, phase, cfg.spin_in.clone(), cfg.dephasing)?;
        let ports = run_interferometer(&point_cfg);
        rows.push(FringePoint {
            phase,
            p_d1: ports.p_d1,
            p_d2: ports.p_d2,
        });
    }
    Ok(rows)
}

/// Phase damping of the path coherences: the Bloch map
/// `(r_x, r_y, r_z) -> ((1-lambda) r_x, (1-lambda) r_y, r_z)`,
/// i.e. the off-diagonal entries scaled by `1 - lambda`.
pub fn which_path_dephase(rho: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    if rho.dim() != 2 {
        return Err(Error::InvalidDimension {
            expected: "2",
            got: rho.dim(),
        });
    }
    let keep = Complex64::new(1.0 - lambda, 0.0);
    let mut m = rho.matrix().clone();
    m.set(0, 1, m.get(0, 1) * keep);
    m.set(1, 0, m.get(1, 0) * keep);
    DensityMatrix::new(m)
}
