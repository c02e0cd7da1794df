//! CHSH machinery for the time-spin pair: the maximally entangled state,
//! dichotomic observables on either factor, exact correlations, the CHSH
//! combination, Born-rule sampling with finite shots, and the exhaustive
//! local-hidden-variable table.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qla::{ComplexMatrix, DensityMatrix, StateVector, C_ZERO};
use crate::rng::SplitMix64;
use crate::timequbit::pauli_dot;

/// Which factor of the composite space an observable acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Time,
    Spin,
}

/// A dichotomic observable `n . tau` (time side) or `n . sigma` (spin
/// side), defined by a unit Bloch direction.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementSetting {
    direction: [f64; 3],
    side: Side,
}

impl MeasurementSetting {
    pub fn new(direction: [f64; 3], side: Side) -> Result<Self> {
        let norm =
            (direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2])
                .sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "measurement direction must be a unit vector, got |n| = {norm}"
            )));
        }
        Ok(Self { direction, side })
    }

    pub fn time(direction: [f64; 3]) -> Result<Self> {
        Self::new(direction, Side::Time)
    }

    pub fn spin(direction: [f64; 3]) -> Result<Self> {
        Self::new(direction, Side::Spin)
    }

    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

/// The four correlators and their CHSH combination
/// `s = e00 + e01 + e10 - e11`.
#[derive(Debug, Clone, Copy)]
pub struct ChshResult {
    pub e00: f64,
    pub e01: f64,
    pub e10: f64,
    pub e11: f64,
    pub s: f64,
}

/// Outcome counts of a sampled correlation measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub n_pp: u64,
    pub n_pm: u64,
    pub n_mp: u64,
    pub n_mm: u64,
    pub shots: u64,
}

/// `(|+> (x) |up> + |-> (x) |down>) / sqrt 2`, amplitudes
/// `(1/sqrt 2, 0, 0, 1/sqrt 2)` in the time-left basis ordering.
pub fn bell_state() -> StateVector {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::new(vec![s, C_ZERO, C_ZERO, s]).expect("normalized by construction")
}

/// The 2x2 observable `direction . (tau or sigma)`: Hermitian with
/// eigenvalues +/-1.
pub fn observable(setting: &MeasurementSetting) -> ComplexMatrix {
    pauli_dot(setting.direction)
}

/// The settings that maximize the CHSH value on the entangled state:
/// `a0 = z`, `a1 = x` on the time side and `b0 = (z+x)/sqrt 2`,
/// `b1 = (z-x)/sqrt 2` on the spin side.
pub fn tsirelson_settings() -> (
    MeasurementSetting,
    MeasurementSetting,
    MeasurementSetting,
    MeasurementSetting,
) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (
        MeasurementSetting::time([0.0, 0.0, 1.0]).expect("unit"),
        MeasurementSetting::time([1.0, 0.0, 0.0]).expect("unit"),
        MeasurementSetting::spin([s, 0.0, s]).expect("unit"),
        MeasurementSetting::spin([-s, 0.0, s]).expect("unit"),
    )
}

fn check_sides(a: &MeasurementSetting, b: &MeasurementSetting) -> Result<()> {
    if a.side != Side::Time || b.side != Side::Spin {
        return Err(Error::Domain(
            "correlation needs one time-side and one spin-side setting, in that order".into(),
        ));
    }
    Ok(())
}

fn check_dim4(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: "4",
            got: rho.dim(),
        });
    }
    Ok(())
}

/// `E = Tr[rho (A (x) B)]`, real in [-1, 1].
pub fn correlation(
    rho: &DensityMatrix,
    a: &MeasurementSetting,
    b: &MeasurementSetting,
) -> Result<f64> {
    check_dim4(rho)?;
    check_sides(a, b)?;
    let ab = observable(a).tensor(&observable(b))?;
    Ok((rho.matrix() * &ab).trace().re)
}

/// Evaluates the four correlators and the CHSH combination.
pub fn chsh(
    rho: &DensityMatrix,
    a0: &MeasurementSetting,
    a1: &MeasurementSetting,
    b0: &MeasurementSetting,
    b1: &MeasurementSetting,
) -> Result<ChshResult> {
    let e00 = correlation(rho, a0, b0)?;
    let e01 = correlation(rho, a0, b1)?;
    let e10 = correlation(rho, a1, b0)?;
    let e11 = correlation(rho, a1, b1)?;
    Ok(ChshResult {
        e00,
        e01,
        e10,
        e11,
        s: e00 + e01 + e10 - e11,
    })
}

/// Joint Born probabilities `p(alpha, beta) = Tr[rho (P_alpha (x) Q_beta)]`
/// over the +/-1 eigenprojectors of the two observables, in the order
/// `(++, +-, -+, --)`. Probabilities within -1e-12 of zero are clamped.
pub fn joint_probabilities(
    rho: &DensityMatrix,
    a: &MeasurementSetting,
    b: &MeasurementSetting,
) -> Result<[f64; 4]> {
    check_dim4(rho)?;
    check_sides(a, b)?;
    let id = ComplexMatrix::identity(2).expect("2x2");
    let half = Complex64::new(0.5, 0.0);
    let proj = |obs: &ComplexMatrix, sign: f64| -> ComplexMatrix {
        (&id + &obs.scale(Complex64::new(sign, 0.0))).scale(half)
    };
    let oa = observable(a);
    let ob = observable(b);
    let mut out = [0.0; 4];
    for (k, (sa, sb)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .enumerate()
    {
        let joint = proj(&oa, *sa).tensor(&proj(&ob, *sb))?;
        let p = (rho.matrix() * &joint).trace().re;
        if p < -1e-12 {
            return Err(Error::InvalidState(format!(
                "joint outcome probability is negative ({p:.3e})"
            )));
        }
        out[k] = p.max(0.0);
    }
    Ok(out)
}

/// Samples `shots` joint outcomes from the Born distribution with a
/// seeded SplitMix64 generator and inverse-CDF lookup, and returns the
/// counts together with the estimator
/// `e_hat = (n_pp - n_pm - n_mp + n_mm) / shots`.
pub fn sample_correlation(
    rho: &DensityMatrix,
    a: &MeasurementSetting,
    b: &MeasurementSetting,
    shots: u64,
    seed: u64,
) -> Result<(ShotRecord, f64)> {
    if shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }
    let p = joint_probabilities(rho, a, b)?;
    let total: f64 = p.iter().sum();
    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        let u = rng.next_f64() * total;
        let mut acc = 0.0;
        let mut outcome = 3;
        for (k, &pk) in p.iter().enumerate() {
            acc += pk;
            if u < acc {
                outcome = k;
                break;
            }
        }
        counts[outcome] += 1;
    }
    let record = ShotRecord {
        n_pp: counts[0],
        n_pm: counts[1],
        n_mp: counts[2],
        n_mm: counts[3],
        shots,
    };
    let e_hat = (counts[0] as f64 - counts[1] as f64 - counts[2] as f64 + counts[3] as f64)
        / shots as f64;
    Ok((record, e_hat))
}

/// One deterministic local strategy: pre-assigned +/-1 outcomes for both
/// settings on each side, and the CHSH value they produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhvStrategy {
    pub a0: i8,
    pub a1: i8,
    pub b0: i8,
    pub b1: i8,
    pub s: f64,
}

/// Enumerates all 16 deterministic assignments and the largest |S| they
/// reach (exactly 2).
pub fn lhv_extremes() -> (Vec<LhvStrategy>, f64) {
    let signs = [1i8, -1i8];
    let mut rows = Vec::with_capacity(16);
    let mut max_abs: f64 = 0.0;
    for &a0 in &signs {
        for &a1 in &signs {
            for &b0 in &signs {
                for &b1 in &signs {
                    let s = (a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1) as f64;
                    max_abs = max_abs.max(s.abs());
                    rows.push(LhvStrategy { a0, a1, b0, b1, s });
                }
            }
        }
    }
    (rows, max_abs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qla::C_ONE;
    use crate::timequbit::{density_from_bloch, BlochVector};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn bell_state_shape_and_norm() {
        let phi = bell_state();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((phi.amp(0).re - s).abs() < 1e-15);
        assert!(phi.amp(1) == C_ZERO && phi.amp(2) == C_ZERO);
        assert!((phi.amp(3).re - s).abs() < 1e-15);
    }

    #[test]
    fn bell_state_reduced_time_qubit_is_maximally_mixed() {
        let reduced = bell_state().to_density().partial_trace_system().unwrap();
        let half = ComplexMatrix::identity(2).unwrap().scale(Complex64::new(0.5, 0.0));
        assert!(reduced.matrix().max_abs_diff(&half) < 1e-14);
    }

    #[test]
    fn bell_state_zz_expectation() {
        let rho = bell_state().to_density();
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([0.0, 0.0, 1.0]).unwrap();
        assert!((correlation(&rho, &a, &b).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn observable_examples() {
        let tz = observable(&MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap());
        assert_eq!(tz.get(0, 0), C_ONE);
        assert_eq!(tz.get(1, 1), -C_ONE);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let diag = observable(&MeasurementSetting::spin([s, 0.0, s]).unwrap());
        // (sigma_z + sigma_x)/sqrt 2 entrywise.
        assert!((diag.get(0, 0).re - s).abs() < 1e-15);
        assert!((diag.get(0, 1).re - s).abs() < 1e-15);
        assert!((diag.get(1, 1).re + s).abs() < 1e-15);
    }

    #[test]
    fn observable_squares_to_identity() {
        let n = {
            let raw = [0.3f64, -0.8, 0.52];
            let len = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
            [raw[0] / len, raw[1] / len, raw[2] / len]
        };
        let obs = observable(&MeasurementSetting::time(n).unwrap());
        let id = ComplexMatrix::identity(2).unwrap();
        assert!((&obs * &obs).max_abs_diff(&id) < 1e-14);
    }

    #[test]
    fn observable_eigenvalues_are_plus_minus_one() {
        let obs = observable(&MeasurementSetting::time([0.6, 0.0, 0.8]).unwrap());
        let (vals, _) = obs.herm_eig().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn setting_rejects_non_unit_direction() {
        assert!(MeasurementSetting::time([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn correlation_rejects_side_mismatch() {
        let rho = bell_state().to_density();
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([0.0, 0.0, 1.0]).unwrap();
        assert!(correlation(&rho, &b, &a).is_err());
        assert!(correlation(&rho, &a, &a).is_err());
    }

    #[test]
    fn correlation_factorizes_on_product_states() {
        let rt = density_from_bloch(&BlochVector::new(0.2, -0.3, 0.5)).unwrap();
        let rs = density_from_bloch(&BlochVector::new(-0.1, 0.6, 0.3)).unwrap();
        let joint = DensityMatrix::new(rt.matrix().tensor(rs.matrix()).unwrap()).unwrap();
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([1.0, 0.0, 0.0]).unwrap();
        let e = correlation(&joint, &a, &b).unwrap();
        // <A>_T <B>_S = r_z^T * r_x^S.
        assert!((e - 0.5 * (-0.1)).abs() < 1e-13);
    }

    #[test]
    fn correlation_diagonal_setting_on_bell_state() {
        let rho = bell_state().to_density();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([s, 0.0, s]).unwrap();
        assert!((correlation(&rho, &a, &b).unwrap() - s).abs() < 1e-14);
    }

    #[test]
    fn chsh_saturates_tsirelson_on_bell_state() {
        let rho = bell_state().to_density();
        let (a0, a1, b0, b1) = tsirelson_settings();
        let out = chsh(&rho, &a0, &a1, &b0, &b1).unwrap();
        assert!((out.s - 2.0 * SQRT2).abs() < 1e-12);
        assert!((out.s - (out.e00 + out.e01 + out.e10 - out.e11)).abs() < 1e-14);
    }

    #[test]
    fn chsh_vanishes_on_maximally_mixed_state() {
        let quarter = ComplexMatrix::identity(4).unwrap().scale(Complex64::new(0.25, 0.0));
        let rho = DensityMatrix::new(quarter).unwrap();
        let (a0, a1, b0, b1) = tsirelson_settings();
        let out = chsh(&rho, &a0, &a1, &b0, &b1).unwrap();
        assert!(out.s.abs() < 1e-14);
    }

    #[test]
    fn joint_probabilities_of_bell_state_zz() {
        let rho = bell_state().to_density();
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([0.0, 0.0, 1.0]).unwrap();
        let p = joint_probabilities(&rho, &a, &b).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-14);
        assert!(p[1].abs() < 1e-14);
        assert!(p[2].abs() < 1e-14);
        assert!((p[3] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn sampling_is_deterministic_for_fixed_seed() {
        let rho = bell_state().to_density();
        let (a0, _, b0, _) = tsirelson_settings();
        let (rec1, e1) = sample_correlation(&rho, &a0, &b0, 10_000, 99).unwrap();
        let (rec2, e2) = sample_correlation(&rho, &a0, &b0, 10_000, 99).unwrap();
        assert_eq!(rec1, rec2);
        assert_eq!(e1, e2);
        assert_eq!(rec1.n_pp + rec1.n_pm + rec1.n_mp + rec1.n_mm, rec1.shots);
    }

    #[test]
    fn sampling_bell_state_zz_puts_all_mass_on_agreement() {
        let rho = bell_state().to_density();
        let a = MeasurementSetting::time([0.0, 0.0, 1.0]).unwrap();
        let b = MeasurementSetting::spin([0.0, 0.0, 1.0]).unwrap();
        let (rec, e_hat) = sample_correlation(&rho, &a, &b, 5_000, 3).unwrap();
        assert_eq!(rec.n_pm, 0);
        assert_eq!(rec.n_mp, 0);
        assert_eq!(e_hat, 1.0);
    }

    #[test]
    fn sampling_rejects_zero_shots() {
        let rho = bell_state().to_density();
        let (a0, _, b0, _) = tsirelson_settings();
        assert!(matches!(
            sample_correlation(&rho, &a0, &b0, 0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lhv_enumeration_is_exhaustive_and_bounded() {
        let (rows, max_abs) = lhv_extremes();
        assert_eq!(rows.len(), 16);
        assert_eq!(max_abs, 2.0);
        // All-plus assignment gives S = 2 by direct arithmetic.
        assert_eq!(rows[0], LhvStrategy { a0: 1, a1: 1, b0: 1, b1: 1, s: 2.0 });
        // (+, -, +, +): S = 1 + 1 - 1 + 1 = 2.
        let found = rows
            .iter()
            .find(|r| r.a0 == 1 && r.a1 == -1 && r.b0 == 1 && r.b1 == 1)
            .unwrap();
        assert_eq!(found.s, 2.0);
        for row in &rows {
            assert!(row.s.abs() <= 2.0);
        }
    }
}
