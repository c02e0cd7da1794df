//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them all).

mod common;

use std::time::Instant;

use common::*;
use num_complex::Complex64;
use tqsim::cli::{self, Cell, Experiment, ParamValue, RunConfig};
use tqsim::dirac::{self, DiracParams, Helicity};
use tqsim::dynamics::{self, ControlledHamiltonian, ZeemanParams};
use tqsim::mz::{self, MzConfig};
use tqsim::qla::{ComplexMatrix, StateVector};
use tqsim::rng::SplitMix64;
use tqsim::timequbit::{self, BlochVector};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn criterion(number: u8, name: &str, ok: bool) {
    println!(
        "criterion {number:02} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number:02} ({name}) failed");
}

fn cell_num(cell: &Cell) -> f64 {
    match cell {
        Cell::Num(x) => *x,
        Cell::Int(n) => *n as f64,
        other => panic!("expected a numeric cell, got {other:?}"),
    }
}

#[test]
fn criterion_01_chsh_saturates_tsirelson() {
    let config = RunConfig::defaults(Experiment::Chsh);
    cli::run(&config).unwrap(); // warm-up outside the timed run
    let start = Instant::now();
    let table = cli::run(&config).unwrap();
    let elapsed = start.elapsed();
    let s = cell_num(&table.rows[0][4]);
    let ok = (s - 2.0 * SQRT2).abs() <= 1e-12 && elapsed.as_secs_f64() < 1e-3;
    criterion(1, "chsh saturates the Tsirelson bound in under 1 ms", ok);
}

#[test]
fn criterion_02_lhv_classical_bound() {
    let table = cli::run(&RunConfig::defaults(Experiment::LhvTable)).unwrap();
    let max_abs = table
        .rows
        .iter()
        .map(|row| cell_num(&row[4]).abs())
        .fold(0.0f64, f64::max);
    let ok = table.rows.len() == 16 && max_abs == 2.0;
    criterion(2, "16 deterministic strategies reach |S| = 2 exactly", ok);
}

#[test]
fn criterion_03_time_parity_fringes_and_visibility() {
    // 64 phases over [0, 4 pi] with no dephasing follow cos^2 exactly.
    let table = cli::run(&RunConfig::defaults(Experiment::MzFringes)).unwrap();
    let mut fringes_ok = table.rows.len() == 64;
    for row in &table.rows {
        let phase = cell_num(&row[0]);
        let p1 = cell_num(&row[1]);
        fringes_ok &= (p1 - (phase / 2.0).cos().powi(2)).abs() <= 1e-12;
    }

    // Half dephasing halves the fitted fringe visibility.
    let config = RunConfig::defaults(Experiment::MzFringes)
        .with_param("lambda", ParamValue::Num(0.5));
    let table = cli::run(&config).unwrap();
    let points: Vec<(f64, f64)> = table
        .rows
        .iter()
        .map(|row| (cell_num(&row[0]), cell_num(&row[1])))
        .collect();
    let visibility_ok = (fitted_visibility(&points) - 0.5).abs() <= 1e-10;

    criterion(
        3,
        "fringes match cos^2 and dephased visibility equals 0.5",
        fringes_ok && visibility_ok,
    );
}

#[test]
fn criterion_04_kraus_completeness() {
    let mut rng = SplitMix64::new(0xacc4);
    let id = ComplexMatrix::identity(2).unwrap();
    let mut ok = true;
    for _ in 0..1000 {
        let ch = ControlledHamiltonian::new(
            random_hermitian(&mut rng, 2),
            random_hermitian(&mut rng, 2),
        )
        .unwrap();
        let t = rng.uniform(0.0, 10.0);
        let (even, odd) = dynamics::kraus_pair(&ch, t);
        let sum = &(&even.adjoint() * &even) + &(&odd.adjoint() * &odd);
        ok &= sum.max_abs_diff(&id) <= 1e-11;
    }
    criterion(4, "even/odd Kraus pair is complete on 1000 random draws", ok);
}

#[test]
fn criterion_05_interferometer_oracle_equivalence() {
    let mut rng = SplitMix64::new(0xacc5);
    let mut ok = true;
    for _ in 0..200 {
        let omega = rng.uniform(0.1, 5.0);
        let axis = random_unit3(&mut rng);
        let t = rng.uniform(0.0, 10.0);
        let chi0 = random_state(&mut rng, 2);
        let zeeman = ZeemanParams::new(omega, axis).unwrap();
        let cfg = MzConfig::new(zeeman, t, chi0.clone(), 0.0).unwrap();
        let ports = mz::run_interferometer(&cfg);

        // Full 4-dimensional pipeline, no Kraus shortcut.
        let plus =
            StateVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let bs4 = mz::beamsplitter()
            .tensor(&ComplexMatrix::identity(2).unwrap())
            .unwrap();
        let split = bs4.apply(&plus.tensor(&chi0).unwrap()).unwrap();
        let evolved = dynamics::evolve_composite(&split, &zeeman.controlled(), t).unwrap();
        let out = bs4.apply(&evolved).unwrap();
        let p1 = out.amp(0).norm_sqr() + out.amp(1).norm_sqr();
        let p2 = out.amp(2).norm_sqr() + out.amp(3).norm_sqr();

        ok &= (ports.p_d1 - p1).abs() <= 1e-10 && (ports.p_d2 - p2).abs() <= 1e-10;
    }
    criterion(5, "Kraus and composite-evolution ports agree on 200 configs", ok);
}

#[test]
fn criterion_06_dirac_dispersion() {
    let mut rng = SplitMix64::new(0xacc6);
    let mut ok = true;
    for _ in 0..1000 {
        let mass = rng.uniform(0.0, 3.0);
        let p = [
            rng.uniform(-3.0, 3.0),
            rng.uniform(-3.0, 3.0),
            rng.uniform(-3.0, 3.0),
        ];
        let params = DiracParams::new(mass, p).unwrap();
        let h = dirac::dirac_hamiltonian(&params);
        let e = dirac::energy(&params);
        let want = ComplexMatrix::identity(4)
            .unwrap()
            .scale(Complex64::new(e * e, 0.0));
        ok &= (&h * &h).max_abs_diff(&want) <= 1e-11 * (e * e).max(1.0);

        let (vals, _) = h.herm_eig().unwrap();
        for (got, want) in vals.iter().zip([-e, -e, e, e].iter()) {
            ok &= (got - want).abs() <= 1e-10;
        }
    }
    criterion(6, "H_D squares to the dispersion with doubly degenerate branches", ok);
}

#[test]
fn criterion_07_gamma_algebra() {
    let gammas = dirac::gamma_matrices();
    let eta = [1.0, -1.0, -1.0, -1.0];
    let id = ComplexMatrix::identity(4).unwrap();
    let mut ok = true;
    for mu in 0..4 {
        for nu in mu..4 {
            let anti = &(&gammas[mu] * &gammas[nu]) + &(&gammas[nu] * &gammas[mu]);
            let want = if mu == nu {
                id.scale(Complex64::new(2.0 * eta[mu], 0.0))
            } else {
                ComplexMatrix::zeros(4).unwrap()
            };
            ok &= anti.max_abs_diff(&want) <= 1e-12;
        }
    }
    criterion(7, "all 10 gamma anticommutators equal 2 eta I", ok);
}

#[test]
fn criterion_08_zitterbewegung_trajectories() {
    // Default parameters, sampled well above 64 points per period.
    let config = RunConfig::defaults(Experiment::DiracPrecess)
        .with_param("steps", ParamValue::Int(512))
        .with_param("theta", ParamValue::Num(0.0));
    let table = cli::run(&config).unwrap();

    let params = DiracParams::new(1.0, [0.0, 0.0, 1.0]).unwrap();
    let e = dirac::energy(&params);
    let field = dirac::effective_field(&params, Helicity::Plus);
    let b_hat = field.direction().unwrap();
    let b_vec = BlochVector::new(b_hat[0], b_hat[1], b_hat[2]);
    let r0 = BlochVector::new(0.0, 0.0, 1.0);

    let mut ok = true;
    let mut residual_sq = 0.0;
    for row in &table.rows {
        let t = cell_num(&row[0]);
        let r = BlochVector::new(cell_num(&row[1]), cell_num(&row[2]), cell_num(&row[3]));
        ok &= (r.norm() - 1.0).abs() <= 1e-10;
        ok &= (r.dot(&b_vec) - r0.dot(&b_vec)).abs() <= 1e-10;
        let want = rodrigues(&r0, b_hat, 2.0 * e * t);
        residual_sq +=
            (r.x - want.x).powi(2) + (r.y - want.y).powi(2) + (r.z - want.z).powi(2);
    }
    let rms = (residual_sq / (3.0 * table.rows.len() as f64)).sqrt();
    ok &= rms <= 1e-8;
    criterion(8, "precession conserves geometry at angular frequency 2E", ok);
}

#[test]
fn criterion_09_finite_shot_convergence() {
    let mut config = RunConfig::defaults(Experiment::ChshSample);
    config.seed = Some(42);
    let start = Instant::now();
    let table = cli::run(&config).unwrap();
    let elapsed = start.elapsed();
    let last = table.rows.last().unwrap();
    assert!(matches!(&last[0], Cell::Text(label) if label == "s_hat"));
    let s_hat = cell_num(&last[5]);
    let ok = (s_hat - 2.0 * SQRT2).abs() < 0.01 && elapsed.as_secs_f64() < 5.0;
    criterion(9, "a million seeded shots land within 0.01 of 2*sqrt(2)", ok);
}

#[test]
fn criterion_10_bloch_round_trip_and_channel_validity() {
    let mut rng = SplitMix64::new(0xacca);
    let mut ok = true;
    for _ in 0..1000 {
        let dir = random_unit3(&mut rng);
        let len = rng.next_f64();
        let r = BlochVector::new(dir[0] * len, dir[1] * len, dir[2] * len);
        let back = timequbit::bloch_vector(&timequbit::density_from_bloch(&r).unwrap());
        ok &= (back.x - r.x).abs() <= 1e-12
            && (back.y - r.y).abs() <= 1e-12
            && (back.z - r.z).abs() <= 1e-12;
    }
    for i in 0..300 {
        let rho = random_density(&mut rng, 2);
        let lambda = (i % 11) as f64 / 10.0;
        match mz::which_path_dephase(&rho, lambda) {
            Ok(out) => {
                let (vals, _) = out.matrix().herm_eig().unwrap();
                ok &= vals[0] >= -1e-10
                    && (out.matrix().trace().re - 1.0).abs() <= 1e-12
                    && out.matrix().hermiticity_defect() <= 1e-12;
            }
            Err(_) => ok = false,
        }
    }
    criterion(10, "Bloch round trips hold and dephasing stays a valid channel", ok);
}
