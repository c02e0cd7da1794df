//! Shared generators and independent oracles for the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use tqsim::qla::{ComplexMatrix, DensityMatrix, StateVector};
use tqsim::rng::SplitMix64;
use tqsim::timequbit::BlochVector;

/// Standard normal via Box-Muller.
pub fn gaussian(rng: &mut SplitMix64) -> f64 {
    let u1 = loop {
        let u = rng.next_f64();
        if u > 0.0 {
            break u;
        }
    };
    let u2 = rng.next_f64();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex(rng: &mut SplitMix64) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Dense matrix with independent complex-Gaussian entries.
pub fn random_matrix(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let mut rows2 = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut rows4 = [[Complex64::new(0.0, 0.0); 4]; 4];
    match dim {
        2 => {
            for row in rows2.iter_mut() {
                for z in row.iter_mut() {
                    *z = random_complex(rng);
                }
            }
            ComplexMatrix::from_rows(rows2).unwrap()
        }
        4 => {
            for row in rows4.iter_mut() {
                for z in row.iter_mut() {
                    *z = random_complex(rng);
                }
            }
            ComplexMatrix::from_rows(rows4).unwrap()
        }
        _ => panic!("unsupported dim {dim}"),
    }
}

/// `(A + A^dagger) / 2` of a random matrix.
pub fn random_hermitian(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let a = random_matrix(rng, dim);
    (&a + &a.adjoint()).scale(Complex64::new(0.5, 0.0))
}

pub fn random_state(rng: &mut SplitMix64, dim: usize) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
        if let Ok(psi) = StateVector::normalized(amps) {
            return psi;
        }
    }
}

pub fn random_unit3(rng: &mut SplitMix64) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-6 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Random mixture of `dim` pure states with random weights.
pub fn random_density(rng: &mut SplitMix64, dim: usize) -> DensityMatrix {
    let weights: Vec<f64> = (0..dim).map(|_| rng.next_f64() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(dim).unwrap();
    for w in weights {
        let psi = random_state(rng, dim);
        m = &m + &psi.to_density().matrix().scale(Complex64::new(w / total, 0.0));
    }
    DensityMatrix::new(m).unwrap()
}

/// `rho_T (x) rho_S` for independent random single-qubit mixed states.
pub fn random_product_density(rng: &mut SplitMix64) -> DensityMatrix {
    let rt = random_density(rng, 2);
    let rs = random_density(rng, 2);
    DensityMatrix::new(rt.matrix().tensor(rs.matrix()).unwrap()).unwrap()
}

/// Rodrigues rotation of `r` about unit `axis` by `angle`, written out
/// directly so trajectory checks do not share code with the library.
pub fn rodrigues(r: &BlochVector, axis: [f64; 3], angle: f64) -> BlochVector {
    let (s, c) = angle.sin_cos();
    let [nx, ny, nz] = axis;
    let dot = nx * r.x + ny * r.y + nz * r.z;
    let cross = [
        ny * r.z - nz * r.y,
        nz * r.x - nx * r.z,
        nx * r.y - ny * r.x,
    ];
    BlochVector::new(
        r.x * c + cross[0] * s + nx * dot * (1.0 - c),
        r.y * c + cross[1] * s + ny * dot * (1.0 - c),
        r.z * c + cross[2] * s + nz * dot * (1.0 - c),
    )
}

/// Least-squares amplitude of `p(phase) = (1 + V cos(phase)) / 2` over
/// sampled fringe points: `V = sum (2p-1) cos / sum cos^2`.
pub fn fitted_visibility(points: &[(f64, f64)]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(phase, p) in points {
        let c = phase.cos();
        num += (2.0 * p - 1.0) * c;
        den += c * c;
    }
    num / den
}
