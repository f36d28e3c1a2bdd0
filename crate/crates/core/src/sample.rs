//! Seeded random generators for states, observables and unitaries.
//!
//! Pure states are normalized complex-normal vectors (Haar-like), density
//! matrices are Wishart-style G G† / Tr, and unitaries come from the QR
//! factor of a complex Gaussian matrix.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{inner, vec_norm, ComplexMatrix};
use crate::quantum::Observable;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_complex_matrix(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng))
}

/// Normalized complex-normal vector.
pub fn random_pure(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        let norm = vec_norm(&v);
        if norm > 1e-6 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// (G + G†)/2 with complex Gaussian G.
pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    random_complex_matrix(rng, d).hermitize()
}

pub fn random_observable(rng: &mut impl Rng, d: usize, name: impl Into<String>) -> Observable {
    Observable::new(name, random_hermitian(rng, d)).expect("hermitized matrix is Hermitian")
}

/// Wishart-style density matrix G G† / Tr(G G†).
pub fn random_density(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = random_complex_matrix(rng, d);
    let w = &g * &g.adjoint();
    let trace = w.trace().re;
    w.scale(Complex64::new(1.0 / trace, 0.0)).hermitize()
}

/// Unitary from modified Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while columns.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        for u in &columns {
            let coeff = inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= coeff * ui;
            }
        }
        let norm = vec_norm(&v);
        if norm < 1e-8 {
            continue;
        }
        columns.push(v.iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, d, |i, j| columns[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pure_states_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 2..6 {
            let v = random_pure(&mut rng, d);
            assert!((vec_norm(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn densities_are_valid_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 2..6 {
            let rho = random_density(&mut rng, d);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(crate::quantum::QuantumState::density(rho).is_ok());
        }
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..6 {
            let u = random_unitary(&mut rng, d);
            let gram = &u.adjoint() * &u;
            assert!(gram.max_diff(&ComplexMatrix::identity(d)) < 1e-12);
        }
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let a: Vec<_> = random_pure(&mut ChaCha8Rng::seed_from_u64(9), 4);
        let b: Vec<_> = random_pure(&mut ChaCha8Rng::seed_from_u64(9), 4);
        assert_eq!(a, b);
    }
}
