//! Observables, states and their moments.
//!
//! States come in three kinds: pure unit vectors, density matrices, and
//! Bloch vectors (qubits only). Every moment routine accepts any kind;
//! mixed states can additionally be lifted to a pure vector on the
//! Hilbert-Schmidt space via [`lift_mixed`], which preserves expectations,
//! pair moments and deviations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, inner, kron, outer, psd_sqrt, vec_norm, vec_row_major, ComplexMatrix, HERMITICITY_TOL,
};

/// Variance round-off clip: values in [-VARIANCE_CLIP, 0) count as zero.
pub const VARIANCE_CLIP: f64 = 1e-12;

const PURE_NORM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-9;
const DENSITY_EIG_TOL: f64 = 1e-10;
const BLOCH_BALL_TOL: f64 = 1e-12;
const REALNESS_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A named Hermitian matrix. Construction validates self-adjointness within
/// 1e-10 relative and stores the symmetrized matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    name: String,
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        let name = name.into();
        matrix.validate_finite()?;
        matrix.require_square()?;
        let dev = matrix.hermitian_deviation();
        if dev > HERMITICITY_TOL * (1.0 + matrix.max_abs()) {
            return Err(Error::ObservableNotHermitian {
                name,
                deviation: dev,
            });
        }
        Ok(Observable {
            name,
            matrix: matrix.hermitize(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn pauli_x() -> Observable {
    Observable::new(
        "X",
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
    )
    .expect("Pauli X is Hermitian")
}

pub fn pauli_y() -> Observable {
    Observable::new(
        "Y",
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
    )
    .expect("Pauli Y is Hermitian")
}

pub fn pauli_z() -> Observable {
    Observable::new(
        "Z",
        ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    )
    .expect("Pauli Z is Hermitian")
}

pub fn identity_observable(d: usize) -> Observable {
    Observable::new("I", ComplexMatrix::identity(d)).expect("identity is Hermitian")
}

/// Pauli matrix by name: I, X, Y or Z.
pub fn pauli(name: &str) -> Result<Observable> {
    match name {
        "I" => Ok(identity_observable(2)),
        "X" => Ok(pauli_x()),
        "Y" => Ok(pauli_y()),
        "Z" => Ok(pauli_z()),
        other => Err(Error::UnknownPauli(other.to_string())),
    }
}

/// Density matrix of a Bloch vector: (I + r1 X + r2 Y + r3 Z)/2.
pub fn bloch_to_density(r: [f64; 3]) -> Result<ComplexMatrix> {
    let norm_sq = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if norm_sq > 1.0 + BLOCH_BALL_TOL {
        return Err(Error::BlochOutOfBall { norm_sq });
    }
    Ok(ComplexMatrix::new(
        2,
        2,
        vec![
            c((1.0 + r[2]) / 2.0, 0.0),
            c(r[0] / 2.0, -r[1] / 2.0),
            c(r[0] / 2.0, r[1] / 2.0),
            c((1.0 - r[2]) / 2.0, 0.0),
        ],
    ))
}

/// A quantum state: pure unit vector, density matrix, or Bloch vector.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(Vec<Complex64>),
    Density(ComplexMatrix),
    Bloch([f64; 3]),
}

impl QuantumState {
    /// Validates the unit norm within 1e-10.
    pub fn pure(vector: Vec<Complex64>) -> Result<Self> {
        if vector.is_empty() {
            return Err(Error::ShapeMismatch("empty state vector".into()));
        }
        if vector.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm(&vector);
        if (norm - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(QuantumState::Pure(vector))
    }

    /// Validates Hermiticity, unit trace within 1e-9 and positivity down to
    /// -1e-10. Eigenvalues in [-1e-10, 0) are clipped to zero and the matrix
    /// renormalized.
    pub fn density(rho: ComplexMatrix) -> Result<Self> {
        rho.validate_finite()?;
        rho.require_square()?;
        let dev = rho.hermitian_deviation();
        if dev > HERMITICITY_TOL * (1.0 + rho.max_abs()) {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: HERMITICITY_TOL * (1.0 + rho.max_abs()),
            });
        }
        let trace = rho.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = linalg::hermitian_eigen(&rho, HERMITICITY_TOL)?;
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min < -DENSITY_EIG_TOL {
            return Err(Error::DensityNotPsd {
                min_eigenvalue: min,
            });
        }
        if min < 0.0 {
            let clipped: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
            let total: f64 = clipped.iter().sum();
            let n = rho.rows();
            let rebuilt = ComplexMatrix::from_fn(n, n, |i, j| {
                (0..n)
                    .map(|l| eig.vectors[(i, l)] * (clipped[l] / total) * eig.vectors[(j, l)].conj())
                    .sum()
            });
            return Ok(QuantumState::Density(rebuilt.hermitize()));
        }
        Ok(QuantumState::Density(rho))
    }

    /// Validates |r|^2 <= 1 + 1e-12. Only meaningful at dimension 2.
    pub fn bloch(r: [f64; 3]) -> Result<Self> {
        let norm_sq = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm_sq > 1.0 + BLOCH_BALL_TOL {
            return Err(Error::BlochOutOfBall { norm_sq });
        }
        Ok(QuantumState::Bloch(r))
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(v) => v.len(),
            QuantumState::Density(m) => m.rows(),
            QuantumState::Bloch(_) => 2,
        }
    }

    pub fn to_density(&self) -> Result<ComplexMatrix> {
        match self {
            QuantumState::Pure(v) => Ok(outer(v, v)),
            QuantumState::Density(m) => Ok(m.clone()),
            QuantumState::Bloch(r) => bloch_to_density(*r),
        }
    }

    /// The state as a pure unit vector. Bloch vectors on the sphere are
    /// converted to spinors; mixed states are rejected.
    pub fn as_pure_vector(&self) -> Result<Vec<Complex64>> {
        match self {
            QuantumState::Pure(v) => Ok(v.clone()),
            QuantumState::Bloch(r) => {
                let norm_sq = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
                if (norm_sq - 1.0).abs() > 1e-9 {
                    return Err(Error::PureStateRequired);
                }
                let theta = r[2].clamp(-1.0, 1.0).acos();
                let phi = r[1].atan2(r[0]);
                Ok(vec![
                    c((theta / 2.0).cos(), 0.0),
                    Complex64::from_polar((theta / 2.0).sin(), phi),
                ])
            }
            QuantumState::Density(_) => Err(Error::PureStateRequired),
        }
    }

    /// True when the state can be used as a pure vector directly.
    pub fn is_pure(&self) -> bool {
        self.as_pure_vector().is_ok()
    }
}

fn check_dim(a: &Observable, s: &QuantumState) -> Result<()> {
    if a.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: a.dim(),
        });
    }
    Ok(())
}

/// Expectation <A> = <x|A|x> or Tr(A rho). The imaginary part must vanish
/// within a 1e-10 threshold scaled by the matrix magnitude.
pub fn expectation(a: &Observable, s: &QuantumState) -> Result<f64> {
    check_dim(a, s)?;
    let value = match s {
        QuantumState::Pure(v) => inner(v, &a.matrix().matvec(v)),
        _ => (a.matrix() * &s.to_density()?).trace(),
    };
    let threshold = REALNESS_TOL * (1.0 + a.matrix().max_abs());
    if value.im.abs() > threshold {
        return Err(Error::NonRealExpectation {
            imag: value.im,
            threshold,
        });
    }
    Ok(value.re)
}

/// Pair moment <AB> = <x|AB|x> or Tr(AB rho). Complex in general.
pub fn pair_moment(a: &Observable, b: &Observable, s: &QuantumState) -> Result<Complex64> {
    check_dim(a, s)?;
    check_dim(b, s)?;
    match s {
        // <x|AB|x> = <Ax|Bx> since A is self-adjoint.
        QuantumState::Pure(v) => Ok(inner(&a.matrix().matvec(v), &b.matrix().matvec(v))),
        _ => Ok((&(a.matrix() * b.matrix()) * &s.to_density()?).trace()),
    }
}

fn clip_variance(var: f64) -> Result<f64> {
    if var < -VARIANCE_CLIP {
        return Err(Error::NegativeVariance { value: var });
    }
    Ok(var.max(0.0))
}

/// Standard deviation sqrt(<A^2> - <A>^2), with round-off clipped at -1e-12.
pub fn deviation(a: &Observable, s: &QuantumState) -> Result<f64> {
    let mean = expectation(a, s)?;
    let second = pair_moment(a, a, s)?.re;
    Ok(clip_variance(second - mean * mean)?.sqrt())
}

/// Precomputed means, pair moments, deviations and correlations
/// alpha_ij = <A_i A_j> - <A_i><A_j> for a fixed state and observable list.
#[derive(Debug, Clone)]
pub struct CorrelationData {
    dim: usize,
    k: usize,
    means: Vec<f64>,
    pair_moments: Vec<Complex64>,
    deviations: Vec<f64>,
    alphas: Vec<Complex64>,
}

impl CorrelationData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.means[i]
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn moment(&self, i: usize, j: usize) -> Complex64 {
        self.pair_moments[i * self.k + j]
    }

    pub fn deviation(&self, i: usize) -> f64 {
        self.deviations[i]
    }

    pub fn deviations(&self) -> &[f64] {
        &self.deviations
    }

    pub fn alpha(&self, i: usize, j: usize) -> Complex64 {
        self.alphas[i * self.k + j]
    }

    pub fn deviation_product(&self) -> f64 {
        self.deviations.iter().product()
    }
}

/// Builds [`CorrelationData`] for an observable list and a state.
///
/// Pair moments are computed for i <= j and reflected, so the conjugate
/// symmetry alpha_ji = conj(alpha_ij) holds exactly. The Cauchy-Schwarz
/// bound |alpha_ij| <= Delta_i Delta_j is checked as an internal
/// consistency condition.
pub fn correlations(observables: &[Observable], s: &QuantumState) -> Result<CorrelationData> {
    if observables.is_empty() {
        return Err(Error::EmptyObservables);
    }
    for a in observables {
        check_dim(a, s)?;
    }
    let k = observables.len();
    let mut means = Vec::with_capacity(k);
    for a in observables {
        means.push(expectation(a, s)?);
    }

    let mut pair_moments = vec![Complex64::ZERO; k * k];
    match s {
        QuantumState::Pure(v) => {
            let images: Vec<Vec<Complex64>> =
                observables.iter().map(|a| a.matrix().matvec(v)).collect();
            for i in 0..k {
                for j in i..k {
                    let m = inner(&images[i], &images[j]);
                    pair_moments[i * k + j] = m;
                    pair_moments[j * k + i] = m.conj();
                }
            }
        }
        _ => {
            let rho = s.to_density()?;
            for i in 0..k {
                for j in i..k {
                    let m = (&(observables[i].matrix() * observables[j].matrix()) * &rho).trace();
                    pair_moments[i * k + j] = m;
                    pair_moments[j * k + i] = m.conj();
                }
            }
        }
    }

    let mut deviations = Vec::with_capacity(k);
    for i in 0..k {
        let var = pair_moments[i * k + i].re - means[i] * means[i];
        deviations.push(clip_variance(var)?.sqrt());
    }

    let mut alphas = vec![Complex64::ZERO; k * k];
    for i in 0..k {
        for j in 0..k {
            alphas[i * k + j] = pair_moments[i * k + j] - means[i] * means[j];
        }
    }
    for i in 0..k {
        for j in 0..k {
            let excess = alphas[i * k + j].norm() - deviations[i] * deviations[j];
            if excess > 1e-9 {
                return Err(Error::CauchySchwarzViolation { i, j, excess });
            }
        }
    }

    Ok(CorrelationData {
        dim: s.dim(),
        k,
        means,
        pair_moments,
        deviations,
        alphas,
    })
}

/// Lifts observables and a (possibly mixed) state to the Hilbert-Schmidt
/// space: A_j becomes A_j (x) I and rho becomes the pure vector vec(sqrt rho).
/// Expectations, pair moments and deviations are preserved.
pub fn lift_mixed(
    observables: &[Observable],
    s: &QuantumState,
) -> Result<(Vec<Observable>, QuantumState)> {
    if observables.is_empty() {
        return Err(Error::EmptyObservables);
    }
    for a in observables {
        check_dim(a, s)?;
    }
    let d = s.dim();
    let rho = s.to_density()?;
    let root = psd_sqrt(&rho, DENSITY_EIG_TOL)?;
    let mut vector = vec_row_major(&root);
    let norm = vec_norm(&vector);
    for z in &mut vector {
        *z /= norm;
    }
    let eye = ComplexMatrix::identity(d);
    let lifted = observables
        .iter()
        .map(|a| Observable::new(format!("L_{}", a.name()), kron(a.matrix(), &eye)))
        .collect::<Result<Vec<_>>>()?;
    Ok((lifted, QuantumState::pure(vector)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, numerical_radius_sweep, operator_norm, RadiusOptions};
    use crate::sample::{random_hermitian, random_pure};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn expectation_on_eigenstate() {
        let z = pauli_z();
        let up = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(expectation(&z, &up).unwrap(), 1.0);
    }

    #[test]
    fn expectation_on_bloch_state_reads_components() {
        let r = [0.3, -0.4, 0.5];
        let s = QuantumState::bloch(r).unwrap();
        assert!((expectation(&pauli_x(), &s).unwrap() - r[0]).abs() < 1e-14);
        assert!((expectation(&pauli_y(), &s).unwrap() - r[1]).abs() < 1e-14);
        assert!((expectation(&pauli_z(), &s).unwrap() - r[2]).abs() < 1e-14);
        // <X^2> = 1 for every qubit state.
        assert!((pair_moment(&pauli_x(), &pauli_x(), &s).unwrap().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pair_moment_xy_is_i_z() {
        let r = [0.2, 0.1, 0.7];
        let s = QuantumState::bloch(r).unwrap();
        let m = pair_moment(&pauli_x(), &pauli_y(), &s).unwrap();
        assert!((m - c(0.0, r[2])).norm() < 1e-14);
    }

    #[test]
    fn pair_moment_xz_vanishes_on_y_free_state() {
        let v = 1.0 / 2.0f64.sqrt();
        let s = QuantumState::bloch([v, 0.0, v]).unwrap();
        // XZ = -iY, so <XZ> = -i <Y> = 0 here.
        let m = pair_moment(&pauli_x(), &pauli_z(), &s).unwrap();
        assert!(m.norm() < 1e-14);
    }

    #[test]
    fn pair_moment_conjugate_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = Observable::new("A", random_hermitian(&mut rng, 4)).unwrap();
            let b = Observable::new("B", random_hermitian(&mut rng, 4)).unwrap();
            let s = QuantumState::pure(random_pure(&mut rng, 4)).unwrap();
            let ab = pair_moment(&a, &b, &s).unwrap();
            let ba = pair_moment(&b, &a, &s).unwrap();
            assert!((ab - ba.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn deviation_of_identity_is_zero() {
        let s = QuantumState::bloch([0.1, 0.2, 0.3]).unwrap();
        assert_eq!(deviation(&identity_observable(2), &s).unwrap(), 0.0);
    }

    #[test]
    fn deviation_of_pauli_z_on_bloch() {
        let r = [0.3, 0.2, 0.6];
        let s = QuantumState::bloch(r).unwrap();
        let d = deviation(&pauli_z(), &s).unwrap();
        assert!((d - (1.0 - r[2] * r[2]).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn deviation_equals_commutator_norm_and_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=5 {
            let a = Observable::new("A", random_hermitian(&mut rng, d)).unwrap();
            let x = random_pure(&mut rng, d);
            let s = QuantumState::pure(x.clone()).unwrap();
            let dev = deviation(&a, &s).unwrap();
            let comm = commutator(a.matrix(), &outer(&x, &x));
            assert!((dev - operator_norm(&comm).unwrap()).abs() < 1e-10);
            let w = numerical_radius_sweep(&comm, &RadiusOptions::default()).unwrap();
            assert!((dev - w).abs() < 1e-9);
        }
    }

    #[test]
    fn correlations_on_polar_state() {
        let s = QuantumState::bloch([0.0, 0.0, 1.0]).unwrap();
        let corr = correlations(&[pauli_x(), pauli_y()], &s).unwrap();
        assert!((corr.alpha(0, 1) - c(0.0, 1.0)).norm() < 1e-14);
        assert!((corr.deviation(0) - 1.0).abs() < 1e-14);
        assert!((corr.deviation(1) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_is_uncorrelated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = Observable::new("A", random_hermitian(&mut rng, 3)).unwrap();
        let s = QuantumState::pure(random_pure(&mut rng, 3)).unwrap();
        let corr = correlations(&[identity_observable(3), a], &s).unwrap();
        assert!(corr.alpha(0, 1).norm() < 1e-12);
    }

    #[test]
    fn symmetric_bloch_point_deviations() {
        let v = 1.0 / 3.0f64.sqrt();
        let s = QuantumState::bloch([v, v, v]).unwrap();
        let corr = correlations(&[pauli_x(), pauli_y(), pauli_z()], &s).unwrap();
        let expected = (2.0f64 / 3.0).sqrt();
        for i in 0..3 {
            assert!((corr.deviation(i) - expected).abs() < 1e-14);
        }
        let product_sq = corr.deviation_product().powi(2);
        assert!((product_sq - 8.0 / 27.0).abs() < 1e-14);
    }

    #[test]
    fn bloch_to_density_examples() {
        let center = bloch_to_density([0.0, 0.0, 0.0]).unwrap();
        assert!(center.max_diff(&ComplexMatrix::diag_re(&[0.5, 0.5])) < 1e-15);
        let pole = bloch_to_density([0.0, 0.0, 1.0]).unwrap();
        assert!(pole.max_diff(&ComplexMatrix::diag_re(&[1.0, 0.0])) < 1e-15);
        assert!(matches!(
            bloch_to_density([1.0, 1.0, 0.0]),
            Err(Error::BlochOutOfBall { .. })
        ));
    }

    #[test]
    fn bloch_purity_boundary() {
        let v = 1.0 / 3.0f64.sqrt();
        let s = QuantumState::bloch([v, v, v]).unwrap();
        // On the sphere the state is pure and convertible to a spinor.
        let x = s.as_pure_vector().unwrap();
        let rho = s.to_density().unwrap();
        assert!(outer(&x, &x).max_diff(&rho) < 1e-12);
        // Strictly inside the ball it is mixed.
        let mixed = QuantumState::bloch([0.1, 0.0, 0.0]).unwrap();
        assert!(matches!(
            mixed.as_pure_vector(),
            Err(Error::PureStateRequired)
        ));
    }

    #[test]
    fn lift_preserves_moments() {
        let z = pauli_z();
        let maximally_mixed = QuantumState::density(ComplexMatrix::diag_re(&[0.5, 0.5])).unwrap();
        let (lifted, pure) = lift_mixed(std::slice::from_ref(&z), &maximally_mixed).unwrap();
        assert!((expectation(&lifted[0], &pure).unwrap()).abs() < 1e-12);
        assert!((deviation(&lifted[0], &pure).unwrap() - 1.0).abs() < 1e-12);

        let rho = QuantumState::density(
            bloch_to_density([0.0, 0.0, 1.0 / 3.0f64.sqrt()]).unwrap(),
        )
        .unwrap();
        let (lifted, pure) = lift_mixed(&[pauli_x(), pauli_y()], &rho).unwrap();
        let m = pair_moment(&lifted[0], &lifted[1], &pure).unwrap();
        assert!((m - c(0.0, 1.0 / 3.0f64.sqrt())).norm() < 1e-10);
    }

    #[test]
    fn lift_of_pure_density_is_product_vector() {
        let rho = QuantumState::density(ComplexMatrix::diag_re(&[1.0, 0.0])).unwrap();
        let (lifted, pure) = lift_mixed(&[pauli_z()], &rho).unwrap();
        match &pure {
            QuantumState::Pure(v) => {
                assert!((v[0] - c(1.0, 0.0)).norm() < 1e-12);
                assert!(v[1..].iter().all(|z| z.norm() < 1e-12));
            }
            _ => panic!("expected pure state"),
        }
        assert!((expectation(&lifted[0], &pure).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_validation_rejects_bad_trace() {
        let m = ComplexMatrix::diag_re(&[0.7, 0.7]);
        assert!(matches!(
            QuantumState::density(m),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn density_validation_clips_tiny_negative_eigenvalues() {
        let m = ComplexMatrix::diag_re(&[1.0 + 5e-11, -5e-11]);
        let s = QuantumState::density(m).unwrap();
        let rho = s.to_density().unwrap();
        let eig = linalg::hermitian_eigenvalues(&rho, HERMITICITY_TOL).unwrap();
        assert!(eig[0] >= 0.0);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_validation_rejects_unnormalized() {
        assert!(matches!(
            QuantumState::pure(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn commutator_with_projection_is_skew_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let a = random_hermitian(&mut rng, 4);
            let x = random_pure(&mut rng, 4);
            let comm = commutator(&a, &outer(&x, &x));
            let sum = &comm + &comm.adjoint();
            assert!(sum.max_abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch_reported() {
        let z = pauli_z();
        let s = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            expectation(&z, &s),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
