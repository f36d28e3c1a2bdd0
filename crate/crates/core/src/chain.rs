//! The commutator chain D_k = prod_j [A_j, |x><x|], built two independent
//! ways, and closed forms for its numerical radius and operator norm.
//!
//! The direct route multiplies the commutators as matrices. The coefficient
//! route expands D_k in the frame |x><x|, |A_1 x><x|, |x><x A_k|,
//! |A_1 x><x A_k| via a four-term recurrence, then re-expresses it over an
//! orthonormal triple {x, y, z}, where D_k collapses to a 2x3 coefficient
//! block with a parity-dependent zero pattern. Rank <= 2 throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, outer, vec_norm, ComplexMatrix};
use crate::quantum::{CorrelationData, Observable, QuantumState};

/// Deviations below this count as a degenerate frame (A_1 x parallel to x,
/// so the chain vanishes identically).
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Coefficients of D_k over |x><x|, |A_1 x><x|, |x><x A_k|, |A_1 x><x A_k|.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCoefficients {
    pub k: usize,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// D_k expressed over the orthonormal triple {x, y, z}: six coefficients
/// f[i][j] on |x>, |y> against <x|, <y|, <z|, plus the frame data
/// beta' = <y|A_k|x> and gamma' = <z|A_k|x> >= 0.
#[derive(Debug, Clone)]
pub struct EffectiveMatrix {
    pub k: usize,
    pub parity: Parity,
    pub f: [[Complex64; 3]; 2],
    pub beta_prime: Complex64,
    pub gamma_prime: f64,
}

impl EffectiveMatrix {
    pub fn f(&self, i: usize, j: usize) -> Complex64 {
        self.f[i - 1][j - 1]
    }

    /// The 3x3 matrix [[f11, f12, f13], [f21, f22, f23], [0, 0, 0]] carrying
    /// the same numerical range as D_k.
    pub fn embedded(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(3, 3);
        for i in 0..2 {
            for j in 0..3 {
                m[(i, j)] = self.f[i][j];
            }
        }
        m
    }
}

struct ChainInstance<'a> {
    matrices: Vec<&'a ComplexMatrix>,
    x: Vec<Complex64>,
}

fn validate<'a>(
    observables: &'a [Observable],
    state: &QuantumState,
) -> Result<ChainInstance<'a>> {
    if observables.len() < 2 {
        return Err(Error::TooFewObservables {
            got: observables.len(),
        });
    }
    let x = state.as_pure_vector()?;
    for a in observables {
        if a.dim() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: a.dim(),
            });
        }
    }
    Ok(ChainInstance {
        matrices: observables.iter().map(|a| a.matrix()).collect(),
        x,
    })
}

/// D_k as the literal product of commutators [A_j, |x><x|].
pub fn chain_direct(observables: &[Observable], state: &QuantumState) -> Result<ComplexMatrix> {
    let inst = validate(observables, state)?;
    let p = outer(&inst.x, &inst.x);
    let mut product = ComplexMatrix::identity(inst.x.len());
    for a in &inst.matrices {
        let comm = &(*a * &p) - &(&p * *a);
        product = &product * &comm;
    }
    Ok(product)
}

/// Runs the four-term coefficient recurrence over precomputed means and
/// consecutive pair moments.
fn recurrence(means: &[f64], consecutive: &[Complex64]) -> ChainCoefficients {
    let k = means.len();
    debug_assert!(k >= 2 && consecutive.len() == k - 1);
    let mut a = -consecutive[0];
    let mut b = Complex64::from(means[1]);
    let mut c = Complex64::from(means[0]);
    let mut d = -Complex64::ONE;
    for j in 2..k {
        let mean_prev = means[j - 1];
        let mean_j = means[j];
        let moment = consecutive[j - 1];
        let (na, nb, nc, nd) = (
            a * mean_j + c * moment,
            b * mean_j + d * moment,
            -a - c * mean_prev,
            -b - d * mean_prev,
        );
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    ChainCoefficients { k, a, b, c, d }
}

/// Chain coefficients from the recurrence, using moments of the given state.
pub fn chain_coefficients(
    observables: &[Observable],
    state: &QuantumState,
) -> Result<ChainCoefficients> {
    let inst = validate(observables, state)?;
    let images: Vec<Vec<Complex64>> = inst.matrices.iter().map(|a| a.matvec(&inst.x)).collect();
    let means: Vec<f64> = images.iter().map(|w| inner(&inst.x, w).re).collect();
    let consecutive: Vec<Complex64> = (1..images.len())
        .map(|j| inner(&images[j - 1], &images[j]))
        .collect();
    Ok(recurrence(&means, &consecutive))
}

impl ChainCoefficients {
    /// Rebuilds the chain operator from the coefficient expansion
    /// a|x><x| + b|A_1 x><x| + c|x><x A_k| + d|A_1 x><x A_k|.
    pub fn reconstruct(
        &self,
        observables: &[Observable],
        state: &QuantumState,
    ) -> Result<ComplexMatrix> {
        let inst = validate(observables, state)?;
        let w1 = inst.matrices[0].matvec(&inst.x);
        let wk = inst.matrices[self.k - 1].matvec(&inst.x);
        let mut out = outer(&inst.x, &inst.x).scale(self.a);
        out = &out + &outer(&w1, &inst.x).scale(self.b);
        out = &out + &outer(&inst.x, &wk).scale(self.c);
        out = &out + &outer(&w1, &wk).scale(self.d);
        Ok(out)
    }
}

fn parity_of(k: usize) -> Parity {
    if k.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn assemble(
    k: usize,
    coeffs: &ChainCoefficients,
    mean_first: f64,
    mean_last: f64,
    delta_first: f64,
    beta_prime: Complex64,
    gamma_prime: f64,
) -> EffectiveMatrix {
    let (a, b, c, d) = (coeffs.a, coeffs.b, coeffs.c, coeffs.d);
    let f11 = a + b * mean_first + c * mean_last + d * mean_first * mean_last;
    let left = c + d * mean_first;
    let f12 = left * beta_prime.conj();
    let f13 = left * gamma_prime;
    let f21 = (b + d * mean_last) * delta_first;
    let f22 = d * delta_first * beta_prime.conj();
    let f23 = d * delta_first * gamma_prime;
    EffectiveMatrix {
        k,
        parity: parity_of(k),
        f: [[f11, f12, f13], [f21, f22, f23]],
        beta_prime,
        gamma_prime,
    }
}

fn degenerate(k: usize, delta_last: f64) -> EffectiveMatrix {
    EffectiveMatrix {
        k,
        parity: parity_of(k),
        f: [[Complex64::ZERO; 3]; 2],
        beta_prime: Complex64::ZERO,
        gamma_prime: delta_last,
    }
}

/// Effective 2x3 coefficient block of D_k over {x, y, z}.
///
/// The frame is built directly from the state: y is the normalized
/// component of A_1 x orthogonal to x (so <y|A_1|x> = Delta_1 > 0), and
/// z the normalized remainder of A_k x (so gamma' >= 0). If
/// Delta_1 < 1e-12 the chain vanishes and a zero block is returned with
/// beta' = 0, gamma' = Delta_k. At dimension 2 the z-direction is empty
/// and gamma' = 0.
pub fn effective_matrix(
    observables: &[Observable],
    state: &QuantumState,
) -> Result<EffectiveMatrix> {
    let inst = validate(observables, state)?;
    let k = observables.len();
    let x = &inst.x;
    let w1 = inst.matrices[0].matvec(x);
    let mean_first = inner(x, &w1).re;
    let y_raw: Vec<Complex64> = w1.iter().zip(x).map(|(w, xi)| w - mean_first * xi).collect();
    let delta_first = vec_norm(&y_raw);

    let wk = inst.matrices[k - 1].matvec(x);
    let mean_last = inner(x, &wk).re;

    if delta_first < DEGENERATE_TOL {
        let rem: Vec<Complex64> = wk.iter().zip(x).map(|(w, xi)| w - mean_last * xi).collect();
        return Ok(degenerate(k, vec_norm(&rem)));
    }

    let y: Vec<Complex64> = y_raw.iter().map(|z| z / delta_first).collect();
    let beta_prime = inner(&y, &wk);
    let z_raw: Vec<Complex64> = wk
        .iter()
        .zip(x.iter().zip(&y))
        .map(|(w, (xi, yi))| w - mean_last * xi - beta_prime * yi)
        .collect();
    let mut gamma_prime = vec_norm(&z_raw);
    if gamma_prime < DEGENERATE_TOL * (1.0 + vec_norm(&wk)) {
        gamma_prime = 0.0;
    }

    let coeffs = chain_coefficients(observables, state)?;
    Ok(assemble(
        k,
        &coeffs,
        mean_first,
        mean_last,
        delta_first,
        beta_prime,
        gamma_prime,
    ))
}

/// Effective block for a permuted observable list, driven entirely by
/// precomputed correlation data. Here beta' = alpha_{1k} / Delta_1, the
/// identity the direct frame construction is tested against.
pub fn effective_from_correlations(corr: &CorrelationData, perm: &[usize]) -> Result<EffectiveMatrix> {
    let k = perm.len();
    if k < 2 {
        return Err(Error::TooFewObservables { got: k });
    }
    let first = perm[0];
    let last = perm[k - 1];
    let delta_first = corr.deviation(first);
    let delta_last = corr.deviation(last);
    if delta_first < DEGENERATE_TOL {
        return Ok(degenerate(k, delta_last));
    }
    let beta_prime = corr.alpha(first, last) / delta_first;
    let gamma_prime = (delta_last * delta_last - beta_prime.norm_sqr()).max(0.0).sqrt();

    let means: Vec<f64> = perm.iter().map(|&i| corr.mean(i)).collect();
    let consecutive: Vec<Complex64> = (1..k).map(|j| corr.moment(perm[j - 1], perm[j])).collect();
    let coeffs = recurrence(&means, &consecutive);
    Ok(assemble(
        k,
        &coeffs,
        corr.mean(first),
        corr.mean(last),
        delta_first,
        beta_prime,
        gamma_prime,
    ))
}

/// w of [[0, a, b], [c, 0, 0], [0, 0, 0]]: the numerical range is an
/// elliptic disc and the radius is sqrt(|b|^2 + (|a| + |c|)^2) / 2.
pub fn elliptic_radius(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let rim = a.norm() + c.norm();
    0.5 * (b.norm_sqr() + rim * rim).sqrt()
}

/// w of [[0, a], [c, 0]]: (|a| + |c|) / 2.
pub fn elliptic_radius_2x2(a: Complex64, c: Complex64) -> f64 {
    0.5 * (a.norm() + c.norm())
}

/// Exact numerical radius of D_k from the parity pattern.
///
/// Even: max of |f11| and (|f22| + sqrt(|f22|^2 + |f23|^2)) / 2 — the max is
/// kept even though the published even-case display drops it, since only the
/// max form matches the sweep oracle when the f11 product dominates.
/// Odd: the elliptic-disc value on the rotated pattern.
pub fn radius_exact(eff: &EffectiveMatrix) -> f64 {
    match eff.parity {
        Parity::Even => {
            let head = eff.f[0][0].norm();
            let t = eff.f[1][1].norm();
            let tail = 0.5 * (t + (eff.f[1][1].norm_sqr() + eff.f[1][2].norm_sqr()).sqrt());
            head.max(tail)
        }
        Parity::Odd => elliptic_radius(eff.f[0][1], eff.f[0][2], eff.f[1][0]),
    }
}

/// Operator norm of D_k from the parity pattern, with both competing
/// branches recorded.
#[derive(Debug, Clone, Copy)]
pub struct PatternNorm {
    pub value: f64,
    /// Even: |f11|. Odd: sqrt(|f12|^2 + |f13|^2).
    pub top_row: f64,
    /// Even: sqrt(|f22|^2 + |f23|^2). Odd: |f21|.
    pub bottom_row: f64,
}

pub fn pattern_norm(eff: &EffectiveMatrix) -> PatternNorm {
    let (top_row, bottom_row) = match eff.parity {
        Parity::Even => (
            eff.f[0][0].norm(),
            (eff.f[1][1].norm_sqr() + eff.f[1][2].norm_sqr()).sqrt(),
        ),
        Parity::Odd => (
            (eff.f[0][1].norm_sqr() + eff.f[0][2].norm_sqr()).sqrt(),
            eff.f[1][0].norm(),
        ),
    };
    PatternNorm {
        value: top_row.max(bottom_row),
        top_row,
        bottom_row,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{
        numerical_radius_sweep, operator_norm, singular_values, RadiusOptions,
    };
    use crate::quantum::{correlations, pauli_x, pauli_y, pauli_z};
    use crate::sample::{random_observable, random_pure};
    use rand::{Rng, RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chain_vanishes_on_shared_eigenstate() {
        let z = pauli_z();
        let up = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = chain_direct(&[z.clone(), z], &up).unwrap();
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn two_chain_norm_is_deviation_product() {
        let up = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = chain_direct(&[pauli_x(), pauli_y()], &up).unwrap();
        assert!((operator_norm(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_chain_radius_at_equality_point() {
        let v = 1.0 / 2.0f64.sqrt();
        let s = QuantumState::bloch([v, 0.0, v]).unwrap();
        let d = chain_direct(&[pauli_x(), pauli_y(), pauli_z()], &s).unwrap();
        let w = numerical_radius_sweep(&d, &RadiusOptions::default()).unwrap();
        assert!((w - 0.5).abs() < 1e-9);
        let eff = effective_matrix(&[pauli_x(), pauli_y(), pauli_z()], &s).unwrap();
        assert!((radius_exact(&eff) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn two_chain_coefficients_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a1 = random_observable(&mut rng, 3, "A1");
        let a2 = random_observable(&mut rng, 3, "A2");
        let s = QuantumState::pure(random_pure(&mut rng, 3)).unwrap();
        let corr = correlations(&[a1.clone(), a2.clone()], &s).unwrap();
        let coeffs = chain_coefficients(&[a1, a2], &s).unwrap();
        assert!((coeffs.a + corr.moment(0, 1)).norm() < 1e-12);
        assert!((coeffs.b - Complex64::from(corr.mean(1))).norm() < 1e-12);
        assert!((coeffs.c - Complex64::from(corr.mean(0))).norm() < 1e-12);
        assert!((coeffs.d + Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn third_coefficient_d_vanishes_identically() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let obs: Vec<_> = (0..3).map(|i| random_observable(&mut rng, 4, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, 4)).unwrap();
            let coeffs = chain_coefficients(&obs, &s).unwrap();
            assert!(coeffs.d.norm() < 1e-12);
        }
    }

    #[test]
    fn even_d_coefficient_is_alpha_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 1..=4usize {
            let k = 2 * n;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, 3, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, 3)).unwrap();
            let corr = correlations(&obs, &s).unwrap();
            let coeffs = chain_coefficients(&obs, &s).unwrap();
            let mut expected = 1.0;
            for j in 1..n {
                expected *= corr.alpha(2 * j - 1, 2 * j).norm();
            }
            assert!((coeffs.d.norm() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn reconstruction_matches_direct_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let d = 2 + (rng.next_u32() % 4) as usize;
            let k = 2 + (rng.next_u32() % 5) as usize;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();
            let direct = chain_direct(&obs, &s).unwrap();
            let rebuilt = chain_coefficients(&obs, &s)
                .unwrap()
                .reconstruct(&obs, &s)
                .unwrap();
            assert!(direct.max_diff(&rebuilt) < 1e-9);
        }
    }

    #[test]
    fn pattern_and_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let d = 3 + (rng.next_u32() % 3) as usize;
            let k = 2 + (rng.next_u32() % 5) as usize;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();
            let eff = effective_matrix(&obs, &s).unwrap();
            let direct = chain_direct(&obs, &s).unwrap();
            let scale = operator_norm(&direct).unwrap().max(1e-300);
            match eff.parity {
                Parity::Even => {
                    for z in [eff.f[0][1], eff.f[0][2], eff.f[1][0]] {
                        assert!(z.norm() < 1e-9 * scale);
                    }
                }
                Parity::Odd => {
                    for z in [eff.f[0][0], eff.f[1][1], eff.f[1][2]] {
                        assert!(z.norm() < 1e-9 * scale);
                    }
                }
            }
            let sv = singular_values(&direct).unwrap();
            if sv.len() > 2 {
                assert!(sv[2] < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn closed_forms_match_sweep_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let opts = RadiusOptions::default();
        for _ in 0..20 {
            let d = 2 + (rng.next_u32() % 4) as usize;
            let k = 2 + (rng.next_u32() % 5) as usize;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();
            let eff = effective_matrix(&obs, &s).unwrap();
            let direct = chain_direct(&obs, &s).unwrap();
            let w_sweep = numerical_radius_sweep(&direct, &opts).unwrap();
            assert!((radius_exact(&eff) - w_sweep).abs() < 1e-8);
            let n = pattern_norm(&eff);
            assert!((n.value - operator_norm(&direct).unwrap()).abs() < 1e-9);
            // The embedded 3x3 carries the same radius.
            let w_embed = numerical_radius_sweep(&eff.embedded(), &opts).unwrap();
            assert!((radius_exact(&eff) - w_embed).abs() < 1e-8);
        }
    }

    #[test]
    fn correlation_route_agrees_with_state_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let d = 2 + (rng.next_u32() % 4) as usize;
            let k = 2 + (rng.next_u32() % 4) as usize;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();
            let corr = correlations(&obs, &s).unwrap();
            let id: Vec<usize> = (0..k).collect();
            let from_corr = effective_from_correlations(&corr, &id).unwrap();
            let from_state = effective_matrix(&obs, &s).unwrap();
            // The frames share phase conventions only up to a unit factor on
            // beta'; radii and norms are what must agree.
            assert!((radius_exact(&from_corr) - radius_exact(&from_state)).abs() < 1e-9);
            assert!((pattern_norm(&from_corr).value - pattern_norm(&from_state).value).abs() < 1e-9);
            let dev = corr.deviation(0);
            if dev > 1e-8 {
                let implied = corr.alpha(0, k - 1) / dev;
                assert!((from_state.beta_prime - implied).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn effective_coefficients_closed_forms_small_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..10 {
            let d = 3 + (rng.next_u32() % 3) as usize;
            let obs: Vec<_> = (0..3).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();

            let pair = &obs[..2];
            let corr2 = correlations(pair, &s).unwrap();
            let eff2 = effective_matrix(pair, &s).unwrap();
            // f11 = <A1><A2> - <A1 A2>; the second row carries -Delta_1 (beta', gamma').
            assert!((eff2.f(1, 1) + corr2.alpha(0, 1)).norm() < 1e-12);
            assert!(
                (eff2.f(2, 2).norm() - corr2.deviation(0) * eff2.beta_prime.norm()).abs() < 1e-12
            );
            assert!(
                (eff2.f(2, 3) + Complex64::from(corr2.deviation(0) * eff2.gamma_prime)).norm()
                    < 1e-12
            );

            let corr3 = correlations(&obs, &s).unwrap();
            let eff3 = effective_matrix(&obs, &s).unwrap();
            assert!(eff3.f(1, 1).norm() < 1e-12);
            assert!(
                (eff3.f(1, 2).norm() - corr3.alpha(0, 1).norm() * eff3.beta_prime.norm()).abs()
                    < 1e-12
            );
            assert!(
                (eff3.f(2, 1) + corr3.alpha(1, 2) * corr3.deviation(0)).norm() < 1e-12
            );
        }
    }

    #[test]
    fn even_f11_is_product_of_odd_pair_correlations() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for n in 1..=3usize {
            let k = 2 * n;
            let obs: Vec<_> = (0..k).map(|i| random_observable(&mut rng, 3, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, 3)).unwrap();
            let corr = correlations(&obs, &s).unwrap();
            let eff = effective_matrix(&obs, &s).unwrap();
            let mut expected = 1.0;
            for j in 1..=n {
                expected *= corr.alpha(2 * j - 2, 2 * j - 1).norm();
            }
            assert!((eff.f(1, 1).norm() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn pair_radius_closed_form_on_polar_family() {
        // X, Y at Bloch (0, 0, r3): w(D_2) = (|r3| + 1) / 2.
        for &r3 in &[0.0, 0.3, -0.7, 1.0] {
            let s = QuantumState::bloch([0.0, 0.0, r3]).unwrap();
            let corr = correlations(&[pauli_x(), pauli_y()], &s).unwrap();
            let id = [0usize, 1];
            let eff = effective_from_correlations(&corr, &id).unwrap();
            assert!((radius_exact(&eff) - 0.5 * (r3.abs() + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn frame_invariant_beta_gamma_deviation() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..20 {
            let d = 2 + (rng.next_u32() % 4) as usize;
            let obs: Vec<_> = (0..3).map(|i| random_observable(&mut rng, d, format!("A{i}"))).collect();
            let s = QuantumState::pure(random_pure(&mut rng, d)).unwrap();
            let corr = correlations(&obs, &s).unwrap();
            let eff = effective_matrix(&obs, &s).unwrap();
            let lhs = eff.beta_prime.norm_sqr() + eff.gamma_prime * eff.gamma_prime;
            let rhs = corr.deviation(2) * corr.deviation(2);
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_first_observable_zeroes_chain() {
        let z = pauli_z();
        let x = pauli_x();
        let up = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let eff = effective_matrix(&[z, x.clone()], &up).unwrap();
        assert_eq!(radius_exact(&eff), 0.0);
        assert_eq!(eff.beta_prime, Complex64::ZERO);
        // gamma' carries Delta of the last observable.
        assert!((eff.gamma_prime - 1.0).abs() < 1e-12);
    }

    #[test]
    fn elliptic_radius_closed_forms() {
        assert!((elliptic_radius(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((elliptic_radius(c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)) - 1.0).abs() < 1e-15);
        let expected = 2.0 * 2.0f64.sqrt();
        assert!((elliptic_radius(c(3.0, 0.0), c(4.0, 0.0), c(1.0, 0.0)) - expected).abs() < 1e-15);
        assert!((elliptic_radius_2x2(c(3.0, 0.0), c(1.0, 0.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn elliptic_radius_matches_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let opts = RadiusOptions::default();
        for _ in 0..10 {
            let draws: Vec<Complex64> = (0..3)
                .map(|_| c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
                .collect();
            let (a, b, cc) = (draws[0], draws[1], draws[2]);
            let mut e1 = ComplexMatrix::zeros(3, 3);
            e1[(0, 1)] = a;
            e1[(0, 2)] = b;
            e1[(1, 0)] = cc;
            let w1 = numerical_radius_sweep(&e1, &opts).unwrap();
            assert!((w1 - elliptic_radius(a, b, cc)).abs() < 1e-8);

            let mut e2 = ComplexMatrix::zeros(2, 2);
            e2[(0, 1)] = a;
            e2[(1, 0)] = cc;
            let w2 = numerical_radius_sweep(&e2, &opts).unwrap();
            assert!((w2 - elliptic_radius_2x2(a, cc)).abs() < 1e-8);
        }
    }

    #[test]
    fn state_commutator_range_is_imaginary_segment() {
        use crate::linalg::{commutator, numerical_range_boundary};
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let a = random_observable(&mut rng, 4, "A");
        let x = random_pure(&mut rng, 4);
        let comm = commutator(a.matrix(), &outer(&x, &x));
        let points = numerical_range_boundary(&comm, 32).unwrap();
        let radius = crate::linalg::numerical_radius_sweep(&comm, &RadiusOptions::default()).unwrap();
        for p in points {
            assert!(p.re.abs() < 1e-10, "off-axis point {p}");
            assert!(p.im.abs() <= radius + 1e-8);
        }
    }

    #[test]
    fn radii_are_phase_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let obs: Vec<_> = (0..3).map(|i| random_observable(&mut rng, 3, format!("A{i}"))).collect();
        let x = random_pure(&mut rng, 3);
        let phase = Complex64::from_polar(1.0, 1.234);
        let rotated: Vec<Complex64> = x.iter().map(|z| z * phase).collect();
        let s1 = QuantumState::pure(x).unwrap();
        let s2 = QuantumState::pure(rotated).unwrap();
        let r1 = radius_exact(&effective_matrix(&obs, &s1).unwrap());
        let r2 = radius_exact(&effective_matrix(&obs, &s2).unwrap());
        assert!((r1 - r2).abs() < 1e-12);
    }

}
