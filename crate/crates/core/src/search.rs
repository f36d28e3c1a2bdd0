//! Randomized and grid-based tightness studies: sample states to find where
//! a bound approaches the deviation product, sweep the Bloch sphere and
//! ball for the qubit-triple extrema, and run seeded verification suites.
//!
//! Everything here is deterministic given the seed. Samples are derived
//! from their index through independent RNG streams, so the parallel and
//! sequential paths produce identical results.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::bounds::{bound_report, schrodinger, theorem22_from_correlations};
use crate::chain::{
    chain_coefficients, chain_direct, effective_matrix, pattern_norm, radius_exact, Parity,
};
use crate::error::{Error, Result};
use crate::linalg::{
    self, commutator, hermitian_eigenvalues, kron, numerical_radius_sweep, operator_norm, outer,
    psd_sqrt, singular_values, vec_norm, vec_row_major, ComplexMatrix, RadiusOptions,
};
use crate::parallel::map_indexed;
use crate::quantum::{
    correlations, expectation, lift_mixed, pauli_x, pauli_y, pauli_z, CorrelationData, Observable,
    QuantumState,
};
use crate::sample::{
    random_density, random_hermitian, random_observable, random_pure, random_unitary,
};

/// Deviation products below this are treated as degenerate and skipped.
pub const DEGENERATE_PRODUCT: f64 = 1e-12;

/// Constant of the sharpened linear mean-product bound: 8 / (3 sqrt 3).
pub fn linear_sharpening_constant() -> f64 {
    8.0 / (3.0 * 3.0f64.sqrt())
}

/// Constant of the sharpened three-halves mean-product bound: 8 * 3^(1/4) / 3.
pub fn three_halves_sharpening_constant() -> f64 {
    8.0 * 3.0f64.sqrt().sqrt() / 3.0
}

/// Which bound the tightness search maximizes against the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundTarget {
    Theorem22,
    Theorem41,
    Theorem43,
}

impl BoundTarget {
    pub fn name(&self) -> &'static str {
        match self {
            BoundTarget::Theorem22 => "theorem22",
            BoundTarget::Theorem41 => "theorem41",
            BoundTarget::Theorem43 => "theorem43",
        }
    }

    fn required_arity(&self) -> Option<usize> {
        match self {
            BoundTarget::Theorem22 => None,
            BoundTarget::Theorem41 => Some(3),
            BoundTarget::Theorem43 => Some(4),
        }
    }

    fn evaluate(&self, corr: &CorrelationData) -> f64 {
        match self {
            BoundTarget::Theorem22 => {
                let id: Vec<usize> = (0..corr.k()).collect();
                theorem22_from_correlations(corr, &id)
            }
            BoundTarget::Theorem41 => {
                let a_ab = corr.alpha(0, 1).norm();
                let a_bc = corr.alpha(1, 2).norm();
                let a_ac = corr.alpha(0, 2).norm();
                let d_a = corr.deviation(0);
                let d_c = corr.deviation(2);
                (0.25 * (d_c * d_c * a_ab * a_ab + d_a * d_a * a_bc * a_bc)
                    + 0.5 * a_ab * a_bc * a_ac)
                    .sqrt()
            }
            BoundTarget::Theorem43 => {
                0.5 * corr.alpha(1, 2).norm()
                    * (corr.alpha(0, 3).norm() + corr.deviation(0) * corr.deviation(3))
            }
        }
    }
}

/// Configuration for [`tightness_search`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchConfig {
    pub samples: usize,
    pub seed: u64,
    /// Hill-climbing iterations after sampling; 0 disables refinement.
    pub refine_steps: usize,
    pub target: BoundTarget,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SearchTrace {
    pub evaluated: usize,
    pub skipped_degenerate: usize,
    pub mean_ratio: f64,
    pub refine_accepted: usize,
    pub refine_rejected: usize,
    pub final_step: f64,
}

/// Outcome of a tightness search. `ratio` = bound / product; 1 means tight.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TightnessResult {
    pub target: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub best_sample_index: usize,
    pub product: f64,
    pub bound: f64,
    pub ratio: f64,
    /// Best state vector, complex entries as [re, im].
    pub best_state: Vec<[f64; 2]>,
    pub trace: SearchTrace,
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 + index as u64);
    rng
}

fn evaluate_state(
    observables: &[Observable],
    vector: Vec<Complex64>,
    target: BoundTarget,
) -> Result<Option<(f64, f64, f64)>> {
    let state = QuantumState::pure(vector)?;
    let corr = correlations(observables, &state)?;
    let product = corr.deviation_product();
    if product < DEGENERATE_PRODUCT {
        return Ok(None);
    }
    let bound = target.evaluate(&corr);
    let ratio = bound / product;
    if ratio > 1.0 + 1e-9 {
        return Err(Error::RatioExceedsOne { ratio });
    }
    Ok(Some((ratio, product, bound)))
}

fn search_impl(
    observables: &[Observable],
    cfg: &SearchConfig,
    parallel: bool,
) -> Result<TightnessResult> {
    if observables.is_empty() {
        return Err(Error::EmptyObservables);
    }
    if cfg.samples == 0 {
        return Err(Error::NoSamples);
    }
    let d = observables[0].dim();
    for a in observables {
        if a.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: a.dim(),
            });
        }
    }
    if let Some(required) = cfg.target.required_arity() {
        if observables.len() != required {
            return Err(Error::TargetArity {
                target: cfg.target.name(),
                required,
                got: observables.len(),
            });
        }
    }
    if observables.len() < 2 {
        return Err(Error::TooFewObservables {
            got: observables.len(),
        });
    }

    let outcomes = map_indexed(cfg.samples, parallel, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        evaluate_state(observables, random_pure(&mut rng, d), cfg.target)
    });

    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut ratio_sum = 0.0;
    let mut best: Option<(usize, f64)> = None;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            None => skipped += 1,
            Some((ratio, _, _)) => {
                evaluated += 1;
                ratio_sum += ratio;
                if best.is_none_or(|(_, b)| ratio > b) {
                    best = Some((i, ratio));
                }
            }
        }
    }
    let (best_index, _) = best.ok_or_else(|| {
        Error::InvalidOptions("every sampled state was degenerate; nothing to rank".into())
    })?;

    // Hill climb from the best sample with multiplicative perturbations,
    // halving the step on every rejection.
    let mut vector = random_pure(&mut sample_rng(cfg.seed, best_index), d);
    let (mut ratio, mut product, mut bound) =
        evaluate_state(observables, vector.clone(), cfg.target)?
            .expect("best sample is non-degenerate");
    let mut step = 0.25;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut refine_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    refine_rng.set_stream(0);
    for _ in 0..cfg.refine_steps {
        let candidate: Vec<Complex64> = vector
            .iter()
            .map(|z| {
                let g = Complex64::new(
                    StandardNormal.sample(&mut refine_rng),
                    StandardNormal.sample(&mut refine_rng),
                );
                z * (Complex64::ONE + step * g)
            })
            .collect();
        let norm = vec_norm(&candidate);
        if norm < 1e-12 {
            rejected += 1;
            step *= 0.5;
            continue;
        }
        let candidate: Vec<Complex64> = candidate.iter().map(|z| z / norm).collect();
        match evaluate_state(observables, candidate.clone(), cfg.target)? {
            Some((r, p, b)) if r > ratio => {
                ratio = r;
                product = p;
                bound = b;
                vector = candidate;
                accepted += 1;
            }
            _ => {
                rejected += 1;
                step *= 0.5;
            }
        }
    }

    Ok(TightnessResult {
        target: cfg.target.name(),
        samples: cfg.samples,
        seed: cfg.seed,
        best_sample_index: best_index,
        product,
        bound,
        ratio,
        best_state: vector.iter().map(|z| [z.re, z.im]).collect(),
        trace: SearchTrace {
            evaluated,
            skipped_degenerate: skipped,
            mean_ratio: if evaluated > 0 {
                ratio_sum / evaluated as f64
            } else {
                0.0
            },
            refine_accepted: accepted,
            refine_rejected: rejected,
            final_step: step,
        },
    })
}

/// Samples pure states uniformly, ranks bound/product, then hill-climbs.
/// Runs on the thread pool when the `parallel` feature is enabled; results
/// are identical either way.
pub fn tightness_search(observables: &[Observable], cfg: &SearchConfig) -> Result<TightnessResult> {
    search_impl(observables, cfg, true)
}

/// Single-threaded reference path of [`tightness_search`].
pub fn tightness_search_sequential(
    observables: &[Observable],
    cfg: &SearchConfig,
) -> Result<TightnessResult> {
    search_impl(observables, cfg, false)
}

/// A value with the Bloch vector where it was attained.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub bloch: [f64; 3],
}

/// Grid sweep of a qubit triple over pure states (sphere), mixed states
/// (ball), the symmetric diagonal, and the zero-mean great circle.
#[derive(Debug, Clone, Serialize)]
pub struct BlochGridReport {
    pub resolution: usize,
    pub sphere_product_sq_min: Extremum,
    pub sphere_product_sq_max: Extremum,
    pub ball_product_sq_max: Extremum,
    pub mean_product_abs_max: Extremum,
    /// Min of the squared deviation product along the diagonal ray
    /// r = (t, t, t), t in [0, 1/sqrt 3].
    pub diagonal_product_sq_min: Extremum,
    pub min_margin_kbound: f64,
    pub min_margin_triple_special: f64,
    pub min_margin_linear_sharpening: f64,
    pub min_margin_three_halves_sharpening: f64,
    pub min_margin_zero_mean_fallback: f64,
    pub min_margin_double_zero_fallback: f64,
}

struct PointEval {
    product: f64,
    product_sq: f64,
    kbound: f64,
    special: f64,
    means: [f64; 3],
}

fn eval_bloch_point(observables: &[Observable], r: [f64; 3]) -> Result<PointEval> {
    let state = QuantumState::bloch(r)?;
    let corr = correlations(observables, &state)?;
    let id = [0usize, 1, 2];
    let product = corr.deviation_product();
    let special = 0.5
        * (corr.deviation(0) * corr.alpha(1, 2).norm()
            + corr.deviation(2) * corr.alpha(0, 1).norm());
    Ok(PointEval {
        product,
        product_sq: product * product,
        kbound: theorem22_from_correlations(&corr, &id),
        special,
        means: [corr.mean(0), corr.mean(1), corr.mean(2)],
    })
}

#[derive(Clone, Copy)]
struct GridAccumulator {
    product_sq_min: Extremum,
    product_sq_max: Extremum,
    mean_abs_max: Extremum,
    margin_kbound: f64,
    margin_special: f64,
    margin_linear: f64,
    margin_three_halves: f64,
}

impl GridAccumulator {
    fn new() -> Self {
        GridAccumulator {
            product_sq_min: Extremum {
                value: f64::INFINITY,
                bloch: [0.0; 3],
            },
            product_sq_max: Extremum {
                value: f64::NEG_INFINITY,
                bloch: [0.0; 3],
            },
            mean_abs_max: Extremum {
                value: f64::NEG_INFINITY,
                bloch: [0.0; 3],
            },
            margin_kbound: f64::INFINITY,
            margin_special: f64::INFINITY,
            margin_linear: f64::INFINITY,
            margin_three_halves: f64::INFINITY,
        }
    }

    fn absorb_point(&mut self, r: [f64; 3], eval: &PointEval) {
        if eval.product_sq < self.product_sq_min.value {
            self.product_sq_min = Extremum {
                value: eval.product_sq,
                bloch: r,
            };
        }
        if eval.product_sq > self.product_sq_max.value {
            self.product_sq_max = Extremum {
                value: eval.product_sq,
                bloch: r,
            };
        }
        let mean_abs = (eval.means[0] * eval.means[1] * eval.means[2]).abs();
        if mean_abs > self.mean_abs_max.value {
            self.mean_abs_max = Extremum {
                value: mean_abs,
                bloch: r,
            };
        }
        self.margin_kbound = self.margin_kbound.min(eval.product - eval.kbound);
        self.margin_special = self.margin_special.min(eval.product - eval.special);
        self.margin_linear = self
            .margin_linear
            .min(eval.product_sq - linear_sharpening_constant() * mean_abs);
        self.margin_three_halves = self
            .margin_three_halves
            .min(eval.product_sq - three_halves_sharpening_constant() * mean_abs.powf(1.5));
    }

    fn merge(&mut self, other: &GridAccumulator) {
        if other.product_sq_min.value < self.product_sq_min.value {
            self.product_sq_min = other.product_sq_min;
        }
        if other.product_sq_max.value > self.product_sq_max.value {
            self.product_sq_max = other.product_sq_max;
        }
        if other.mean_abs_max.value > self.mean_abs_max.value {
            self.mean_abs_max = other.mean_abs_max;
        }
        self.margin_kbound = self.margin_kbound.min(other.margin_kbound);
        self.margin_special = self.margin_special.min(other.margin_special);
        self.margin_linear = self.margin_linear.min(other.margin_linear);
        self.margin_three_halves = self.margin_three_halves.min(other.margin_three_halves);
    }
}

fn sphere_point(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Sweeps a qubit triple over sphere, ball, diagonal and great-circle grids
/// and reports extrema and worst-case bound margins.
pub fn bloch_grid(observables: &[Observable], resolution: usize) -> Result<BlochGridReport> {
    if observables.len() != 3 {
        return Err(Error::TargetArity {
            target: "bloch_grid",
            required: 3,
            got: observables.len(),
        });
    }
    if observables[0].dim() != 2 || observables[1].dim() != 2 || observables[2].dim() != 2 {
        return Err(Error::WrongDimension {
            got: observables.iter().map(|a| a.dim()).max().unwrap_or(0),
        });
    }
    if resolution < 8 {
        return Err(Error::ResolutionTooSmall { got: resolution });
    }

    // Sphere grid: theta rows in parallel, merged in row order.
    let rows = map_indexed(resolution + 1, resolution >= 64, |i| -> Result<GridAccumulator> {
        let theta = std::f64::consts::PI * i as f64 / resolution as f64;
        let mut acc = GridAccumulator::new();
        for j in 0..resolution {
            let phi = std::f64::consts::TAU * j as f64 / resolution as f64;
            let r = sphere_point(theta, phi);
            acc.absorb_point(r, &eval_bloch_point(observables, r)?);
        }
        Ok(acc)
    });
    let mut sphere = GridAccumulator::new();
    for row in rows {
        sphere.merge(&row?);
    }

    // Ball grid: coarser angular grid over radial shells.
    let angular = resolution.min(64);
    let radial = resolution.min(32);
    let mut ball = GridAccumulator::new();
    for l in 0..=radial {
        let scale = l as f64 / radial as f64;
        for i in 0..=angular {
            let theta = std::f64::consts::PI * i as f64 / angular as f64;
            for j in 0..angular {
                let phi = std::f64::consts::TAU * j as f64 / angular as f64;
                let p = sphere_point(theta, phi);
                let r = [p[0] * scale, p[1] * scale, p[2] * scale];
                ball.absorb_point(r, &eval_bloch_point(observables, r)?);
            }
        }
    }

    // Diagonal ray r = (t, t, t), t in [0, 1/sqrt 3]; hits the sphere at
    // the far endpoint.
    let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
    let mut diagonal_min = Extremum {
        value: f64::INFINITY,
        bloch: [0.0; 3],
    };
    for l in 0..=resolution {
        let t = inv_sqrt3 * l as f64 / resolution as f64;
        let r = [t, t, t];
        let eval = eval_bloch_point(observables, r)?;
        if eval.product_sq < diagonal_min.value {
            diagonal_min = Extremum {
                value: eval.product_sq,
                bloch: r,
            };
        }
    }

    // Zero-mean great circle r2 = 0 and the double-zero axis.
    let mut margin_zero_mean = f64::INFINITY;
    for j in 0..resolution {
        let psi = std::f64::consts::TAU * j as f64 / resolution as f64;
        let r = [psi.cos(), 0.0, psi.sin()];
        let eval = eval_bloch_point(observables, r)?;
        let m0 = eval.means[0];
        let m2 = eval.means[2];
        let fallback = 0.5
            * (((1.0 - m0 * m0).max(0.0) * m0 * m0).sqrt()
                + ((1.0 - m2 * m2).max(0.0) * m2 * m2).sqrt());
        margin_zero_mean = margin_zero_mean.min(eval.product - fallback);
    }
    let mut margin_double_zero = f64::INFINITY;
    for l in 0..=resolution {
        let t = -1.0 + 2.0 * l as f64 / resolution as f64;
        let eval = eval_bloch_point(observables, [t, 0.0, 0.0])?;
        let m0 = eval.means[0];
        let fallback = 0.5 * ((1.0 - m0 * m0).max(0.0) * m0 * m0).sqrt();
        margin_double_zero = margin_double_zero.min(eval.product - fallback);
    }

    let mut mean_abs_max = sphere.mean_abs_max;
    if ball.mean_abs_max.value > mean_abs_max.value {
        mean_abs_max = ball.mean_abs_max;
    }

    Ok(BlochGridReport {
        resolution,
        sphere_product_sq_min: sphere.product_sq_min,
        sphere_product_sq_max: sphere.product_sq_max,
        ball_product_sq_max: ball.product_sq_max,
        mean_product_abs_max: mean_abs_max,
        diagonal_product_sq_min: diagonal_min,
        min_margin_kbound: sphere.margin_kbound.min(ball.margin_kbound),
        min_margin_triple_special: sphere.margin_special.min(ball.margin_special),
        min_margin_linear_sharpening: sphere.margin_linear.min(ball.margin_linear),
        min_margin_three_halves_sharpening: sphere
            .margin_three_halves
            .min(ball.margin_three_halves),
        min_margin_zero_mean_fallback: margin_zero_mean,
        min_margin_double_zero_fallback: margin_double_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// |lhs - rhs| must stay within tolerance.
    Equality,
    /// lhs - rhs must stay above -tolerance.
    LowerBound,
}

/// One verification check with its observed margin.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SuiteCheck {
    fn equality(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = lhs - rhs;
        SuiteCheck {
            name: name.to_string(),
            kind: CheckKind::Equality,
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin.abs() <= tolerance,
        }
    }

    fn lower_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = lhs - rhs;
        SuiteCheck {
            name: name.to_string(),
            kind: CheckKind::LowerBound,
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance_scale: f64,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
}

impl SuiteReport {
    fn build(suite: &str, samples: usize, seed: u64, scale: f64, checks: Vec<SuiteCheck>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.to_string(),
            samples,
            seed,
            tolerance_scale: scale,
            checks,
            passed,
        }
    }
}

fn stream_rng(seed: u64, family: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((family << 32) | index as u64);
    rng
}

/// Worst (minimum) margin of lhs - rhs over indexed evaluations, together
/// with the lhs/rhs values at the worst point. Ties keep the lowest index.
fn worst_margin(points: &[(f64, f64)]) -> (f64, f64) {
    let mut worst = (f64::INFINITY, f64::INFINITY);
    let mut worst_margin = f64::INFINITY;
    for &(lhs, rhs) in points {
        let margin = lhs - rhs;
        if margin < worst_margin {
            worst_margin = margin;
            worst = (lhs, rhs);
        }
    }
    worst
}

struct PauliPointChecks {
    product: f64,
    product_sq: f64,
    kbound: f64,
    special: f64,
    links: [f64; 5],
    mean_abs: f64,
}

fn pauli_point(observables: &[Observable], state: &QuantumState) -> Result<PauliPointChecks> {
    let corr = correlations(observables, state)?;
    let id = [0usize, 1, 2];
    let product = corr.deviation_product();
    let (x, y, z) = (corr.mean(0), corr.mean(1), corr.mean(2));
    let u = (1.0 - x * x) * (x * x + y * y * z * z);
    let v = (1.0 - z * z) * (z * z + x * x * y * y);
    let w = (y * y + x * x * z * z) * (x * x + y * y * z * z) * (z * z + x * x * y * y);
    let link1 = 0.25 * (u + v)
        + 0.5 * ((1.0 - z * z) * (1.0 - x * x) * (x * x + y * y * z * z) * (z * z + x * x * y * y))
            .sqrt();
    let link2 = 0.25 * (u + v) + 0.5 * w.sqrt();
    let link3 = w.sqrt();
    let mean_abs = (x * y * z).abs();
    let link4 = 2.0 * 2.0f64.sqrt() * mean_abs.powf(1.5);
    Ok(PauliPointChecks {
        product,
        product_sq: product * product,
        kbound: theorem22_from_correlations(&corr, &id),
        special: 0.5
            * (corr.deviation(0) * corr.alpha(1, 2).norm()
                + corr.deviation(2) * corr.alpha(0, 1).norm()),
        links: [link1, link2, link3, link4, 0.0],
        mean_abs,
    })
}

/// Verification table for the Pauli triple: equality points, the chained
/// square inequalities, the sharpened mean-product bounds, and the
/// zero-mean fallbacks, evaluated at seeded random ball points.
pub fn pauli_suite(samples: usize, seed: u64, tolerance_scale: f64) -> Result<SuiteReport> {
    let obs = [pauli_x(), pauli_y(), pauli_z()];
    let eq_tol = 1e-10 * tolerance_scale;
    let ge_tol = 1e-9 * tolerance_scale;
    let mut checks = Vec::new();

    // Equality point of the triple bound: Bloch (1/sqrt2, 0, 1/sqrt2).
    let half = 1.0 / 2.0f64.sqrt();
    let xz = pauli_point(&obs, &QuantumState::bloch([half, 0.0, half])?)?;
    checks.push(SuiteCheck::equality(
        "triple_special_equals_product_at_xz_point",
        xz.special,
        xz.product,
        eq_tol,
    ));
    checks.push(SuiteCheck::equality(
        "product_value_at_xz_point",
        xz.product,
        0.5,
        eq_tol,
    ));
    checks.push(SuiteCheck::equality(
        "kbound_value_at_xz_point",
        xz.kbound,
        0.5,
        eq_tol,
    ));

    // Equality point of the sharpened mean-product bounds: the symmetric
    // state (1/sqrt3, 1/sqrt3, 1/sqrt3).
    let third = 1.0 / 3.0f64.sqrt();
    let sym = pauli_point(&obs, &QuantumState::bloch([third, third, third])?)?;
    checks.push(SuiteCheck::equality(
        "three_halves_sharpening_equality_at_symmetric_point",
        sym.product_sq,
        three_halves_sharpening_constant() * sym.mean_abs.powf(1.5),
        eq_tol,
    ));
    checks.push(SuiteCheck::equality(
        "linear_sharpening_equality_at_symmetric_point",
        sym.product_sq,
        linear_sharpening_constant() * sym.mean_abs,
        eq_tol,
    ));
    checks.push(SuiteCheck::equality(
        "product_sq_value_at_symmetric_point",
        sym.product_sq,
        8.0 / 27.0,
        eq_tol,
    ));

    // Random ball points: mixed states from the Wishart sampler.
    let evals = map_indexed(samples, samples >= 64, |i| -> Result<PauliPointChecks> {
        let mut rng = stream_rng(seed, 1, i);
        let state = QuantumState::density(random_density(&mut rng, 2))?;
        pauli_point(&obs, &state)
    });
    let mut points = Vec::with_capacity(samples);
    for eval in evals {
        points.push(eval?);
    }
    let aggregates: Vec<(&str, Vec<(f64, f64)>)> = vec![
        (
            "triple_special_bound_holds",
            points.iter().map(|p| (p.product, p.special)).collect(),
        ),
        (
            "kbound_holds",
            points.iter().map(|p| (p.product, p.kbound)).collect(),
        ),
        (
            "square_chain_link_1",
            points.iter().map(|p| (p.product_sq, p.links[0])).collect(),
        ),
        (
            "square_chain_link_2",
            points.iter().map(|p| (p.links[0], p.links[1])).collect(),
        ),
        (
            "square_chain_link_3",
            points.iter().map(|p| (p.links[1], p.links[2])).collect(),
        ),
        (
            "square_chain_link_4",
            points.iter().map(|p| (p.links[2], p.links[3])).collect(),
        ),
        (
            "two_sqrt_two_bound_holds",
            points
                .iter()
                .map(|p| (p.product_sq, 2.0 * 2.0f64.sqrt() * p.mean_abs.powf(1.5)))
                .collect(),
        ),
        (
            "three_halves_sharpening_holds",
            points
                .iter()
                .map(|p| {
                    (
                        p.product_sq,
                        three_halves_sharpening_constant() * p.mean_abs.powf(1.5),
                    )
                })
                .collect(),
        ),
        (
            "linear_sharpening_holds",
            points
                .iter()
                .map(|p| (p.product_sq, linear_sharpening_constant() * p.mean_abs))
                .collect(),
        ),
    ];
    for (name, pairs) in aggregates {
        let (lhs, rhs) = worst_margin(&pairs);
        checks.push(SuiteCheck::lower_bound(name, lhs, rhs, ge_tol));
    }

    // Zero-mean fallbacks on the r2 = 0 great circle and the r = (t, 0, 0)
    // axis.
    let circle = 512usize;
    let mut zero_mean_pairs = Vec::with_capacity(circle);
    for j in 0..circle {
        let psi = std::f64::consts::TAU * j as f64 / circle as f64;
        let p = pauli_point(&obs, &QuantumState::bloch([psi.cos(), 0.0, psi.sin()])?)?;
        let (m0, m2) = (psi.cos(), psi.sin());
        let fallback = 0.5
            * (((1.0 - m0 * m0).max(0.0) * m0 * m0).sqrt()
                + ((1.0 - m2 * m2).max(0.0) * m2 * m2).sqrt());
        zero_mean_pairs.push((p.product, fallback));
    }
    let (lhs, rhs) = worst_margin(&zero_mean_pairs);
    checks.push(SuiteCheck::lower_bound(
        "zero_mean_fallback_holds",
        lhs,
        rhs,
        ge_tol,
    ));
    let mut double_zero_pairs = Vec::with_capacity(circle + 1);
    for l in 0..=circle {
        let t = -1.0 + 2.0 * l as f64 / circle as f64;
        let p = pauli_point(&obs, &QuantumState::bloch([t, 0.0, 0.0])?)?;
        let fallback = 0.5 * ((1.0 - t * t).max(0.0) * t * t).sqrt();
        double_zero_pairs.push((p.product, fallback));
    }
    let (lhs, rhs) = worst_margin(&double_zero_pairs);
    checks.push(SuiteCheck::lower_bound(
        "double_zero_fallback_holds",
        lhs,
        rhs,
        ge_tol,
    ));

    Ok(SuiteReport::build(
        "pauli",
        samples,
        seed,
        tolerance_scale,
        checks,
    ))
}

/// Randomized self-checks of the module invariants: the deviation/norm/
/// radius identity, pattern structure, oracle agreement, ordering chains,
/// lifting consistency and the supporting linear-algebra properties.
pub fn properties_suite(samples: usize, seed: u64, tolerance_scale: f64) -> Result<SuiteReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut checks = Vec::new();
    let radius_opts = RadiusOptions::default();

    let dims = |i: usize| 2 + i % 5; // cycles 2..=6
    let chain_dims = |i: usize| 2 + i % 4; // cycles 2..=5
    let chain_len = |i: usize| 2 + (i / 4) % 5; // cycles 2..=6

    // Family 0: deviation = commutator norm = commutator radius.
    let rows = map_indexed(samples, samples >= 16, |i| -> Result<(f64, f64)> {
        let mut rng = stream_rng(seed, 0, i);
        let d = dims(i);
        let a = random_observable(&mut rng, d, "A");
        let x = random_pure(&mut rng, d);
        let s = QuantumState::pure(x.clone())?;
        let dev = crate::quantum::deviation(&a, &s)?;
        let comm = commutator(a.matrix(), &outer(&x, &x));
        let norm = operator_norm(&comm)?;
        let radius = numerical_radius_sweep(&comm, &radius_opts)?;
        let worst = (dev - norm).abs().max((dev - radius).abs());
        let skew = (&comm + &comm.adjoint()).max_abs();
        Ok((worst, skew))
    });
    let mut worst_dev = 0.0f64;
    let mut worst_skew = 0.0f64;
    for row in rows {
        let (dev, skew) = row?;
        worst_dev = worst_dev.max(dev);
        worst_skew = worst_skew.max(skew);
    }
    checks.push(SuiteCheck::equality(
        "deviation_equals_commutator_norm_and_radius",
        worst_dev,
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "state_commutator_is_skew_hermitian",
        worst_skew,
        0.0,
        1e-12 * tolerance_scale,
    ));

    // Family 1: the two pair-bound forms agree and dominate the commutator
    // form.
    let rows = map_indexed(samples, samples >= 16, |i| -> Result<(f64, f64)> {
        let mut rng = stream_rng(seed, 1, i);
        let d = dims(i);
        let a = random_observable(&mut rng, d, "A");
        let b = random_observable(&mut rng, d, "B");
        let s = if i % 3 == 0 {
            QuantumState::density(random_density(&mut rng, d))?
        } else {
            QuantumState::pure(random_pure(&mut rng, d))?
        };
        let value = schrodinger(&a, &b, &s)?;
        let comm = Observable::new("i[A,B]", commutator(a.matrix(), b.matrix()).scale(Complex64::I))?;
        let anti = Observable::new("{A,B}", linalg::anticommutator(a.matrix(), b.matrix()))?;
        let mean_a = expectation(&a, &s)?;
        let mean_b = expectation(&b, &s)?;
        let radical = (0.25 * expectation(&comm, &s)?.powi(2)
            + (0.5 * expectation(&anti, &s)? - mean_a * mean_b).powi(2))
        .sqrt();
        let half_comm = 0.5 * expectation(&comm, &s)?.abs();
        Ok(((value - radical).abs(), value - half_comm))
    });
    let mut worst_gap = 0.0f64;
    let mut worst_dominance = f64::INFINITY;
    for row in rows {
        let (gap, dom) = row?;
        worst_gap = worst_gap.max(gap);
        worst_dominance = worst_dominance.min(dom);
    }
    checks.push(SuiteCheck::equality(
        "pair_bound_forms_agree",
        worst_gap,
        0.0,
        1e-10 * tolerance_scale,
    ));
    checks.push(SuiteCheck::lower_bound(
        "pair_bound_dominates_commutator_form",
        worst_dominance,
        0.0,
        1e-12 * tolerance_scale,
    ));

    // Family 2: chain machinery on random instances.
    let rows = map_indexed(samples, samples >= 16, |i| -> Result<[f64; 7]> {
        let mut rng = stream_rng(seed, 2, i);
        let d = chain_dims(i);
        let k = chain_len(i);
        let obs: Vec<Observable> = (0..k)
            .map(|j| random_observable(&mut rng, d, format!("A{j}")))
            .collect();
        let x = random_pure(&mut rng, d);
        let s = QuantumState::pure(x)?;
        let direct = chain_direct(&obs, &s)?;
        let rebuilt = chain_coefficients(&obs, &s)?.reconstruct(&obs, &s)?;
        let recon_err = direct.max_diff(&rebuilt);

        let eff = effective_matrix(&obs, &s)?;
        let scale = pattern_norm(&eff).value.max(1e-300);
        let off_pattern = match eff.parity {
            Parity::Even => [eff.f[0][1], eff.f[0][2], eff.f[1][0]],
            Parity::Odd => [eff.f[0][0], eff.f[1][1], eff.f[1][2]],
        }
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
            / scale;

        let sweep = numerical_radius_sweep(&direct, &radius_opts)?;
        let radius_err = (radius_exact(&eff) - sweep).abs();
        let norm_err = (pattern_norm(&eff).value - operator_norm(&direct)?).abs();
        let sv = singular_values(&direct)?;
        let rank_err = if sv.len() > 2 { sv[2] / scale } else { 0.0 };

        // Cyclic first-term identity of the odd-k bound.
        let corr = correlations(&obs, &s)?;
        let cyclic_err = if k % 2 == 1 {
            let mut cyclic = 1.0;
            for j in 0..k {
                cyclic *= corr.alpha(j, (j + 1) % k).norm();
            }
            let n = (k - 1) / 2;
            let mut p1 = 1.0;
            let mut p2 = 1.0;
            for j in 1..=n {
                p1 *= corr.alpha(2 * j - 2, 2 * j - 1).norm();
                p2 *= corr.alpha(2 * j - 1, 2 * j).norm();
            }
            let grouped = p1 * p2 * corr.alpha(0, k - 1).norm();
            (cyclic - grouped).abs() / (1.0 + grouped)
        } else {
            0.0
        };

        let mut cs_margin = f64::INFINITY;
        for a in 0..k {
            for b in 0..k {
                cs_margin = cs_margin
                    .min(corr.deviation(a) * corr.deviation(b) - corr.alpha(a, b).norm());
            }
        }
        Ok([
            recon_err,
            off_pattern,
            radius_err,
            norm_err,
            rank_err,
            cyclic_err,
            cs_margin,
        ])
    });
    let mut agg = [0.0f64; 6];
    let mut cs_min = f64::INFINITY;
    for row in rows {
        let row = row?;
        for (slot, value) in agg.iter_mut().zip(row.iter()) {
            *slot = slot.max(*value);
        }
        cs_min = cs_min.min(row[6]);
    }
    checks.push(SuiteCheck::equality(
        "coefficients_reconstruct_chain",
        agg[0],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "off_pattern_entries_vanish",
        agg[1],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "closed_radius_matches_sweep",
        agg[2],
        0.0,
        1e-8 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "pattern_norm_matches_operator_norm",
        agg[3],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "chain_rank_at_most_two",
        agg[4],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "cyclic_alpha_product_identity",
        agg[5],
        0.0,
        1e-12 * tolerance_scale,
    ));
    checks.push(SuiteCheck::lower_bound(
        "cauchy_schwarz_holds",
        cs_min,
        0.0,
        1e-9 * tolerance_scale,
    ));

    // Family 3: ordering chain and mixed-state lifting.
    let rows = map_indexed(samples, samples >= 16, |i| -> Result<(f64, f64)> {
        let mut rng = stream_rng(seed, 3, i);
        let d = chain_dims(i);
        let k = 2 + (i / 4) % 4; // 2..=5, keeps permutations cheap
        let obs: Vec<Observable> = (0..k)
            .map(|j| random_observable(&mut rng, d, format!("A{j}")))
            .collect();
        let mixed = i % 2 == 1;
        let s = if mixed {
            QuantumState::density(random_density(&mut rng, d))?
        } else {
            QuantumState::pure(random_pure(&mut rng, d))?
        };
        let report = bound_report(&obs, &s, true)?;
        let permuted = report.radius_permuted.unwrap_or(report.radius_exact_id);
        let min_gap = (report.deviation_product - permuted)
            .min(permuted - report.radius_exact_id)
            .min(report.radius_exact_id - report.bound_theorem22)
            .min(report.bound_theorem22 - report.bound_robertson_chain)
            .min(report.deviation_product - report.norm_based)
            .min(report.norm_based - report.radius_exact_id);

        let lift_err = if mixed {
            let corr = correlations(&obs, &s)?;
            let (lifted, pure) = lift_mixed(&obs, &s)?;
            let lifted_corr = correlations(&lifted, &pure)?;
            let mut err = 0.0f64;
            for a in 0..k {
                err = err.max((corr.mean(a) - lifted_corr.mean(a)).abs());
                err = err.max((corr.deviation(a) - lifted_corr.deviation(a)).abs());
                for b in 0..k {
                    err = err.max((corr.moment(a, b) - lifted_corr.moment(a, b)).norm());
                }
            }
            let id: Vec<usize> = (0..k).collect();
            err = err.max(
                (theorem22_from_correlations(&corr, &id)
                    - theorem22_from_correlations(&lifted_corr, &id))
                .abs(),
            );
            err
        } else {
            0.0
        };
        Ok((min_gap, lift_err))
    });
    let mut order_min = f64::INFINITY;
    let mut lift_max = 0.0f64;
    for row in rows {
        let (gap, lift) = row?;
        order_min = order_min.min(gap);
        lift_max = lift_max.max(lift);
    }
    checks.push(SuiteCheck::lower_bound(
        "ordering_chain_holds",
        order_min,
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "lifted_moments_match_unlifted",
        lift_max,
        0.0,
        1e-9 * tolerance_scale,
    ));

    // Family 4: supporting linear algebra.
    let rows = map_indexed(samples, samples >= 16, |i| -> Result<[f64; 6]> {
        let mut rng = stream_rng(seed, 4, i);
        let d = dims(i);
        let g = crate::sample::random_complex_matrix(&mut rng, d);
        let w = numerical_radius_sweep(&g, &radius_opts)?;
        let norm = operator_norm(&g)?;
        let two_sided = (w - norm / 2.0).min(norm - w);

        let h = random_hermitian(&mut rng, d);
        let herm_gap = (numerical_radius_sweep(&h, &radius_opts)? - operator_norm(&h)?).abs();
        let skew = h.scale(Complex64::I);
        let skew_gap = (numerical_radius_sweep(&skew, &radius_opts)? - operator_norm(&skew)?).abs();

        let u = random_unitary(&mut rng, d);
        let conjugated = &(&u.adjoint() * &h) * &u;
        let ev_a = hermitian_eigenvalues(&h, 1e-10)?;
        let ev_b = hermitian_eigenvalues(&conjugated, 1e-10)?;
        let ev_gap = ev_a
            .iter()
            .zip(&ev_b)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);

        let rho = random_density(&mut rng, d);
        let root = psd_sqrt(&rho, 1e-10)?;
        let sqrt_err = (&(&root * &root) - &rho).max_abs() / (1.0 + rho.max_abs());

        let t = crate::sample::random_complex_matrix(&mut rng, d);
        let a = random_hermitian(&mut rng, d);
        let lhs = vec_row_major(&(&a * &t));
        let rhs = kron(&a, &ComplexMatrix::identity(d)).matvec(&vec_row_major(&t));
        let vec_err = lhs
            .iter()
            .zip(&rhs)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max);

        Ok([
            two_sided,
            herm_gap.max(skew_gap),
            ev_gap,
            sqrt_err,
            vec_err,
            0.0,
        ])
    });
    let mut two_sided_min = f64::INFINITY;
    let mut others = [0.0f64; 4];
    for row in rows {
        let row = row?;
        two_sided_min = two_sided_min.min(row[0]);
        for (slot, value) in others.iter_mut().zip(row[1..5].iter()) {
            *slot = slot.max(*value);
        }
    }
    checks.push(SuiteCheck::lower_bound(
        "radius_within_two_sided_norm_bounds",
        two_sided_min,
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "normal_radius_equals_norm",
        others[0],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "eigenvalues_unitarily_invariant",
        others[1],
        0.0,
        1e-10 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "psd_sqrt_squares_back",
        others[2],
        0.0,
        1e-9 * tolerance_scale,
    ));
    checks.push(SuiteCheck::equality(
        "vec_kron_identity",
        others[3],
        0.0,
        1e-10 * tolerance_scale,
    ));

    Ok(SuiteReport::build(
        "properties",
        samples,
        seed,
        tolerance_scale,
        checks,
    ))
}
