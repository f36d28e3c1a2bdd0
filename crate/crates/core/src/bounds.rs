//! Lower bounds on the deviation product: pairwise commutator and
//! correlation bounds, the even/odd k-observable bound, its three- and
//! four-observable specializations, permutation maximization, and the
//! weaker norm-based alternative.
//!
//! Every bound is reported on the product Delta_1 ... Delta_k itself;
//! squared forms are square-rooted on output and retained separately.

use itertools::Itertools;
use num_complex::Complex64;
use serde::Serialize;

use crate::chain::{effective_from_correlations, effective_matrix, pattern_norm, radius_exact};
use crate::error::{Error, Result};
use crate::linalg::{anticommutator, commutator};
use crate::parallel::map_indexed;
use crate::quantum::{
    correlations, expectation, lift_mixed, CorrelationData, Observable, QuantumState,
};

/// Tolerance on the defining equalities of the three-observable special case.
pub const SPECIAL_CASE_TOL: f64 = 1e-9;

/// Gap tolerance for the equality diagnostics.
pub const EQUALITY_TOL: f64 = 1e-9;

const PERMUTATION_CAP: usize = 8;

/// Half commutator modulus |<[A, B]>| / 2 = |Im <AB>|.
pub fn robertson(a: &Observable, b: &Observable, s: &QuantumState) -> Result<f64> {
    let corr = correlations(&[a.clone(), b.clone()], s)?;
    Ok(corr.moment(0, 1).im.abs())
}

/// The correlation modulus |<AB> - <A><B>|, checked on the fly against the
/// commutator/anticommutator radical it must equal. Both are lower bounds
/// for Delta_A Delta_B; this form is the sharper reformulation.
pub fn schrodinger(a: &Observable, b: &Observable, s: &QuantumState) -> Result<f64> {
    let mean_a = expectation(a, s)?;
    let mean_b = expectation(b, s)?;
    let corr = correlations(&[a.clone(), b.clone()], s)?;
    let value = corr.alpha(0, 1).norm();

    // Independent route through the Lie and Jordan products.
    let comm = Observable::new("i[A,B]", commutator(a.matrix(), b.matrix()).scale(Complex64::I))?;
    let anti = Observable::new("{A,B}", anticommutator(a.matrix(), b.matrix()))?;
    let comm_mean = expectation(&comm, s)?;
    let anti_mean = expectation(&anti, s)?;
    let radical =
        (0.25 * comm_mean * comm_mean + (0.5 * anti_mean - mean_a * mean_b).powi(2)).sqrt();

    let tolerance = 1e-10 * (1.0 + value);
    if (value - radical).abs() > tolerance {
        return Err(Error::IdentityViolation {
            gap: (value - radical).abs(),
            tolerance,
        });
    }
    let half_comm = 0.5 * comm_mean.abs();
    if value < half_comm - 1e-12 {
        return Err(Error::IdentityViolation {
            gap: half_comm - value,
            tolerance: 1e-12,
        });
    }
    Ok(value)
}

fn check_chain_args(observables: &[Observable], s: &QuantumState) -> Result<()> {
    if observables.len() < 2 {
        return Err(Error::TooFewObservables {
            got: observables.len(),
        });
    }
    for a in observables {
        if a.dim() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                got: a.dim(),
            });
        }
    }
    Ok(())
}

/// Half commutator modulus for a correlation pair.
fn half_comm(corr: &CorrelationData, i: usize, j: usize) -> f64 {
    corr.moment(i, j).im.abs()
}

/// Chained pairwise commutator bound: (value on the product, squared form
/// for odd k where the chain bounds the squared product).
pub(crate) fn robertson_chain_parts(corr: &CorrelationData, perm: &[usize]) -> (f64, Option<f64>) {
    let k = perm.len();
    if k.is_multiple_of(2) {
        let n = k / 2;
        let mut value = half_comm(corr, perm[0], perm[k - 1]);
        for j in 1..n {
            value *= half_comm(corr, perm[2 * j - 1], perm[2 * j]);
        }
        (value, None)
    } else {
        let n = (k - 1) / 2;
        let mut squared = half_comm(corr, perm[0], perm[k - 1]);
        for j in 1..=n {
            squared *= half_comm(corr, perm[2 * j - 2], perm[2 * j - 1]);
            squared *= half_comm(corr, perm[2 * j - 1], perm[2 * j]);
        }
        (squared.sqrt(), Some(squared))
    }
}

/// Chained commutator bound on the deviation product. Weaker than
/// [`theorem22`]; for k = 2 it reduces to [`robertson`].
pub fn robertson_chain(observables: &[Observable], s: &QuantumState) -> Result<f64> {
    check_chain_args(observables, s)?;
    let corr = correlations(observables, s)?;
    let id: Vec<usize> = (0..observables.len()).collect();
    Ok(robertson_chain_parts(&corr, &id).0)
}

/// The k-observable bound evaluated on correlation data for one ordering.
///
/// Even k = 2n:
///   (prod_{j=1}^{n-1} |alpha_{2j,2j+1}|) (|alpha_{1,2n}| + D_1 D_{2n}) / 2.
/// Odd k = 2n+1:
///   sqrt(2 p1 p2 |alpha_{1,2n+1}| + D_1^2 p2^2 + D_{2n+1}^2 p1^2) / 2
/// with p1 = prod |alpha_{2j-1,2j}|, p2 = prod |alpha_{2j,2j+1}|.
pub fn theorem22_from_correlations(corr: &CorrelationData, perm: &[usize]) -> f64 {
    let k = perm.len();
    debug_assert!(k >= 2);
    let closing = corr.alpha(perm[0], perm[k - 1]).norm();
    let d_first = corr.deviation(perm[0]);
    let d_last = corr.deviation(perm[k - 1]);
    if k.is_multiple_of(2) {
        let n = k / 2;
        let mut middle = 1.0;
        for j in 1..n {
            middle *= corr.alpha(perm[2 * j - 1], perm[2 * j]).norm();
        }
        0.5 * middle * (closing + d_first * d_last)
    } else {
        let n = (k - 1) / 2;
        let mut p1 = 1.0;
        let mut p2 = 1.0;
        for j in 1..=n {
            p1 *= corr.alpha(perm[2 * j - 2], perm[2 * j - 1]).norm();
            p2 *= corr.alpha(perm[2 * j - 1], perm[2 * j]).norm();
        }
        0.5 * (2.0 * p1 * p2 * closing + d_first * d_first * p2 * p2
            + d_last * d_last * p1 * p1)
            .sqrt()
    }
}

/// Lower bound on Delta_1 ... Delta_k for any k >= 2 observables and any
/// state (mixed states enter through their trace moments, which match the
/// lifted pure instance exactly).
pub fn theorem22(observables: &[Observable], s: &QuantumState) -> Result<f64> {
    check_chain_args(observables, s)?;
    let corr = correlations(observables, s)?;
    let id: Vec<usize> = (0..observables.len()).collect();
    Ok(theorem22_from_correlations(&corr, &id))
}

/// Three-observable bound: the general squared form, plus the sharper
/// special form when one of its validity conditions holds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TripleBound {
    /// sqrt of `general_squared`, a bound on Delta_A Delta_B Delta_C.
    pub general: f64,
    /// (D_C^2 |a_AB|^2 + D_A^2 |a_BC|^2) / 4 + |a_AB a_BC a_AC| / 2.
    pub general_squared: f64,
    /// (D_A |a_BC| + D_C |a_AB|) / 2, present when D_A D_C = |a_AC| or
    /// a_AB = 0 within 1e-9, or the dimension is 2.
    pub special: Option<f64>,
}

pub fn theorem41(
    a: &Observable,
    b: &Observable,
    c: &Observable,
    s: &QuantumState,
) -> Result<TripleBound> {
    let corr = correlations(&[a.clone(), b.clone(), c.clone()], s)?;
    let a_ab = corr.alpha(0, 1).norm();
    let a_bc = corr.alpha(1, 2).norm();
    let a_ac = corr.alpha(0, 2).norm();
    let d_a = corr.deviation(0);
    let d_c = corr.deviation(2);
    let general_squared = 0.25 * (d_c * d_c * a_ab * a_ab + d_a * d_a * a_bc * a_bc)
        + 0.5 * a_ab * a_bc * a_ac;
    let applicable = (d_a * d_c - a_ac).abs() <= SPECIAL_CASE_TOL
        || a_ab <= SPECIAL_CASE_TOL
        || s.dim() == 2;
    Ok(TripleBound {
        general: general_squared.sqrt(),
        general_squared,
        special: applicable.then_some(0.5 * (d_a * a_bc + d_c * a_ab)),
    })
}

/// Four-observable bound |alpha_23| (|alpha_14| + Delta_1 Delta_4) / 2.
pub fn theorem43(
    a1: &Observable,
    a2: &Observable,
    a3: &Observable,
    a4: &Observable,
    s: &QuantumState,
) -> Result<f64> {
    let corr = correlations(&[a1.clone(), a2.clone(), a3.clone(), a4.clone()], s)?;
    let middle = corr.alpha(1, 2).norm();
    let closing = corr.alpha(0, 3).norm();
    Ok(0.5 * middle * (closing + corr.deviation(0) * corr.deviation(3)))
}

/// Which quantity permutation enumeration maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationObjective {
    /// Exact chain radius w(D_k) from the pattern closed forms.
    RadiusExact,
    /// The even/odd correlation bound.
    Theorem22,
}

/// Maximum of the objective over all k! orderings, with the
/// lexicographically first permutation achieving it. Capped at k = 8.
pub fn permutation_max(
    observables: &[Observable],
    s: &QuantumState,
    objective: PermutationObjective,
) -> Result<(f64, Vec<usize>)> {
    check_chain_args(observables, s)?;
    let k = observables.len();
    if k > PERMUTATION_CAP {
        return Err(Error::TooManyObservables { got: k });
    }
    let corr = correlations(observables, s)?;
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let values = map_indexed(perms.len(), perms.len() > 256, |i| match objective {
        PermutationObjective::RadiusExact => {
            effective_from_correlations(&corr, &perms[i]).map(|eff| radius_exact(&eff))
        }
        PermutationObjective::Theorem22 => Ok(theorem22_from_correlations(&corr, &perms[i])),
    });
    let mut best = f64::NEG_INFINITY;
    let mut best_index = 0;
    for (i, value) in values.into_iter().enumerate() {
        let value = value?;
        if value > best {
            best = value;
            best_index = i;
        }
    }
    Ok((best, perms[best_index].clone()))
}

/// The observable list and state as a pure instance: pure states pass
/// through, mixed states are lifted to the Hilbert-Schmidt space.
pub fn pure_instance(
    observables: &[Observable],
    s: &QuantumState,
) -> Result<(Vec<Observable>, QuantumState)> {
    if s.is_pure() {
        Ok((
            observables.to_vec(),
            QuantumState::pure(s.as_pure_vector()?)?,
        ))
    } else {
        lift_mixed(observables, s)
    }
}

/// Operator norm of the chain from the parity pattern. Satisfies
/// w(D_k) <= ||D_k|| <= Delta_1 ... Delta_k but yields only weaker
/// uncertainty relations than the radius.
pub fn norm_based(observables: &[Observable], s: &QuantumState) -> Result<f64> {
    check_chain_args(observables, s)?;
    let (lifted, pure) = pure_instance(observables, s)?;
    let eff = effective_matrix(&lifted, &pure)?;
    Ok(pattern_norm(&eff).value)
}

/// Equality diagnostics for one instance: the bound chain is tight exactly
/// when product, norm and radius coincide.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityFlags {
    /// Delta product minus ||D_k||.
    pub gap_product_norm: f64,
    /// ||D_k|| minus w(D_k).
    pub gap_norm_radius: f64,
    /// Both gaps within 1e-9 relative.
    pub tight: bool,
    /// Whether the top-row branch of the pattern norm dominates (for even k
    /// this is the |f11| branch the published norm display drops).
    pub norm_top_row_dominates: bool,
}

/// Every computed bound for one instance, on a single comparison axis.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub dim: usize,
    pub deviation_product: f64,
    /// w(D_k) at the identity ordering, from the pattern closed forms.
    pub radius_exact_id: f64,
    /// Max of w over all orderings (when permutation search is requested).
    pub radius_permuted: Option<f64>,
    pub permutation: Option<Vec<usize>>,
    pub bound_theorem22: f64,
    pub bound_robertson_chain: f64,
    /// The squared-product form behind the odd-k chain bound.
    pub robertson_chain_squared: Option<f64>,
    /// |<AB> - <A><B>| for pairs (k = 2 only).
    pub bound_schrodinger: Option<f64>,
    /// ||D_k|| from the pattern.
    pub norm_based: f64,
    pub flags: EqualityFlags,
}

impl BoundReport {
    /// Checks the ordering invariants the bounds must satisfy; any
    /// violation signals an internal inconsistency.
    pub fn ordering_violation(&self) -> Option<String> {
        let tol = EQUALITY_TOL * (1.0 + self.deviation_product.abs());
        let mut chain: Vec<(&str, f64, f64)> = Vec::new();
        if let Some(permuted) = self.radius_permuted {
            chain.push(("deviation product >= permuted radius", self.deviation_product, permuted));
            chain.push(("permuted radius >= identity radius", permuted, self.radius_exact_id));
        } else {
            chain.push((
                "deviation product >= identity radius",
                self.deviation_product,
                self.radius_exact_id,
            ));
        }
        chain.push((
            "identity radius >= k-observable bound",
            self.radius_exact_id,
            self.bound_theorem22,
        ));
        chain.push((
            "k-observable bound >= chained commutator bound",
            self.bound_theorem22,
            self.bound_robertson_chain,
        ));
        chain.push((
            "deviation product >= chain norm",
            self.deviation_product,
            self.norm_based,
        ));
        chain.push((
            "chain norm >= identity radius",
            self.norm_based,
            self.radius_exact_id,
        ));
        for (label, lhs, rhs) in chain {
            if lhs < rhs - tol {
                return Some(format!("{label} violated: {lhs} < {rhs}"));
            }
        }
        None
    }
}

/// Computes the full [`BoundReport`] for one instance. Mixed states are
/// handled by lifting for the chain quantities; correlation bounds use the
/// trace moments directly (identical by the lifting identities).
pub fn bound_report(
    observables: &[Observable],
    s: &QuantumState,
    permute: bool,
) -> Result<BoundReport> {
    check_chain_args(observables, s)?;
    let k = observables.len();
    let corr = correlations(observables, s)?;
    let id: Vec<usize> = (0..k).collect();

    let (lifted, pure) = pure_instance(observables, s)?;
    let eff = effective_matrix(&lifted, &pure)?;
    let radius_id = radius_exact(&eff);
    let norm = pattern_norm(&eff);

    let product = corr.deviation_product();
    let bound_t22 = theorem22_from_correlations(&corr, &id);
    let (chain_value, chain_squared) = robertson_chain_parts(&corr, &id);
    let schrod = if k == 2 {
        Some(schrodinger(&observables[0], &observables[1], s)?)
    } else {
        None
    };
    let permuted = if permute {
        Some(permutation_max(observables, s, PermutationObjective::RadiusExact)?)
    } else {
        None
    };

    let gap_product_norm = product - norm.value;
    let gap_norm_radius = norm.value - radius_id;
    let tol = EQUALITY_TOL * (1.0 + product.abs());
    let report = BoundReport {
        k,
        dim: s.dim(),
        deviation_product: product,
        radius_exact_id: radius_id,
        radius_permuted: permuted.as_ref().map(|(v, _)| *v),
        permutation: permuted.map(|(_, p)| p),
        bound_theorem22: bound_t22,
        bound_robertson_chain: chain_value,
        robertson_chain_squared: chain_squared,
        bound_schrodinger: schrod,
        norm_based: norm.value,
        flags: EqualityFlags {
            gap_product_norm,
            gap_norm_radius,
            tight: gap_product_norm.abs() <= tol && gap_norm_radius.abs() <= tol,
            norm_top_row_dominates: norm.top_row >= norm.bottom_row,
        },
    };
    Ok(report)
}
