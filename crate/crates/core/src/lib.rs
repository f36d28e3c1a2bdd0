//! Deviation products and numerical-radius lower bounds for finite
//! collections of quantum observables.
//!
//! The crate computes, for a list of Hermitian observables and a quantum
//! state, the product of standard deviations together with a family of
//! lower bounds built from the numerical radius of the commutator chain
//! D_k = prod_j [A_j, |x><x|]. Closed forms for w(D_k) and ||D_k|| are
//! cross-validated against an independent angle-sweep oracle, mixed states
//! are handled by lifting to the Hilbert-Schmidt space, and randomized
//! searches probe how tight each bound is.

pub mod bounds;
pub mod chain;
pub mod error;
pub mod linalg;
mod parallel;
pub mod quantum;
pub mod sample;
pub mod search;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RadiusOptions};
pub use quantum::{CorrelationData, Observable, QuantumState};
