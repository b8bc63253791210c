//! Fractional revival of continuous-time quantum walks on Cayley graphs of
//! finite abelian groups.
//!
//! The exact pipeline is: a [`CayleyGraph`] over a [`FiniteAbelianGroup`],
//! its spectrum as sums of roots of unity ([`cyclotomic`]), and the
//! gcd-based decision procedure in [`revival`] that emits exact
//! [`FrWitness`] certificates. [`families`] builds graphs predicted to have
//! FR, and [`oracle`] re-checks everything in floating point.

pub mod arith;
pub mod boolean;
pub mod cayley;
pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod formats;
pub mod group;
pub mod oracle;
pub mod plateaued;
pub mod revival;

pub use boolean::{BooleanClass, BooleanFunction, WalshSpectrum};
pub use cayley::{CayleyGraph, ConnectionSet, GraphSpec, Spectrum};
pub use cyclotomic::{Coefficient, RootOfUnitySum};
pub use error::{Error, Result};
pub use families::{FamilyInstance, FamilySpec};
pub use group::{FiniteAbelianGroup, GroupElement};
pub use oracle::{TransferKernel, TransferMatrix, VerifyReport};
pub use plateaued::{GroupFunction, Plateau};
pub use revival::{FrAnalyzer, FrKind, FrWitness, InvolutionSplit, Moduli};

/// Exact eigenvalue type used throughout the decision procedure.
pub type CyclotomicSum = RootOfUnitySum<i64>;
/// Wide-coefficient variant for very large connection sets.
pub type WideCyclotomicSum = RootOfUnitySum<i128>;
pub type TransferMatrixF64 = TransferMatrix<f64>;
pub type TransferMatrixF32 = TransferMatrix<f32>;
