//! Exact Clifford algebra arithmetic over `Cl(p,q)`, generalized Reynolds
//! operators, and constructive intertwiners between two generator sets.
//!
//! ```
//! use cliffpauli_core::prelude::*;
//!
//! let sig = Signature::new(1, 1).unwrap();
//! let kind = FieldKind::of::<Rational>();
//! let gamma = GeneratorSet::<Rational>::canonical(sig, kind);
//! let s = Multivector::one(sig, kind) + Multivector::generator(sig, kind, 1).scale(&Rational::from_i64(2));
//! let beta = gamma.conjugate_by(&s).unwrap();
//! let result = solve(&gamma, &beta).unwrap();
//! assert_eq!(result.residual, 0.0);
//! assert!(uniqueness_check(&gamma, &beta, &result.t, &s).unwrap());
//! ```

pub mod blade;
pub mod error;
pub mod field;
pub mod generators;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod multivector;
pub mod reynolds;
pub mod selftest;
pub mod solve;

pub use blade::{blade_product, blades_commute, Blade, Signature, MAX_DIM};
pub use error::{Error, Result};
pub use field::{
    ArithOp, ComplexFloat, Field, FieldKind, FieldTag, GaussianRational, Rational, DEFAULT_TOLERANCE,
};
pub use generators::{
    validate_generators, BasisClassification, CommutationProfile, GeneratorSet, Sign, SigmaFactor,
};
pub use linalg::{is_invertible, mv_inverse};
pub use multivector::Multivector;
pub use reynolds::{op_f, op_h, op_h_even, op_p, sum_identities, SumIdentities};
pub use solve::{
    classify_odd, solve, solve_even, solve_odd, uniqueness_check, verify_intertwiner, Candidate,
    CaseId, OddCase, SolveResult,
};

pub mod prelude {
    pub use crate::blade::{Blade, Signature};
    pub use crate::field::{ComplexFloat, Field, FieldKind, FieldTag, GaussianRational, Rational};
    pub use crate::generators::{BasisClassification, GeneratorSet, SigmaFactor};
    pub use crate::linalg::mv_inverse;
    pub use crate::multivector::Multivector;
    pub use crate::reynolds::{op_f, op_h, op_h_even, op_p};
    pub use crate::solve::{
        classify_odd, solve, uniqueness_check, verify_intertwiner, CaseId, SolveResult,
    };
}
