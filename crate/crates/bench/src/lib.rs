//! Fixtures shared by the benchmarks in `benches/`.

use cliffpauli_core::instance::{generate, GenSpec, Instance};
use cliffpauli_core::prelude::*;

/// Dense element with small integer coefficients `1, -2, 3, -1, 2, -3, …`.
pub fn dense<F: Field>(sig: Signature) -> Multivector<F> {
    const PATTERN: [i64; 6] = [1, -2, 3, -1, 2, -3];
    let kind = FieldKind::of::<F>();
    Multivector::from_terms(
        sig,
        kind,
        sig.blades().enumerate().map(|(i, b)| (b, F::from_i64(PATTERN[i % PATTERN.len()]))),
    )
}

/// A generated instance for `Cl(p,q)`, seed 1.
pub fn instance<F: Field>(p: u32, q: u32, case: Option<u8>) -> Instance<F> {
    let sig = Signature::new(p, q).expect("signature in range");
    generate::<F>(&GenSpec::new(sig, 1).with_case(case), FieldKind::of::<F>()).expect("admissible instance")
}
