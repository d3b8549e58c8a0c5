mod common;

use cliffpauli_core::instance::{generate, GenSpec};
use cliffpauli_core::io::{InstanceDoc, SolveResultDoc};
use cliffpauli_core::prelude::*;
use cliffpauli_core::solve::admissible_cases;
use common::signatures;

/// Generates, writes, reparses, solves, writes the solution, reparses it and
/// verifies it against the reparsed instance.
fn through_files<F: Field>(sig: Signature, case: Option<u8>, seed: u64) {
    let kind = FieldKind::of::<F>();
    let inst = generate::<F>(&GenSpec::new(sig, seed).with_case(case), kind).unwrap();
    let text = InstanceDoc::from_sets(&inst.gamma, &inst.beta).to_pretty();
    let (gamma, beta) = InstanceDoc::parse(&text).unwrap().to_sets::<F>(kind).unwrap();
    assert_eq!(gamma.generators(), inst.gamma.generators());
    assert_eq!(beta.generators(), inst.beta.generators());

    let res = solve(&gamma, &beta).unwrap();
    assert_eq!(res.case, inst.case, "{sig} seed {seed}");
    assert_eq!(res.residual, 0.0);
    let solution = SolveResultDoc::from_result(&res).to_pretty();
    let parsed = SolveResultDoc::parse(&solution).unwrap().decode::<F>(sig, kind).unwrap();
    assert_eq!(parsed.t, res.t);
    assert_eq!(parsed.candidate, res.candidate);
    assert_eq!(verify_intertwiner(&gamma, &beta, &parsed.t, &parsed.central_factor).unwrap(), 0.0);
    assert!(uniqueness_check(&gamma, &beta, &parsed.t, &inst.s).unwrap());
}

fn sweep<F: Field>(max_n: u32, seeds: u64) {
    for sig in signatures(1, max_n) {
        for seed in 0..seeds {
            if sig.is_odd() {
                for case in admissible_cases::<F>(sig) {
                    through_files::<F>(sig, Some(case), seed);
                }
            } else {
                through_files::<F>(sig, None, seed);
            }
        }
    }
}

#[test]
fn real_round_trips_up_to_four() {
    sweep::<Rational>(4, 20);
}

#[test]
fn complex_round_trips_up_to_four() {
    sweep::<GaussianRational>(4, 20);
}

#[test]
fn round_trips_in_five_dimensions() {
    for sig in signatures(5, 5) {
        for seed in 0..3 {
            for case in admissible_cases::<Rational>(sig) {
                through_files::<Rational>(sig, Some(case), seed);
            }
            for case in admissible_cases::<GaussianRational>(sig) {
                through_files::<GaussianRational>(sig, Some(case), seed);
            }
        }
    }
}
