//! Randomized check of every algebraic identity the library relies on.
//!
//! Each trial draws fresh generator-set pairs and operands from a seeded RNG
//! (`seed + trial`) and records, per identity, how many checks ran and the
//! first seed that failed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::{blade_product, blades_commute, Blade, Signature};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::generators::{validate_generators, BasisClassification, GeneratorSet, SigmaFactor};
use crate::instance::{generate, random_invertible, GenSpec};
use crate::linalg::mv_inverse;
use crate::multivector::Multivector;
use crate::reynolds::{
    conjugation_sum, conjugation_sum_literal, op_f, op_h, op_h_even, op_p, sum_identities, IndexSet,
};
use crate::solve::{admissible_cases, classify_odd, even_solutions, odd_solutions, reduction_factor, solve, uniqueness_check, CaseId};

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub sig: Signature,
    pub kind: FieldKind,
    pub seed: u64,
    pub trials: u64,
    pub outcomes: Vec<Outcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Failure)> {
        self.outcomes.iter().find_map(|o| o.failure.as_ref().map(|f| (o.name, f)))
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest {} {} seed {} trials {}", self.sig, self.kind.tag, self.seed, self.trials)?;
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "  pass  {:<28} ({} checks)", o.name, o.checks)?,
                Some(fail) => writeln!(f, "  FAIL  {:<28} seed {}: {}", o.name, fail.seed, fail.detail)?,
            }
        }
        Ok(())
    }
}

/// Identity names in report order.
pub const IDENTITIES: &[&str] = &[
    "associativity",
    "anticommutation",
    "blade product oracle",
    "trace cyclicity",
    "inverse",
    "center",
    "generator sign rule",
    "classification",
    "commutation profile",
    "trace/pi profile",
    "sigma transforms",
    "F projector",
    "H intertwining",
    "P intertwining",
    "product formula",
    "sum identities",
    "H equals H_even",
    "solve",
    "uniqueness",
    "six-case round trips",
];

struct Recorder {
    outcomes: Vec<Outcome>,
    seed: u64,
}

impl Recorder {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let o = self
            .outcomes
            .iter_mut()
            .find(|o| o.name == name)
            .expect("identity is listed");
        o.checks += 1;
        if !ok && o.failure.is_none() {
            o.failure = Some(Failure { seed: self.seed, detail: detail() });
        }
    }

    fn check_result(&mut self, name: &'static str, r: Result<bool>, detail: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(name, ok, detail),
            Err(e) => self.check(name, false, || format!("{}: {e}", detail())),
        }
    }
}

fn random_mv<F: Field>(sig: Signature, kind: FieldKind, rng: &mut ChaCha8Rng, bound: f64) -> Multivector<F> {
    Multivector::from_terms(sig, kind, sig.blades().map(|b| (b, F::sample(rng, bound))))
}

/// Rewrites `e^{a_1}…e^{a_k} e^{b_1}…e^{b_m}` by adjacent transpositions and
/// contractions `e^a e^a = η^{aa}`.
pub fn transposition_product(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let mut word: Vec<u32> = a.indices();
    word.extend(b.indices());
    let mut sign = 1i8;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                sign *= sig.eta(word[i]);
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, Blade::from_indices(&word))
}

/// Draws a pair of valid sets for one trial: `γ` canonical or conjugated
/// (sometimes rescaled into a non-basis in odd dimension), `β` conjugated and
/// possibly moved into another odd case.
fn random_pair<F: Field>(
    sig: Signature,
    kind: FieldKind,
    rng: &mut ChaCha8Rng,
    bound: f64,
) -> Result<(GeneratorSet<F>, GeneratorSet<F>)> {
    let canonical = GeneratorSet::<F>::canonical(sig, kind);
    let mut gamma = if rng.gen_bool(0.5) {
        let (s, _) = random_invertible::<F>(sig, kind, rng, bound)?;
        canonical.conjugate_by(&s)?
    } else {
        canonical.clone()
    };
    let (s, _) = random_invertible::<F>(sig, kind, rng, bound)?;
    let mut beta = canonical.conjugate_by(&s)?;
    if sig.is_odd() {
        let cases = admissible_cases::<F>(sig);
        let k = cases[rng.gen_range(0..cases.len())];
        if let Some(f) = reduction_factor(k) {
            beta = beta.sigma_transform(f)?;
        }
        let lifts: Vec<SigmaFactor> = [SigmaFactor::VolPlus, SigmaFactor::IVolPlus]
            .into_iter()
            .filter(|f| f.check::<F>(sig).is_ok())
            .collect();
        if let Some(&lift) = lifts.first() {
            if rng.gen_bool(0.3) {
                gamma = gamma.sigma_transform(lift)?;
            }
        }
    }
    Ok((gamma, beta))
}

fn expected_center<F: Field>(u: &Multivector<F>) -> Multivector<F> {
    let sig = u.sig();
    let mut c = u.scalar_like(u.trace());
    if sig.is_odd() {
        c = &c + &Multivector::term(sig, u.kind(), sig.volume(), u.pi());
    }
    c
}

fn blade_algebra_checks<F: Field>(rec: &mut Recorder, sig: Signature, kind: FieldKind, rng: &mut ChaCha8Rng, bound: f64) {
    let [u, v, w] = [0, 1, 2].map(|_| random_mv::<F>(sig, kind, rng, bound));
    let left = &(&u * &v) * &w;
    rec.check("associativity", left.approx_eq(&(&u * &(&v * &w))), || "(UV)W != U(VW)".into());

    let tv = (&u * &v).trace();
    let vt = (&v * &u).trace();
    rec.check("trace cyclicity", scalar_close(&tv, &vt, kind), || format!("Tr(UV)={tv}, Tr(VU)={vt}"));
    if sig.is_odd() {
        let (a, b) = ((&u * &v).pi(), (&v * &u).pi());
        rec.check("trace cyclicity", scalar_close(&a, &b, kind), || format!("pi(UV)={a}, pi(VU)={b}"));
    }

    match mv_inverse(&u) {
        Ok(inv) => {
            let one = u.one_like();
            rec.check("inverse", (&inv * &u).approx_eq(&one) && (&u * &inv).approx_eq(&one), || {
                "U^-1 U != e".into()
            });
        }
        Err(Error::NotInvertible) => rec.check("inverse", true, String::new),
        Err(e) => rec.check("inverse", false, || e.to_string()),
    }

    // Random blade pairs against the transposition oracle.
    for _ in 0..16 {
        let a = Blade(rng.gen_range(0..sig.dim() as u32));
        let b = Blade(rng.gen_range(0..sig.dim() as u32));
        let got = blade_product(a, b, sig);
        let want = transposition_product(a, b, sig);
        rec.check("blade product oracle", got == want, || format!("{a}·{b}: {got:?} vs {want:?}"));
    }
}

fn deterministic_checks<F: Field>(rec: &mut Recorder, sig: Signature, kind: FieldKind) {
    let n = sig.n();
    for a in 1..=n {
        for b in 1..=n {
            let ea = Multivector::<F>::generator(sig, kind, a);
            let eb = Multivector::<F>::generator(sig, kind, b);
            let lhs = &(&ea * &eb) + &(&eb * &ea);
            let want = if a == b { ea.scalar_like(F::from_i64(2 * sig.eta(a) as i64)) } else { ea.zero_like() };
            rec.check("anticommutation", lhs == want, || format!("e^{a} e^{b} + e^{b} e^{a} = {lhs}"));
        }
    }
    if n <= 6 {
        for b in sig.blades() {
            let structural = b == Blade::SCALAR || (sig.is_odd() && b == sig.volume());
            let central = Multivector::<F>::blade(sig, kind, b).is_central();
            rec.check("center", central == structural, || format!("{b}: is_central = {central}"));
        }
    }
    if n <= 4 {
        for a in sig.blades() {
            for b in sig.blades() {
                let got = blade_product(a, b, sig);
                let want = transposition_product(a, b, sig);
                rec.check("blade product oracle", got == want, || format!("{a}·{b}: {got:?} vs {want:?}"));
            }
        }
    }
}

fn scalar_close<F: Field>(a: &F, b: &F, kind: FieldKind) -> bool {
    a.sub(b).is_zero(kind.effective_tolerance())
}

fn sign_rule_holds<F: Field>(set: &GeneratorSet<F>, a: Blade, b: Blade) -> bool {
    let ga = set.blade(a);
    let gb = set.blade(b);
    let ab = &ga * &gb;
    let ba = &gb * &ga;
    if blades_commute(a, b) {
        ab.approx_eq(&ba)
    } else {
        ab.approx_eq(&-ba)
    }
}

fn set_checks<F: Field>(rec: &mut Recorder, set: &GeneratorSet<F>, rng: &mut ChaCha8Rng) {
    let sig = set.sig();
    let n = sig.n();

    let pairs: Vec<(Blade, Blade)> = if n <= 3 {
        sig.blades().flat_map(|a| sig.blades().map(move |b| (a, b))).collect()
    } else {
        (0..12)
            .map(|_| (Blade(rng.gen_range(0..sig.dim() as u32)), Blade(rng.gen_range(0..sig.dim() as u32))))
            .collect()
    };
    for (a, b) in pairs {
        rec.check("generator sign rule", sign_rule_holds(set, a, b), || format!("γ^{a}, γ^{b}"));
    }

    let class = set.classify_basis();
    let consistent = match &class {
        Ok(c) => !(n.is_multiple_of(2) && !matches!(c, BasisClassification::VolumeBasis(_) | BasisClassification::EvenBasis)),
        Err(_) => false,
    };
    rec.check("classification", consistent, || format!("{class:?}"));

    if n >= 2 {
        let interior: Vec<Blade> = sig.blades().filter(|&b| b != Blade::SCALAR && b != sig.volume()).collect();
        let a = interior[rng.gen_range(0..interior.len())];
        let quarter = 1usize << (n - 2);
        let profile = set.commutation_profile(a);
        rec.check_result(
            "commutation profile",
            profile.map(|p| [p.even_commute, p.odd_commute, p.even_anti, p.odd_anti] == [quarter; 4]),
            || format!("A = {a}"),
        );
        if n <= 3 {
            let structural = set.commutation_profile(a).ok();
            let by_products = set.commutation_profile_by_products(a).ok();
            rec.check("commutation profile", structural.is_some() && structural == by_products, || {
                format!("A = {a}: {structural:?} vs {by_products:?}")
            });
        }
    }

    let tol = set.kind().effective_tolerance();
    let traces = set.trace_profile();
    let interior_zero = traces
        .iter()
        .filter(|(b, _)| b.grade() >= 1 && b.grade() < n)
        .all(|(_, t)| t.is_zero(tol));
    rec.check("trace/pi profile", interior_zero, || "Tr(γ^A) != 0 for some 1 <= |A| <= n-1".into());
    if let Ok(class) = class {
        let vol = set.volume();
        let (t, p) = (vol.trace(), vol.pi());
        let ok = match class {
            BasisClassification::VolumeBasis(_) | BasisClassification::EvenBasis => {
                t.is_zero(tol) && (p.sub(&F::one()).is_zero(tol) || p.add(&F::one()).is_zero(tol) || n.is_multiple_of(2))
            }
            BasisClassification::ScalarCentral(s) => {
                p.is_zero(tol) && t.sub(&F::from_i64(s.value())).is_zero(tol)
            }
            BasisClassification::ImaginaryCentral(s) => {
                let i = F::imaginary_unit().expect("complex field");
                p.is_zero(tol) && t.sub(&i.mul(&F::from_i64(s.value()))).is_zero(tol)
            }
        };
        rec.check("trace/pi profile", ok, || format!("{class}: Tr = {t}, pi = {p}"));
        if let Ok(pis) = set.pi_profile() {
            let interior = pis.iter().filter(|(b, _)| b.grade() >= 1 && b.grade() < n).all(|(_, v)| v.is_zero(tol));
            rec.check("trace/pi profile", interior || n.is_multiple_of(2), || "pi(γ^A) != 0 inside".into());
        }

        for factor in SigmaFactor::ALL {
            if factor.check::<F>(sig).is_err() {
                continue;
            }
            let out = set.sigma_transform(factor).and_then(|t| {
                let revalidated = validate_generators(sig, set.kind(), t.generators().to_vec())?;
                Ok(revalidated.classify_basis()?.is_basis())
            });
            let want = if factor == SigmaFactor::Neg { class.is_basis() } else { !class.is_basis() };
            rec.check_result("sigma transforms", out.map(|b| b == want), || format!("{factor:?} on {class}"));
        }
    }
}

fn operator_checks<F: Field>(
    rec: &mut Recorder,
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    rng: &mut ChaCha8Rng,
    bound: f64,
) {
    let sig = gamma.sig();
    let kind = gamma.kind();
    let u = random_mv::<F>(sig, kind, rng, bound);
    let v = random_mv::<F>(sig, kind, rng, bound);

    let f = op_f(gamma, &u);
    rec.check("F projector", op_f(gamma, &f).approx_eq(&f) && f.is_central(), || "F(F(U)) != F(U) or not central".into());
    if gamma.classify_basis().map(|c| c.is_basis()).unwrap_or(false) {
        rec.check("F projector", f.approx_eq(&expected_center(&u)), || format!("F(U) = {f}"));
    }

    let h = op_h(gamma, beta, &u);
    let p = op_p(gamma, beta, &v);
    let h_ok = sig.blades().all(|b| (&beta.blade(b) * &h).approx_eq(&(&h * &gamma.blade(b))));
    rec.check("H intertwining", h_ok, || "β^B H(U) != H(U) γ^B".into());
    let p_ok = sig.blades().all(|b| (&gamma.blade(b) * &p).approx_eq(&(&p * &beta.blade(b))));
    rec.check("P intertwining", p_ok, || "γ^B P(V) != P(V) β^B".into());

    let ph = &p * &h;
    let hp = &h * &p;
    let vh = &v * &h;
    let formula = expected_center(&vh);
    rec.check("product formula", ph.approx_eq(&hp) && ph.approx_eq(&formula), || {
        format!("P(V)H(U) = {ph}, expected {formula}")
    });

    let sums = sum_identities(gamma, beta);
    rec.check("sum identities", sums.holds(), || {
        format!("even {} vs {}, odd {} vs {}", sums.even_sum, sums.even_expected, sums.odd_sum, sums.odd_expected)
    });
    if sig.n() <= 3 {
        let literal = |set: IndexSet| {
            sig.blades()
                .filter(|b| set.contains(*b))
                .fold(u.zero_like(), |acc, b| {
                    &acc + &(&conjugation_sum_literal(beta, gamma, &gamma.blade(b), IndexSet::All) * &gamma.reciprocal(b))
                })
        };
        let ok = literal(IndexSet::Even).approx_eq(&sums.even_sum) && literal(IndexSet::Odd).approx_eq(&sums.odd_sum);
        rec.check("sum identities", ok, || "literal double sum differs".into());
        let fast = conjugation_sum(beta, gamma, &u, IndexSet::All);
        let slow = conjugation_sum_literal(beta, gamma, &u, IndexSet::All);
        rec.check("sum identities", fast.approx_eq(&slow), || "factored sum differs from literal".into());
    }

    if beta.volume().approx_eq(&gamma.volume()) {
        let he = op_h_even(gamma, beta, &u);
        rec.check("H equals H_even", h.approx_eq(&he), || format!("H = {h}, H_even = {he}"));
    }

    let solved = solve(gamma, beta);
    match &solved {
        Ok(r) => rec.check("solve", r.residual <= kind.effective_tolerance(), || format!("residual {}", r.residual)),
        Err(e) => rec.check("solve", false, || e.to_string()),
    }
    if let Ok(first) = solved {
        let second = if sig.is_odd() {
            odd_solutions(gamma, beta).ok().and_then(|mut it| it.nth(1))
        } else {
            even_solutions(gamma, beta).ok().and_then(|mut it| it.nth(1))
        };
        if let Some(Ok(second)) = second {
            rec.check_result("uniqueness", uniqueness_check(gamma, beta, &first.t, &second.t), || {
                format!("{} vs {}", first.candidate, second.candidate)
            });
        }
    }
}

fn round_trip_checks<F: Field>(rec: &mut Recorder, sig: Signature, kind: FieldKind, seed: u64) {
    let cases: Vec<Option<u8>> = if sig.is_odd() {
        admissible_cases::<F>(sig).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    for case in cases {
        let spec = GenSpec::new(sig, seed).with_case(case);
        let outcome = generate::<F>(&spec, kind).and_then(|inst| {
            if let CaseId::Odd(k) = inst.case {
                let found = classify_odd(&inst.gamma, &inst.beta)?.id;
                if found != k {
                    return Ok(false);
                }
            }
            let r = solve(&inst.gamma, &inst.beta)?;
            Ok(r.case == inst.case
                && r.residual <= kind.effective_tolerance()
                && uniqueness_check(&inst.gamma, &inst.beta, &r.t, &inst.s)?)
        });
        rec.check_result("six-case round trips", outcome, || format!("case {case:?}"));
    }
}

/// Runs every identity over `trials` seeded trials.
pub fn run_selftest<F: Field>(sig: Signature, kind: FieldKind, seed: u64, trials: u64) -> SelftestReport {
    let outcomes = IDENTITIES
        .iter()
        .map(|&name| Outcome { name, checks: 0, failure: None })
        .collect();
    let mut rec = Recorder { outcomes, seed };
    let bound = if F::TAG.is_exact() { 3.0 } else { 1.0 };

    deterministic_checks::<F>(&mut rec, sig, kind);
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial);
        rec.seed = trial_seed;
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        blade_algebra_checks::<F>(&mut rec, sig, kind, &mut rng, bound);
        match random_pair::<F>(sig, kind, &mut rng, bound) {
            Ok((gamma, beta)) => {
                set_checks(&mut rec, &gamma, &mut rng);
                set_checks(&mut rec, &beta, &mut rng);
                operator_checks(&mut rec, &gamma, &beta, &mut rng, bound);
            }
            Err(e) => rec.check("solve", false, || format!("could not draw instance: {e}")),
        }
        round_trip_checks::<F>(&mut rec, sig, kind, trial_seed);
    }
    SelftestReport { sig, kind, seed, trials, outcomes: rec.outcomes }
}
