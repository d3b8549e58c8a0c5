use std::fmt::Write as _;
use std::path::Path;

use cliffpauli_core::blade::Signature;
use cliffpauli_core::error::Error;
use cliffpauli_core::field::{Field, FieldKind, FieldTag};
use cliffpauli_core::generators::{validate_generators, GeneratorSet};
use cliffpauli_core::instance::{generate, GenSpec};
use cliffpauli_core::multivector::Multivector;
use cliffpauli_core::io::{multivector_to_json, InstanceDoc, SolveResultDoc, TruthDoc};
use cliffpauli_core::selftest::run_selftest;
use cliffpauli_core::solve::{case_factor, classify_odd, solve, verify_intertwiner, CaseId};

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_RELATION: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_SOLVE: u8 = 4;
pub const EXIT_SELFTEST: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Output produced before the failure.
    pub report: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into(), report: String::new() }
    }

    pub fn other(message: impl Into<String>) -> Self {
        CliError::new(EXIT_OTHER, message)
    }

    fn with_report(mut self, report: String) -> Self {
        self.report = report;
        self
    }
}

fn code_for(err: &Error) -> u8 {
    match err {
        Error::Format(_) | Error::DimensionOutOfRange { .. } => EXIT_PARSE,
        Error::RelationViolation { .. } | Error::GeneratorCount { .. } | Error::UnclassifiableVolume => EXIT_RELATION,
        Error::NotInvertible
        | Error::DivisionByZero
        | Error::NoCandidateFound
        | Error::VerificationFailed { .. }
        | Error::UnclassifiableCase => EXIT_SOLVE,
        _ => EXIT_OTHER,
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::new(code_for(&err), err.to_string())
    }
}

fn with_label(label: &str) -> impl Fn(Error) -> CliError + '_ {
    move |err| {
        let code = code_for(&err);
        CliError::new(code, format!("{label}: {err}"))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::other(format!("cannot write {}: {e}", path.display())))
}

pub fn header_field(text: &str) -> Result<FieldTag, CliError> {
    let doc = InstanceDoc::parse(text)?;
    Ok(doc.header()?.1)
}

pub struct Context {
    kind: FieldKind,
}

impl Context {
    pub fn new(kind: FieldKind) -> Self {
        Context { kind }
    }

    fn load<F: Field>(&self, text: &str) -> Result<(GeneratorSet<F>, GeneratorSet<F>), CliError> {
        let doc = InstanceDoc::parse(text)?;
        let (sig, _) = doc.header()?;
        let (gamma, beta) = doc.raw_sets::<F>(self.kind)?;
        let gamma = validate_generators(sig, self.kind, gamma).map_err(with_label("gamma"))?;
        let beta = validate_generators(sig, self.kind, beta).map_err(with_label("beta"))?;
        Ok((gamma, beta))
    }

    pub fn validate<F: Field>(&self, text: &str) -> Result<String, CliError> {
        let doc = InstanceDoc::parse(text)?;
        let (sig, _) = doc.header()?;
        let (gamma, beta) = doc.raw_sets::<F>(self.kind)?;
        let mut verdicts = Vec::new();
        let mut failure = None;
        for (label, gens) in [("gamma", gamma), ("beta", beta)] {
            let verdict = validate_generators(sig, self.kind, gens).and_then(|set| set.classify_basis());
            match verdict {
                Ok(class) => verdicts.push(format!("{label}: valid, {class}")),
                Err(err) => {
                    verdicts.push(format!("{label}: invalid, {err}"));
                    failure.get_or_insert_with(|| with_label(label)(err));
                }
            }
        }
        let report = verdicts.join("; ") + "\n";
        match failure {
            None => Ok(report),
            Some(err) => Err(err.with_report(report)),
        }
    }

    pub fn classify<F: Field>(&self, text: &str) -> Result<String, CliError> {
        let (gamma, beta) = self.load::<F>(text)?;
        let mut out = String::new();
        writeln!(out, "signature: {}", gamma.sig()).unwrap();
        writeln!(out, "gamma: {}", gamma.classify_basis()?).unwrap();
        writeln!(out, "beta: {}", beta.classify_basis()?).unwrap();
        if gamma.sig().is_odd() {
            let case = classify_odd(&gamma, &beta)?;
            writeln!(out, "case: {}", case.id).unwrap();
            writeln!(out, "central factor: {}", case.factor).unwrap();
        } else {
            let relation = if beta.volume().approx_eq(&-gamma.volume()) {
                "beta volume = -gamma volume"
            } else {
                "beta volume != -gamma volume"
            };
            writeln!(out, "case: even ({relation})").unwrap();
        }
        Ok(out)
    }

    pub fn solve<F: Field>(&self, text: &str, output: Option<&Path>) -> Result<String, CliError> {
        let (gamma, beta) = self.load::<F>(text)?;
        let result = solve(&gamma, &beta)?;
        let doc = SolveResultDoc::from_result(&result).to_pretty();
        let summary = format!(
            "case: {}\ncandidate: {}\nresidual: {}\n",
            result.case,
            result.candidate,
            fmt_residual(result.residual)
        );
        match output {
            Some(path) => {
                write_file(path, &doc)?;
                Ok(summary)
            }
            None => {
                eprint!("{summary}");
                Ok(doc)
            }
        }
    }

    pub fn verify<F: Field>(&self, text: &str, solution: &str) -> Result<String, CliError> {
        let (gamma, beta) = self.load::<F>(text)?;
        let sig = gamma.sig();
        let parsed = SolveResultDoc::parse(solution)
            .and_then(|doc| doc.decode::<F>(sig, self.kind))
            .map_err(with_label("solution"))?;
        let expected_factor = match parsed.case {
            CaseId::Even if sig.is_odd() => {
                return Err(CliError::new(EXIT_SOLVE, "solution claims the even case for odd n"));
            }
            CaseId::Even => Multivector::one(sig, self.kind),
            CaseId::Odd(_) if !sig.is_odd() => {
                return Err(CliError::new(EXIT_SOLVE, "solution claims an odd case for even n"));
            }
            CaseId::Odd(k) => case_factor::<F>(k, sig, self.kind).map_err(|e| CliError::new(EXIT_SOLVE, e.to_string()))?,
        };
        if !parsed.central_factor.approx_eq(&expected_factor) {
            return Err(CliError::new(
                EXIT_SOLVE,
                format!("central factor {} does not belong to case {}", parsed.central_factor, parsed.case),
            ));
        }
        let residual = verify_intertwiner(&gamma, &beta, &parsed.t, &parsed.central_factor)?;
        let report = format!("case: {}\nresidual: {}\n", parsed.case, fmt_residual(residual));
        if residual <= self.kind.effective_tolerance() {
            Ok(report + "verified\n")
        } else {
            Err(CliError::new(EXIT_SOLVE, format!("residual {residual:e} exceeds tolerance")).with_report(report))
        }
    }

    pub fn selftest<F: Field>(&self, p: u32, q: u32, seed: u64, trials: u64) -> Result<String, CliError> {
        let sig = Signature::new(p, q)?;
        let report = run_selftest::<F>(sig, self.kind, seed, trials);
        let text = report.to_string();
        match report.first_failure() {
            None => Ok(text + "all identities hold\n"),
            Some((name, failure)) => Err(CliError::new(
                EXIT_SELFTEST,
                format!("identity {name:?} failed at seed {}: {}", failure.seed, failure.detail),
            )
            .with_report(text)),
        }
    }

    pub fn gen<F: Field>(
        &self,
        p: u32,
        q: u32,
        seed: u64,
        case: Option<u8>,
        bound: Option<f64>,
        output: &Path,
    ) -> Result<String, CliError> {
        let sig = Signature::new(p, q)?;
        let mut spec = GenSpec::new(sig, seed).with_case(case);
        if let Some(b) = bound {
            if !(b > 0.0 && b.is_finite()) {
                return Err(CliError::other("--bound must be positive"));
            }
            spec = spec.with_bound(b);
        }
        let inst = generate::<F>(&spec, self.kind)?;
        let doc = InstanceDoc::from_sets(&inst.gamma, &inst.beta);
        let truth = TruthDoc {
            case: match inst.case {
                CaseId::Even => "even".into(),
                CaseId::Odd(k) => k.into(),
            },
            s: multivector_to_json(&inst.s),
            seed,
        };
        let truth_path = truth_path(output);
        write_file(output, &doc.to_pretty())?;
        write_file(&truth_path, &truth.to_pretty())?;
        Ok(format!(
            "wrote {} ({}, case {})\nwrote {}\n",
            output.display(),
            sig,
            inst.case,
            truth_path.display()
        ))
    }
}

fn fmt_residual(r: f64) -> String {
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r:e}")
    }
}

/// `dir/name.json` → `dir/name.truth.json`.
pub fn truth_path(output: &Path) -> std::path::PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{stem}.truth.json"))
}
