//! Text formats: multivectors, generator sets, instances and solve results,
//! all as JSON.
//!
//! A multivector is an object mapping blade keys (`""`, `"1"`, `"1,3,4"`) to
//! scalars. Rationals are written as `"num/den"` (`"num"` when the
//! denominator is one); complex scalars as `{"re": …, "im": …}` with text
//! parts. Keys are emitted in canonical blade order.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::blade::{Blade, Signature};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, FieldTag};
use crate::generators::{validate_generators, GeneratorSet};
use crate::multivector::Multivector;
use crate::solve::{Candidate, CaseId, SolveResult};

pub fn multivector_to_json<F: Field>(mv: &Multivector<F>) -> Value {
    let map: Map<String, Value> = mv.terms().map(|(b, c)| (b.key(), c.to_json())).collect();
    Value::Object(map)
}

pub fn multivector_from_json<F: Field>(value: &Value, sig: Signature, kind: FieldKind) -> Result<Multivector<F>> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Format("multivector must be an object of blade keys".into()))?;
    let mut seen = std::collections::BTreeSet::new();
    let mut terms = Vec::with_capacity(map.len());
    for (key, scalar) in map {
        let blade = Blade::parse_key(key, sig.n())?;
        if !seen.insert(blade) {
            return Err(Error::Format(format!("blade {blade} appears twice")));
        }
        let c = F::from_json(scalar).map_err(|e| e.at(format!("key {key:?}")))?;
        terms.push((blade, c));
    }
    Ok(Multivector::from_terms(sig, kind, terms))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Format(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

fn header(p: u32, q: u32, field: &str) -> Result<(Signature, FieldTag)> {
    let sig = Signature::new(p, q).map_err(|e| Error::Format(e.to_string()))?;
    Ok((sig, field.parse()?))
}

/// Parses a list of multivectors; errors name the list and position.
pub fn multivectors_from_json<F: Field>(
    values: &[Value],
    sig: Signature,
    kind: FieldKind,
    label: &str,
) -> Result<Vec<Multivector<F>>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| multivector_from_json(v, sig, kind).map_err(|e| e.at(format!("{label}[{i}]"))))
        .collect()
}

/// `{"p", "q", "field", "generators": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSetDoc {
    pub p: u32,
    pub q: u32,
    pub field: String,
    pub generators: Vec<Value>,
}

impl GeneratorSetDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn header(&self) -> Result<(Signature, FieldTag)> {
        header(self.p, self.q, &self.field)
    }

    pub fn from_set<F: Field>(set: &GeneratorSet<F>) -> Self {
        GeneratorSetDoc {
            p: set.sig().p(),
            q: set.sig().q(),
            field: F::TAG.name().into(),
            generators: set.generators().iter().map(multivector_to_json).collect(),
        }
    }

    pub fn to_set<F: Field>(&self, kind: FieldKind) -> Result<GeneratorSet<F>> {
        let (sig, _) = self.header()?;
        let gens = multivectors_from_json(&self.generators, sig, kind, "generators")?;
        validate_generators(sig, kind, gens)
    }
}

/// A pair of generator sets: `{"p", "q", "field", "gamma": [...], "beta": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub p: u32,
    pub q: u32,
    pub field: String,
    pub gamma: Vec<Value>,
    pub beta: Vec<Value>,
}

/// `(gamma, beta)` generator lists before validation.
pub type RawSets<F> = (Vec<Multivector<F>>, Vec<Multivector<F>>);

impl InstanceDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn header(&self) -> Result<(Signature, FieldTag)> {
        header(self.p, self.q, &self.field)
    }

    pub fn from_sets<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Self {
        InstanceDoc {
            p: gamma.sig().p(),
            q: gamma.sig().q(),
            field: F::TAG.name().into(),
            gamma: gamma.generators().iter().map(multivector_to_json).collect(),
            beta: beta.generators().iter().map(multivector_to_json).collect(),
        }
    }

    /// Parses both lists without validating the relations.
    pub fn raw_sets<F: Field>(&self, kind: FieldKind) -> Result<RawSets<F>> {
        let (sig, _) = self.header()?;
        let gamma = multivectors_from_json(&self.gamma, sig, kind, "gamma")?;
        let beta = multivectors_from_json(&self.beta, sig, kind, "beta")?;
        for (label, list) in [("gamma", &gamma), ("beta", &beta)] {
            if list.len() != sig.n() as usize {
                return Err(Error::Format(format!(
                    "{label}: expected {} generators, got {}",
                    sig.n(),
                    list.len()
                )));
            }
        }
        Ok((gamma, beta))
    }

    /// Parses and validates both sets.
    pub fn to_sets<F: Field>(&self, kind: FieldKind) -> Result<(GeneratorSet<F>, GeneratorSet<F>)> {
        let (sig, _) = self.header()?;
        let (gamma, beta) = self.raw_sets::<F>(kind)?;
        Ok((validate_generators(sig, kind, gamma)?, validate_generators(sig, kind, beta)?))
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes") + "\n"
    }
}

fn candidate_to_json(c: &Candidate) -> Value {
    match c {
        Candidate::Single(a) => Value::String(a.key()),
        Candidate::Pair(a, b) => json!([a.key(), b.key()]),
    }
}

fn candidate_from_json(v: &Value, n: u32) -> Result<Candidate> {
    match v {
        Value::String(s) => Ok(Candidate::Single(Blade::parse_key(s, n)?)),
        Value::Array(items) if items.len() == 2 => {
            let key = |i: usize| {
                items[i]
                    .as_str()
                    .ok_or_else(|| Error::Format("candidate keys must be strings".into()))
                    .and_then(|s| Blade::parse_key(s, n))
            };
            Ok(Candidate::Pair(key(0)?, key(1)?))
        }
        other => Err(Error::Format(format!("invalid candidate {other}"))),
    }
}

/// `{"case", "central_factor", "T", "residual", "candidate"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResultDoc {
    pub case: Value,
    pub central_factor: Value,
    #[serde(rename = "T")]
    pub t: Value,
    pub residual: f64,
    pub candidate: Value,
}

/// A solve result read back from text; `T^{-1}` is not stored.
#[derive(Debug, Clone)]
pub struct ParsedSolution<F: Field> {
    pub case: CaseId,
    pub central_factor: Multivector<F>,
    pub t: Multivector<F>,
    pub residual: f64,
    pub candidate: Candidate,
}

impl SolveResultDoc {
    pub fn from_result<F: Field>(r: &SolveResult<F>) -> Self {
        SolveResultDoc {
            case: match r.case {
                CaseId::Even => Value::String("even".into()),
                CaseId::Odd(k) => json!(k),
            },
            central_factor: multivector_to_json(&r.central_factor),
            t: multivector_to_json(&r.t),
            residual: r.residual,
            candidate: candidate_to_json(&r.candidate),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }

    pub fn decode<F: Field>(&self, sig: Signature, kind: FieldKind) -> Result<ParsedSolution<F>> {
        let case = match &self.case {
            Value::String(s) if s == "even" => CaseId::Even,
            Value::Number(k) => match k.as_u64() {
                Some(k @ 1..=6) => CaseId::Odd(k as u8),
                _ => return Err(Error::Format(format!("case: invalid case {k}"))),
            },
            other => return Err(Error::Format(format!("case: invalid case {other}"))),
        };
        Ok(ParsedSolution {
            case,
            central_factor: multivector_from_json(&self.central_factor, sig, kind)
                .map_err(|e| e.at("central_factor"))?,
            t: multivector_from_json(&self.t, sig, kind).map_err(|e| e.at("T"))?,
            residual: self.residual,
            candidate: candidate_from_json(&self.candidate, sig.n()).map_err(|e| e.at("candidate"))?,
        })
    }
}

/// Ground truth written next to generated instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthDoc {
    pub case: Value,
    #[serde(rename = "S")]
    pub s: Value,
    pub seed: u64,
}

impl TruthDoc {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("truth serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational, Rational};
    use proptest::prelude::*;

    fn sig3() -> Signature {
        Signature::new(2, 1).unwrap()
    }

    #[test]
    fn multivector_text() {
        let kind = FieldKind::of::<Rational>();
        let mv = Multivector::from_terms(
            sig3(),
            kind,
            [
                (Blade::from_indices(&[1, 3]), Rational::new(1, 2)),
                (Blade::SCALAR, Rational::from_i64(3)),
                (Blade::from_indices(&[2]), Rational::new(-4, 6)),
            ],
        );
        let v = multivector_to_json(&mv);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"":"3","2":"-2/3","1,3":"1/2"}"#);
        assert_eq!(multivector_from_json::<Rational>(&v, sig3(), kind).unwrap(), mv);
    }

    #[test]
    fn multivector_errors() {
        let kind = FieldKind::of::<Rational>();
        for bad in [json!({"3,1": "1"}), json!({"4": "1"}), json!({"1": "a"}), json!([1]), json!({"1": "1/0"})] {
            assert!(multivector_from_json::<Rational>(&bad, sig3(), kind).is_err(), "{bad}");
        }
        let err = multivector_from_json::<Rational>(&json!({"1": {"re": "1", "im": "2"}}), sig3(), kind)
            .unwrap_err();
        assert!(err.to_string().contains("imaginary"), "{err}");
    }

    #[test]
    fn instance_round_trip() {
        let kind = FieldKind::of::<GaussianRational>();
        let g = GeneratorSet::<GaussianRational>::canonical(sig3(), kind);
        let doc = InstanceDoc::from_sets(&g, &g);
        let text = doc.to_pretty();
        let back = InstanceDoc::parse(&text).unwrap();
        let (g2, b2) = back.to_sets::<GaussianRational>(kind).unwrap();
        assert_eq!(g2.generators(), g.generators());
        assert_eq!(b2.generators(), g.generators());
        assert_eq!(back.to_pretty(), text);
    }

    #[test]
    fn parse_errors_report_location() {
        let err = InstanceDoc::parse("{\n  \"p\": 1,\n  \"q\": x }").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let doc = InstanceDoc::parse(r#"{"p":2,"q":0,"field":"real-exact","gamma":[{"1":"1"},{"2":"1"}],"beta":[{"1":"1"},{"2,1":"1"}]}"#).unwrap();
        let err = doc.raw_sets::<Rational>(FieldKind::of::<Rational>()).unwrap_err();
        assert!(err.to_string().starts_with("beta[1]"), "{err}");
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(u32, i64, i64, i64)>> {
        prop::collection::vec((0u32..8, -9i64..9, 1i64..9, -9i64..9), 0..8)
    }

    proptest! {
        #[test]
        fn exact_round_trip(terms in arb_terms()) {
            let kind = FieldKind::of::<GaussianRational>();
            let mv = Multivector::from_terms(sig3(), kind, terms.iter().map(|&(b, n, d, im)| {
                let z = GaussianRational::new(
                    Rational::new(n, d).0,
                    Rational::new(im, d + 1).0,
                );
                (Blade(b), z)
            }));
            let text = serde_json::to_string(&multivector_to_json(&mv)).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            let mv2 = multivector_from_json::<GaussianRational>(&back, sig3(), kind).unwrap();
            prop_assert_eq!(&mv2, &mv);
            prop_assert_eq!(serde_json::to_string(&multivector_to_json(&mv2)).unwrap(), text);
        }
    }
}
