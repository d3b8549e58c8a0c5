//! Seeded generation of test instances: `γ` canonical, `β^a = S γ^a S^{-1}`
//! for a random invertible `S`, optionally rescaled into an odd case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blade::Signature;
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::generators::GeneratorSet;
use crate::linalg::mv_inverse;
use crate::multivector::Multivector;
use crate::solve::{admissible_cases, reduction_factor, CaseId};

/// Default coefficient bound for exact fields.
pub const DEFAULT_EXACT_BOUND: f64 = 3.0;
/// Default coefficient bound for the float field.
pub const DEFAULT_FLOAT_BOUND: f64 = 1.0;
/// Largest accepted `‖S‖_max · ‖S^{-1}‖_max` for float instances.
pub const FLOAT_CONDITION_LIMIT: f64 = 50.0;

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub sig: Signature,
    pub seed: u64,
    /// Target odd case; `None` means case 1 (odd `n`) or the plain even case.
    pub case: Option<u8>,
    /// Coefficients are drawn from `[-bound, bound]` (integers on exact fields).
    pub bound: f64,
}

impl GenSpec {
    pub fn new(sig: Signature, seed: u64) -> Self {
        GenSpec { sig, seed, case: None, bound: 0.0 }
    }

    pub fn with_case(mut self, case: Option<u8>) -> Self {
        self.case = case;
        self
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = bound;
        self
    }

    fn effective_bound<F: Field>(&self) -> f64 {
        if self.bound > 0.0 {
            self.bound
        } else if F::TAG.is_exact() {
            DEFAULT_EXACT_BOUND
        } else {
            DEFAULT_FLOAT_BOUND
        }
    }

    /// The case the generated instance will have.
    pub fn target_case<F: Field>(&self) -> Result<CaseId> {
        if !self.sig.is_odd() {
            return match self.case {
                None => Ok(CaseId::Even),
                Some(k) => Err(Error::Admissibility {
                    case: k,
                    reason: format!("{} has even dimension; odd cases need odd n", self.sig),
                }),
            };
        }
        let k = self.case.unwrap_or(1);
        if !(1..=6).contains(&k) {
            return Err(Error::Admissibility { case: k, reason: "cases are numbered 1 to 6".into() });
        }
        if !admissible_cases::<F>(self.sig).contains(&k) {
            let reason = match k {
                3 | 4 => format!("needs p-q ≡ 1 mod 4, {} has p-q ≡ {}", self.sig, self.sig.p_minus_q_mod4()),
                _ if !F::TAG.is_complex() => "only exists over a complex field".to_string(),
                _ => format!("needs p-q ≡ 3 mod 4, {} has p-q ≡ {}", self.sig, self.sig.p_minus_q_mod4()),
            };
            return Err(Error::Admissibility { case: k, reason });
        }
        Ok(CaseId::Odd(k))
    }
}

/// A generated instance together with its ground truth.
#[derive(Debug, Clone)]
pub struct Instance<F: Field> {
    pub gamma: GeneratorSet<F>,
    pub beta: GeneratorSet<F>,
    pub s: Multivector<F>,
    pub case: CaseId,
}

/// Draws `S` until it is invertible (and well conditioned on the float field).
pub fn random_invertible<F: Field>(sig: Signature, kind: FieldKind, rng: &mut ChaCha8Rng, bound: f64) -> Result<(Multivector<F>, Multivector<F>)> {
    for _ in 0..MAX_ATTEMPTS {
        let s = Multivector::from_terms(sig, kind, sig.blades().map(|b| (b, F::sample(rng, bound))));
        if s.is_zero() {
            continue;
        }
        let Ok(s_inv) = mv_inverse(&s) else { continue };
        if !F::TAG.is_exact() && s.max_norm() * s_inv.max_norm() > FLOAT_CONDITION_LIMIT {
            continue;
        }
        return Ok((s, s_inv));
    }
    Err(Error::NoCandidateFound)
}

pub fn generate<F: Field>(spec: &GenSpec, kind: FieldKind) -> Result<Instance<F>> {
    let case = spec.target_case::<F>()?;
    let sig = spec.sig;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (s, s_inv) = random_invertible::<F>(sig, kind, &mut rng, spec.effective_bound::<F>())?;
    let gamma = GeneratorSet::canonical(sig, kind);
    let conjugated: Vec<Multivector<F>> =
        gamma.generators().iter().map(|g| &(&s * g) * &s_inv).collect();
    let mut beta = crate::generators::validate_generators(sig, kind, conjugated)?;
    if let CaseId::Odd(k) = case {
        if let Some(f) = reduction_factor(k) {
            beta = beta.sigma_transform(f)?;
        }
    }
    Ok(Instance { gamma, beta, s, case })
}
