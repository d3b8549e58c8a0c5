//! Generator sets `{γ^a}` satisfying `γ^a γ^b + γ^b γ^a = 2 η^{ab} e`.
//!
//! Besides validation this module derives the products `γ^A`, their inverses
//! `γ_A`, the basis / non-basis classification of a set via its volume
//! element, and the central rescalings ("σ-transforms") that move a set
//! between the basis and non-basis situations in odd dimension.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::blade::{blades_commute, Blade, Signature};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::linalg::mv_inverse;
use crate::multivector::Multivector;

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn apply<F: Field>(self, mv: Multivector<F>) -> Multivector<F> {
        match self {
            Sign::Plus => mv,
            Sign::Minus => -mv,
        }
    }
}

/// How the volume element `γ^{1…n}` of a set sits in the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisClassification {
    /// `γ^{1…n} = ±e^{1…n}`; the products `γ^A` form a basis.
    VolumeBasis(Sign),
    /// Even dimension with `γ^{1…n} ≠ ±e^{1…n}`. Still a basis.
    EvenBasis,
    /// Odd dimension, `γ^{1…n} = ±e`; not a basis.
    ScalarCentral(Sign),
    /// Odd dimension, complex field, `γ^{1…n} = ±i e`; not a basis.
    ImaginaryCentral(Sign),
}

impl BasisClassification {
    pub fn is_basis(self) -> bool {
        matches!(self, BasisClassification::VolumeBasis(_) | BasisClassification::EvenBasis)
    }
}

impl fmt::Display for BasisClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pm = |s: &Sign| if *s == Sign::Plus { "+" } else { "-" };
        match self {
            BasisClassification::VolumeBasis(s) => write!(f, "VolumeBasis({}1)", pm(s)),
            BasisClassification::EvenBasis => f.write_str("Basis"),
            BasisClassification::ScalarCentral(s) => write!(f, "ScalarCentral({}1)", pm(s)),
            BasisClassification::ImaginaryCentral(s) => write!(f, "ImaginaryCentral({}i)", pm(s)),
        }
    }
}

/// Counts of `γ^B` (over all `2^n` multi-indices) that commute or
/// anticommute with a fixed `γ^A`, split by the parity of `|B|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CommutationProfile {
    pub even_commute: usize,
    pub odd_commute: usize,
    pub even_anti: usize,
    pub odd_anti: usize,
}

impl CommutationProfile {
    pub fn total(&self) -> usize {
        self.even_commute + self.odd_commute + self.even_anti + self.odd_anti
    }

    fn record(&mut self, b: Blade, commutes: bool) {
        match (b.is_even(), commutes) {
            (true, true) => self.even_commute += 1,
            (false, true) => self.odd_commute += 1,
            (true, false) => self.even_anti += 1,
            (false, false) => self.odd_anti += 1,
        }
    }
}

/// Central factors a set can be rescaled by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaFactor {
    /// `σ^a = -γ^a`.
    Neg,
    /// `σ^a = e^{1…n} γ^a`; needs odd `n` and `p-q ≡ 1 mod 4`.
    VolPlus,
    /// `σ^a = -e^{1…n} γ^a`.
    VolMinus,
    /// `σ^a = i e^{1…n} γ^a`; needs a complex field, odd `n` and `p-q ≡ 3 mod 4`.
    IVolPlus,
    /// `σ^a = -i e^{1…n} γ^a`.
    IVolMinus,
}

impl SigmaFactor {
    pub const ALL: [SigmaFactor; 5] = [
        SigmaFactor::Neg,
        SigmaFactor::VolPlus,
        SigmaFactor::VolMinus,
        SigmaFactor::IVolPlus,
        SigmaFactor::IVolMinus,
    ];

    /// Checks the dimension / signature / field preconditions.
    pub fn check<F: Field>(self, sig: Signature) -> Result<()> {
        match self {
            SigmaFactor::Neg => Ok(()),
            SigmaFactor::VolPlus | SigmaFactor::VolMinus => {
                if !sig.is_odd() {
                    Err(Error::OddDimensionRequired)
                } else if sig.p_minus_q_mod4() != 1 {
                    Err(Error::SignatureMismatch { required: 1 })
                } else {
                    Ok(())
                }
            }
            SigmaFactor::IVolPlus | SigmaFactor::IVolMinus => {
                if F::imaginary_unit().is_none() {
                    Err(Error::FieldMismatch)
                } else if !sig.is_odd() {
                    Err(Error::OddDimensionRequired)
                } else if sig.p_minus_q_mod4() != 3 {
                    Err(Error::SignatureMismatch { required: 3 })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The multiplier `f` as a multivector (after checking preconditions).
    pub fn element<F: Field>(self, sig: Signature, kind: FieldKind) -> Result<Multivector<F>> {
        self.check::<F>(sig)?;
        let vol = Multivector::volume(sig, kind);
        Ok(match self {
            SigmaFactor::Neg => -Multivector::one(sig, kind),
            SigmaFactor::VolPlus => vol,
            SigmaFactor::VolMinus => -vol,
            SigmaFactor::IVolPlus => vol.scale(&F::imaginary_unit().expect("checked")),
            SigmaFactor::IVolMinus => vol.scale(&F::imaginary_unit().expect("checked").neg()),
        })
    }
}

/// A validated set of `n` generators.
#[derive(Clone)]
pub struct GeneratorSet<F: Field> {
    sig: Signature,
    kind: FieldKind,
    gens: Vec<Multivector<F>>,
    // γ^A for every multi-index, indexed by bit mask.
    table: OnceLock<Vec<Multivector<F>>>,
}

impl<F: Field> fmt::Debug for GeneratorSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSet")
            .field("sig", &self.sig)
            .field("gens", &self.gens)
            .finish()
    }
}

/// Residual of `x y + y x - 2 s e`.
fn anticommutator_residual<F: Field>(x: &Multivector<F>, y: &Multivector<F>, s: i64) -> f64 {
    let lhs = &(x * y) + &(y * x);
    let rhs = x.scalar_like(F::from_i64(2 * s));
    lhs.distance(&rhs)
}

/// Validates the anticommutation relations and builds the set.
pub fn validate_generators<F: Field>(
    sig: Signature,
    kind: FieldKind,
    gens: Vec<Multivector<F>>,
) -> Result<GeneratorSet<F>> {
    let n = sig.n() as usize;
    if gens.len() != n {
        return Err(Error::GeneratorCount { expected: n, got: gens.len() });
    }
    if gens.iter().any(|g| g.sig() != sig || g.kind().tag != kind.tag) {
        return Err(Error::AlgebraMismatch);
    }
    let gens: Vec<_> = gens.into_iter().map(|g| g.with_tolerance(kind.tolerance)).collect();
    let tol = kind.effective_tolerance();
    for a in 0..n {
        for b in a..n {
            let s = if a == b { sig.eta(a as u32 + 1) as i64 } else { 0 };
            let residual = anticommutator_residual(&gens[a], &gens[b], s);
            if residual > tol {
                return Err(Error::RelationViolation { a: a + 1, b: b + 1, residual });
            }
        }
    }
    Ok(GeneratorSet { sig, kind, gens, table: OnceLock::new() })
}

impl<F: Field> GeneratorSet<F> {
    /// The standard generators `γ^a = e^a`.
    pub fn canonical(sig: Signature, kind: FieldKind) -> Self {
        let gens = (1..=sig.n()).map(|a| Multivector::generator(sig, kind, a)).collect();
        GeneratorSet { sig, kind, gens, table: OnceLock::new() }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn generators(&self) -> &[Multivector<F>] {
        &self.gens
    }

    /// `γ^a` for a 1-based index.
    pub fn generator(&self, a: u32) -> &Multivector<F> {
        &self.gens[a as usize - 1]
    }

    /// `{S γ^a S^{-1}}`, always valid when `S` is invertible.
    pub fn conjugate_by(&self, s: &Multivector<F>) -> Result<Self> {
        let s_inv = mv_inverse(s)?;
        let gens = self.gens.iter().map(|g| &(s * g) * &s_inv).collect();
        validate_generators(self.sig, self.kind, gens)
    }

    /// Products `γ^A` for every multi-index, indexed by bit mask.
    pub fn table(&self) -> &[Multivector<F>] {
        self.table.get_or_init(|| {
            let mut table: Vec<Multivector<F>> = Vec::with_capacity(self.sig.dim());
            table.push(Multivector::one(self.sig, self.kind));
            for mask in 1..self.sig.dim() {
                let top = 31 - (mask as u32).leading_zeros();
                let rest = mask & !(1 << top);
                let prod = &table[rest] * &self.gens[top as usize];
                table.push(prod);
            }
            table
        })
    }

    /// `γ^A = γ^{a_1} ⋯ γ^{a_k}` in ascending order; `e` for the empty index.
    pub fn blade(&self, a: Blade) -> Multivector<F> {
        assert!(self.sig.fits(a), "{a} does not fit {}", self.sig);
        if let Some(table) = self.table.get() {
            return table[a.0 as usize].clone();
        }
        a.indices()
            .into_iter()
            .fold(Multivector::one(self.sig, self.kind), |acc, i| &acc * self.generator(i))
    }

    /// Sign `s` with `γ_A = (γ^A)^{-1} = s γ^A`.
    pub fn reciprocal_sign(&self, a: Blade) -> Sign {
        if self.sig.blade_square_sign(a) > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `γ_A = (γ^A)^{-1}`.
    pub fn reciprocal(&self, a: Blade) -> Multivector<F> {
        self.reciprocal_sign(a).apply(self.blade(a))
    }

    /// `γ^{1…n}`.
    pub fn volume(&self) -> Multivector<F> {
        self.blade(self.sig.volume())
    }

    pub fn classify_basis(&self) -> Result<BasisClassification> {
        let omega = self.volume();
        let vol = Multivector::volume(self.sig, self.kind);
        for sign in [Sign::Plus, Sign::Minus] {
            if omega.approx_eq(&sign.apply(vol.clone())) {
                return Ok(BasisClassification::VolumeBasis(sign));
            }
        }
        if !self.sig.is_odd() {
            return Ok(BasisClassification::EvenBasis);
        }
        let one = Multivector::one(self.sig, self.kind);
        for sign in [Sign::Plus, Sign::Minus] {
            if omega.approx_eq(&sign.apply(one.clone())) {
                return Ok(BasisClassification::ScalarCentral(sign));
            }
        }
        if let Some(i) = F::imaginary_unit() {
            let ie = one.scale(&i);
            for sign in [Sign::Plus, Sign::Minus] {
                if omega.approx_eq(&sign.apply(ie.clone())) {
                    return Ok(BasisClassification::ImaginaryCentral(sign));
                }
            }
        }
        Err(Error::UnclassifiableVolume)
    }

    /// `Tr(γ^A)` for every nonempty multi-index.
    pub fn trace_profile(&self) -> BTreeMap<Blade, F> {
        let table = self.table();
        self.sig
            .blades()
            .filter(|b| *b != Blade::SCALAR)
            .map(|b| (b, table[b.0 as usize].trace()))
            .collect()
    }

    /// `π(γ^A)` for every nonempty multi-index; odd dimension only.
    pub fn pi_profile(&self) -> Result<BTreeMap<Blade, F>> {
        if !self.sig.is_odd() {
            return Err(Error::OddDimensionRequired);
        }
        let table = self.table();
        Ok(self
            .sig
            .blades()
            .filter(|b| *b != Blade::SCALAR)
            .map(|b| (b, table[b.0 as usize].pi()))
            .collect())
    }

    /// Commutation counts of `γ^A` against the whole set `{γ^B}`.
    ///
    /// Uses the sign rule `γ^A γ^B = (-1)^{|A||B|-|A∩B|} γ^B γ^A`, which holds
    /// for every valid set, so no multivector products are formed.
    pub fn commutation_profile(&self, a: Blade) -> Result<CommutationProfile> {
        if a == Blade::SCALAR || a == self.sig.volume() || !self.sig.fits(a) {
            return Err(Error::InadmissibleIndex(a));
        }
        let mut profile = CommutationProfile::default();
        for b in self.sig.blades() {
            profile.record(b, blades_commute(a, b));
        }
        Ok(profile)
    }

    /// Same counts as [`Self::commutation_profile`] but decided by actually
    /// multiplying `γ^A γ^B` and `γ^B γ^A`. Errors if a pair neither commutes
    /// nor anticommutes.
    pub fn commutation_profile_by_products(&self, a: Blade) -> Result<CommutationProfile> {
        if a == Blade::SCALAR || a == self.sig.volume() || !self.sig.fits(a) {
            return Err(Error::InadmissibleIndex(a));
        }
        let table = self.table();
        let ga = &table[a.0 as usize];
        let mut profile = CommutationProfile::default();
        for b in self.sig.blades() {
            let gb = &table[b.0 as usize];
            let ab = ga * gb;
            let ba = gb * ga;
            let commutes = if ab.approx_eq(&ba) {
                true
            } else if ab.approx_eq(&-&ba) {
                false
            } else {
                return Err(Error::InadmissibleIndex(b));
            };
            profile.record(b, commutes);
        }
        Ok(profile)
    }

    /// `σ^a = f γ^a` for the chosen central factor `f`.
    pub fn sigma_transform(&self, factor: SigmaFactor) -> Result<Self> {
        let f = factor.element::<F>(self.sig, self.kind)?;
        let gens = self.gens.iter().map(|g| &f * g).collect();
        validate_generators(self.sig, self.kind, gens)
    }
}
