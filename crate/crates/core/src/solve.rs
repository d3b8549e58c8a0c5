//! Intertwiner search: given two generator sets `γ`, `β` of the same algebra,
//! find an invertible `T` and a central `c` with `γ^a = c · T^{-1} β^a T`.
//!
//! Even dimension always has `c = e`. Odd dimension has six possible central
//! factors, detected from `c = β^{1…n} γ_{1…n}`:
//!
//! | case | `c`              | needs                          |
//! |------|------------------|--------------------------------|
//! | 1    | `e`              | always                         |
//! | 2    | `-e`             | always                         |
//! | 3    | `e^{1…n}`        | `p-q ≡ 1 mod 4`                |
//! | 4    | `-e^{1…n}`       | `p-q ≡ 1 mod 4`                |
//! | 5    | `i e^{1…n}`      | complex field, `p-q ≡ 3 mod 4` |
//! | 6    | `-i e^{1…n}`     | complex field, `p-q ≡ 3 mod 4` |

use std::fmt;

use crate::blade::{Blade, Signature};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::generators::{GeneratorSet, SigmaFactor};
use crate::linalg::mv_inverse;
use crate::multivector::Multivector;
use crate::reynolds::{op_h, op_h_even};

/// The element `U` a solution was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Candidate {
    /// `U = γ^A`.
    Single(Blade),
    /// `U = γ^A + γ^B`.
    Pair(Blade, Blade),
}

impl Candidate {
    pub fn element<F: Field>(&self, gamma: &GeneratorSet<F>) -> Multivector<F> {
        match *self {
            Candidate::Single(a) => gamma.blade(a),
            Candidate::Pair(a, b) => &gamma.blade(a) + &gamma.blade(b),
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |a: Blade| if a == Blade::SCALAR { "γ^∅".to_string() } else { format!("γ^{{{}}}", a.key()) };
        match *self {
            Candidate::Single(a) => f.write_str(&term(a)),
            Candidate::Pair(a, b) => write!(f, "{} + {}", term(a), term(b)),
        }
    }
}

/// Which relation between the two sets holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Even,
    /// Odd-dimension case `1..=6`.
    Odd(u8),
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::Even => f.write_str("even"),
            CaseId::Odd(k) => write!(f, "{k}"),
        }
    }
}

/// An odd-dimension case with its central factor.
#[derive(Debug, Clone, PartialEq)]
pub struct OddCase<F: Field> {
    pub id: u8,
    pub factor: Multivector<F>,
}

#[derive(Debug, Clone)]
pub struct SolveResult<F: Field> {
    /// Intertwiner, normalized so its leading coefficient is one.
    pub t: Multivector<F>,
    pub t_inv: Multivector<F>,
    pub case: CaseId,
    pub central_factor: Multivector<F>,
    pub candidate: Candidate,
    /// Max-norm of `γ^a - c T^{-1} β^a T` over all `a`; zero on exact fields.
    pub residual: f64,
}

/// Odd cases that can occur for field `F` and signature `sig`.
pub fn admissible_cases<F: Field>(sig: Signature) -> Vec<u8> {
    let mut cases = vec![1, 2];
    match sig.p_minus_q_mod4() {
        1 => cases.extend([3, 4]),
        3 if F::imaginary_unit().is_some() => cases.extend([5, 6]),
        _ => {}
    }
    cases
}

/// The σ-transform that turns case `id` into case 1 when applied to `β`.
pub fn reduction_factor(id: u8) -> Option<SigmaFactor> {
    match id {
        2 => Some(SigmaFactor::Neg),
        3 => Some(SigmaFactor::VolPlus),
        4 => Some(SigmaFactor::VolMinus),
        5 => Some(SigmaFactor::IVolPlus),
        6 => Some(SigmaFactor::IVolMinus),
        _ => None,
    }
}

/// Central factor `c` of odd case `id`.
pub fn case_factor<F: Field>(id: u8, sig: Signature, kind: FieldKind) -> Result<Multivector<F>> {
    if !sig.is_odd() {
        return Err(Error::OddDimensionRequired);
    }
    match id {
        1 => Ok(Multivector::one(sig, kind)),
        2..=6 => reduction_factor(id).unwrap().element(sig, kind),
        _ => Err(Error::Admissibility { case: id, reason: "cases are numbered 1 to 6".into() }),
    }
}

fn check_pair<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Result<()> {
    if gamma.sig() != beta.sig() || gamma.kind().tag != beta.kind().tag {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

fn residual_with<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    t: &Multivector<F>,
    t_inv: &Multivector<F>,
    c: &Multivector<F>,
) -> f64 {
    gamma
        .generators()
        .iter()
        .zip(beta.generators())
        .map(|(g, b)| g.distance(&(c * &(&(t_inv * b) * t))))
        .fold(0.0, f64::max)
}

/// Residual `max_a ‖γ^a - c T^{-1} β^a T‖_max`.
pub fn verify_intertwiner<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    t: &Multivector<F>,
    c: &Multivector<F>,
) -> Result<f64> {
    check_pair(gamma, beta)?;
    let t_inv = mv_inverse(t)?;
    Ok(residual_with(gamma, beta, t, &t_inv, c))
}

/// Whether a residual is acceptable for the set's field.
pub fn residual_ok<F: Field>(gamma: &GeneratorSet<F>, residual: f64) -> bool {
    residual <= gamma.kind().effective_tolerance()
}

/// Normalizes `h`, inverts it and verifies it against the original sets.
fn finish<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    h: &Multivector<F>,
    case: CaseId,
    c: &Multivector<F>,
    candidate: Candidate,
) -> Result<SolveResult<F>> {
    let t = h.normalized().ok_or(Error::NotInvertible)?;
    let t_inv = mv_inverse(&t)?;
    check(gamma, beta, t, t_inv, case, c, candidate)
}

/// Verifies a normalized `T` with known inverse against the original sets.
fn check<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    t: Multivector<F>,
    t_inv: Multivector<F>,
    case: CaseId,
    c: &Multivector<F>,
    candidate: Candidate,
) -> Result<SolveResult<F>> {
    let residual = residual_with(gamma, beta, &t, &t_inv, c);
    if !residual_ok(gamma, residual) {
        return Err(Error::VerificationFailed { residual });
    }
    Ok(SolveResult { t, t_inv, case, central_factor: c.clone(), candidate, residual })
}

/// Every intertwiner the even-dimension search produces, in candidate order.
///
/// Candidates are `γ^A` for even `A`, or for odd `A` when `β^{1…n} = -γ^{1…n}`;
/// candidates with `H(U) = 0` are skipped.
pub fn even_solutions<'a, F: Field>(
    gamma: &'a GeneratorSet<F>,
    beta: &'a GeneratorSet<F>,
) -> Result<impl Iterator<Item = Result<SolveResult<F>>> + 'a> {
    check_pair(gamma, beta)?;
    let sig = gamma.sig();
    if sig.is_odd() {
        return Err(Error::EvenDimensionRequired);
    }
    let use_odd = beta.volume().approx_eq(&-gamma.volume());
    let one = Multivector::one(sig, gamma.kind());
    Ok(sig
        .blades()
        .filter(move |b| b.is_even() != use_odd)
        .filter_map(move |a| {
            let h = op_h(gamma, beta, &gamma.blade(a));
            if h.is_zero() {
                return None;
            }
            Some(finish(gamma, beta, &h, CaseId::Even, &one, Candidate::Single(a)))
        }))
}

/// Intertwiner for even `n` from the first candidate with `H(U) ≠ 0`.
pub fn solve_even<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Result<SolveResult<F>> {
    even_solutions(gamma, beta)?.next().unwrap_or(Err(Error::NoCandidateFound))
}

/// Detects which odd case relates `β` to `γ`.
pub fn classify_odd<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Result<OddCase<F>> {
    check_pair(gamma, beta)?;
    let sig = gamma.sig();
    if !sig.is_odd() {
        return Err(Error::OddDimensionRequired);
    }
    let c = &beta.volume() * &gamma.reciprocal(sig.volume());
    for id in admissible_cases::<F>(sig) {
        let factor = case_factor::<F>(id, sig, gamma.kind())?;
        if c.approx_eq(&factor) {
            return Ok(OddCase { id, factor });
        }
    }
    Err(Error::UnclassifiableCase)
}

/// Every intertwiner the odd-dimension search produces, in candidate order.
///
/// `β` is first rescaled so its volume element equals `γ^{1…n}`; if both sets
/// then fail to be bases, both are rescaled by the volume factor to restore
/// bases. Candidates are `γ^A` for even `A`, then `γ^A + γ^B` for even
/// `A < B`, keeping those for which `H_Even(U)` is invertible.
pub fn odd_solutions<'a, F: Field>(
    gamma: &'a GeneratorSet<F>,
    beta: &'a GeneratorSet<F>,
) -> Result<impl Iterator<Item = Result<SolveResult<F>>> + 'a> {
    let case = classify_odd(gamma, beta)?;
    let sig = gamma.sig();
    let mut work_beta = match reduction_factor(case.id) {
        Some(f) => beta.sigma_transform(f)?,
        None => beta.clone(),
    };
    let mut work_gamma = gamma.clone();
    if !gamma.classify_basis()?.is_basis() {
        let lift = if sig.p_minus_q_mod4() == 1 {
            SigmaFactor::VolPlus
        } else {
            SigmaFactor::IVolPlus
        };
        work_gamma = work_gamma.sigma_transform(lift)?;
        work_beta = work_beta.sigma_transform(lift)?;
    }

    let evens: Vec<Blade> = sig.even_blades().collect();
    let singles = evens.clone().into_iter().map(Candidate::Single);
    let pairs = (0..evens.len())
        .flat_map(move |i| (i + 1..evens.len()).map(move |j| (i, j)))
        .map({
            let evens: Vec<Blade> = sig.even_blades().collect();
            move |(i, j)| Candidate::Pair(evens[i], evens[j])
        });

    let id = case.id;
    let factor = case.factor;
    Ok(singles.chain(pairs).filter_map(move |cand| {
        let u = cand.element(&work_gamma);
        let h = op_h_even(&work_gamma, &work_beta, &u);
        if h.is_zero() {
            return None;
        }
        let t = h.normalized()?;
        let t_inv = mv_inverse(&t).ok()?;
        Some(check(gamma, beta, t, t_inv, CaseId::Odd(id), &factor, cand))
    }))
}

/// Intertwiner for odd `n` from the first candidate with invertible `H_Even(U)`.
pub fn solve_odd<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Result<SolveResult<F>> {
    odd_solutions(gamma, beta)?.next().unwrap_or(Err(Error::NoCandidateFound))
}

/// Dispatches on the parity of `n`.
pub fn solve<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> Result<SolveResult<F>> {
    if gamma.sig().is_odd() {
        solve_odd(gamma, beta)
    } else {
        solve_even(gamma, beta)
    }
}

/// Whether `T1 T2^{-1}` is a nonzero multiple of `e` (even `n`) or an
/// invertible central element (odd `n`).
pub fn uniqueness_check<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    t1: &Multivector<F>,
    t2: &Multivector<F>,
) -> Result<bool> {
    check_pair(gamma, beta)?;
    let ratio = t1 * &mv_inverse(t2)?;
    if gamma.sig().is_odd() {
        Ok(ratio.is_central() && mv_inverse(&ratio).is_ok())
    } else {
        let non_scalar = ratio.filter(|b| b != Blade::SCALAR);
        Ok(non_scalar.is_zero() && !ratio.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational, Rational};

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn rk() -> FieldKind {
        FieldKind::of::<Rational>()
    }

    fn mv(s: Signature, terms: &[(&[u32], i64)]) -> Multivector<Rational> {
        Multivector::from_terms(
            s,
            rk(),
            terms.iter().map(|(idx, c)| (Blade::from_indices(idx), Rational::from_i64(*c))),
        )
    }

    #[test]
    fn identity_pairs() {
        for (p, q) in [(2, 0), (1, 1), (3, 0), (1, 2)] {
            let g = GeneratorSet::<Rational>::canonical(sig(p, q), rk());
            let r = solve(&g, &g).unwrap();
            assert_eq!(r.t, Multivector::one(g.sig(), rk()));
            assert_eq!(r.residual, 0.0);
            assert_eq!(r.candidate, Candidate::Single(Blade::SCALAR));
        }
    }

    #[test]
    fn even_conjugation_recovers_s() {
        // Cl(1,1), S = e + 2e^1.
        let s11 = sig(1, 1);
        let s = mv(s11, &[(&[], 1), (&[1], 2)]);
        let g = GeneratorSet::<Rational>::canonical(s11, rk());
        let b = g.conjugate_by(&s).unwrap();
        let r = solve_even(&g, &b).unwrap();
        assert_eq!(r.case, CaseId::Even);
        assert_eq!(r.residual, 0.0);
        assert!(uniqueness_check(&g, &b, &r.t, &s).unwrap());
        assert_eq!(r.t, s.normalized().unwrap());
    }

    #[test]
    fn even_negated_set() {
        let s20 = sig(2, 0);
        let g = GeneratorSet::<Rational>::canonical(s20, rk());
        let b = g.sigma_transform(SigmaFactor::Neg).unwrap();
        let r = solve_even(&g, &b).unwrap();
        assert_eq!(r.t, mv(s20, &[(&[1, 2], 1)]));
        assert_eq!(verify_intertwiner(&g, &b, &r.t, &r.central_factor).unwrap(), 0.0);
    }

    #[test]
    fn odd_cases_by_transform() {
        let s21 = sig(2, 1);
        let g = GeneratorSet::<Rational>::canonical(s21, rk());
        assert_eq!(classify_odd(&g, &g).unwrap().id, 1);
        for (f, id) in [
            (SigmaFactor::Neg, 2),
            (SigmaFactor::VolPlus, 3),
            (SigmaFactor::VolMinus, 4),
        ] {
            let b = g.sigma_transform(f).unwrap();
            let case = classify_odd(&g, &b).unwrap();
            assert_eq!(case.id, id);
            let r = solve_odd(&g, &b).unwrap();
            assert_eq!(r.case, CaseId::Odd(id));
            assert_eq!(r.residual, 0.0);
        }

        let s30 = sig(3, 0);
        let ck = FieldKind::of::<GaussianRational>();
        let g = GeneratorSet::<GaussianRational>::canonical(s30, ck);
        assert_eq!(admissible_cases::<GaussianRational>(s30), vec![1, 2, 5, 6]);
        assert_eq!(admissible_cases::<Rational>(s30), vec![1, 2]);
        for (f, id) in [(SigmaFactor::IVolPlus, 5), (SigmaFactor::IVolMinus, 6)] {
            let b = g.sigma_transform(f).unwrap();
            let r = solve_odd(&g, &b).unwrap();
            assert_eq!(r.case, CaseId::Odd(id));
            assert_eq!(r.central_factor, case_factor(id, s30, ck).unwrap());
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn perturbed_intertwiner_fails() {
        let s30 = sig(3, 0);
        let g = GeneratorSet::<Rational>::canonical(s30, rk());
        let s = mv(s30, &[(&[], 2), (&[1, 2], 1), (&[2, 3], -1)]);
        let b = g.conjugate_by(&s).unwrap();
        let r = solve_odd(&g, &b).unwrap();
        assert_eq!(r.residual, 0.0);
        let bad = &r.t + &mv(s30, &[(&[1], 1)]);
        let res = verify_intertwiner(&g, &b, &bad, &r.central_factor).unwrap();
        assert!(res > 0.0);
    }

    #[test]
    fn uniqueness_examples() {
        let s30 = sig(3, 0);
        let g = GeneratorSet::<Rational>::canonical(s30, rk());
        let t1 = mv(s30, &[(&[], 1), (&[1, 2], 1)]);
        let three = t1.scale(&Rational::from_i64(3));
        assert!(uniqueness_check(&g, &g, &t1, &three).unwrap());
        let central = mv(s30, &[(&[], 2), (&[1, 2, 3], 1)]);
        assert!(uniqueness_check(&g, &g, &t1, &(&central * &t1)).unwrap());
        let e1 = mv(s30, &[(&[1], 1)]);
        assert!(!uniqueness_check(&g, &g, &t1, &(&e1 * &t1)).unwrap());
        let s20 = sig(2, 0);
        let g2 = GeneratorSet::<Rational>::canonical(s20, rk());
        let t = mv(s20, &[(&[], 1), (&[1], 1), (&[1, 2], 3)]);
        assert!(!uniqueness_check(&g2, &g2, &t, &(&mv(s20, &[(&[1], 1)]) * &t)).unwrap());
        assert!(uniqueness_check(&g2, &g2, &t, &t.scale(&Rational::new(-1, 2))).unwrap());
    }

    #[test]
    fn dimension_checks() {
        let g3 = GeneratorSet::<Rational>::canonical(sig(3, 0), rk());
        assert_eq!(solve_even(&g3, &g3).unwrap_err(), Error::EvenDimensionRequired);
        let g2 = GeneratorSet::<Rational>::canonical(sig(2, 0), rk());
        assert_eq!(solve_odd(&g2, &g2).unwrap_err(), Error::OddDimensionRequired);
    }
}
