//! Reynolds operator `F` and the generalized Reynolds operators `H`, `P`,
//! `H_Even` built from two generator sets.
//!
//! All of them are averages of the form `Σ_{A∈S} λ^A U (ρ^A)^{-1}` over the
//! multi-indices in `S` (all of them, or only the even ones). Since
//! `λ^A U (ρ^A)^{-1} = λ^{a_1}(⋯(λ^{a_k} U ρ_{a_k})⋯)ρ_{a_1}`, the sum over all
//! subsets factors as `(I + M_1)∘⋯∘(I + M_n)` with `M_a(X) = λ^a X (ρ^a)^{-1}`.
//! [`conjugation_sum`] evaluates it that way with `O(n)` products; the
//! term-by-term [`conjugation_sum_literal`] is kept as an independent check.

use crate::blade::Blade;
use crate::field::Field;
use crate::generators::GeneratorSet;
use crate::multivector::Multivector;

/// Which multi-indices an average runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    All,
    Even,
    Odd,
}

impl IndexSet {
    pub fn contains(self, b: Blade) -> bool {
        match self {
            IndexSet::All => true,
            IndexSet::Even => b.is_even(),
            IndexSet::Odd => !b.is_even(),
        }
    }
}

fn check_pair<F: Field>(left: &GeneratorSet<F>, right: &GeneratorSet<F>, u: &Multivector<F>) {
    assert_eq!(left.sig(), right.sig(), "generator sets from different algebras");
    assert_eq!(left.sig(), u.sig(), "operand from a different algebra");
}

/// Even and odd parts `(Σ_{A even}, Σ_{A odd})` of `λ^A U (ρ^A)^{-1}`.
pub fn conjugation_sum_split<F: Field>(
    left: &GeneratorSet<F>,
    right: &GeneratorSet<F>,
    u: &Multivector<F>,
) -> (Multivector<F>, Multivector<F>) {
    check_pair(left, right, u);
    let sig = u.sig();
    let mut even = u.clone();
    let mut odd = u.zero_like();
    for a in (1..=sig.n()).rev() {
        let l = left.generator(a);
        let r_inv = right.generator(a).scale(&F::from_i64(sig.eta(a) as i64));
        let step = |x: &Multivector<F>| &(l * x) * &r_inv;
        let new_even = &even + &step(&odd);
        let new_odd = &odd + &step(&even);
        even = new_even;
        odd = new_odd;
    }
    (even, odd)
}

/// `Σ_{A∈S} λ^A U (ρ^A)^{-1}` (no normalization).
pub fn conjugation_sum<F: Field>(
    left: &GeneratorSet<F>,
    right: &GeneratorSet<F>,
    u: &Multivector<F>,
    set: IndexSet,
) -> Multivector<F> {
    match set {
        IndexSet::All => {
            check_pair(left, right, u);
            let sig = u.sig();
            let mut x = u.clone();
            for a in (1..=sig.n()).rev() {
                let r_inv = right.generator(a).scale(&F::from_i64(sig.eta(a) as i64));
                x = &x + &(&(left.generator(a) * &x) * &r_inv);
            }
            x
        }
        IndexSet::Even => conjugation_sum_split(left, right, u).0,
        IndexSet::Odd => conjugation_sum_split(left, right, u).1,
    }
}

/// Term-by-term evaluation of the same sum from the tables `λ^A`, `ρ_A`.
pub fn conjugation_sum_literal<F: Field>(
    left: &GeneratorSet<F>,
    right: &GeneratorSet<F>,
    u: &Multivector<F>,
    set: IndexSet,
) -> Multivector<F> {
    check_pair(left, right, u);
    let sig = u.sig();
    sig.blades()
        .filter(|b| set.contains(*b))
        .fold(u.zero_like(), |acc, b| &acc + &(&(&left.blade(b) * u) * &right.reciprocal(b)))
}

fn inv_pow2<F: Field>(k: u32) -> F {
    F::from_ratio(1, 1i64 << k)
}

/// `F(U) = 2^{-n} Σ_A γ_A U γ^A`.
pub fn op_f<F: Field>(set: &GeneratorSet<F>, u: &Multivector<F>) -> Multivector<F> {
    // γ_A U γ^A = γ^A U γ_A because γ_A = ±γ^A.
    conjugation_sum(set, set, u, IndexSet::All).scale(&inv_pow2(u.sig().n()))
}

/// `H(U) = 2^{-n} Σ_A β^A U γ_A`.
pub fn op_h<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>, u: &Multivector<F>) -> Multivector<F> {
    conjugation_sum(beta, gamma, u, IndexSet::All).scale(&inv_pow2(u.sig().n()))
}

/// `P(V) = 2^{-n} Σ_A γ^A V β_A`.
pub fn op_p<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>, v: &Multivector<F>) -> Multivector<F> {
    conjugation_sum(gamma, beta, v, IndexSet::All).scale(&inv_pow2(v.sig().n()))
}

/// `H_Even(U) = 2^{1-n} Σ_{A even} β^A U γ_A`.
pub fn op_h_even<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    u: &Multivector<F>,
) -> Multivector<F> {
    conjugation_sum(beta, gamma, u, IndexSet::Even).scale(&inv_pow2(u.sig().n() - 1))
}

/// `Σ_{A even} β^A U γ_A + c · Σ_{A odd} β^A U γ_A`.
///
/// With `c = β^{1…n} γ_{1…n}` this is the closed form of the intertwiner for
/// each of the odd-dimension cases (`c = ±e, ±e^{1…n}, ±i e^{1…n}`).
pub fn twisted_sum<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
    u: &Multivector<F>,
    c: &Multivector<F>,
) -> Multivector<F> {
    let (even, odd) = conjugation_sum_split(beta, gamma, u);
    &even + &(c * &odd)
}

/// Both double sums `Σ_A Σ_{B∈S} β^A γ^B γ_A γ_B` together with the closed
/// forms they must equal.
#[derive(Debug, Clone)]
pub struct SumIdentities<F: Field> {
    pub even_sum: Multivector<F>,
    pub odd_sum: Multivector<F>,
    pub even_expected: Multivector<F>,
    pub odd_expected: Multivector<F>,
}

impl<F: Field> SumIdentities<F> {
    pub fn holds(&self) -> bool {
        self.even_sum.approx_eq(&self.even_expected) && self.odd_sum.approx_eq(&self.odd_expected)
    }
}

/// `2^{n-1}(e + β^{1…n}γ_{1…n})` for the even sum; the odd sum has a minus
/// sign in even dimension and a plus sign in odd dimension.
pub fn sum_identity_targets<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
) -> (Multivector<F>, Multivector<F>) {
    let sig = gamma.sig();
    let full = sig.volume();
    let ratio = &beta.volume() * &gamma.reciprocal(full);
    let one = ratio.one_like();
    let scale = F::from_i64(1i64 << (sig.n() - 1));
    let even = (&one + &ratio).scale(&scale);
    let odd = if sig.is_odd() { &one + &ratio } else { &one - &ratio }.scale(&scale);
    (even, odd)
}

/// Evaluates the double sums as `Σ_{B∈S} (Σ_A β^A γ^B γ_A) γ_B`.
pub fn sum_identities<F: Field>(gamma: &GeneratorSet<F>, beta: &GeneratorSet<F>) -> SumIdentities<F> {
    let sig = gamma.sig();
    let mut even_sum = Multivector::zero(sig, gamma.kind());
    let mut odd_sum = even_sum.clone();
    for b in sig.blades() {
        let inner = conjugation_sum(beta, gamma, &gamma.blade(b), IndexSet::All);
        let term = &inner * &gamma.reciprocal(b);
        if b.is_even() {
            even_sum = &even_sum + &term;
        } else {
            odd_sum = &odd_sum + &term;
        }
    }
    let (even_expected, odd_expected) = sum_identity_targets(gamma, beta);
    SumIdentities { even_sum, odd_sum, even_expected, odd_expected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::Signature;
    use crate::field::{FieldKind, Rational};
    use crate::generators::SigmaFactor;

    fn canonical(p: u32, q: u32) -> GeneratorSet<Rational> {
        GeneratorSet::canonical(Signature::new(p, q).unwrap(), FieldKind::of::<Rational>())
    }

    fn mv(set: &GeneratorSet<Rational>, terms: &[(&[u32], i64)]) -> Multivector<Rational> {
        Multivector::from_terms(
            set.sig(),
            set.kind(),
            terms.iter().map(|(idx, c)| (Blade::from_indices(idx), Rational::from_i64(*c))),
        )
    }

    #[test]
    fn factored_sum_matches_literal() {
        let g = canonical(2, 1);
        let b = g.sigma_transform(SigmaFactor::Neg).unwrap();
        let u = mv(&g, &[(&[], 1), (&[1], 2), (&[2, 3], -3), (&[1, 2, 3], 5)]);
        for set in [IndexSet::All, IndexSet::Even, IndexSet::Odd] {
            assert_eq!(conjugation_sum(&b, &g, &u, set), conjugation_sum_literal(&b, &g, &u, set));
        }
    }

    #[test]
    fn f_examples() {
        let g = canonical(3, 0);
        assert!(op_f(&g, &mv(&g, &[(&[1], 1)])).is_empty());
        let u = mv(&g, &[(&[], 2), (&[1, 2, 3], 5)]);
        assert_eq!(op_f(&g, &u), u);
        let w = mv(&g, &[(&[], 7), (&[2], 1), (&[1, 3], 4), (&[1, 2, 3], -1)]);
        assert_eq!(op_f(&g, &w), mv(&g, &[(&[], 7), (&[1, 2, 3], -1)]));
        let g2 = canonical(1, 1);
        let w = mv(&g2, &[(&[], 3), (&[1, 2], 4)]);
        assert_eq!(op_f(&g2, &w), mv(&g2, &[(&[], 3)]));
    }

    #[test]
    fn h_of_identity_with_equal_sets() {
        let g = canonical(2, 2);
        let one = Multivector::one(g.sig(), g.kind());
        assert_eq!(op_h(&g, &g, &one), one);
        assert_eq!(op_h_even(&g, &g, &one), one);
    }

    #[test]
    fn sum_identity_small_cases() {
        // n = 2, equal canonical sets: even sum 4e, odd sum 0.
        let g = canonical(2, 0);
        let s = sum_identities(&g, &g);
        assert!(s.holds());
        assert_eq!(s.even_sum, mv(&g, &[(&[], 4)]));
        assert!(s.odd_sum.is_empty());
        // n = 3: both sums 8e.
        let g = canonical(3, 0);
        let s = sum_identities(&g, &g);
        assert!(s.holds());
        assert_eq!(s.even_sum, mv(&g, &[(&[], 8)]));
        assert_eq!(s.odd_sum, mv(&g, &[(&[], 8)]));
    }
}
