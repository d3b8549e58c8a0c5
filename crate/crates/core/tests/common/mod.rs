//! Slow, independent reference implementations used to cross-check the
//! library. None of these call the code paths they are compared against.

#![allow(dead_code)]

use cliffpauli_core::prelude::*;

/// `e^{a_1}…e^{a_k} · e^{b_1}…e^{b_m}` by bubble-sorting the concatenated
/// word: each swap of distinct neighbours flips the sign, each equal pair
/// contracts to `η^{aa}`.
pub fn transposition_product(a: &[u32], b: &[u32], sig: Signature) -> (i8, Vec<u32>) {
    let mut word: Vec<u32> = a.iter().chain(b).copied().collect();
    let mut sign = 1i8;
    let mut i = 0;
    while i + 1 < word.len() {
        if word[i] > word[i + 1] {
            word.swap(i, i + 1);
            sign = -sign;
            i = i.saturating_sub(1);
        } else if word[i] == word[i + 1] {
            let a = word[i];
            if a > sig.p() {
                sign = -sign;
            }
            word.drain(i..i + 2);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    (sign, word)
}

/// Multivector product through [`transposition_product`].
pub fn oracle_mul<F: Field>(u: &Multivector<F>, v: &Multivector<F>) -> Multivector<F> {
    let sig = u.sig();
    let mut terms = Vec::new();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let (sign, word) = transposition_product(&a.indices(), &b.indices(), sig);
            let c = x.mul(y);
            terms.push((Blade::from_indices(&word), if sign < 0 { c.neg() } else { c }));
        }
    }
    // from_terms sums repeated blades.
    Multivector::from_terms(sig, u.kind(), terms)
}

/// `γ^{a_1} ⋯ γ^{a_k}` multiplied out with the oracle product.
pub fn literal_blade<F: Field>(set: &GeneratorSet<F>, a: Blade) -> Multivector<F> {
    a.indices()
        .into_iter()
        .fold(Multivector::one(set.sig(), set.kind()), |acc, i| oracle_mul(&acc, set.generator(i)))
}

/// `γ_A = γ_{a_k} ⋯ γ_{a_1}` with lowered indices `γ_a = η_{aa} γ^a`.
pub fn literal_reciprocal<F: Field>(set: &GeneratorSet<F>, a: Blade) -> Multivector<F> {
    let sig = set.sig();
    a.indices().into_iter().rev().fold(Multivector::one(sig, set.kind()), |acc, i| {
        let eta = if i <= sig.p() { 1 } else { -1 };
        oracle_mul(&acc, &set.generator(i).scale(&F::from_i64(eta)))
    })
}

/// `Σ_{A} Σ_{B even}` and `Σ_A Σ_{B odd}` of `β^A γ^B γ_A γ_B`, term by term.
pub fn literal_double_sums<F: Field>(
    gamma: &GeneratorSet<F>,
    beta: &GeneratorSet<F>,
) -> (Multivector<F>, Multivector<F>) {
    let sig = gamma.sig();
    let mut even = Multivector::zero(sig, gamma.kind());
    let mut odd = even.clone();
    let blades: Vec<Blade> = sig.blades().collect();
    let lit_beta: Vec<_> = blades.iter().map(|&a| literal_blade(beta, a)).collect();
    let lit_gamma: Vec<_> = blades.iter().map(|&a| literal_blade(gamma, a)).collect();
    let lit_recip: Vec<_> = blades.iter().map(|&a| literal_reciprocal(gamma, a)).collect();
    for (i, _) in blades.iter().enumerate() {
        for (j, b) in blades.iter().enumerate() {
            let term = oracle_mul(&oracle_mul(&oracle_mul(&lit_beta[i], &lit_gamma[j]), &lit_recip[i]), &lit_recip[j]);
            if b.is_even() {
                even = &even + &term;
            } else {
                odd = &odd + &term;
            }
        }
    }
    (even, odd)
}

/// `2^{-n} Σ_A λ^A U ρ_A` term by term.
pub fn literal_average<F: Field>(left: &GeneratorSet<F>, right: &GeneratorSet<F>, u: &Multivector<F>) -> Multivector<F> {
    let sig = u.sig();
    let total = sig.blades().fold(u.zero_like(), |acc, a| {
        &acc + &oracle_mul(&oracle_mul(&literal_blade(left, a), u), &literal_reciprocal(right, a))
    });
    total.scale(&F::from_ratio(1, 1 << sig.n()))
}

/// Gauss–Jordan elimination with full row reduction; `None` if singular.
#[allow(clippy::needless_range_loop)]
pub fn gauss_jordan<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>) -> Option<Vec<F>> {
    let size = rhs.len();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero(0.0))?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = F::one().try_div(&m[col][col], 0.0).ok()?;
        for c in 0..size {
            m[col][c] = m[col][c].mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..size {
            if r != col && !m[r][col].is_zero(0.0) {
                let f = m[r][col].clone();
                for c in 0..size {
                    m[r][c] = m[r][c].sub(&f.mul(&m[col][c]));
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[col]));
            }
        }
    }
    Some(rhs)
}

/// Inverse by solving `u x = e` over the full basis with oracle products.
pub fn oracle_inverse<F: Field>(u: &Multivector<F>) -> Option<Multivector<F>> {
    let sig = u.sig();
    let blades: Vec<Blade> = sig.blades().collect();
    let mut m = vec![vec![F::zero(); blades.len()]; blades.len()];
    for (col, &b) in blades.iter().enumerate() {
        let image = oracle_mul(u, &Multivector::blade(sig, u.kind(), b));
        for (row, &r) in blades.iter().enumerate() {
            m[row][col] = image.coeff(r);
        }
    }
    let mut rhs = vec![F::zero(); blades.len()];
    rhs[0] = F::one();
    let x = gauss_jordan(m, rhs)?;
    Some(Multivector::from_terms(sig, u.kind(), blades.into_iter().zip(x)))
}

/// Every signature with `lo <= n <= hi`.
pub fn signatures(lo: u32, hi: u32) -> Vec<Signature> {
    (lo..=hi)
        .flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap()))
        .collect()
}

/// Small deterministic element: coefficient `((i·k + 1) mod 7) - 3` on blade `i`.
pub fn patterned<F: Field>(sig: Signature, k: i64) -> Multivector<F> {
    let kind = FieldKind::of::<F>();
    Multivector::from_terms(
        sig,
        kind,
        sig.blades().enumerate().map(|(i, b)| (b, F::from_i64((i as i64 * k + 1).rem_euclid(7) - 3))),
    )
}

/// `β^a = S e^a S^{-1}` for a seeded random invertible `S`.
pub fn conjugated<F: Field>(sig: Signature, seed: u64) -> (GeneratorSet<F>, Multivector<F>) {
    let spec = cliffpauli_core::instance::GenSpec::new(sig, seed);
    let inst = cliffpauli_core::instance::generate::<F>(&spec, FieldKind::of::<F>()).unwrap();
    (inst.beta, inst.s)
}
