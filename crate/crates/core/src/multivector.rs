//! Sparse multivectors of `Cl(p,q)` and their arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::{blade_product, Blade, Signature};
use crate::field::{Field, FieldKind};

/// An element `U = Σ u_A e^A` stored as a sparse map from multi-index to
/// coefficient. Exactly-zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Multivector<F: Field> {
    sig: Signature,
    kind: FieldKind,
    coeffs: BTreeMap<Blade, F>,
}

impl<F: Field> Multivector<F> {
    pub fn zero(sig: Signature, kind: FieldKind) -> Self {
        debug_assert_eq!(kind.tag, F::TAG);
        Multivector { sig, kind, coeffs: BTreeMap::new() }
    }

    /// Zero element with the default tolerance for `F`.
    pub fn zero_in(sig: Signature) -> Self {
        Multivector::zero(sig, FieldKind::of::<F>())
    }

    pub fn scalar(sig: Signature, kind: FieldKind, value: F) -> Self {
        Multivector::term(sig, kind, Blade::SCALAR, value)
    }

    /// The identity `e`.
    pub fn one(sig: Signature, kind: FieldKind) -> Self {
        Multivector::scalar(sig, kind, F::one())
    }

    /// `value · e^A`.
    pub fn term(sig: Signature, kind: FieldKind, blade: Blade, value: F) -> Self {
        assert!(sig.fits(blade), "{blade} does not fit {sig}");
        let mut mv = Multivector::zero(sig, kind);
        if !value.is_zero(0.0) {
            mv.coeffs.insert(blade, value);
        }
        mv
    }

    /// The basis element `e^A`.
    pub fn blade(sig: Signature, kind: FieldKind, blade: Blade) -> Self {
        Multivector::term(sig, kind, blade, F::one())
    }

    /// The basis vector `e^a` for a 1-based index.
    pub fn generator(sig: Signature, kind: FieldKind, a: u32) -> Self {
        Multivector::blade(sig, kind, Blade::from_indices(&[a]))
    }

    /// The volume element `e^{1…n}`.
    pub fn volume(sig: Signature, kind: FieldKind) -> Self {
        Multivector::blade(sig, kind, sig.volume())
    }

    /// Builds a multivector from terms; repeated blades are summed.
    pub fn from_terms(
        sig: Signature,
        kind: FieldKind,
        terms: impl IntoIterator<Item = (Blade, F)>,
    ) -> Self {
        let mut mv = Multivector::zero(sig, kind);
        for (blade, value) in terms {
            assert!(sig.fits(blade), "{blade} does not fit {sig}");
            mv.add_term(blade, &value);
        }
        mv
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.kind.tolerance
    }

    /// Same element with a different float tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.kind = FieldKind::new(self.kind.tag, tolerance);
        self
    }

    /// Zero element of the same algebra.
    pub fn zero_like(&self) -> Self {
        Multivector::zero(self.sig, self.kind)
    }

    pub fn one_like(&self) -> Self {
        Multivector::one(self.sig, self.kind)
    }

    pub fn scalar_like(&self, value: F) -> Self {
        Multivector::scalar(self.sig, self.kind, value)
    }

    pub fn blade_like(&self, blade: Blade) -> Self {
        Multivector::blade(self.sig, self.kind, blade)
    }

    /// Terms in canonical blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &F)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Blade> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e^A` (zero if absent).
    pub fn coeff(&self, blade: Blade) -> F {
        self.coeffs.get(&blade).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, blade: Blade, value: &F) {
        match self.coeffs.get_mut(&blade) {
            Some(c) => {
                c.add_assign(value);
                if c.is_zero(0.0) {
                    self.coeffs.remove(&blade);
                }
            }
            None => {
                if !value.is_zero(0.0) {
                    self.coeffs.insert(blade, value.clone());
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.sig, other.sig, "multivectors from different algebras");
    }

    /// `s · U`.
    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero(0.0) {
            return self.zero_like();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(b, c)| (*b, c.mul(s)))
            .filter(|(_, c)| !c.is_zero(0.0))
            .collect();
        Multivector { sig: self.sig, kind: self.kind, coeffs }
    }

    /// Clifford product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if self.is_empty() || other.is_empty() {
            return self.zero_like();
        }
        let (lb, lv): (Vec<Blade>, Vec<&F>) = self.coeffs.iter().map(|(b, v)| (*b, v)).unzip();
        let (rb, rv): (Vec<Blade>, Vec<&F>) = other.coeffs.iter().map(|(b, v)| (*b, v)).unzip();
        let sig = self.sig;
        let acc = F::product_sum(
            &lv,
            &rv,
            |i, j| {
                let (sign, c) = blade_product(lb[i], rb[j], sig);
                (sign, c.0 as usize)
            },
            sig.dim(),
        );
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.filter(|v| !v.is_zero(0.0)).map(|v| (Blade(i as u32), v)))
            .collect();
        Multivector { sig: self.sig, kind: self.kind, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(b, c)| (*b, c.neg())).collect();
        Multivector { sig: self.sig, kind: self.kind, coeffs }
    }

    /// Keeps the terms whose multi-index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(Blade) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(b, _)| keep(**b))
            .map(|(b, c)| (*b, c.clone()))
            .collect();
        Multivector { sig: self.sig, kind: self.kind, coeffs }
    }

    /// Rank-`k` part `⟨U⟩_k`.
    pub fn grade_project(&self, k: u32) -> Self {
        assert!(k <= self.sig.n(), "rank {k} exceeds dimension");
        self.filter(|b| b.grade() == k)
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> F {
        self.coeff(Blade::SCALAR)
    }

    /// Coefficient of the volume element.
    pub fn pi(&self) -> F {
        self.coeff(self.sig.volume())
    }

    /// Splits into even and odd parts.
    pub fn parity_split(&self) -> (Self, Self) {
        (self.filter(|b| b.is_even()), self.filter(|b| !b.is_even()))
    }

    /// Max-norm of the coefficient vector.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.values().map(F::modulus).fold(0.0, f64::max)
    }

    /// Zero up to the algebra's tolerance (structural for exact fields).
    pub fn is_zero(&self) -> bool {
        let tol = self.kind.tolerance;
        self.coeffs.values().all(|c| c.is_zero(tol))
    }

    /// Equality up to the algebra's tolerance, componentwise.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Max-norm distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_norm()
    }

    /// Whether `U` commutes with every basis vector `e^a`.
    pub fn is_central(&self) -> bool {
        (1..=self.sig.n()).all(|a| {
            let g = Multivector::generator(self.sig, self.kind, a);
            (&g * self).approx_eq(&(self * &g))
        })
    }

    /// First coefficient (in canonical order) that is nonzero within tolerance.
    pub fn leading(&self) -> Option<(Blade, &F)> {
        let tol = self.kind.tolerance;
        self.coeffs.iter().find(|(_, c)| !c.is_zero(tol)).map(|(b, c)| (*b, c))
    }

    /// Rescales so the leading coefficient is one. Returns `None` for zero.
    pub fn normalized(&self) -> Option<Self> {
        let (_, lead) = self.leading()?;
        let inv = F::one().try_div(lead, self.kind.tolerance).ok()?;
        Some(self.scale(&inv))
    }

    /// Applies `f` coefficientwise; used to move between fields.
    pub fn map_field<G: Field>(&self, kind: FieldKind, mut f: impl FnMut(&F) -> G) -> Multivector<G> {
        let mut out = Multivector::zero(self.sig, kind);
        for (b, c) in &self.coeffs {
            out.add_term(*b, &f(c));
        }
        out
    }
}

impl<F: Field> fmt::Debug for Multivector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Multivector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){b}")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, F: Field> $trait<&'a Multivector<F>> for &'a Multivector<F> {
            type Output = Multivector<F>;
            fn $method(self, rhs: &'a Multivector<F>) -> Multivector<F> {
                Multivector::$method(self, rhs)
            }
        }
        impl<F: Field> $trait<Multivector<F>> for Multivector<F> {
            type Output = Multivector<F>;
            fn $method(self, rhs: Multivector<F>) -> Multivector<F> {
                Multivector::$method(&self, &rhs)
            }
        }
        impl<'a, F: Field> $trait<&'a Multivector<F>> for Multivector<F> {
            type Output = Multivector<F>;
            fn $method(self, rhs: &'a Multivector<F>) -> Multivector<F> {
                Multivector::$method(&self, rhs)
            }
        }
        impl<'a, F: Field> $trait<Multivector<F>> for &'a Multivector<F> {
            type Output = Multivector<F>;
            fn $method(self, rhs: Multivector<F>) -> Multivector<F> {
                Multivector::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<F: Field> Neg for &Multivector<F> {
    type Output = Multivector<F>;
    fn neg(self) -> Multivector<F> {
        Multivector::neg(self)
    }
}

impl<F: Field> Neg for Multivector<F> {
    type Output = Multivector<F>;
    fn neg(self) -> Multivector<F> {
        Multivector::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ComplexFloat, GaussianRational, Rational};

    type Mv = Multivector<Rational>;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn k() -> FieldKind {
        FieldKind::of::<Rational>()
    }

    fn e(s: Signature, idx: &[u32]) -> Mv {
        Mv::blade(s, k(), Blade::from_indices(idx))
    }

    #[test]
    fn product_examples() {
        let s = sig(2, 0);
        let u = &e(s, &[1]) + &e(s, &[2]);
        let v = &e(s, &[1]) - &e(s, &[2]);
        assert_eq!(&u * &v, e(s, &[1, 2]).scale(&Rational::from_i64(-2)));
        assert_eq!(&e(s, &[1, 2]) * &e(s, &[1, 2]), -Mv::one(s, k()));
        let w = &u + &e(s, &[1, 2]);
        assert_eq!(&Mv::one(s, k()) * &w, w);
    }

    #[test]
    fn linear_examples() {
        let s = sig(2, 0);
        assert_eq!(&e(s, &[1]) + &e(s, &[1]), e(s, &[1]).scale(&Rational::from_i64(2)));
        let u = &e(s, &[1]) + &e(s, &[1, 2]);
        let z = &u - &u;
        assert!(z.is_empty());
        assert_eq!(z.len(), 0);
        let half = e(s, &[1, 2]).scale(&Rational::new(1, 2));
        assert_eq!(half.coeff(Blade::from_indices(&[1, 2])), Rational::new(1, 2));
    }

    #[test]
    fn projections() {
        let s = sig(2, 0);
        let u = &(&Mv::one(s, k()) + &e(s, &[1])) + &e(s, &[1, 2]);
        assert_eq!(u.grade_project(1), e(s, &[1]));
        assert!(e(s, &[1, 2]).grade_project(1).is_empty());
        let sum = (0..=2).fold(u.zero_like(), |acc, g| &acc + &u.grade_project(g));
        assert_eq!(sum, u);

        let t = &Mv::one(s, k()).scale(&Rational::from_i64(3)) + &e(s, &[1]);
        assert_eq!(t.trace(), Rational::from_i64(3));
        assert_eq!(e(s, &[1, 2]).trace(), Rational::zero());
        assert_eq!(e(s, &[1, 2]).pi(), Rational::one());
        assert_eq!(Mv::one(s, k()).pi(), Rational::zero());

        let (ev, od) = (&Mv::one(s, k()) + &e(s, &[1])).parity_split();
        assert_eq!(ev, Mv::one(s, k()));
        assert_eq!(od, e(s, &[1]));
        let (ev, od) = e(s, &[1, 2]).parity_split();
        assert_eq!(ev, e(s, &[1, 2]));
        assert!(od.is_empty());
    }

    #[test]
    fn centrality() {
        for n in 1..=6u32 {
            let s = sig(n, 0);
            assert!(Mv::one(s, k()).is_central());
            assert_eq!(Mv::volume(s, k()).is_central(), n % 2 == 1 || n == 0);
            if n >= 2 {
                assert!(!e(s, &[1]).is_central());
            }
            for b in s.blades() {
                let structural = b == Blade::SCALAR || (n % 2 == 1 && b == s.volume());
                assert_eq!(Mv::blade(s, k(), b).is_central(), structural, "{b} in {s}");
            }
        }
    }

    #[test]
    fn normalization() {
        let s = sig(2, 0);
        let u = &e(s, &[1]).scale(&Rational::from_i64(4)) + &e(s, &[1, 2]).scale(&Rational::from_i64(2));
        let nu = u.normalized().unwrap();
        assert_eq!(nu.coeff(Blade::from_indices(&[1])), Rational::one());
        assert_eq!(nu.coeff(Blade::from_indices(&[1, 2])), Rational::new(1, 2));
        assert!(u.zero_like().normalized().is_none());
    }

    #[test]
    fn float_tolerance() {
        let s = sig(1, 0);
        let kind = FieldKind::of::<ComplexFloat>();
        let tiny = Multivector::term(s, kind, Blade::SCALAR, ComplexFloat::new(1e-12, 0.0).unwrap());
        assert!(tiny.is_zero());
        assert!(!tiny.is_empty());
        let strict = tiny.clone().with_tolerance(0.0);
        assert!(!strict.is_zero());
    }

    #[test]
    fn complex_scalars() {
        let s = sig(1, 0);
        let kind = FieldKind::of::<GaussianRational>();
        let i = Multivector::scalar(s, kind, GaussianRational::i());
        assert_eq!(&i * &i, -Multivector::one(s, kind));
    }
}
