//! Scalar fields the algebra can be built over.
//!
//! Three fields are provided: exact rationals for real algebras, exact
//! Gaussian rationals for complex algebras, and `f64` complex numbers for
//! approximate work. Every field exposes the same arithmetic contract through
//! [`Field`]; only [`ComplexFloat`] looks at the tolerance argument.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default zero tolerance for the floating point field.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Which scalar field an algebra is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    RealExact,
    ComplexExact,
    ComplexFloat,
}

impl FieldTag {
    pub fn name(self) -> &'static str {
        match self {
            FieldTag::RealExact => "real-exact",
            FieldTag::ComplexExact => "complex-exact",
            FieldTag::ComplexFloat => "complex-float",
        }
    }

    pub fn is_complex(self) -> bool {
        !matches!(self, FieldTag::RealExact)
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, FieldTag::ComplexFloat)
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real-exact" => Ok(FieldTag::RealExact),
            "complex-exact" => Ok(FieldTag::ComplexExact),
            "complex-float" => Ok(FieldTag::ComplexFloat),
            other => Err(Error::Format(format!("unknown field {other:?}"))),
        }
    }
}

/// A field tag together with the zero tolerance used by the float field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldKind {
    pub tag: FieldTag,
    pub tolerance: f64,
}

impl FieldKind {
    pub fn new(tag: FieldTag, tolerance: f64) -> Self {
        assert!(
            tolerance.is_finite() && tolerance >= 0.0,
            "tolerance must be finite and nonnegative"
        );
        FieldKind { tag, tolerance }
    }

    /// The kind of field `F` with the default tolerance.
    pub fn of<F: Field>() -> Self {
        FieldKind::new(F::TAG, DEFAULT_TOLERANCE)
    }

    /// Tolerance that actually applies to comparisons: always zero for exact fields.
    pub fn effective_tolerance(&self) -> f64 {
        if self.tag.is_exact() {
            0.0
        } else {
            self.tolerance
        }
    }
}

/// Arithmetic contract shared by all scalar fields.
///
/// Operations take references so big-number fields don't clone on every step.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const TAG: FieldTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; panics if `den` is zero.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// The imaginary unit, for complex fields.
    fn imaginary_unit() -> Option<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, rhs: &Self, tol: f64) -> Result<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Field::add(self, rhs);
    }

    /// Solves `m · x = rhs`; see [`crate::linalg::solve`].
    fn solve_system(m: Vec<Vec<Self>>, rhs: Vec<Self>, tol: f64) -> Result<Vec<Self>> {
        crate::linalg::gauss_solve(m, rhs, tol)
    }

    /// Accumulates `out[c] += sign · lhs[i] · rhs[j]` over all pairs, where
    /// `(sign, c) = index(i, j)`. Untouched slots stay `None`.
    fn product_sum(
        lhs: &[&Self],
        rhs: &[&Self],
        index: impl Fn(usize, usize) -> (i8, usize),
        len: usize,
    ) -> Vec<Option<Self>> {
        let mut out: Vec<Option<Self>> = vec![None; len];
        for (i, x) in lhs.iter().enumerate() {
            for (j, y) in rhs.iter().enumerate() {
                let (sign, c) = index(i, j);
                let prod = x.mul(y);
                let prod = if sign < 0 { prod.neg() } else { prod };
                match &mut out[c] {
                    Some(v) => v.add_assign(&prod),
                    slot @ None => *slot = Some(prod),
                }
            }
        }
        out
    }

    /// Exact fields test structurally; the float field compares the modulus with `tol`.
    fn is_zero(&self, tol: f64) -> bool;
    /// Modulus as a float, used for residuals and pivot selection.
    fn modulus(&self) -> f64;

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;

    /// Random scalar with integer parts in `[-bound, bound]` (exact) or uniform
    /// parts in `[-bound, bound]` (float).
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Self;
}

/// Binary scalar operation, for callers that pick the operation at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith<F: Field>(a: &F, b: &F, op: ArithOp, tol: f64) -> Result<F> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.try_div(b, tol)?,
    })
}

pub fn scalar_is_zero<F: Field>(a: &F, kind: FieldKind) -> bool {
    a.is_zero(kind.tolerance)
}

// ---------------------------------------------------------------------------
// text helpers

pub(crate) fn rational_to_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_from_text(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Format(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Format(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn rational_from_json(value: &Value) -> Result<BigRational> {
    match value {
        Value::String(s) => rational_from_text(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Error::Format(format!("expected a rational as text, found {other}"))),
    }
}

/// Splits a scalar value into real and imaginary JSON parts.
fn complex_parts(value: &Value) -> Result<(&Value, Option<&Value>)> {
    match value {
        Value::Object(map) => {
            let re = map
                .get("re")
                .ok_or_else(|| Error::Format("complex scalar is missing \"re\"".into()))?;
            if let Some(key) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(Error::Format(format!("unexpected key {key:?} in complex scalar")));
            }
            Ok((re, map.get("im")))
        }
        other => Ok((other, None)),
    }
}

/// Numerators over the least common denominator of `values`.
fn common_denominator<'a>(values: impl Iterator<Item = &'a BigRational> + Clone) -> (Vec<BigInt>, BigInt) {
    let den = values.clone().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values.map(|v| v.numer() * (&den / v.denom())).collect();
    (nums, den)
}

fn sample_int<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> i64 {
    let b = bound.floor().max(0.0) as i64;
    rng.gen_range(-b..=b)
}

fn rational_modulus(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY).abs()
}

// ---------------------------------------------------------------------------
// Rational

/// Exact rational number, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_to_text(&self.0))
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        rational_from_text(s).map(Rational)
    }
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::RealExact;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn try_div(&self, rhs: &Self, _tol: f64) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }

    // Rows are scaled to integers and eliminated without fractions.
    fn solve_system(m: Vec<Vec<Self>>, rhs: Vec<Self>, _tol: f64) -> Result<Vec<Self>> {
        let mut int_rows = Vec::with_capacity(m.len());
        let mut int_rhs = Vec::with_capacity(m.len());
        for (row, b) in m.iter().zip(&rhs) {
            let (mut nums, _) = common_denominator(row.iter().chain([b]).map(|v| &v.0));
            int_rhs.push(nums.pop().expect("rhs entry"));
            int_rows.push(nums);
        }
        crate::linalg::bareiss_solve(int_rows, int_rhs, |v: &BigInt| Rational(BigRational::from_integer(v.clone())))
    }

    // Works on numerators over a common denominator so only the final sums
    // are reduced.
    fn product_sum(
        lhs: &[&Self],
        rhs: &[&Self],
        index: impl Fn(usize, usize) -> (i8, usize),
        len: usize,
    ) -> Vec<Option<Self>> {
        let (xs, dx) = common_denominator(lhs.iter().map(|v| &v.0));
        let (ys, dy) = common_denominator(rhs.iter().map(|v| &v.0));
        let mut out: Vec<Option<BigInt>> = vec![None; len];
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in ys.iter().enumerate() {
                let (sign, c) = index(i, j);
                let prod = x * y;
                let slot = out[c].get_or_insert_with(BigInt::zero);
                if sign < 0 {
                    *slot -= prod;
                } else {
                    *slot += prod;
                }
            }
        }
        let den = dx * dy;
        out.into_iter()
            .map(|v| v.map(|num| Rational(BigRational::new(num, den.clone()))))
            .collect()
    }

    fn is_zero(&self, _tol: f64) -> bool {
        self.0.is_zero()
    }
    fn modulus(&self) -> f64 {
        rational_modulus(&self.0)
    }

    fn to_json(&self) -> Value {
        Value::String(rational_to_text(&self.0))
    }

    fn from_json(value: &Value) -> Result<Self> {
        let (re, im) = complex_parts(value)?;
        if let Some(im) = im {
            if !rational_from_json(im)?.is_zero() {
                return Err(Error::Format(
                    "nonzero imaginary part in a real-exact algebra".into(),
                ));
            }
        }
        rational_from_json(re).map(Rational)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Self {
        Rational::from_i64(sample_int(rng, bound))
    }
}

// ---------------------------------------------------------------------------
// GaussianRational

/// Exact complex number `re + i·im` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        GaussianRational::from_parts(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&rational_to_text(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rational_to_text(&self.im));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            rational_to_text(&self.re),
            sign,
            rational_to_text(&self.im.abs())
        )
    }
}

impl Field for GaussianRational {
    const TAG: FieldTag = FieldTag::ComplexExact;

    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        GaussianRational::from_parts(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        GaussianRational::from_parts(v, 0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }
    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        // Skip the cross terms for the common purely real case.
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn try_div(&self, rhs: &Self, _tol: f64) -> Result<Self> {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.mul(&rhs.conj());
        Ok(GaussianRational::new(num.re / &norm, num.im / norm))
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }

    fn solve_system(m: Vec<Vec<Self>>, rhs: Vec<Self>, _tol: f64) -> Result<Vec<Self>> {
        use crate::linalg::GaussInt;
        let mut int_rows = Vec::with_capacity(m.len());
        let mut int_rhs = Vec::with_capacity(m.len());
        for (row, b) in m.iter().zip(&rhs) {
            let (nums, _) = common_denominator(row.iter().chain([b]).flat_map(|v| [&v.re, &v.im]));
            let mut entries: Vec<GaussInt> =
                nums.chunks(2).map(|c| GaussInt(c[0].clone(), c[1].clone())).collect();
            int_rhs.push(entries.pop().expect("rhs entry"));
            int_rows.push(entries);
        }
        crate::linalg::bareiss_solve(int_rows, int_rhs, |v: &GaussInt| {
            GaussianRational::new(BigRational::from_integer(v.0.clone()), BigRational::from_integer(v.1.clone()))
        })
    }

    fn product_sum(
        lhs: &[&Self],
        rhs: &[&Self],
        index: impl Fn(usize, usize) -> (i8, usize),
        len: usize,
    ) -> Vec<Option<Self>> {
        let (xs, dx) = common_denominator(lhs.iter().flat_map(|v| [&v.re, &v.im]));
        let (ys, dy) = common_denominator(rhs.iter().flat_map(|v| [&v.re, &v.im]));
        let mut out: Vec<Option<(BigInt, BigInt)>> = vec![None; len];
        for (i, x) in xs.chunks(2).enumerate() {
            for (j, y) in ys.chunks(2).enumerate() {
                let (sign, c) = index(i, j);
                let re = &x[0] * &y[0] - &x[1] * &y[1];
                let im = &x[0] * &y[1] + &x[1] * &y[0];
                let slot = out[c].get_or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                if sign < 0 {
                    slot.0 -= re;
                    slot.1 -= im;
                } else {
                    slot.0 += re;
                    slot.1 += im;
                }
            }
        }
        let den = dx * dy;
        out.into_iter()
            .map(|v| {
                v.map(|(re, im)| {
                    GaussianRational::new(BigRational::new(re, den.clone()), BigRational::new(im, den.clone()))
                })
            })
            .collect()
    }

    fn is_zero(&self, _tol: f64) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn modulus(&self) -> f64 {
        rational_modulus(&self.re).hypot(rational_modulus(&self.im))
    }

    fn to_json(&self) -> Value {
        json!({ "re": rational_to_text(&self.re), "im": rational_to_text(&self.im) })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let (re, im) = complex_parts(value)?;
        let im = match im {
            Some(im) => rational_from_json(im)?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational::new(rational_from_json(re)?, im))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Self {
        let re = sample_int(rng, bound);
        let im = sample_int(rng, bound);
        GaussianRational::from_parts(re, im)
    }
}

// ---------------------------------------------------------------------------
// ComplexFloat

/// Double precision complex number with finite parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFloat(pub Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::Format(format!("non-finite complex value {re}+{im}i")));
        }
        Ok(ComplexFloat(Complex64::new(re, im)))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn float_from_json(value: &Value) -> Result<f64> {
    match value {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::Format(format!("invalid float {n}"))),
        Value::String(s) => {
            if let Ok(v) = s.trim().parse::<f64>() {
                return Ok(v);
            }
            let r = rational_from_text(s)?;
            r.to_f64()
                .ok_or_else(|| Error::Format(format!("rational {s:?} out of float range")))
        }
        other => Err(Error::Format(format!("expected a float as text, found {other}"))),
    }
}

impl Field for ComplexFloat {
    const TAG: FieldTag = FieldTag::ComplexFloat;

    fn zero() -> Self {
        ComplexFloat(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        ComplexFloat(Complex64::new(1.0, 0.0))
    }
    fn from_i64(v: i64) -> Self {
        ComplexFloat(Complex64::new(v as f64, 0.0))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ComplexFloat(Complex64::new(num as f64 / den as f64, 0.0))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(ComplexFloat(Complex64::new(0.0, 1.0)))
    }

    fn add(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 + rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 - rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 * rhs.0)
    }
    fn neg(&self) -> Self {
        ComplexFloat(-self.0)
    }
    fn try_div(&self, rhs: &Self, tol: f64) -> Result<Self> {
        if rhs.0.norm() <= tol || rhs.0.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        ComplexFloat::new((self.0 / rhs.0).re, (self.0 / rhs.0).im)
            .map_err(|_| Error::DivisionByZero)
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.0 += rhs.0;
    }

    fn is_zero(&self, tol: f64) -> bool {
        self.0.norm() <= tol
    }
    fn modulus(&self) -> f64 {
        self.0.norm()
    }

    fn to_json(&self) -> Value {
        json!({ "re": format!("{:?}", self.0.re), "im": format!("{:?}", self.0.im) })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let (re, im) = complex_parts(value)?;
        let im = match im {
            Some(im) => float_from_json(im)?,
            None => 0.0,
        };
        ComplexFloat::new(float_from_json(re)?, im)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Self {
        let re = rng.gen_range(-bound..=bound);
        ComplexFloat(Complex64::new(re, 0.0))
    }
}
