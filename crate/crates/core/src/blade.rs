//! Signatures, multi-indices and the basis blade product.
//!
//! A multi-index `A ⊆ {1..n}` is stored as a bit mask with bit `a-1` set iff
//! `a ∈ A`. The ascending bit scan gives the ordered index list, so the
//! product of two basis blades is an xor plus a sign.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported dimension `n = p + q`.
pub const MAX_DIM: u32 = 12;

/// Metric signature `(p, q)`: `p` generators square to `+e`, `q` to `-e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u32,
    q: u32,
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        let n = p + q;
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange { p, q, max: MAX_DIM });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.p + self.q
    }

    /// Number of basis blades, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn is_odd(&self) -> bool {
        self.n() % 2 == 1
    }

    /// `p - q mod 4`, in `0..4`.
    pub fn p_minus_q_mod4(&self) -> u32 {
        (self.p as i64 - self.q as i64).rem_euclid(4) as u32
    }

    /// Diagonal metric entry for the 1-based index `a`.
    pub fn eta(&self, a: u32) -> i8 {
        debug_assert!(a >= 1 && a <= self.n());
        if a <= self.p {
            1
        } else {
            -1
        }
    }

    /// Bits of the generators that square to `-e`.
    fn negative_mask(&self) -> u32 {
        ((1u32 << self.n()) - 1) & !((1u32 << self.p) - 1)
    }

    pub fn volume(&self) -> Blade {
        Blade((1 << self.n()) - 1)
    }

    pub fn fits(&self, blade: Blade) -> bool {
        blade.0 >> self.n() == 0
    }

    /// All multi-indices in canonical order.
    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        let mut all: Vec<Blade> = (0..self.dim() as u32).map(Blade).collect();
        all.sort();
        all.into_iter()
    }

    /// Even-length multi-indices in canonical order.
    pub fn even_blades(&self) -> impl Iterator<Item = Blade> {
        self.blades().filter(|b| b.is_even())
    }

    /// Odd-length multi-indices in canonical order.
    pub fn odd_blades(&self) -> impl Iterator<Item = Blade> {
        self.blades().filter(|b| !b.is_even())
    }

    /// Sign `s` with `e^A e^A = s·e`.
    pub fn blade_square_sign(&self, a: Blade) -> i8 {
        blade_product(a, a, *self).0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// Ordered multi-index, the label of a basis blade `e^A`.
///
/// Ordering is canonical: by length first, then lexicographically on the
/// ascending index tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Builds a multi-index from 1-based indices in any order.
    pub fn from_indices(indices: &[u32]) -> Blade {
        Blade(indices.iter().fold(0, |acc, &a| {
            debug_assert!(a >= 1);
            acc | 1 << (a - 1)
        }))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Length `|A|`.
    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }

    pub fn contains(self, a: u32) -> bool {
        a >= 1 && self.0 & (1 << (a - 1)) != 0
    }

    /// Ascending 1-based index list.
    pub fn indices(self) -> Vec<u32> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }

    /// Text key: comma separated ascending indices, empty for the identity.
    pub fn key(self) -> String {
        self.indices()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a blade key, requiring strictly ascending indices in `1..=n`.
    pub fn parse_key(key: &str, n: u32) -> Result<Blade> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Blade::SCALAR);
        }
        let mut bits = 0u32;
        let mut last = 0u32;
        for part in key.split(',') {
            let a: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("invalid blade key {key:?}")))?;
            if a == 0 || a > n {
                return Err(Error::Format(format!(
                    "blade key {key:?}: index {a} outside 1..={n}"
                )));
            }
            if a <= last {
                return Err(Error::Format(format!(
                    "blade key {key:?}: indices must be strictly ascending"
                )));
            }
            last = a;
            bits |= 1 << (a - 1);
        }
        Ok(Blade(bits))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The smallest differing index belongs to self.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            f.write_str("e")
        } else {
            let idx: String = self.indices().iter().map(|i| i.to_string()).collect();
            write!(f, "e{idx}")
        }
    }
}

impl FromStr for Blade {
    type Err = Error;

    /// Parses a key without a dimension bound (indices up to [`MAX_DIM`]).
    fn from_str(s: &str) -> Result<Self> {
        Blade::parse_key(s, MAX_DIM)
    }
}

/// Parity of the number of transpositions needed to bring `e^A e^B` into
/// ascending order: for each `b ∈ B`, count the indices of `A` above `b`.
#[inline]
pub fn reorder_parity(a: Blade, b: Blade) -> u32 {
    let mut rest = b.0;
    let mut count = 0;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        count += (a.0 >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    count & 1
}

/// `e^A e^B = sign · e^C` with `C = A xor B`.
#[inline]
pub fn blade_product(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let negatives = (a.0 & b.0 & sig.negative_mask()).count_ones();
    let parity = (reorder_parity(a, b) + negatives) & 1;
    (if parity == 0 { 1 } else { -1 }, Blade(a.0 ^ b.0))
}

/// Whether `e^A` and `e^B` commute; otherwise they anticommute.
///
/// `e^A e^B = (-1)^{|A||B| - |A∩B|} e^B e^A`.
#[inline]
pub fn blades_commute(a: Blade, b: Blade) -> bool {
    (a.grade() * b.grade() + (a.0 & b.0).count_ones()).is_multiple_of(2)
}
