//! Dense linear solves over a [`Field`], and general multivector inversion
//! through the left-regular representation.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::blade::{blade_product, Blade};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multivector::Multivector;

/// Solves `m · x = rhs`, using the field's preferred elimination.
pub fn solve<F: Field>(m: Vec<Vec<F>>, rhs: Vec<F>, tol: f64) -> Result<Vec<F>> {
    assert!(m.len() == rhs.len() && m.iter().all(|row| row.len() == rhs.len()));
    F::solve_system(m, rhs, tol)
}

/// Gaussian elimination directly in the field.
///
/// Exact fields pivot on the first nonzero entry; the float field uses
/// partial pivoting and treats pivots at or below `tol` as singular.
pub fn gauss_solve<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>, tol: f64) -> Result<Vec<F>> {
    let size = rhs.len();
    assert!(m.len() == size && m.iter().all(|row| row.len() == size));
    let exact = F::TAG.is_exact();

    for col in 0..size {
        let pivot = if exact {
            (col..size).find(|&r| !m[r][col].is_zero(0.0))
        } else {
            (col..size)
                .max_by(|&a, &b| m[a][col].modulus().total_cmp(&m[b][col].modulus()))
                .filter(|&r| !m[r][col].is_zero(tol))
        };
        let pivot = pivot.ok_or(Error::NotInvertible)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);

        let inv = F::one().try_div(&m[col][col], tol).map_err(|_| Error::NotInvertible)?;
        for r in col + 1..size {
            if m[r][col].is_zero(0.0) {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[col];
            for (c, entry) in bottom[0].iter_mut().enumerate().skip(col) {
                if !pivot_row[c].is_zero(0.0) {
                    *entry = entry.sub(&factor.mul(&pivot_row[c]));
                }
            }
            rhs[r] = rhs[r].sub(&factor.mul(&rhs[col]));
        }
    }

    let mut x = vec![F::zero(); size];
    for row in (0..size).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..size {
            if !m[row][c].is_zero(0.0) {
                acc = acc.sub(&m[row][c].mul(&x[c]));
            }
        }
        x[row] = acc.try_div(&m[row][row], tol).map_err(|_| Error::NotInvertible)?;
    }
    Ok(x)
}

/// Integral domain with exact division, for fraction-free elimination.
pub(crate) trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// `self / rhs`, known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Gaussian integer `re + i·im`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct GaussInt(pub BigInt, pub BigInt);

impl Domain for GaussInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0) && Zero::is_zero(&self.1)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussInt(&self.0 * &rhs.0 - &self.1 * &rhs.1, &self.0 * &rhs.1 + &self.1 * &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussInt(&self.0 - &rhs.0, &self.1 - &rhs.1)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let norm = &rhs.0 * &rhs.0 + &rhs.1 * &rhs.1;
        let re = &self.0 * &rhs.0 + &self.1 * &rhs.1;
        let im = &self.1 * &rhs.0 - &self.0 * &rhs.1;
        GaussInt(re / &norm, im / norm)
    }
}

/// Bareiss elimination over `D` followed by back substitution in `F`.
pub(crate) fn bareiss_solve<D: Domain, F: Field>(
    mut m: Vec<Vec<D>>,
    mut rhs: Vec<D>,
    lift: impl Fn(&D) -> F,
) -> Result<Vec<F>> {
    let size = rhs.len();
    let mut prev: Option<D> = None;
    for k in 0..size {
        let pivot = (k..size).find(|&r| !m[r][k].is_zero()).ok_or(Error::NotInvertible)?;
        m.swap(k, pivot);
        rhs.swap(k, pivot);
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let akk = &pivot_row[k];
        for (offset, row) in bottom.iter_mut().enumerate() {
            let i = k + 1 + offset;
            let aik = row[k].clone();
            let step = |x: &D, y: &D| {
                let v = akk.mul(x).sub(&aik.mul(y));
                match &prev {
                    Some(p) => v.div_exact(p),
                    None => v,
                }
            };
            for j in k + 1..size {
                row[j] = step(&row[j], &pivot_row[j]);
            }
            rhs[i] = step(&rhs[i], &rhs[k]);
            row[k] = aik.sub(&aik);
        }
        prev = Some(akk.clone());
    }

    // The last pivot is ±det, so y = det · x is integral and every division
    // below is exact.
    let det = m[size - 1][size - 1].clone();
    let mut y: Vec<D> = Vec::with_capacity(size);
    for row in (0..size).rev() {
        let mut acc = det.mul(&rhs[row]);
        for (c, yc) in (row + 1..size).rev().zip(&y) {
            if !m[row][c].is_zero() {
                acc = acc.sub(&m[row][c].mul(yc));
            }
        }
        y.push(acc.div_exact(&m[row][row]));
    }
    let det = lift(&det);
    y.iter()
        .rev()
        .map(|v| lift(v).try_div(&det, 0.0).map_err(|_| Error::NotInvertible))
        .collect()
}

/// Matrix of left multiplication by `u`: column `B` holds the coefficients of `u·e^B`.
#[allow(clippy::needless_range_loop)]
pub fn left_regular_matrix<F: Field>(u: &Multivector<F>) -> Vec<Vec<F>> {
    let sig = u.sig();
    let dim = sig.dim();
    let mut m = vec![vec![F::zero(); dim]; dim];
    for col in 0..dim {
        for (a, c) in u.terms() {
            let (sign, row) = blade_product(a, Blade(col as u32), sig);
            m[row.0 as usize][col] = if sign < 0 { c.neg() } else { c.clone() };
        }
    }
    m
}

/// Inverse through the left-regular representation: solves `u·x = e`.
pub fn regular_inverse<F: Field>(u: &Multivector<F>) -> Result<Multivector<F>> {
    let sig = u.sig();
    let mut rhs = vec![F::zero(); sig.dim()];
    rhs[0] = F::one();
    let x = solve(left_regular_matrix(u), rhs, u.tolerance())?;
    Ok(Multivector::from_terms(
        sig,
        u.kind(),
        x.into_iter().enumerate().map(|(i, c)| (Blade(i as u32), c)),
    ))
}

/// Inverse from the characteristic polynomial of `u` in a faithful matrix
/// representation of size `N = 2^⌈n/2⌉`, whose trace is `N·Tr(u)`
/// (Faddeev–LeVerrier written inside the algebra):
///
/// `U_1 = u`, `C_k = (N/k) Tr(U_k)`, `U_k = u (U_{k-1} - C_{k-1} e)`,
/// and `U_N` is the scalar with `u (U_{N-1} - C_{N-1} e) = U_N`.
pub fn char_poly_inverse<F: Field>(u: &Multivector<F>) -> Result<Multivector<F>> {
    let size = 1i64 << u.sig().n().div_ceil(2);
    let tol = u.tolerance();
    let mut v = u.clone();
    let mut prev = u.one_like();
    for k in 1..size {
        let c = F::from_ratio(size, k).mul(&v.trace());
        prev = &v - &u.scalar_like(c);
        v = u * &prev;
    }
    let det = v.trace();
    if det.is_zero(tol) || !v.filter(|b| b != Blade::SCALAR).is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv_det = F::one().try_div(&det, tol).map_err(|_| Error::NotInvertible)?;
    Ok(prev.scale(&inv_det))
}

/// General inverse, checked on both sides.
///
/// Exact fields use [`char_poly_inverse`]; the float field solves the
/// regular-representation system with partial pivoting, which is the
/// numerically stable route.
pub fn mv_inverse<F: Field>(u: &Multivector<F>) -> Result<Multivector<F>> {
    if u.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv = if F::TAG.is_exact() { char_poly_inverse(u)? } else { regular_inverse(u)? };
    let one = u.one_like();
    if (u * &inv).approx_eq(&one) && (&inv * u).approx_eq(&one) {
        Ok(inv)
    } else {
        Err(Error::NotInvertible)
    }
}

/// Whether `u` has a two-sided inverse.
pub fn is_invertible<F: Field>(u: &Multivector<F>) -> bool {
    mv_inverse(u).is_ok()
}
