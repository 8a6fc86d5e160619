//! Dense square matrices over an abstract coefficient ring.
//!
//! Rings are passed as context objects (the same pattern as exact linear
//! algebra libraries use): elements alone are plain data, all arithmetic is
//! mediated by a [`Ring`] implementation. This is what lets one matrix type
//! serve `R[t,t^-1]`, the truncated adic ring, `S(q)[t,t^-1]`, `S(q)` and
//! plain integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Debug;

use crate::laurent::LaurentPoly;
use crate::{CoreError, Result};

/// Commutative ring with decidable equality, presented as a context object.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    /// Whether two ring handles describe the same ring (rank, truncation,
    /// quotient structure). Mixing contexts is a caller bug surfaced as an
    /// error by the matrix layer.
    fn same_context(&self, other: &Self) -> bool;

    /// Short human-readable description, used in error messages.
    fn describe(&self) -> String;
}

/// The Laurent polynomial ring of a fixed rank (with its `t` slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub rank: usize,
}

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.rank)
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.rank)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.sub(b)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn same_context(&self, other: &Self) -> bool {
        self.rank == other.rank
    }
    fn describe(&self) -> String {
        format!("Z[x1..x{},t] Laurent", self.rank)
    }
}

/// Plain integers; the target of full specializations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn same_context(&self, _other: &Self) -> bool {
        true
    }
    fn describe(&self) -> String {
        "Z".to_string()
    }
}

/// Square matrix with entries in some ring, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix<E> {
    dim: usize,
    entries: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let dim = rows.len();
        for r in &rows {
            assert_eq!(r.len(), dim, "matrix must be square");
        }
        Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn map<F, U: Clone + PartialEq + Debug>(&self, f: F) -> Matrix<U>
    where
        F: FnMut(&E) -> U,
    {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<F, U: Clone + PartialEq + Debug>(&self, mut f: F) -> Result<Matrix<U>>
    where
        F: FnMut(&E) -> Result<U>,
    {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(Matrix {
            dim: self.dim,
            entries,
        })
    }
}

/// Matrix algebra over a ring context.
pub struct MatrixOps<'r, R: Ring> {
    pub ring: &'r R,
}

impl<'r, R: Ring> MatrixOps<'r, R> {
    pub fn new(ring: &'r R) -> Self {
        MatrixOps { ring }
    }

    pub fn identity(&self, dim: usize) -> Matrix<R::Elem> {
        Matrix::from_fn(dim, |i, j| {
            if i == j {
                self.ring.one()
            } else {
                self.ring.zero()
            }
        })
    }

    pub fn zero(&self, dim: usize) -> Matrix<R::Elem> {
        Matrix::from_fn(dim, |_, _| self.ring.zero())
    }

    fn check_dims(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<()> {
        if a.dim != b.dim {
            return Err(CoreError::DimensionMismatch(a.dim, b.dim));
        }
        Ok(())
    }

    pub fn add(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        self.check_dims(a, b)?;
        Ok(Matrix {
            dim: a.dim,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.ring.add(x, y))
                .collect(),
        })
    }

    pub fn sub(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        self.check_dims(a, b)?;
        Ok(Matrix {
            dim: a.dim,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.ring.sub(x, y))
                .collect(),
        })
    }

    pub fn mul(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        self.check_dims(a, b)?;
        let dim = a.dim;
        Ok(Matrix::from_fn(dim, |i, j| {
            let mut acc = self.ring.zero();
            for m in 0..dim {
                let prod = self.ring.mul(a.at(i, m), b.at(m, j));
                acc = self.ring.add(&acc, &prod);
            }
            acc
        }))
    }

    pub fn scale(&self, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        a.map(|e| self.ring.mul(c, e))
    }

    pub fn eq(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<bool> {
        self.check_dims(a, b)?;
        Ok(a
            .entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| self.ring.eq(x, y)))
    }

    pub fn is_identity(&self, a: &Matrix<R::Elem>) -> bool {
        for i in 0..a.dim {
            for j in 0..a.dim {
                let e = a.at(i, j);
                let expected = if i == j { self.ring.one() } else { self.ring.zero() };
                if !self.ring.eq(e, &expected) {
                    return false;
                }
            }
        }
        true
    }

    /// `a^n` for `n >= 0` by binary powering.
    pub fn pow(&self, a: &Matrix<R::Elem>, n: u64) -> Result<Matrix<R::Elem>> {
        let mut result = self.identity(a.dim);
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }
}

/// Render a matrix of displayable entries as `[[a, b], [c, d]]`.
pub fn format_matrix<E>(m: &Matrix<E>) -> String
where
    E: std::fmt::Display + Clone + PartialEq + Debug,
{
    let mut rows = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        let cells: Vec<String> = (0..m.dim()).map(|j| m.at(i, j).to_string()).collect();
        rows.push(format!("[{}]", cells.join(", ")));
    }
    format!("[{}]", rows.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let ring = LaurentRing { rank: 2 };
        let ops = MatrixOps::new(&ring);
        let a = Matrix::from_rows(vec![
            vec![lp("1"), lp("1 - y")],
            vec![lp("0"), lp("x")],
        ]);
        let i = ops.identity(2);
        assert!(ops.eq(&ops.mul(&i, &a).unwrap(), &a).unwrap());
        assert!(ops.eq(&ops.mul(&a, &i).unwrap(), &a).unwrap());
    }

    #[test]
    fn m1_times_m1_inverse() {
        let ring = LaurentRing { rank: 2 };
        let ops = MatrixOps::new(&ring);
        let m1 = Matrix::from_rows(vec![
            vec![lp("1"), lp("1 - y")],
            vec![lp("0"), lp("x")],
        ]);
        let m1_inv = Matrix::from_rows(vec![
            vec![lp("1"), lp("-x^-1 + x^-1*y")],
            vec![lp("0"), lp("x^-1")],
        ]);
        let prod = ops.mul(&m1, &m1_inv).unwrap();
        assert!(ops.is_identity(&prod));
    }

    #[test]
    fn pow_matches_iterated_mul() {
        let ring = IntRing;
        let ops = MatrixOps::new(&ring);
        let a = Matrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(1)],
        ]);
        let mut iter = ops.identity(2);
        for n in 0..6u64 {
            assert!(ops.eq(&ops.pow(&a, n).unwrap(), &iter).unwrap());
            iter = ops.mul(&iter, &a).unwrap();
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let ring = IntRing;
        let ops = MatrixOps::new(&ring);
        let a = ops.identity(2);
        let b = ops.identity(3);
        assert!(ops.mul(&a, &b).is_err());
    }

    #[test]
    fn format_compact() {
        let ring = IntRing;
        let ops = MatrixOps::new(&ring);
        let i = ops.identity(2);
        assert_eq!(format_matrix(&i), "[[1, 0], [0, 1]]");
    }
}
