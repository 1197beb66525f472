//! Exact linear algebra over a prime field F_p.
//!
//! Every value carries its modulus; operations that would mix moduli are
//! rejected. Subspaces are stored by their reduced row echelon basis, so two
//! subspaces are equal exactly when their representations are.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// The prime field F_p for a prime `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 16).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub(crate) fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    /// `p^k`, or `None` on overflow.
    pub fn size_pow(self, k: usize) -> Option<u128> {
        (self.p as u128).checked_pow(k as u32)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A vector in F_p^n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    field: Field,
    data: Vec<u32>,
}

impl FpVector {
    pub fn zero(field: Field, n: usize) -> Self {
        FpVector {
            field,
            data: vec![0; n],
        }
    }

    /// Builds a vector, reducing every entry mod p.
    pub fn new(field: Field, entries: impl IntoIterator<Item = i64>) -> Self {
        FpVector {
            field,
            data: entries.into_iter().map(|e| field.reduce(e)).collect(),
        }
    }

    pub(crate) fn from_reduced(field: Field, data: Vec<u32>) -> Self {
        debug_assert!(data.iter().all(|&e| e < field.p()));
        FpVector { field, data }
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.data[i] = 1;
        v
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn set(&mut self, i: usize, value: i64) {
        self.data[i] = self.field.reduce(value);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.data.iter().filter(|&&e| e != 0).count()
    }

    fn check_compat(&self, other: &FpVector) -> Result<()> {
        self.field.check(other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FpVector) -> Result<FpVector> {
        self.check_compat(other)?;
        let f = self.field;
        Ok(FpVector {
            field: f,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &FpVector) -> Result<FpVector> {
        self.check_compat(other)?;
        let f = self.field;
        Ok(FpVector {
            field: f,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> FpVector {
        let f = self.field;
        let c = c % f.p();
        FpVector {
            field: f,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    /// Standard dot product.
    pub fn dot(&self, other: &FpVector) -> Result<u32> {
        self.check_compat(other)?;
        Ok(dot_slices(self.field, &self.data, &other.data))
    }

    /// `self + c * other`, in place. Lengths must agree.
    pub(crate) fn axpy(&mut self, c: u32, other: &[u32]) {
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(other) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn concat(&self, other: &FpVector) -> Result<FpVector> {
        self.field.check(other.field)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpVector {
            field: self.field,
            data,
        })
    }

    pub fn slice(&self, start: usize, end: usize) -> FpVector {
        FpVector {
            field: self.field,
            data: self.data[start..end].to_vec(),
        }
    }

    /// Row vector times matrix: `self · m`.
    pub fn mul_matrix(&self, m: &FpMatrix) -> Result<FpVector> {
        self.field.check(m.field)?;
        if self.len() != m.rows {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                found: self.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0u64; m.cols];
        let p = f.p() as u64;
        for (i, &a) in self.data.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(m.row(i)) {
                *o = (*o + a as u64 * b as u64) % p;
            }
        }
        Ok(FpVector {
            field: f,
            data: out.into_iter().map(|v| v as u32).collect(),
        })
    }

    /// Iterates all of F_p^n in lexicographic order.
    pub fn all(field: Field, n: usize) -> impl Iterator<Item = FpVector> {
        let total = field.size_pow(n).expect("space too large to enumerate");
        let p = field.p();
        let mut cur = vec![0u32; n];
        let mut first = true;
        let mut count: u128 = 0;
        std::iter::from_fn(move || {
            if count == total {
                return None;
            }
            if !first {
                for i in (0..n).rev() {
                    cur[i] += 1;
                    if cur[i] == p {
                        cur[i] = 0;
                    } else {
                        break;
                    }
                }
            }
            first = false;
            count += 1;
            Some(FpVector {
                field,
                data: cur.clone(),
            })
        })
    }
}

pub(crate) fn dot_slices(f: Field, a: &[u32], b: &[u32]) -> u32 {
    let p = f.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

impl Index<usize> for FpVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.data[i]
    }
}

impl PartialOrd for FpVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on entries.
impl Ord for FpVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.data
            .cmp(&other.data)
            .then(self.field.cmp(&other.field))
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.p() <= 10 {
            for e in &self.data {
                write!(f, "{}", e)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows; entries are reduced mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&e| field.reduce(e)));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Stacks vectors as rows. `cols` is needed when `vectors` is empty.
    pub fn from_vectors(field: Field, cols: usize, vectors: &[FpVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            field.check(v.field())?;
            if v.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: v.len(),
                });
            }
            data.extend_from_slice(v.as_slice());
        }
        Ok(FpMatrix {
            field,
            rows: vectors.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = self.field.reduce(value);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> FpVector {
        FpVector::from_reduced(self.field, self.row(r).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn column_vector(&self, c: usize) -> FpVector {
        FpVector::from_reduced(self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.field.check(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.field.p() as u64;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (o, &b) in acc.iter_mut().zip(other.row(k)) {
                    *o = (*o + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector> {
        self.field.check(v.field())?;
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(FpVector::from_reduced(
            self.field,
            (0..self.rows)
                .map(|r| dot_slices(self.field, self.row(r), v.as_slice()))
                .collect(),
        ))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.field.check(other.field)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> FpMatrix {
        let cols = end - start;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[start..end]);
        }
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Rows with the given indices, in order.
    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FpMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: u32) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, k);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: u32) {
        if k == 0 {
            return;
        }
        let f = self.field;
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c];
            if s != 0 {
                let d = &mut self.data[dst * cols + c];
                *d = f.add(*d, f.mul(k, s));
            }
        }
    }

    fn reduce_in_place(&mut self, mut track: Option<&mut FpMatrix>) -> (usize, Vec<usize>) {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, piv);
            }
            let inv = f.inv(self.get(r, c));
            self.scale_row(r, inv);
            if let Some(t) = track.as_deref_mut() {
                t.scale_row(r, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let k = self.get(i, c);
                    if k != 0 {
                        let neg = f.neg(k);
                        self.add_row(i, r, neg);
                        if let Some(t) = track.as_deref_mut() {
                            t.add_row(i, r, neg);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = m.reduce_in_place(None);
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    /// Reduced row echelon form together with the invertible `U` such that
    /// `U · self` equals the reduced matrix.
    pub fn rref_with_transform(&self) -> (Rref, FpMatrix) {
        let mut m = self.clone();
        let mut u = FpMatrix::identity(self.field, self.rows);
        let (rank, pivots) = m.reduce_in_place(Some(&mut u));
        (
            Rref {
                matrix: m,
                rank,
                pivots,
            },
            u,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (r, u) = self.rref_with_transform();
        (r.rank == self.rows).then_some(u)
    }

    /// The null space `{x : self · x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = FpVector::zero(f, self.cols);
            v.data[free] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                v.data[pc] = f.neg(r.matrix.get(i, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis).expect("kernel vectors have matching shape")
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &FpVector) -> Result<Option<FpVector>> {
        self.field.check(b.field())?;
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let col = FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: 1,
            data: b.as_slice().to_vec(),
        };
        let aug = self.hstack(&col)?;
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = FpVector::zero(self.field, self.cols);
        for (i, &pc) in r.pivots.iter().enumerate() {
            x.data[pc] = r.matrix.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.field.p())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row_vector(r))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of F_p^n in canonical (RREF basis) form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the given vectors, each of length `n`.
    pub fn span(field: Field, n: usize, vectors: &[FpVector]) -> Result<Self> {
        Ok(Self::from_matrix(&FpMatrix::from_vectors(field, n, vectors)?))
    }

    /// Row space of a matrix.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let r = m.rref();
        let idx: Vec<usize> = (0..r.rank).collect();
        Subspace {
            basis: r.matrix.select_rows(&idx),
            pivots: r.pivots,
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.basis.field()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The RREF basis, one vector per row.
    #[inline]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<FpVector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot coordinates of `v`. The result is the
    /// lexicographically smallest element of the coset `v + self`.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        let f = self.field();
        let mut out = v.clone();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                out.axpy(f.neg(c), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        v.len() == self.ambient() && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_vectors().iter().all(|b| other.contains(b))
    }

    /// `{s : s · x = 0 for all x in self}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        self.basis.kernel()
    }

    /// Enumerates every element (for small spaces).
    pub fn elements(&self) -> impl Iterator<Item = FpVector> + '_ {
        let f = self.field();
        FpVector::all(f, self.dim()).map(move |coeffs| {
            coeffs
                .mul_matrix(&self.basis)
                .expect("coefficient length equals dimension")
        })
    }

    /// Number of elements, `p^dim`.
    pub fn cardinality(&self) -> Option<u128> {
        self.field().size_pow(self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_moduli() {
        assert_eq!(Field::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(1), Err(Error::NotPrime(1)));
        assert!(Field::new(65521).is_ok());
        assert!(Field::new(65537).is_err());
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = FpMatrix::identity(f(2), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let m = FpMatrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(
            r.matrix,
            FpMatrix::from_rows(f(2), &[vec![1, 1], vec![0, 0]]).unwrap()
        );
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn transform_reproduces_rref() {
        let m = FpMatrix::from_rows(
            f(3),
            &[vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 2]],
        )
        .unwrap();
        let (r, u) = m.rref_with_transform();
        assert_eq!(u.mul(&m).unwrap(), r.matrix);
    }

    #[test]
    fn kernel_edge_cases() {
        let z = FpMatrix::zeros(f(2), 2, 3);
        assert_eq!(z.kernel(), Subspace::full(f(2), 3));
        let id = FpMatrix::identity(f(5), 4);
        assert_eq!(id.kernel().dim(), 0);
    }

    #[test]
    fn complement_of_first_four_units() {
        let fld = f(2);
        let v: Vec<FpVector> = (0..4).map(|i| FpVector::unit(fld, 5, i)).collect();
        let s = Subspace::span(fld, 5, &v).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c, Subspace::span(fld, 5, &[FpVector::unit(fld, 5, 4)]).unwrap());
        assert_eq!(Subspace::zero(fld, 4).orthogonal_complement(), Subspace::full(fld, 4));
        assert_eq!(Subspace::full(fld, 4).orthogonal_complement(), Subspace::zero(fld, 4));
    }

    #[test]
    fn solve_cases() {
        let fld = f(2);
        let id = FpMatrix::identity(fld, 3);
        let b = FpVector::new(fld, [1, 0, 1]);
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let a = FpMatrix::from_rows(fld, &[vec![1, 1]]).unwrap();
        let x = a.solve(&FpVector::new(fld, [1])).unwrap().unwrap();
        assert_eq!((x[0] + x[1]) % 2, 1);

        let a = FpMatrix::from_rows(fld, &[vec![0, 0]]).unwrap();
        assert_eq!(a.solve(&FpVector::new(fld, [1])).unwrap(), None);

        assert!(matches!(
            id.solve(&FpVector::new(fld, [1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cross_modulus_is_rejected() {
        let a = FpVector::new(f(2), [1, 0]);
        let b = FpVector::new(f(3), [1, 0]);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch(2, 3)));
    }

    #[test]
    fn coset_reduction_is_lexicographic_minimum() {
        let fld = f(3);
        let s = Subspace::span(fld, 4, &[FpVector::new(fld, [0, 1, 2, 1]), FpVector::new(fld, [1, 0, 1, 1])])
            .unwrap();
        for v in FpVector::all(fld, 4) {
            let red = s.reduce(&v);
            let min = s.elements().map(|e| e.add(&v).unwrap()).min().unwrap();
            assert_eq!(red, min);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let fld = f(5);
        let m = FpMatrix::from_rows(fld, &[vec![2, 1], vec![1, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m).unwrap(), FpMatrix::identity(fld, 2));
        let sing = FpMatrix::from_rows(fld, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
    }
}
