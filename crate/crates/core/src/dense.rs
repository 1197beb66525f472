//! Dense complex matrices on `(C^p)^{⊗n}`, used as an independent oracle for
//! the symbolic machinery.
//!
//! Basis states are indexed with qudit 0 as the most significant digit. For
//! p = 2 every entry that arises from Pauli sums is a dyadic rational, so the
//! f64 arithmetic is exact and comparisons use tolerance zero; for odd p the
//! entries involve `exp(2πi/p)` and comparisons use `1e-9`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fp::Field;
use crate::pauli::PauliOperator;
use crate::permutation::Permutation;

/// Largest Hilbert-space dimension the oracle will build by default.
pub const DEFAULT_ORACLE_BOUND: usize = 4096;

/// Comparison tolerance for dense results over `F_p`.
pub fn tolerance(p: u32) -> f64 {
    if p == 2 {
        0.0
    } else {
        1e-9
    }
}

/// `ω^k` for `k = 0..p`; exact for p = 2.
pub fn omega_powers(p: u32) -> Vec<Complex64> {
    if p == 2 {
        return vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    }
    (0..p)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / p as f64))
        .collect()
}

/// Checks `p^n ≤ bound` and returns `p^n`.
pub fn hilbert_dim(field: Field, n: usize, bound: usize) -> Result<usize> {
    match field.size_pow(n) {
        Some(d) if d <= bound as u128 => Ok(d as usize),
        other => Err(Error::BoundExceeded {
            what: "dense oracle",
            needed: other.unwrap_or(u128::MAX),
            bound: bound as u128,
        }),
    }
}

fn digits(mut j: usize, p: usize, n: usize, out: &mut [usize]) {
    for i in (0..n).rev() {
        out[i] = j % p;
        j /= p;
    }
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * p + x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    p: u32,
    n: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zero(field: Field, n: usize) -> Result<Self> {
        let dim = hilbert_dim(field, n, DEFAULT_ORACLE_BOUND)?;
        Ok(Self::zero_unchecked(field.p(), n, dim))
    }

    fn zero_unchecked(p: u32, n: usize, dim: usize) -> Self {
        DenseOperator {
            p,
            n,
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(field: Field, n: usize) -> Result<Self> {
        let mut m = Self::zero(field, n)?;
        for i in 0..m.dim {
            m.data[i * m.dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Dense matrix of a Pauli operator, within the default bound.
    pub fn from_pauli(op: &PauliOperator) -> Result<Self> {
        Self::from_pauli_bounded(op, DEFAULT_ORACLE_BOUND)
    }

    pub fn from_pauli_bounded(op: &PauliOperator, bound: usize) -> Result<Self> {
        let dim = hilbert_dim(op.field(), op.n(), bound)?;
        let mut m = Self::zero_unchecked(op.field().p(), op.n(), dim);
        m.add_pauli(op, Complex64::new(1.0, 0.0));
        Ok(m)
    }

    /// Builds an operator from an explicit matrix (row-major).
    pub fn from_entries(field: Field, n: usize, data: Vec<Complex64>) -> Result<Self> {
        let dim = hilbert_dim(field, n, DEFAULT_ORACLE_BOUND)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(DenseOperator {
            p: field.p(),
            n,
            dim,
            data,
        })
    }

    /// `self += coeff · op`.
    pub fn add_pauli(&mut self, op: &PauliOperator, coeff: Complex64) {
        debug_assert_eq!(op.n(), self.n);
        let p = self.p as usize;
        let w = omega_powers(self.p);
        let n = self.n;
        let mut d = vec![0usize; n];
        let a: Vec<usize> = (0..n).map(|i| op.x()[i] as usize).collect();
        let b: Vec<usize> = (0..n).map(|i| op.z()[i] as usize).collect();
        for col in 0..self.dim {
            digits(col, p, n, &mut d);
            let mut k = op.phase() as usize;
            for i in 0..n {
                k += b[i] * d[i];
                d[i] = (d[i] + a[i]) % p;
            }
            let row = undigits(&d, p);
            self.data[row * self.dim + col] += coeff * w[k % p];
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    fn check_same_shape(&self, other: &DenseOperator) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_same_shape(other)?;
        let d = self.dim;
        let mut out = Self::zero_unchecked(self.p, self.n, d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let orow = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[r * d..(r + 1) * d];
                for (o, &b) in dst.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn adjoint(&self) -> DenseOperator {
        let d = self.dim;
        let mut out = Self::zero_unchecked(self.p, self.n, d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        (0..d)
            .map(|r| {
                self.data[r * d..(r + 1) * d]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        if self.dim != other.dim || self.p != other.p {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison at the oracle tolerance for this modulus.
    pub fn approx_eq(&self, other: &DenseOperator) -> bool {
        self.max_abs_diff(other) <= tolerance(self.p)
    }

    pub fn is_hermitian(&self) -> bool {
        self.approx_eq(&self.adjoint())
    }

    /// `self² = self`. Uses the full product up to dimension 512 and a
    /// fixed family of probe vectors beyond that.
    pub fn is_idempotent(&self) -> bool {
        if self.dim <= 512 {
            return match self.mul(self) {
                Ok(sq) => sq.approx_eq(self),
                Err(_) => false,
            };
        }
        let tol = tolerance(self.p).max(1e-9) * self.dim as f64;
        for seed in 0..4u64 {
            let v: Vec<Complex64> = (0..self.dim)
                .map(|i| {
                    let h = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15 ^ seed);
                    Complex64::new(((h >> 11) % 7) as f64 - 3.0, ((h >> 29) % 5) as f64 - 2.0)
                })
                .collect();
            let pv = self.apply(&v);
            let ppv = self.apply(&pv);
            if pv.iter().zip(&ppv).any(|(a, b)| (a - b).norm() > tol) {
                return false;
            }
        }
        true
    }

    /// Conjugation `P_σ · self · P_σ†` by the operator that moves qudit `i`
    /// to position `σ(i)`.
    pub fn conjugate_by_permutation(&self, sigma: &Permutation) -> Result<DenseOperator> {
        if sigma.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: sigma.len(),
            });
        }
        let map = basis_permutation(self.p as usize, self.n, sigma);
        let d = self.dim;
        let mut out = Self::zero_unchecked(self.p, self.n, d);
        for r in 0..d {
            for c in 0..d {
                out.data[map[r] * d + map[c]] = self.data[r * d + c];
            }
        }
        Ok(out)
    }

    /// The qudit permutation operator `P_σ` itself.
    pub fn permutation_operator(field: Field, sigma: &Permutation) -> Result<DenseOperator> {
        let n = sigma.len();
        let mut m = Self::zero(field, n)?;
        let map = basis_permutation(field.p() as usize, n, sigma);
        for (j, &t) in map.iter().enumerate() {
            m.data[t * m.dim + j] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }
}

/// Index map `j ↦ π(j)` of the basis permutation induced by `σ`.
pub fn basis_permutation(p: usize, n: usize, sigma: &Permutation) -> Vec<usize> {
    let dim = p.pow(n as u32);
    let mut d = vec![0usize; n];
    let mut t = vec![0usize; n];
    (0..dim)
        .map(|j| {
            digits(j, p, n, &mut d);
            for i in 0..n {
                t[sigma.apply(i)] = d[i];
            }
            undigits(&t, p)
        })
        .collect()
}

/// A state vector on `(C^p)^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    p: u32,
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn new(field: Field, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = hilbert_dim(field, n, DEFAULT_ORACLE_BOUND)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        Ok(DenseState {
            p: field.p(),
            n,
            amps,
        })
    }

    pub fn basis(field: Field, n: usize, index: usize) -> Result<Self> {
        let dim = hilbert_dim(field, n, DEFAULT_ORACLE_BOUND)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(DenseState {
            p: field.p(),
            n,
            amps,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|⟨a|b⟩|² / (‖a‖² ‖b‖²)`.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        if self.amps.len() != other.amps.len() {
            return 0.0;
        }
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        ip.norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }

    pub fn apply_operator(&self, op: &DenseOperator) -> DenseState {
        DenseState {
            p: self.p,
            n: self.n,
            amps: op.apply(&self.amps),
        }
    }

    /// Applies a `p × p` matrix (row-major) to one qudit.
    pub fn apply_local(&mut self, qudit: usize, gate: &[Complex64]) {
        let p = self.p as usize;
        debug_assert_eq!(gate.len(), p * p);
        let stride = p.pow((self.n - 1 - qudit) as u32);
        let dim = self.amps.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); p];
        for base in 0..dim {
            if !(base / stride).is_multiple_of(p) {
                continue;
            }
            for (k, b) in buf.iter_mut().enumerate() {
                *b = self.amps[base + k * stride];
            }
            for r in 0..p {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &b) in buf.iter().enumerate() {
                    acc += gate[r * p + k] * b;
                }
                self.amps[base + r * stride] = acc;
            }
        }
    }

    pub fn permute(&self, sigma: &Permutation) -> DenseState {
        let map = basis_permutation(self.p as usize, self.n, sigma);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (j, &t) in map.iter().enumerate() {
            amps[t] = self.amps[j];
        }
        DenseState {
            p: self.p,
            n: self.n,
            amps,
        }
    }
}
