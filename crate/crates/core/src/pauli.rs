//! Phased symplectic representation of the n-qudit Pauli group.
//!
//! An operator is `ω^k X^{a} Z^{b}` with `ω = exp(2πi/p)`, where `X^{a}Z^{b}`
//! abbreviates the tensor product of `X^{a_i} Z^{b_i}` over all qudits. On one
//! qudit `X|j⟩ = |j+1⟩` and `Z|j⟩ = ω^j |j⟩`, so `ZX = ωXZ`.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::fp::{dot_slices, Field, FpVector};
use crate::permutation::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    phase: u32,
    x: FpVector,
    z: FpVector,
}

impl PauliOperator {
    pub fn identity(field: Field, n: usize) -> Self {
        PauliOperator {
            phase: 0,
            x: FpVector::zero(field, n),
            z: FpVector::zero(field, n),
        }
    }

    pub fn new(phase: i64, x: FpVector, z: FpVector) -> Result<Self> {
        x.field().check(z.field())?;
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliOperator {
            phase: x.field().reduce(phase),
            x,
            z,
        })
    }

    /// Builds `ω^phase X^{v[..n]} Z^{v[n..]}` from a length-2n vector.
    pub fn from_symplectic(phase: i64, v: &FpVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Self::new(phase, v.slice(0, n), v.slice(n, 2 * n))
    }

    /// `X` on one qudit (with exponent `a`) and `Z` (with exponent `b`).
    pub fn single(field: Field, n: usize, qudit: usize, a: i64, b: i64) -> Self {
        let mut op = Self::identity(field, n);
        op.x.set(qudit, a);
        op.z.set(qudit, b);
        op
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.x.field()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Exponent `k` of the phase `ω^k`.
    #[inline]
    pub fn phase(&self) -> u32 {
        self.phase
    }

    #[inline]
    pub fn x(&self) -> &FpVector {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &FpVector {
        &self.z
    }

    /// `(x | z)` as one vector of length 2n.
    pub fn symplectic(&self) -> FpVector {
        self.x.concat(&self.z).expect("x and z share a field")
    }

    pub fn with_phase(&self, phase: i64) -> Self {
        let mut out = self.clone();
        out.phase = self.field().reduce(phase);
        out
    }

    /// Multiplies by `ω^k`.
    pub fn times_omega(&self, k: i64) -> Self {
        self.with_phase(self.phase as i64 + k)
    }

    pub fn phase_free(&self) -> Self {
        self.with_phase(0)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    fn check_compat(&self, other: &PauliOperator) -> Result<()> {
        self.field().check(other.field())?;
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_compat(other)?;
        let f = self.field();
        // Z^{b} X^{a'} = ω^{b·a'} X^{a'} Z^{b}
        let cross = dot_slices(f, self.z.as_slice(), other.x.as_slice());
        let phase = f.add(f.add(self.phase, other.phase), cross);
        Ok(PauliOperator {
            phase,
            x: self.x.add(&other.x)?,
            z: self.z.add(&other.z)?,
        })
    }

    /// `c` such that `self · other = ω^c · other · self`.
    pub fn commutator_exponent(&self, other: &PauliOperator) -> Result<u32> {
        self.check_compat(other)?;
        let f = self.field();
        let zx = dot_slices(f, self.z.as_slice(), other.x.as_slice());
        let xz = dot_slices(f, self.x.as_slice(), other.z.as_slice());
        Ok(f.sub(zx, xz))
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(self.commutator_exponent(other)? == 0)
    }

    /// Number of qudits on which the operator acts nontrivially.
    pub fn weight(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.x[i] != 0 || self.z[i] != 0)
            .count()
    }

    /// Moves the tensor factor on qudit `i` to qudit `σ(i)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<PauliOperator> {
        if sigma.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: sigma.len(),
            });
        }
        let f = self.field();
        let mut x = FpVector::zero(f, self.n());
        let mut z = FpVector::zero(f, self.n());
        for i in 0..self.n() {
            x.set(sigma.apply(i), self.x[i] as i64);
            z.set(sigma.apply(i), self.z[i] as i64);
        }
        Ok(PauliOperator {
            phase: self.phase,
            x,
            z,
        })
    }

    /// `self^e` for `e ≥ 0`.
    pub fn pow(&self, e: u64) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.field(), self.n());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> PauliOperator {
        let f = self.field();
        // (ω^k X^a Z^b)^{-1} = ω^{-k + a·b} X^{-a} Z^{-b}
        let ab = dot_slices(f, self.x.as_slice(), self.z.as_slice());
        PauliOperator {
            phase: f.add(f.neg(self.phase), ab),
            x: self.x.neg(),
            z: self.z.neg(),
        }
    }

    /// `c · self · c^{-1}` for a Pauli `c`.
    pub fn conjugate_by(&self, c: &PauliOperator) -> Result<PauliOperator> {
        c.mul(self)?.mul(&c.inverse())
    }

    /// Parses a Pauli string; see the crate documentation for the grammar.
    pub fn parse(field: Field, text: &str) -> Result<PauliOperator> {
        parse_pauli(field, text, 0)
    }

    pub(crate) fn local_factor(&self, i: usize) -> (u32, u32) {
        (self.x[i], self.z[i])
    }

    pub(crate) fn set_local(&mut self, i: usize, a: u32, b: u32) {
        self.x.set(i, a as i64);
        self.z.set(i, b as i64);
    }
}

pub(crate) fn parse_pauli(field: Field, text: &str, line: usize) -> Result<PauliOperator> {
    let p = field.p();
    let mut s = text.trim();
    let mut phase: i64 = 0;
    if let Some(rest) = s.strip_prefix("w^") {
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(parse_err(line, "expected exponent after 'w^'"));
        }
        phase = rest[..end]
            .parse::<i64>()
            .map_err(|_| parse_err(line, "bad phase exponent"))?;
        s = rest[end..].trim_start();
    } else if let Some(rest) = s.strip_prefix('-') {
        if p != 2 {
            return Err(parse_err(line, "'-' prefix is only meaningful for p = 2"));
        }
        phase = 1;
        s = rest.trim_start();
    } else if let Some(rest) = s.strip_prefix('+') {
        s = rest.trim_start();
    }

    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    let read_num = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            None
        } else {
            chars[start..*i].iter().collect::<String>().parse().ok()
        }
    };
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        match c {
            c if c.is_whitespace() => continue,
            'I' => {
                xs.push(0);
                zs.push(0);
            }
            'X' => {
                let a = read_num(&mut i);
                let mut b = 0;
                if a.is_some()
                    && i + 1 < chars.len()
                    && chars[i] == 'Z'
                    && chars[i + 1].is_ascii_digit()
                {
                    i += 1;
                    b = read_num(&mut i).unwrap_or(0);
                }
                xs.push(a.unwrap_or(1));
                zs.push(b);
            }
            'Z' => {
                let b = read_num(&mut i).unwrap_or(1);
                xs.push(0);
                zs.push(b);
            }
            other => {
                return Err(parse_err(
                    line,
                    format!("unexpected character {:?} in Pauli string", other),
                ))
            }
        }
    }
    if xs.is_empty() {
        return Err(parse_err(line, "empty Pauli string"));
    }
    PauliOperator::new(phase, FpVector::new(field, xs), FpVector::new(field, zs))
}

fn token(a: u32, b: u32) -> String {
    match (a, b) {
        (0, 0) => "I".into(),
        (1, 0) => "X".into(),
        (a, 0) => format!("X{}", a),
        (0, 1) => "Z".into(),
        (0, b) => format!("Z{}", b),
        (a, b) => format!("X{}Z{}", a, b),
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            if self.field().p() == 2 {
                write!(f, "-")?;
            } else {
                write!(f, "w^{} ", self.phase)?;
            }
        }
        let tokens: Vec<String> = (0..self.n())
            .map(|i| token(self.x[i], self.z[i]))
            .collect();
        if tokens.iter().all(|t| t.len() == 1) {
            write!(f, "{}", tokens.concat())
        } else {
            write!(f, "{}", tokens.join(" "))
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
