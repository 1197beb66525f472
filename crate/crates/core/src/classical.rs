//! Finite, generally nonlinear, classical codes over F_p.

use std::fmt;

use num_complex::Complex64;

use crate::dense::omega_powers;
use crate::error::{Error, Result};
use crate::fp::{Field, FpMatrix, FpVector, Subspace};

/// A nonempty set of words of a common length, stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassicalCode {
    field: Field,
    n: usize,
    words: Vec<FpVector>,
}

/// The exact value `Σ_k counts[k] ω^k` of a character sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSum {
    pub counts: Vec<u64>,
}

impl CharSum {
    /// The sum vanishes exactly when all counts agree, since
    /// `1 + ω + … + ω^{p−1}` is the minimal relation for prime `p`.
    pub fn is_zero(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn value(&self) -> Complex64 {
        let w = omega_powers(self.counts.len() as u32);
        self.counts
            .iter()
            .zip(&w)
            .map(|(&c, &z)| z * c as f64)
            .sum()
    }
}

impl ClassicalCode {
    pub fn new(field: Field, n: usize, mut words: Vec<FpVector>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        for w in &words {
            field.check(w.field())?;
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        words.sort();
        words.dedup();
        Ok(ClassicalCode { field, n, words })
    }

    /// Parses digit strings such as `"01021"`.
    pub fn from_strings(field: Field, words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|w| {
                w.chars()
                    .map(|c| {
                        c.to_digit(10).map(|d| d as i64).ok_or_else(|| {
                            Error::Precondition(format!("bad digit {:?} in word {:?}", c, w))
                        })
                    })
                    .collect::<Result<Vec<i64>>>()
                    .map(|v| FpVector::new(field, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map_or(0, |w| w.len());
        Self::new(field, n, parsed)
    }

    /// All elements of a subspace.
    pub fn from_subspace(s: &Subspace) -> Self {
        ClassicalCode::new(s.field(), s.ambient(), s.elements().collect())
            .expect("a subspace is nonempty")
    }

    /// The single word `0…0`.
    pub fn zero_word(field: Field, n: usize) -> Self {
        ClassicalCode {
            field,
            n,
            words: vec![FpVector::zero(field, n)],
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    /// Word length.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of words.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Always false; codes are nonempty by construction.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[FpVector] {
        &self.words
    }

    pub fn contains(&self, w: &FpVector) -> bool {
        self.words.binary_search(w).is_ok()
    }

    fn check_len(&self, v: &FpVector) -> Result<()> {
        self.field.check(v.field())?;
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `f(y) = Σ_{c ∈ C} ω^{c·y}` as exact counts.
    pub fn char_sum(&self, y: &FpVector) -> Result<CharSum> {
        self.check_len(y)?;
        let mut counts = vec![0u64; self.field.p() as usize];
        for c in &self.words {
            counts[c.dot(y)? as usize] += 1;
        }
        Ok(CharSum { counts })
    }

    /// `C + s`.
    pub fn translate(&self, s: &FpVector) -> Result<ClassicalCode> {
        self.check_len(s)?;
        let words = self
            .words
            .iter()
            .map(|w| w.add(s))
            .collect::<Result<Vec<_>>>()?;
        ClassicalCode::new(self.field, self.n, words)
    }

    fn is_period(&self, s: &FpVector) -> bool {
        self.words
            .iter()
            .all(|w| self.contains(&w.add(s).expect("same shape")))
    }

    /// The translations fixing the code, `K = {s : C + s = C}`.
    pub fn period_group(&self) -> Subspace {
        let c0 = &self.words[0];
        let periods: Vec<FpVector> = self
            .words
            .iter()
            .map(|c| c.sub(c0).expect("same shape"))
            .filter(|s| !s.is_zero() && self.is_period(s))
            .collect();
        Subspace::span(self.field, self.n, &periods).expect("same shape")
    }

    /// Splits the code into cosets of `c0` and returns the lexicographically
    /// smallest representative of each.
    pub fn coset_decompose(&self, c0: &Subspace) -> Result<ClassicalCode> {
        self.field.check(c0.field())?;
        if c0.ambient() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: c0.ambient(),
            });
        }
        if !c0.basis_vectors().iter().all(|s| self.is_period(s)) {
            return Err(Error::Precondition(
                "subspace is not contained in the period group".into(),
            ));
        }
        let reps = self.words.iter().map(|w| c0.reduce(w)).collect();
        ClassicalCode::new(self.field, self.n, reps)
    }

    /// `{w · r : w ∈ C}` for an `n × k` matrix `r`.
    pub fn transform(&self, r: &FpMatrix) -> Result<ClassicalCode> {
        self.field.check(r.field())?;
        if r.rows() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: r.rows(),
            });
        }
        let words = self
            .words
            .iter()
            .map(|w| w.mul_matrix(r))
            .collect::<Result<Vec<_>>>()?;
        ClassicalCode::new(self.field, r.cols(), words)
    }

    /// Equality of word sets.
    pub fn set_equal(&self, other: &ClassicalCode) -> bool {
        self == other
    }

    /// Span of `{y : f(y) ≠ 0}`, computed by scanning all of F_p^n.
    pub fn char_sum_support(&self) -> Result<Subspace> {
        let needed = self.field.size_pow(self.n).unwrap_or(u128::MAX);
        let bound = crate::stabilizer::DEFAULT_ENUMERATION_BOUND;
        if needed > bound {
            return Err(Error::BoundExceeded {
                what: "character sum scan",
                needed,
                bound,
            });
        }
        let support: Vec<FpVector> = FpVector::all(self.field, self.n)
            .filter(|y| !self.char_sum(y).expect("same shape").is_zero())
            .collect();
        Subspace::span(self.field, self.n, &support)
    }
}

impl fmt::Display for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassicalCode(p={}, {})", self.field.p(), self)
    }
}
