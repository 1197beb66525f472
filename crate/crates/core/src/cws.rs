//! CWS and union-stabilizer (USt) codes, their unique canonical form and
//! permutation symmetries.
//!
//! A code `(S, C)` with generators `g_1..g_m` and classical words `c ∈ F_p^m`
//! is the direct sum of the joint eigenspaces `V_c` stabilized by the
//! operators `ω^{c_j} g_j`. Its projector is
//! `(1/p^m) Σ_y f(y) g_1^{y_1}…g_m^{y_m}` with `f(y) = Σ_{c∈C} ω^{c·y}`.

use std::fmt;

use num_complex::Complex64;

use crate::classical::ClassicalCode;
use crate::dense::{hilbert_dim, DenseOperator, DEFAULT_ORACLE_BOUND};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, FpVector, Subspace};
use crate::permutation::Permutation;
use crate::stabilizer::StabilizerGroup;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CwsUstCode {
    stab: StabilizerGroup,
    cls: ClassicalCode,
}

impl CwsUstCode {
    pub fn new(stab: StabilizerGroup, cls: ClassicalCode) -> Result<Self> {
        stab.field().check(cls.field())?;
        if cls.n() != stab.rank() {
            return Err(Error::DimensionMismatch {
                expected: stab.rank(),
                found: cls.n(),
            });
        }
        Ok(CwsUstCode { stab, cls })
    }

    #[inline]
    pub fn stabilizer(&self) -> &StabilizerGroup {
        &self.stab
    }

    #[inline]
    pub fn classical(&self) -> &ClassicalCode {
        &self.cls
    }

    /// Number of physical qudits.
    #[inline]
    pub fn n(&self) -> usize {
        self.stab.n()
    }

    /// Number of stabilizer generators.
    #[inline]
    pub fn m(&self) -> usize {
        self.stab.rank()
    }

    /// Code-space dimension `p^{n−m} · |C|`.
    pub fn dimension(&self) -> u128 {
        self.stab
            .field()
            .size_pow(self.n() - self.m())
            .map_or(u128::MAX, |d| d.saturating_mul(self.cls.len() as u128))
    }

    pub fn projector_dense(&self) -> Result<DenseOperator> {
        self.projector_dense_bounded(DEFAULT_ORACLE_BOUND)
    }

    pub fn projector_dense_bounded(&self, bound: usize) -> Result<DenseOperator> {
        let f = self.stab.field();
        hilbert_dim(f, self.n(), bound)?;
        let mut acc = DenseOperator::zero(f, self.n())?;
        let scale = 1.0 / f.size_pow(self.m()).unwrap_or(u128::MAX) as f64;
        for y in FpVector::all(f, self.m()) {
            let sum = self.cls.char_sum(&y)?;
            if sum.is_zero() {
                continue;
            }
            let g = self.stab.element(&y);
            acc.add_pauli(&g, sum.value() * Complex64::new(scale, 0.0));
        }
        Ok(acc)
    }

    /// Moves qudit `i` to `σ(i)`; the classical code indexes generators and
    /// is unchanged.
    pub fn permute(&self, sigma: &Permutation) -> Result<CwsUstCode> {
        Ok(CwsUstCode {
            stab: self.stab.permute(sigma)?,
            cls: self.cls.clone(),
        })
    }

    pub fn canonical(&self) -> CanonicalUst {
        canonical_ust(self)
    }
}

impl fmt::Debug for CwsUstCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CwsUstCode({:?}, {:?})", self.stab, self.cls)
    }
}

/// The unique USt representation: trivial period group, phase-free
/// generators whose symplectic matrix is in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalUst {
    code: CwsUstCode,
}

impl CanonicalUst {
    pub fn code(&self) -> &CwsUstCode {
        &self.code
    }

    pub fn into_code(self) -> CwsUstCode {
        self.code
    }

    pub fn dimension(&self) -> u128 {
        self.code.dimension()
    }

    pub fn rank(&self) -> usize {
        self.code.m()
    }

    /// Byte stream used as the equality certificate.
    pub fn serialize(&self) -> String {
        crate::text::write_code(&self.code, None)
    }
}

/// Phase-free copy of the generators plus the phase exponents removed.
fn strip_phases(s: &StabilizerGroup) -> (StabilizerGroup, FpVector) {
    let f = s.field();
    let phases = FpVector::new(f, s.generators().iter().map(|g| g.phase() as i64));
    let gens = s.generators().iter().map(|g| g.phase_free()).collect();
    (StabilizerGroup::new_unchecked(f, s.n(), gens), phases)
}

fn shift(cls: &ClassicalCode, by: &FpVector) -> ClassicalCode {
    cls.translate(by).expect("shift has the code length")
}

/// Computes the canonical USt form of a code.
pub fn canonical_ust(q: &CwsUstCode) -> CanonicalUst {
    let f = q.stab.field();
    let mut stab = q.stab.clone();
    let mut cls = q.cls.clone();
    loop {
        let k = cls.period_group();
        if k.dim() > 0 {
            let v0 = k.orthogonal_complement();
            let b = v0.basis();
            let transversal = cls.coset_decompose(&k).expect("K is the period group");
            cls = transversal
                .transform(&b.transpose())
                .expect("B^T has m rows");
            let gens = (0..b.rows()).map(|j| stab.element(&b.row_vector(j))).collect();
            stab = StabilizerGroup::new_unchecked(f, stab.n(), gens);
        }
        let (bare, phases) = strip_phases(&stab);
        cls = shift(&cls, &phases);
        let (r, u) = bare.symplectic_matrix().rref_with_transform();
        debug_assert_eq!(r.rank, bare.rank());
        let rebased = bare.rebase(&u).expect("row reduction transform is invertible");
        cls = cls.transform(&u.transpose()).expect("U^T is m × m");
        let (bare, phases) = strip_phases(&rebased);
        cls = shift(&cls, &phases);
        stab = bare;
        if cls.period_group().dim() == 0 {
            break;
        }
    }
    CanonicalUst {
        code: CwsUstCode { stab, cls },
    }
}

/// Equality of code spaces, decided by comparing canonical forms.
pub fn canonical_equal(a: &CwsUstCode, b: &CwsUstCode) -> bool {
    a.stab.field() == b.stab.field() && a.n() == b.n() && canonical_ust(a) == canonical_ust(b)
}

/// Whether permuting the qudits by `σ` leaves the code space unchanged.
pub fn has_symmetry(q: &CwsUstCode, sigma: &Permutation) -> Result<bool> {
    Ok(canonical_equal(&q.permute(sigma)?, q))
}

/// Dense-oracle version of [`has_symmetry`]: compares `P_σ P P_σ†` with `P`.
pub fn has_symmetry_dense(q: &CwsUstCode, sigma: &Permutation) -> Result<bool> {
    let p = q.projector_dense()?;
    Ok(p.conjugate_by_permutation(sigma)?.approx_eq(&p))
}

/// Canonical verdict plus, when the Hilbert space is small enough, the
/// dense-oracle verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub symmetric: bool,
    pub dense: Option<bool>,
}

impl SymmetryVerdict {
    pub fn consistent(&self) -> bool {
        self.dense.is_none_or(|d| d == self.symmetric)
    }
}

pub fn symmetry_verdict(q: &CwsUstCode, sigma: &Permutation, oracle_bound: usize) -> Result<SymmetryVerdict> {
    let symmetric = has_symmetry(q, sigma)?;
    let dense = match hilbert_dim(q.stab.field(), q.n(), oracle_bound) {
        Ok(_) => Some(has_symmetry_dense(q, sigma)?),
        Err(_) => None,
    };
    Ok(SymmetryVerdict { symmetric, dense })
}

/// `R` and residual phases with `g_i^σ = ω^{φ_i} Π_j g_j^{R_ji}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub r: FpMatrix,
    pub phases: FpVector,
}

/// Expresses every permuted generator in terms of the originals; `None` if
/// some permuted generator lies outside the group (up to phase).
pub fn compute_r(s: &StabilizerGroup, sigma: &Permutation) -> Result<Option<RMatrix>> {
    let f = s.field();
    let m = s.rank();
    let mut r = FpMatrix::zeros(f, m, m);
    let mut phases = Vec::with_capacity(m);
    for (i, g) in s.generators().iter().enumerate() {
        let Some((y, phi)) = s.decompose(&g.permute(sigma)?)? else {
            return Ok(None);
        };
        for j in 0..m {
            r.set(j, i, y[j] as i64);
        }
        phases.push(phi as i64);
    }
    Ok(Some(RMatrix {
        r,
        phases: FpVector::new(f, phases),
    }))
}

/// Outcome of the sufficient symmetry condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficientCondition {
    /// `σ` maps the stabilizer group to itself, phases included.
    pub applies: bool,
    /// Additionally the classical code satisfies `C R = C` as a set of rows.
    pub holds: bool,
    pub r: Option<RMatrix>,
}

pub fn check_sufficient_condition(q: &CwsUstCode, sigma: &Permutation) -> Result<SufficientCondition> {
    let r = compute_r(&q.stab, sigma)?;
    let applies = r.as_ref().is_some_and(|r| r.phases.is_zero());
    let holds = applies
        && r.as_ref()
            .is_some_and(|r| q.cls.transform(&r.r).is_ok_and(|c| c.set_equal(&q.cls)));
    Ok(SufficientCondition { applies, holds, r })
}

/// Stabilizer-state code `(S, {0…0})` for a full-rank group.
pub fn state_code(s: &StabilizerGroup) -> Result<CwsUstCode> {
    CwsUstCode::new(s.clone(), ClassicalCode::zero_word(s.field(), s.rank()))
}

/// The canonical stabilizer group's symplectic span.
pub fn canonical_span(q: &CwsUstCode) -> Subspace {
    canonical_ust(q).code.stab.symplectic_span()
}
