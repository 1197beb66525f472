//! Construction of permutation-invariant stabilizer states inside a
//! symmetric code.
//!
//! Starting from the canonical form `(S̃, D)` of a code, the symplectic span
//! of `S̃` is completed to a maximal isotropic subspace `W` that is invariant
//! under the permutations, and phases `a` are chosen so that the state group
//! `⟨ω^{a_i} w_i⟩` is invariant including phases. Writing
//! `w_i^σ = ω^{φ_i} Π_j w_j^{R_ji}` for the phase-free basis, invariance
//! is the linear system `(Rᵀ − I) a = φ` over F_p, one block per permutation.

use std::collections::HashSet;
use std::fmt;

use crate::classical::ClassicalCode;
use crate::cws::{canonical_equal, canonical_ust, compute_r, has_symmetry, CwsUstCode};
use crate::error::{Error, Result};
use crate::fp::{Field, FpMatrix, FpVector, Subspace};
use crate::pauli::PauliOperator;
use crate::permutation::Permutation;
use crate::stabilizer::StabilizerGroup;

/// Default number of candidate extensions examined by the search strategy.
pub const DEFAULT_SEARCH_BOUND: usize = 100_000;

/// How the completion of the canonical stabilizer is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionStrategy {
    /// Z-type completion (via the CSS split or the standard form), then an
    /// X-type completion, then the search.
    Auto,
    /// Z-type completion from the CSS split only.
    Css,
    /// Z-type completion from the standard form only.
    StandardForm,
    /// X-type completion only.
    XCompletion,
    /// Search over invariant isotropic extensions only.
    Search,
}

/// The completion that produced the state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionPath {
    Css,
    StandardForm,
    XCompletion,
    Search { candidates: usize },
}

impl fmt::Display for ExtensionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionPath::Css => write!(f, "css-z-completion"),
            ExtensionPath::StandardForm => write!(f, "standard-form-z-completion"),
            ExtensionPath::XCompletion => write!(f, "x-completion"),
            ExtensionPath::Search { candidates } => write!(f, "search ({} candidates)", candidates),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExtension {
    /// Full-rank group whose stabilized state is invariant under every permutation.
    pub state: StabilizerGroup,
    /// `(state, C_out)`, equal to the input code as a code space.
    pub code: CwsUstCode,
    pub path: ExtensionPath,
}

/// Whether every permutation maps the group onto itself, phases included.
pub fn is_symmetric_group(s: &StabilizerGroup, perms: &[Permutation]) -> Result<bool> {
    for sigma in perms {
        if !s.permute(sigma)?.same_group(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dense check that the stabilized state is invariant: fidelity 1 between
/// the state and each permuted copy.
pub fn is_symmetric_state_dense(s: &StabilizerGroup, perms: &[Permutation]) -> Result<bool> {
    let psi = s.state_dense()?;
    Ok(perms
        .iter()
        .all(|sigma| (psi.fidelity(&psi.permute(sigma)) - 1.0).abs() <= 1e-9))
}

pub fn symmetric_state_extension(q: &CwsUstCode, perms: &[Permutation]) -> Result<SymmetricExtension> {
    symmetric_state_extension_with(q, perms, ExtensionStrategy::Auto, DEFAULT_SEARCH_BOUND)
}

pub fn symmetric_state_extension_with(
    q: &CwsUstCode,
    perms: &[Permutation],
    strategy: ExtensionStrategy,
    search_bound: usize,
) -> Result<SymmetricExtension> {
    let n = q.n();
    for sigma in perms {
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.len(),
            });
        }
        if !has_symmetry(q, sigma)? {
            return Err(Error::NotSymmetric(sigma.to_string()));
        }
    }
    let canon = canonical_ust(q).into_code();
    let base = canon.stabilizer();
    let span = base.symplectic_span();
    for sigma in perms {
        if base.permute(sigma)?.symplectic_span() != span {
            return Err(Error::Precondition(format!(
                "canonical stabilizer is not invariant under {}",
                sigma
            )));
        }
    }
    let ctx = Context {
        q,
        canon: &canon,
        perms,
    };

    let z_first = match strategy {
        ExtensionStrategy::Auto => Some(if base.is_css().is_some() {
            ExtensionPath::Css
        } else {
            ExtensionPath::StandardForm
        }),
        ExtensionStrategy::Css => {
            if base.is_css().is_none() {
                return Err(Error::Precondition("canonical stabilizer is not CSS".into()));
            }
            Some(ExtensionPath::Css)
        }
        ExtensionStrategy::StandardForm => Some(ExtensionPath::StandardForm),
        _ => None,
    };
    if let Some(path) = z_first {
        let logicals = match path {
            ExtensionPath::Css => typed_completion(base, true),
            _ => base.logical_z_completion()?,
        };
        if let Some(ext) = ctx.finish(&logicals, path)? {
            return Ok(ext);
        }
    }
    if matches!(strategy, ExtensionStrategy::Auto | ExtensionStrategy::XCompletion) {
        let logicals = typed_completion(base, false);
        if let Some(ext) = ctx.finish(&logicals, ExtensionPath::XCompletion)? {
            return Ok(ext);
        }
    }
    if matches!(strategy, ExtensionStrategy::Auto | ExtensionStrategy::Search) {
        return ctx.search(search_bound);
    }
    Err(Error::ExtensionExhausted(0))
}

/// Outcome of one completion strategy in [`probe_classical_symmetry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSymmetryProbe {
    pub strategy: ExtensionStrategy,
    /// The extension found, if the strategy succeeded.
    pub extension: Option<SymmetricExtension>,
    /// Whether the classical code of the extension satisfies `C R = C` with
    /// zero residual phases for every permutation.
    pub classical_invariant: bool,
}

/// Experimental: for each completion strategy, checks whether the resulting
/// CWS description `(S, C)` has a classical code with the same symmetry as
/// the code, in the sense of the sufficient condition.
pub fn probe_classical_symmetry(
    q: &CwsUstCode,
    perms: &[Permutation],
    search_bound: usize,
) -> Result<Vec<ClassicalSymmetryProbe>> {
    let mut out = Vec::new();
    for strategy in [
        ExtensionStrategy::StandardForm,
        ExtensionStrategy::XCompletion,
        ExtensionStrategy::Search,
    ] {
        let extension = match symmetric_state_extension_with(q, perms, strategy, search_bound) {
            Ok(ext) => Some(ext),
            Err(Error::ExtensionExhausted(_)) => None,
            Err(e) => return Err(e),
        };
        let mut classical_invariant = false;
        if let Some(ext) = &extension {
            classical_invariant = true;
            for sigma in perms {
                if !crate::cws::check_sufficient_condition(&ext.code, sigma)?.holds {
                    classical_invariant = false;
                }
            }
        }
        out.push(ClassicalSymmetryProbe {
            strategy,
            extension,
            classical_invariant,
        });
    }
    Ok(out)
}

fn symplectic_form(f: Field, n: usize, u: &[u32], v: &[u32]) -> u32 {
    let mut acc = 0i64;
    for i in 0..n {
        acc += u[n + i] as i64 * v[i] as i64 - u[i] as i64 * v[n + i] as i64;
    }
    f.reduce(acc)
}

fn permute_vector(v: &FpVector, sigma: &Permutation) -> FpVector {
    PauliOperator::from_symplectic(0, v)
        .and_then(|op| op.permute(sigma))
        .expect("shapes match")
        .symplectic()
}

/// Pure-type completion: the subspace of Z-type (or X-type) operators
/// commuting with the group, extended greedily from its basis.
fn typed_completion(s: &StabilizerGroup, z_type: bool) -> Vec<PauliOperator> {
    let f = s.field();
    let n = s.n();
    let rows: Vec<FpVector> = s
        .generators()
        .iter()
        .map(|g| if z_type { g.x().clone() } else { g.z().clone() })
        .collect();
    let dual = FpMatrix::from_vectors(f, n, &rows)
        .expect("shapes match")
        .kernel();
    let zero = FpVector::zero(f, n);
    let mut span: Vec<FpVector> = s.generators().iter().map(|g| g.symplectic()).collect();
    let mut out = Vec::new();
    for v in dual.basis_vectors() {
        let op = if z_type {
            PauliOperator::new(0, zero.clone(), v)
        } else {
            PauliOperator::new(0, v, zero.clone())
        }
        .expect("same field");
        let mut trial = span.clone();
        trial.push(op.symplectic());
        if FpMatrix::from_vectors(f, 2 * n, &trial).expect("shapes").rank() == trial.len() {
            span = trial;
            out.push(op);
        }
    }
    out
}

struct Context<'a> {
    q: &'a CwsUstCode,
    canon: &'a CwsUstCode,
    perms: &'a [Permutation],
}

impl Context<'_> {
    /// Solves for phases making `⟨S̃, logicals⟩` invariant and verifies the result.
    fn finish(&self, logicals: &[PauliOperator], path: ExtensionPath) -> Result<Option<SymmetricExtension>> {
        let base = self.canon.stabilizer();
        let f = base.field();
        let n = base.n();
        let mut gens: Vec<PauliOperator> = base.generators().to_vec();
        gens.extend(logicals.iter().map(|l| l.phase_free()));
        if gens.len() != n {
            return Ok(None);
        }
        let Ok(bare) = StabilizerGroup::new(f, n, gens) else {
            return Ok(None);
        };
        let mut rows: Vec<FpVector> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        for sigma in self.perms {
            let Some(r) = compute_r(&bare, sigma)? else {
                return Ok(None);
            };
            let m = r.r.transpose();
            for i in 0..n {
                let mut row = m.row_vector(i);
                row.set(i, row[i] as i64 - 1);
                rows.push(row);
                rhs.push(r.phases[i] as i64);
            }
        }
        let a = if rows.is_empty() {
            FpVector::zero(f, n)
        } else {
            let mat = FpMatrix::from_vectors(f, n, &rows)?;
            match mat.solve(&FpVector::new(f, rhs))? {
                Some(a) => a,
                None => return Ok(None),
            }
        };
        let phased: Vec<PauliOperator> = bare
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| g.with_phase(a[i] as i64))
            .collect();
        let state = StabilizerGroup::new(f, n, phased)?;
        if !is_symmetric_group(&state, self.perms)? {
            return Ok(None);
        }
        let m = base.rank();
        let shift = a.slice(0, m);
        let mut words = Vec::new();
        for d in self.canon.classical().words() {
            let head = d.sub(&shift)?;
            for tail in FpVector::all(f, n - m) {
                words.push(head.concat(&tail)?);
            }
        }
        let code = CwsUstCode::new(state.clone(), ClassicalCode::new(f, n, words)?)?;
        if !canonical_equal(&code, self.q) {
            return Err(Error::Precondition(
                "reconstructed code differs from the input".into(),
            ));
        }
        Ok(Some(SymmetricExtension { state, code, path }))
    }

    /// Smallest invariant subspace containing `vectors`.
    fn closure(&self, f: Field, dim: usize, vectors: Vec<FpVector>) -> Subspace {
        let mut sub = Subspace::span(f, dim, &vectors).expect("shapes");
        loop {
            let mut all = sub.basis_vectors();
            for b in sub.basis_vectors() {
                for sigma in self.perms {
                    all.push(permute_vector(&b, sigma));
                }
            }
            let next = Subspace::span(f, dim, &all).expect("shapes");
            if next == sub {
                return sub;
            }
            sub = next;
        }
    }

    fn is_valid_isotropic(&self, f: Field, n: usize, sub: &Subspace) -> bool {
        let basis = sub.basis_vectors();
        for (i, u) in basis.iter().enumerate() {
            if f.p() == 2 {
                let xz = (0..n).filter(|&k| u[k] == 1 && u[n + k] == 1).count();
                if xz % 2 == 1 {
                    return false;
                }
            }
            for v in &basis[i + 1..] {
                if symplectic_form(f, n, u.as_slice(), v.as_slice()) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self, bound: usize) -> Result<SymmetricExtension> {
        let base = self.canon.stabilizer();
        let f = base.field();
        let n = base.n();
        let start = base.symplectic_span();
        let mut visited: HashSet<Subspace> = HashSet::new();
        let mut examined = 0usize;
        match self.dfs(f, n, start, &mut visited, &mut examined, bound)? {
            Some(ext) => Ok(ext),
            None => Err(Error::ExtensionExhausted(examined)),
        }
    }

    fn dfs(
        &self,
        f: Field,
        n: usize,
        current: Subspace,
        visited: &mut HashSet<Subspace>,
        examined: &mut usize,
        bound: usize,
    ) -> Result<Option<SymmetricExtension>> {
        if current.dim() == n {
            let base = self.canon.stabilizer();
            let logicals = complete_basis(base, &current);
            return self.finish(&logicals, ExtensionPath::Search { candidates: *examined });
        }
        // Operators commuting with everything in `current`, outside it.
        let rows: Vec<FpVector> = current
            .basis_vectors()
            .iter()
            .map(|u| u.slice(n, 2 * n).concat(&u.slice(0, n).neg()).expect("same field"))
            .collect();
        let cent = FpMatrix::from_vectors(f, 2 * n, &rows)?.kernel();
        let size = cent.cardinality().unwrap_or(u128::MAX);
        if size > crate::stabilizer::DEFAULT_ENUMERATION_BOUND {
            return Err(Error::BoundExceeded {
                what: "extension search",
                needed: size,
                bound: crate::stabilizer::DEFAULT_ENUMERATION_BOUND,
            });
        }
        let mut candidates: Vec<FpVector> = cent
            .elements()
            .filter(|v| !current.contains(v))
            .map(|v| current.reduce(&v))
            .collect();
        candidates.sort_by_key(|v| ((0..n).filter(|&k| v[k] != 0 || v[n + k] != 0).count(), v.clone()));
        candidates.dedup();
        for v in candidates {
            *examined += 1;
            if *examined > bound {
                return Err(Error::ExtensionExhausted(bound));
            }
            let mut vecs = current.basis_vectors();
            vecs.push(v);
            let next = self.closure(f, 2 * n, vecs);
            if next.dim() > n || !self.is_valid_isotropic(f, n, &next) {
                continue;
            }
            if !visited.insert(next.clone()) {
                continue;
            }
            if let Some(ext) = self.dfs(f, n, next, visited, examined, bound)? {
                return Ok(Some(ext));
            }
        }
        Ok(None)
    }
}

/// Phase-free operators extending the generators of `base` to a basis of `full`.
fn complete_basis(base: &StabilizerGroup, full: &Subspace) -> Vec<PauliOperator> {
    let f = base.field();
    let n = base.n();
    let mut span: Vec<FpVector> = base.generators().iter().map(|g| g.symplectic()).collect();
    let mut out = Vec::new();
    for v in full.basis_vectors() {
        let mut trial = span.clone();
        trial.push(v.clone());
        if FpMatrix::from_vectors(f, 2 * n, &trial).expect("shapes").rank() == trial.len() {
            span = trial;
            out.push(PauliOperator::from_symplectic(0, &v).expect("even length"));
        }
    }
    out
}
