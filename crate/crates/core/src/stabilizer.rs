//! Stabilizer groups: validation, enumeration, projectors, centralizers,
//! distances, the standard form and CSS splitting.

use std::fmt;

use num_complex::Complex64;

use crate::dense::{hilbert_dim, DenseOperator, DenseState, DEFAULT_ORACLE_BOUND};
use crate::error::{Error, Result};
use crate::fp::{Field, FpMatrix, FpVector, Subspace};
use crate::pauli::PauliOperator;
use crate::permutation::Permutation;

/// Largest number of group elements or Pauli operators enumerated by brute force.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 24;

/// The reason a generator list fails to describe a stabilizer group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A generator acts on the wrong number of qudits or over another field.
    Shape { index: usize },
    /// Generators `i` and `j` satisfy `g_i g_j = ω^exponent g_j g_i`.
    NonCommuting { i: usize, j: usize, exponent: u32 },
    /// `g_index^p = ω^phase I` with a nonzero phase.
    ScalarPower { index: usize, phase: u32 },
    /// The product with these exponents equals `ω^phase I`, `phase ≠ 0`.
    ContainsScalar { combination: Vec<u32>, phase: u32 },
    /// The product with these exponents is the identity.
    Dependent { combination: Vec<u32> },
}

fn exponents(c: &[u32]) -> String {
    c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { index } => write!(f, "generator {} has the wrong shape", index),
            Violation::NonCommuting { i, j, exponent } => write!(
                f,
                "generators {} and {} do not commute (commutator exponent {})",
                i, j, exponent
            ),
            Violation::ScalarPower { index, phase } => write!(
                f,
                "generator {} raised to the p-th power is w^{} I",
                index, phase
            ),
            Violation::ContainsScalar { combination, phase } => write!(
                f,
                "product with exponents [{}] is w^{} I",
                exponents(combination),
                phase
            ),
            Violation::Dependent { combination } => write!(
                f,
                "generators are dependent: exponents [{}] multiply to I",
                exponents(combination)
            ),
        }
    }
}

/// Checks the stabilizer-group invariants of a generator list.
pub fn validate(field: Field, n: usize, generators: &[PauliOperator]) -> std::result::Result<(), Violation> {
    for (i, g) in generators.iter().enumerate() {
        if g.field() != field || g.n() != n {
            return Err(Violation::Shape { index: i });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let c = generators[i]
                .commutator_exponent(&generators[j])
                .expect("shapes checked");
            if c != 0 {
                return Err(Violation::NonCommuting { i, j, exponent: c });
            }
        }
    }
    for (i, g) in generators.iter().enumerate() {
        let power = g.pow(field.p() as u64);
        if power.phase() != 0 {
            return Err(Violation::ScalarPower {
                index: i,
                phase: power.phase(),
            });
        }
    }
    let m = symplectic_rows(field, n, generators);
    let null = m.transpose().kernel();
    let mut dependent = None;
    for y in null.basis_vectors() {
        let prod = ordered_product(field, n, generators, y.as_slice());
        if prod.phase() != 0 {
            return Err(Violation::ContainsScalar {
                combination: y.as_slice().to_vec(),
                phase: prod.phase(),
            });
        }
        dependent.get_or_insert(y);
    }
    match dependent {
        Some(y) => Err(Violation::Dependent {
            combination: y.as_slice().to_vec(),
        }),
        None => Ok(()),
    }
}

fn symplectic_rows(field: Field, n: usize, generators: &[PauliOperator]) -> FpMatrix {
    let rows: Vec<FpVector> = generators.iter().map(|g| g.symplectic()).collect();
    FpMatrix::from_vectors(field, 2 * n, &rows).expect("generator shapes checked")
}

/// `g_1^{y_1} · … · g_m^{y_m}`, multiplied left to right.
pub(crate) fn ordered_product(
    field: Field,
    n: usize,
    generators: &[PauliOperator],
    y: &[u32],
) -> PauliOperator {
    let mut acc = PauliOperator::identity(field, n);
    for (g, &e) in generators.iter().zip(y) {
        if e != 0 {
            acc = acc.mul(&g.pow(e as u64)).expect("same shape");
        }
    }
    acc
}

/// A stabilizer group given by independent, commuting generators that do
/// not generate any nontrivial multiple of the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerGroup {
    field: Field,
    n: usize,
    generators: Vec<PauliOperator>,
}

/// Whether [`StabilizerGroup::minimum_distance`] measures the code
/// (`C(S) \ S`) or the state (nontrivial elements of `S`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Code,
    State,
}

impl StabilizerGroup {
    pub fn new(field: Field, n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        validate(field, n, &generators).map_err(Error::InvalidStabilizer)?;
        Ok(StabilizerGroup {
            field,
            n,
            generators,
        })
    }

    /// Parses one Pauli string per generator.
    pub fn from_strings(field: Field, strings: &[&str]) -> Result<Self> {
        let ops = strings
            .iter()
            .map(|s| PauliOperator::parse(field, s))
            .collect::<Result<Vec<_>>>()?;
        let n = ops.first().map_or(0, |o| o.n());
        Self::new(field, n, ops)
    }

    pub(crate) fn new_unchecked(field: Field, n: usize, generators: Vec<PauliOperator>) -> Self {
        debug_assert_eq!(validate(field, n, &generators), Ok(()));
        StabilizerGroup {
            field,
            n,
            generators,
        }
    }

    pub fn trivial(field: Field, n: usize) -> Self {
        StabilizerGroup {
            field,
            n,
            generators: Vec::new(),
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators `m`.
    #[inline]
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Generator matrix with rows `(x | z)`, shape `m × 2n`.
    pub fn symplectic_matrix(&self) -> FpMatrix {
        symplectic_rows(self.field, self.n, &self.generators)
    }

    /// The symplectic span of the group (the group modulo phases).
    pub fn symplectic_span(&self) -> Subspace {
        Subspace::from_matrix(&self.symplectic_matrix())
    }

    /// `g^y` in ascending generator order.
    pub fn element(&self, y: &FpVector) -> PauliOperator {
        ordered_product(self.field, self.n, &self.generators, y.as_slice())
    }

    /// Every group element once, indexed by exponent vectors in lexicographic order.
    pub fn elements(&self) -> Result<impl Iterator<Item = PauliOperator> + '_> {
        self.elements_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn elements_bounded(
        &self,
        bound: u128,
    ) -> Result<impl Iterator<Item = PauliOperator> + '_> {
        let needed = self.field.size_pow(self.rank()).unwrap_or(u128::MAX);
        if needed > bound {
            return Err(Error::BoundExceeded {
                what: "group enumeration",
                needed,
                bound,
            });
        }
        Ok(FpVector::all(self.field, self.rank()).map(move |y| self.element(&y)))
    }

    /// Writes `op = ω^φ g^y`; returns `(y, φ)` or `None` when `op` is not in
    /// the group up to a phase.
    pub fn decompose(&self, op: &PauliOperator) -> Result<Option<(FpVector, u32)>> {
        self.field.check(op.field())?;
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: op.n(),
            });
        }
        let mt = self.symplectic_matrix().transpose();
        let Some(y) = mt.solve(&op.symplectic())? else {
            return Ok(None);
        };
        let g = self.element(&y);
        Ok(Some((y, self.field.sub(op.phase(), g.phase()))))
    }

    /// Membership including the phase.
    pub fn contains(&self, op: &PauliOperator) -> Result<bool> {
        Ok(matches!(self.decompose(op)?, Some((_, 0))))
    }

    /// Equality as sets of operators, phases included.
    pub fn same_group(&self, other: &StabilizerGroup) -> bool {
        if self.field != other.field || self.n != other.n || self.rank() != other.rank() {
            return false;
        }
        other
            .generators
            .iter()
            .all(|g| self.contains(g).unwrap_or(false))
    }

    /// New generators `h_j = Π_i g_i^{U_ji}` for an invertible `U`.
    pub fn rebase(&self, u: &FpMatrix) -> Result<StabilizerGroup> {
        if u.rows() != self.rank() || u.cols() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.rows(),
            });
        }
        if u.inverse().is_none() {
            return Err(Error::Precondition("rebasing matrix is singular".into()));
        }
        let gens = (0..u.rows())
            .map(|j| self.element(&u.row_vector(j)))
            .collect();
        Ok(StabilizerGroup::new_unchecked(self.field, self.n, gens))
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<StabilizerGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.permute(sigma))
            .collect::<Result<Vec<_>>>()?;
        Ok(StabilizerGroup::new_unchecked(self.field, self.n, gens))
    }

    /// Appends generators, validating the enlarged group.
    pub fn extend(&self, extra: &[PauliOperator]) -> Result<StabilizerGroup> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        StabilizerGroup::new(self.field, self.n, gens)
    }

    /// Symplectic subspace of the centralizer: `{v : [v, g] = 0 for all g}`.
    pub fn centralizer_space(&self) -> Subspace {
        let f = self.field;
        let rows: Vec<FpVector> = self
            .generators
            .iter()
            .map(|g| g.z().concat(&g.x().neg()).expect("same field"))
            .collect();
        FpMatrix::from_vectors(f, 2 * self.n, &rows)
            .expect("shapes checked")
            .kernel()
    }

    /// Phase-free generators of the centralizer `C(S)`; there are `2n − m`.
    pub fn centralizer(&self) -> Vec<PauliOperator> {
        self.centralizer_space()
            .basis_vectors()
            .iter()
            .map(|v| PauliOperator::from_symplectic(0, v).expect("even length"))
            .collect()
    }

    /// Brute-force minimum distance. `Ok(None)` when the set searched is empty.
    pub fn minimum_distance(&self, mode: DistanceMode) -> Result<Option<usize>> {
        self.minimum_distance_bounded(mode, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn minimum_distance_bounded(
        &self,
        mode: DistanceMode,
        bound: u128,
    ) -> Result<Option<usize>> {
        let span = self.symplectic_span();
        let (space, exclude) = match mode {
            DistanceMode::Code => (self.centralizer_space(), Some(&span)),
            DistanceMode::State => (span.clone(), None),
        };
        let needed = space.cardinality().unwrap_or(u128::MAX);
        if needed > bound {
            return Err(Error::BoundExceeded {
                what: "distance enumeration",
                needed,
                bound,
            });
        }
        let n = self.n;
        let best = space
            .elements()
            .filter(|v| !v.is_zero())
            .filter(|v| exclude.is_none_or(|s| !s.contains(v)))
            .map(|v| (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count())
            .min();
        Ok(best)
    }

    /// Dense projector `(1/p^m) Σ_{M ∈ S} M`.
    pub fn projector_dense(&self) -> Result<DenseOperator> {
        self.projector_dense_bounded(DEFAULT_ORACLE_BOUND)
    }

    pub fn projector_dense_bounded(&self, bound: usize) -> Result<DenseOperator> {
        hilbert_dim(self.field, self.n, bound)?;
        let mut acc = DenseOperator::zero(self.field, self.n)?;
        let norm = 1.0 / self.field.size_pow(self.rank()).unwrap_or(u128::MAX) as f64;
        for g in self.elements()? {
            acc.add_pauli(&g, Complex64::new(norm, 0.0));
        }
        Ok(acc)
    }

    /// Unit-norm dense vector of the stabilized state, up to a global phase (requires `m = n`).
    ///
    /// The vector is `P|j⟩` for a basis state `|j⟩` in the support, found by
    /// solving the eigenvalue conditions of the Z-type elements.
    pub fn state_dense(&self) -> Result<DenseState> {
        if self.rank() != self.n {
            return Err(Error::Precondition(format!(
                "state vector needs {} generators, group has {}",
                self.n,
                self.rank()
            )));
        }
        let dim = hilbert_dim(self.field, self.n, DEFAULT_ORACLE_BOUND)?;
        let f = self.field;
        let zs = self.z_type_elements();
        let mut a_rows = Vec::new();
        let mut rhs = Vec::new();
        for z in &zs {
            a_rows.push(z.z().clone());
            rhs.push(-(z.phase() as i64));
        }
        let a = FpMatrix::from_vectors(f, self.n, &a_rows)?;
        let j = a
            .solve(&FpVector::new(f, rhs))?
            .expect("Z-type eigenvalue conditions of a stabilizer state are consistent");
        let index = j
            .as_slice()
            .iter()
            .fold(0usize, |acc, &d| acc * f.p() as usize + d as usize);
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for g in self.elements()? {
            apply_pauli_add(&g, &amps, &mut out);
        }
        let norm = out.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut out {
            *a /= norm;
        }
        DenseState::new(f, self.n, out)
    }

    fn typed_elements(&self, z_type: bool) -> Vec<PauliOperator> {
        let n = self.n;
        let g = self.symplectic_matrix();
        // Reorder columns so the part that must vanish comes first.
        let (first, second) = if z_type {
            (g.columns(0, n), g.columns(n, 2 * n))
        } else {
            (g.columns(n, 2 * n), g.columns(0, n))
        };
        let reordered = first.hstack(&second).expect("same rows");
        let (r, u) = reordered.rref_with_transform();
        let lead = r.pivots.iter().filter(|&&c| c < n).count();
        (lead..r.rank)
            .map(|i| self.element(&u.row_vector(i)))
            .collect()
    }

    /// Generators of the subgroup of Z-type elements (with phases).
    pub fn z_type_elements(&self) -> Vec<PauliOperator> {
        self.typed_elements(true)
    }

    /// Generators of the subgroup of X-type elements (with phases).
    pub fn x_type_elements(&self) -> Vec<PauliOperator> {
        self.typed_elements(false)
    }

    /// Splits the group into X-type and Z-type generators when possible.
    pub fn is_css(&self) -> Option<(Vec<PauliOperator>, Vec<PauliOperator>)> {
        let xs = self.x_type_elements();
        let zs = self.z_type_elements();
        (xs.len() + zs.len() == self.rank()).then_some((xs, zs))
    }

    pub fn standard_form(&self) -> Result<StandardForm> {
        StandardForm::compute(self)
    }

    /// Completes the group to a stabilizer state with Z-type logical operators.
    pub fn logical_z_completion(&self) -> Result<Vec<PauliOperator>> {
        Ok(self.standard_form()?.logical_z_completion())
    }
}

/// `out += op · v` for a dense vector `v`.
pub(crate) fn apply_pauli_add(op: &PauliOperator, v: &[Complex64], out: &mut [Complex64]) {
    let f = op.field();
    let p = f.p() as usize;
    let n = op.n();
    let w = crate::dense::omega_powers(f.p());
    let mut d = vec![0usize; n];
    for (col, &amp) in v.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut j = col;
        for i in (0..n).rev() {
            d[i] = j % p;
            j /= p;
        }
        let mut k = op.phase() as usize;
        let mut row = 0usize;
        for (i, di) in d.iter().enumerate() {
            let (a, b) = op.local_factor(i);
            k += b as usize * di;
            row = row * p + (di + a as usize) % p;
        }
        out[row] += amp * w[k % p];
    }
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerGroup(p={}, n={}, [", self.field.p(), self.n)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "])")
    }
}

/// Generator matrix brought to the form
/// `[[I A1 A2 | B 0 C], [0 0 0 | D I E]]` after a qudit permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// Rank of the X part.
    pub r: usize,
    /// Sends original qudit `i` to column `permutation(i)` of the form.
    pub permutation: Permutation,
    /// Rows of the form as operators (with phases), in permuted coordinates.
    pub generators: Vec<PauliOperator>,
    /// `U` with row `j` giving the exponents of the original generators
    /// whose product is `generators[j]` (before permuting qudits).
    pub transform: FpMatrix,
    pub a1: FpMatrix,
    pub a2: FpMatrix,
    pub b: FpMatrix,
    pub c: FpMatrix,
    pub d: FpMatrix,
    pub e: FpMatrix,
}

impl StandardForm {
    fn compute(s: &StabilizerGroup) -> Result<StandardForm> {
        let f = s.field;
        let n = s.n;
        let m = s.rank();
        let g = s.symplectic_matrix();
        let (r1, u1) = g.rref_with_transform();
        let r = r1.pivots.iter().filter(|&&c| c < n).count();
        let x_pivots: Vec<usize> = r1.pivots[..r].to_vec();
        let rest: Vec<usize> = (0..n).filter(|q| !x_pivots.contains(q)).collect();
        let sdim = m - r;

        // Z part of the lower rows on the non-pivot qudits.
        let lower_z: Vec<FpVector> = (r..m)
            .map(|i| FpVector::new(f, rest.iter().map(|&q| r1.matrix.get(i, n + q) as i64)))
            .collect();
        let lz = FpMatrix::from_vectors(f, rest.len(), &lower_z)?;
        let (r2, u2) = lz.rref_with_transform();
        if r2.rank != sdim {
            return Err(Error::Precondition(
                "Z block of the lower rows is rank deficient".into(),
            ));
        }
        let mut order = x_pivots.clone();
        order.extend(r2.pivots.iter().map(|&k| rest[k]));
        order.extend(
            (0..rest.len())
                .filter(|k| !r2.pivots.contains(k))
                .map(|k| rest[k]),
        );
        let mut image = vec![0; n];
        for (pos, &q) in order.iter().enumerate() {
            image[q] = pos;
        }
        let permutation = Permutation::from_images(image)?;

        // Combined row transform: blockdiag(I_r, U2) · U1.
        let mut block = FpMatrix::identity(f, m);
        for i in 0..sdim {
            for j in 0..sdim {
                block.set(r + i, r + j, u2.get(i, j) as i64);
            }
        }
        let mut v = block.mul(&u1)?;
        let mut rows = v.mul(&g)?;
        // Clear the middle Z block of the upper rows.
        for i in 0..r {
            for j in 0..sdim {
                let col = n + order[r + j];
                let c = rows.get(i, col);
                if c != 0 {
                    let k = f.neg(c) as i64;
                    for t in 0..2 * n {
                        let val = rows.get(i, t) as i64 + k * rows.get(r + j, t) as i64;
                        rows.set(i, t, val);
                    }
                    for t in 0..m {
                        let val = v.get(i, t) as i64 + k * v.get(r + j, t) as i64;
                        v.set(i, t, val);
                    }
                }
            }
        }
        let generators = (0..m)
            .map(|j| s.element(&v.row_vector(j)).permute(&permutation))
            .collect::<Result<Vec<_>>>()?;

        let block_of = |row0: usize, row1: usize, z: bool, c0: usize, c1: usize| {
            let mut out = FpMatrix::zeros(f, row1 - row0, c1 - c0);
            for (i, gi) in generators[row0..row1].iter().enumerate() {
                let src = if z { gi.z() } else { gi.x() };
                for c in c0..c1 {
                    out.set(i, c - c0, src[c] as i64);
                }
            }
            out
        };
        let (r_end, s_end) = (r, r + sdim);
        Ok(StandardForm {
            r,
            a1: block_of(0, r, false, r_end, s_end),
            a2: block_of(0, r, false, s_end, n),
            b: block_of(0, r, true, 0, r_end),
            c: block_of(0, r, true, s_end, n),
            d: block_of(r, m, true, 0, r_end),
            e: block_of(r, m, true, s_end, n),
            permutation,
            generators,
            transform: v,
        })
    }

    /// The `m × 2n` matrix assembled from the blocks.
    pub fn reassemble(&self) -> FpMatrix {
        let f = self.a1.field();
        let r = self.r;
        let sdim = self.d.rows();
        let m = r + sdim;
        let n = r + self.a1.cols() + self.a2.cols();
        let mut out = FpMatrix::zeros(f, m, 2 * n);
        let put = |out: &mut FpMatrix, blk: &FpMatrix, r0: usize, c0: usize| {
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    out.set(r0 + i, c0 + j, blk.get(i, j) as i64);
                }
            }
        };
        put(&mut out, &FpMatrix::identity(f, r), 0, 0);
        put(&mut out, &self.a1, 0, r);
        put(&mut out, &self.a2, 0, r + sdim);
        put(&mut out, &self.b, 0, n);
        put(&mut out, &self.c, 0, n + r + sdim);
        put(&mut out, &self.d, r, n);
        put(&mut out, &FpMatrix::identity(f, sdim), r, n + r);
        put(&mut out, &self.e, r, n + r + sdim);
        out
    }

    /// The `n − m` operators `[0 0 0 | −A2^t 0 I]`, mapped back to the
    /// original qudit order.
    pub fn logical_z_completion(&self) -> Vec<PauliOperator> {
        let f = self.a1.field();
        let r = self.r;
        let sdim = self.d.rows();
        let k = self.a2.cols();
        let n = r + sdim + k;
        let back = self.permutation.inverse();
        (0..k)
            .map(|l| {
                let mut z = FpVector::zero(f, n);
                for i in 0..r {
                    z.set(i, -(self.a2.get(i, l) as i64));
                }
                z.set(r + sdim + l, 1);
                PauliOperator::new(0, FpVector::zero(f, n), z)
                    .expect("same field")
                    .permute(&back)
                    .expect("same length")
            })
            .collect()
    }
}
