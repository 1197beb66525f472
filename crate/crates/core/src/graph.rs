//! Weighted graphs, graph states, the graph standard form of stabilizer
//! states and local-complementation orbits.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::classical::ClassicalCode;
use crate::cws::CwsUstCode;
use crate::dense::{omega_powers, DenseState};
use crate::error::{Error, Result};
use crate::fp::{Field, FpMatrix, FpVector};
use crate::pauli::PauliOperator;
use crate::permutation::Permutation;
use crate::stabilizer::StabilizerGroup;

/// Default cap on the number of graphs visited by [`lc_orbit`].
pub const DEFAULT_ORBIT_BOUND: usize = 1_000_000;

/// An undirected graph with edge weights in F_p and no loops.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedGraph {
    adj: FpMatrix,
}

impl WeightedGraph {
    pub fn new(adj: FpMatrix) -> Result<Self> {
        let n = adj.rows();
        if adj.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: adj.cols(),
            });
        }
        for i in 0..n {
            if adj.get(i, i) != 0 {
                return Err(Error::Precondition(format!("vertex {} has a loop", i)));
            }
            for j in 0..i {
                if adj.get(i, j) != adj.get(j, i) {
                    return Err(Error::Precondition(format!(
                        "adjacency is not symmetric at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(WeightedGraph { adj })
    }

    pub fn empty(field: Field, n: usize) -> Self {
        WeightedGraph {
            adj: FpMatrix::zeros(field, n, n),
        }
    }

    /// Builds a graph from `(i, j, weight)` triples.
    pub fn from_edges(field: Field, n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let mut adj = FpMatrix::zeros(field, n, n);
        for &(i, j, w) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Precondition(format!("bad edge ({}, {})", i, j)));
            }
            adj.set(i, j, w);
            adj.set(j, i, w);
        }
        Ok(WeightedGraph { adj })
    }

    /// The cycle graph on `n` vertices (the pentagon for `n = 5`).
    pub fn cycle(field: Field, n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        Self::from_edges(field, n, &edges).expect("cycle edges are valid for n ≥ 3")
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.adj.field()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.adj.get(i, j)
    }

    pub fn adjacency(&self) -> &FpMatrix {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.adj.get(v, u) != 0).collect()
    }

    /// Edges `(i, j, w)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.adj.get(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// Relabels vertex `i` as `σ(i)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<WeightedGraph> {
        let n = self.n();
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.len(),
            });
        }
        let mut adj = FpMatrix::zeros(self.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                adj.set(sigma.apply(i), sigma.apply(j), self.adj.get(i, j) as i64);
            }
        }
        Ok(WeightedGraph { adj })
    }

    /// `A[σ(i)][σ(j)] = A[i][j]` for all vertex pairs.
    pub fn automorphism_check(&self, sigma: &Permutation) -> bool {
        let n = self.n();
        sigma.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| self.adj.get(sigma.apply(i), sigma.apply(j)) == self.adj.get(i, j))
            })
    }

    /// Generators `g_i = X_i Π_j Z_j^{A_ij}`.
    pub fn graph_state_stabilizer(&self) -> StabilizerGroup {
        let f = self.field();
        let n = self.n();
        let gens = (0..n)
            .map(|i| {
                PauliOperator::new(0, FpVector::unit(f, n, i), self.adj.row_vector(i))
                    .expect("same shape")
            })
            .collect();
        StabilizerGroup::new_unchecked(f, n, gens)
    }

    /// The CWS code `(graph state stabilizer, C)`.
    pub fn cws_code(&self, cls: ClassicalCode) -> Result<CwsUstCode> {
        CwsUstCode::new(self.graph_state_stabilizer(), cls)
    }

    /// Toggles every edge between two neighbours of `v` (qubits only).
    pub fn local_complement(&self, v: usize) -> Result<WeightedGraph> {
        if self.field().p() != 2 {
            return Err(Error::QubitsOnly(self.field().p()));
        }
        let nb = self.neighbors(v);
        let mut adj = self.adj.clone();
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                let w = 1 - adj.get(a, b) as i64;
                adj.set(a, b, w);
                adj.set(b, a, w);
            }
        }
        Ok(WeightedGraph { adj })
    }

    /// Local Clifford word taking the graph state of `self` to that of
    /// `self.local_complement(v)`, up to a global phase.
    pub fn local_complement_word(&self, v: usize) -> Result<LocalCliffordWord> {
        if self.field().p() != 2 {
            return Err(Error::QubitsOnly(self.field().p()));
        }
        let mut w = LocalCliffordWord::new(self.n());
        for u in self.neighbors(v) {
            w.push(u, LocalGate::QubitPhase { dagger: true });
        }
        w.push(v, LocalGate::Fourier);
        w.push(v, LocalGate::QubitPhase { dagger: false });
        w.push(v, LocalGate::Fourier);
        Ok(w)
    }

    /// Dense graph state `Π_{i<j} CZ_{ij}^{A_ij} |+…+⟩`, up to a global phase.
    pub fn state_dense(&self) -> Result<DenseState> {
        self.graph_state_stabilizer().state_dense()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for i in 0..self.n() {
            s.push_str(&format!("  {};\n", i));
        }
        for (i, j, w) in self.edges() {
            s.push_str(&format!("  {} -- {} [label={}];\n", i, j, w));
        }
        s.push_str("}\n");
        s
    }

    fn to_bits(&self) -> Vec<u64> {
        (0..self.n())
            .map(|i| {
                (0..self.n())
                    .filter(|&j| self.adj.get(i, j) != 0)
                    .fold(0u64, |acc, j| acc | 1 << j)
            })
            .collect()
    }

    fn from_bits(field: Field, rows: &[u64]) -> Self {
        let n = rows.len();
        let mut adj = FpMatrix::zeros(field, n, n);
        for (i, r) in rows.iter().enumerate() {
            for j in 0..n {
                if r >> j & 1 == 1 {
                    adj.set(i, j, 1);
                }
            }
        }
        WeightedGraph { adj }
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph(p={}, n={}, {:?})", self.field().p(), self.n(), self.edges())
    }
}

/// Elementary single-qudit Clifford gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalGate {
    /// `F|j⟩ = p^{-1/2} Σ_k ω^{jk} |k⟩`; maps `X → Z`, `Z → X^{-1}`.
    Fourier,
    /// `D_c|j⟩ = ω^{c·j(j−1)/2} |j⟩` for odd `p`; maps `X → X Z^c`.
    Phase(u32),
    /// `M_c|j⟩ = |c·j⟩` for `c ≠ 0`; maps `X → X^c`, `Z → Z^{1/c}`.
    Multiply(u32),
    /// `ω^0 X^a Z^b`.
    Pauli(u32, u32),
    /// Qubit `S = diag(1, i)` or its adjoint; used only for dense replay.
    QubitPhase { dagger: bool },
}

impl LocalGate {
    /// Conjugates the single-qudit factor `ω^k X^a Z^b`; returns the new `(k, a, b)`.
    pub fn conjugate(&self, field: Field, k: u32, a: u32, b: u32) -> Result<(u32, u32, u32)> {
        let p = field.p() as i64;
        let (k, a, b) = (k as i64, a as i64, b as i64);
        let out = match *self {
            LocalGate::Fourier => (k - a * b, -b, a),
            LocalGate::Phase(c) => {
                if p == 2 {
                    return Err(Error::Precondition(
                        "phase gate D_c needs odd p; use the qubit S gate".into(),
                    ));
                }
                let c = c as i64;
                // a(a−1)/2 is an integer; reduce before multiplying.
                let tri = (a * (a - 1) / 2) % p;
                (k + c * tri, a, b + c * a)
            }
            LocalGate::Multiply(c) => {
                if c % field.p() == 0 {
                    return Err(Error::Precondition("multiplier must be nonzero".into()));
                }
                let ci = field.inv(c % field.p()) as i64;
                (k, c as i64 * a, ci * b)
            }
            LocalGate::Pauli(pa, pb) => {
                // P M P^{-1} = ω^{pb·a − pa·b} M
                (k + pb as i64 * a - pa as i64 * b, a, b)
            }
            LocalGate::QubitPhase { .. } => {
                if a.rem_euclid(2) == 0 {
                    (k, a, b)
                } else {
                    return Err(Error::Precondition(
                        "S gate maps X to a Pauli outside the ω-phase group".into(),
                    ));
                }
            }
        };
        Ok((field.reduce(out.0), field.reduce(out.1), field.reduce(out.2)))
    }

    /// The `p × p` matrix (row-major).
    pub fn matrix(&self, field: Field) -> Result<Vec<Complex64>> {
        let p = field.p() as usize;
        let w = omega_powers(field.p());
        let zero = Complex64::new(0.0, 0.0);
        let mut m = vec![zero; p * p];
        match *self {
            LocalGate::Fourier => {
                let s = if p == 2 {
                    FRAC_1_SQRT_2
                } else {
                    1.0 / (p as f64).sqrt()
                };
                for r in 0..p {
                    for c in 0..p {
                        m[r * p + c] = w[(r * c) % p] * s;
                    }
                }
            }
            LocalGate::Phase(c) => {
                if p == 2 {
                    return Err(Error::Precondition(
                        "phase gate D_c needs odd p; use the qubit S gate".into(),
                    ));
                }
                for j in 0..p {
                    let e = (c as usize * ((j * j.saturating_sub(1) / 2) % p)) % p;
                    m[j * p + j] = w[e];
                }
            }
            LocalGate::Multiply(c) => {
                if (c as usize).is_multiple_of(p) {
                    return Err(Error::Precondition("multiplier must be nonzero".into()));
                }
                for j in 0..p {
                    m[(c as usize * j) % p * p + j] = Complex64::new(1.0, 0.0);
                }
            }
            LocalGate::Pauli(a, b) => {
                for j in 0..p {
                    m[(j + a as usize) % p * p + j] = w[(b as usize * j) % p];
                }
            }
            LocalGate::QubitPhase { dagger } => {
                if p != 2 {
                    return Err(Error::QubitsOnly(field.p()));
                }
                m[0] = Complex64::new(1.0, 0.0);
                m[3] = Complex64::new(0.0, if dagger { -1.0 } else { 1.0 });
            }
        }
        Ok(m)
    }
}

impl fmt::Display for LocalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalGate::Fourier => write!(f, "F"),
            LocalGate::Phase(c) => write!(f, "D{}", c),
            LocalGate::Multiply(c) => write!(f, "M{}", c),
            LocalGate::Pauli(a, b) => write!(f, "P{}.{}", a, b),
            LocalGate::QubitPhase { dagger: false } => write!(f, "S"),
            LocalGate::QubitPhase { dagger: true } => write!(f, "Sdg"),
        }
    }
}

/// A sequence of single-qudit gates, applied first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCliffordWord {
    n: usize,
    gates: Vec<(usize, LocalGate)>,
}

impl LocalCliffordWord {
    pub fn new(n: usize) -> Self {
        LocalCliffordWord {
            n,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, qudit: usize, gate: LocalGate) {
        self.gates.push((qudit, gate));
    }

    pub fn gates(&self) -> &[(usize, LocalGate)] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `U M U†` where `U` is the product of the gates.
    pub fn conjugate(&self, op: &PauliOperator) -> Result<PauliOperator> {
        let f = op.field();
        let mut out = op.clone();
        for &(q, gate) in &self.gates {
            let (a, b) = out.local_factor(q);
            let (k, a2, b2) = gate.conjugate(f, out.phase(), a, b)?;
            out.set_local(q, a2, b2);
            out = out.with_phase(k as i64);
        }
        Ok(out)
    }

    /// Applies the gates to a dense state.
    pub fn apply(&self, state: &DenseState) -> Result<DenseState> {
        let f = Field::new(state.p())?;
        let mut s = state.clone();
        for &(q, gate) in &self.gates {
            s.apply_local(q, &gate.matrix(f)?);
        }
        Ok(s)
    }
}

impl fmt::Display for LocalCliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return write!(f, "identity");
        }
        let parts: Vec<String> = self
            .gates
            .iter()
            .map(|(q, g)| format!("{}@{}", g, q))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Result of [`to_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphForm {
    pub graph: WeightedGraph,
    /// `U` with `U|ψ⟩ ∝ |G⟩`.
    pub word: LocalCliffordWord,
    /// `T` such that classical words transform as `c ↦ c·T`.
    pub code_transform: FpMatrix,
}

fn x_block_rank(ops: &[PauliOperator], n: usize) -> usize {
    let f = ops[0].field();
    let rows: Vec<FpVector> = ops.iter().map(|g| g.x().clone()).collect();
    FpMatrix::from_vectors(f, n, &rows).expect("shapes").rank()
}

/// Brings a stabilizer state to graph form by local Clifford operations.
///
/// Fourier gates are applied greedily to the lowest-index qudit whose
/// exchange of X and Z columns increases the rank of the X block. The
/// generators are then rebased so the X block is the identity, diagonal Z
/// entries are removed with phase gates and leftover phases with Pauli Z
/// corrections.
pub fn to_graph(s: &StabilizerGroup) -> Result<GraphForm> {
    let n = s.n();
    let f = s.field();
    if s.rank() != n {
        return Err(Error::Precondition(format!(
            "graph form needs a stabilizer state ({} generators), got {}",
            n,
            s.rank()
        )));
    }
    let mut word = LocalCliffordWord::new(n);
    if n == 0 {
        return Ok(GraphForm {
            graph: WeightedGraph::empty(f, 0),
            word,
            code_transform: FpMatrix::zeros(f, 0, 0),
        });
    }
    let mut gens: Vec<PauliOperator> = s.generators().to_vec();
    let mut rank = x_block_rank(&gens, n);
    while rank < n {
        let mut improved = false;
        for q in 0..n {
            let mut trial = LocalCliffordWord::new(n);
            trial.push(q, LocalGate::Fourier);
            let cand = gens
                .iter()
                .map(|g| trial.conjugate(g))
                .collect::<Result<Vec<_>>>()?;
            let r = x_block_rank(&cand, n);
            if r > rank {
                gens = cand;
                rank = r;
                word.push(q, LocalGate::Fourier);
                improved = true;
                break;
            }
        }
        if !improved {
            return Err(Error::Precondition("X block cannot be made invertible".into()));
        }
    }
    let xs: Vec<FpVector> = gens.iter().map(|g| g.x().clone()).collect();
    let xmat = FpMatrix::from_vectors(f, n, &xs)?;
    let t = xmat.inverse().expect("X block has full rank");
    let conj = StabilizerGroup::new_unchecked(f, n, gens);
    let rebased = conj.rebase(&t)?;
    let mut gens = rebased.generators().to_vec();
    for i in 0..n {
        let c = gens[i].z()[i];
        if c != 0 {
            let gate = LocalGate::Phase(f.neg(c));
            let mut w = LocalCliffordWord::new(n);
            w.push(i, gate);
            gens = gens.iter().map(|g| w.conjugate(g)).collect::<Result<_>>()?;
            word.push(i, gate);
        }
    }
    for (i, g) in gens.iter_mut().enumerate() {
        let k = g.phase();
        if k != 0 {
            let gate = LocalGate::Pauli(0, f.neg(k));
            let mut w = LocalCliffordWord::new(n);
            w.push(i, gate);
            *g = w.conjugate(g)?;
            word.push(i, gate);
        }
    }
    let mut adj = FpMatrix::zeros(f, n, n);
    for (i, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.phase(), 0);
        debug_assert!(g.x() == &FpVector::unit(f, n, i));
        for j in 0..n {
            adj.set(i, j, g.z()[j] as i64);
        }
    }
    Ok(GraphForm {
        graph: WeightedGraph::new(adj)?,
        word,
        code_transform: t.transpose(),
    })
}

/// Standard form `(G, C')` of a code: graph, transformed classical code and
/// the local Clifford word relating them. Codes with fewer than `n`
/// generators are first completed with Z-type logical operators.
pub fn code_to_graph(q: &CwsUstCode) -> Result<(GraphForm, ClassicalCode)> {
    let full = complete_to_cws(q)?;
    let gf = to_graph(full.stabilizer())?;
    let cls = full.classical().transform(&gf.code_transform)?;
    Ok((gf, cls))
}

/// Rewrites a USt code with `m < n` as a CWS code by appending Z-type
/// logical operators and letting their coordinates range freely.
pub fn complete_to_cws(q: &CwsUstCode) -> Result<CwsUstCode> {
    let s = q.stabilizer();
    let k = s.n() - s.rank();
    if k == 0 {
        return Ok(q.clone());
    }
    let f = s.field();
    let full = s.extend(&s.logical_z_completion()?)?;
    let mut words = Vec::new();
    for w in q.classical().words() {
        for tail in FpVector::all(f, k) {
            words.push(w.concat(&tail)?);
        }
    }
    CwsUstCode::new(full, ClassicalCode::new(f, s.n(), words)?)
}

/// Every labeled graph reachable by local complementations (qubits only).
pub fn lc_orbit(g: &WeightedGraph, bound: usize) -> Result<Vec<WeightedGraph>> {
    let f = g.field();
    if f.p() != 2 {
        return Err(Error::QubitsOnly(f.p()));
    }
    let n = g.n();
    if n > 64 {
        return Err(Error::Precondition("orbit enumeration supports at most 64 vertices".into()));
    }
    let start = g.to_bits();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for v in 0..n {
            let nb = cur[v];
            if nb.count_ones() < 2 {
                continue;
            }
            let mut next = cur.clone();
            let mut rest = nb;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next[a] ^= nb & !(1u64 << a);
            }
            if !seen.contains(&next) {
                if seen.len() >= bound {
                    return Err(Error::BoundExceeded {
                        what: "LC orbit",
                        needed: seen.len() as u128 + 1,
                        bound: bound as u128,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<Vec<u64>> = seen.into_iter().collect();
    all.sort();
    Ok(all.iter().map(|b| WeightedGraph::from_bits(f, b)).collect())
}

/// Which orbit members are invariant under the supplied permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbit_size: usize,
    /// Per permutation: number of invariant members and the first of them.
    pub per_permutation: Vec<(Permutation, usize, Option<WeightedGraph>)>,
    /// Members invariant under every permutation at once.
    pub joint_count: usize,
    pub joint_witness: Option<WeightedGraph>,
}

pub fn orbit_symmetry_search(
    g: &WeightedGraph,
    perms: &[Permutation],
    bound: usize,
) -> Result<OrbitReport> {
    let orbit = lc_orbit(g, bound)?;
    let mut per: Vec<(Permutation, usize, Option<WeightedGraph>)> =
        perms.iter().map(|p| (p.clone(), 0, None)).collect();
    let mut joint_count = 0;
    let mut joint_witness = None;
    for member in &orbit {
        let mut all = true;
        for entry in per.iter_mut() {
            if member.automorphism_check(&entry.0) {
                entry.1 += 1;
                entry.2.get_or_insert_with(|| member.clone());
            } else {
                all = false;
            }
        }
        if all {
            joint_count += 1;
            joint_witness.get_or_insert_with(|| member.clone());
        }
    }
    Ok(OrbitReport {
        orbit_size: orbit.len(),
        per_permutation: per,
        joint_count,
        joint_witness,
    })
}

/// Orbit members admitting one of a list of candidate automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub orbit_size: usize,
    pub candidates: usize,
    /// Members for which some candidate is an automorphism.
    pub count: usize,
    pub witness: Option<(WeightedGraph, Permutation)>,
}

/// Scans the LC orbit for members invariant under at least one candidate.
pub fn orbit_automorphism_search(
    g: &WeightedGraph,
    candidates: &[Permutation],
    bound: usize,
) -> Result<AutomorphismReport> {
    let orbit = lc_orbit(g, bound)?;
    let mut count = 0;
    let mut witness = None;
    for member in &orbit {
        if let Some(p) = candidates.iter().find(|p| member.automorphism_check(p)) {
            count += 1;
            witness.get_or_insert_with(|| (member.clone(), p.clone()));
        }
    }
    Ok(AutomorphismReport {
        orbit_size: orbit.len(),
        candidates: candidates.len(),
        count,
        witness,
    })
}

/// Every permutation of `n ≤ 10` points with exact order `k`.
pub fn permutations_of_order(n: usize, k: usize) -> Result<Vec<Permutation>> {
    if n > 10 {
        return Err(Error::Precondition(
            "enumerating permutations by order supports n ≤ 10".into(),
        ));
    }
    Ok(Permutation::all(n)
        .into_iter()
        .filter(|p| p.order() == k)
        .collect())
}

/// Orbit members with some automorphism of exact order `k`.
pub fn orbit_order_search(g: &WeightedGraph, k: usize, bound: usize) -> Result<AutomorphismReport> {
    orbit_automorphism_search(g, &permutations_of_order(g.n(), k)?, bound)
}
