//! Random generators shared by the integration tests.
#![allow(dead_code)]

use cws_symmetry::graph::LocalGate;
use cws_symmetry::{
    ClassicalCode, CwsUstCode, Field, FpMatrix, FpVector, LocalCliffordWord, PauliOperator,
    Permutation, StabilizerGroup, WeightedGraph,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(p: u32) -> Field {
    Field::new(p).unwrap()
}

pub fn random_vector(rng: &mut TestRng, f: Field, n: usize) -> FpVector {
    FpVector::new(f, (0..n).map(|_| rng.gen_range(0..f.p()) as i64))
}

pub fn random_matrix(rng: &mut TestRng, f: Field, rows: usize, cols: usize) -> FpMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..f.p()) as i64).collect())
        .collect();
    if rows == 0 {
        return FpMatrix::zeros(f, 0, cols);
    }
    FpMatrix::from_rows(f, &data).unwrap()
}

pub fn random_invertible(rng: &mut TestRng, f: Field, n: usize) -> FpMatrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if n == 0 || m.inverse().is_some() {
            return m;
        }
    }
}

fn symplectic_form(f: Field, n: usize, u: &FpVector, v: &FpVector) -> u32 {
    let u = u.as_slice();
    let v = v.as_slice();
    let mut acc = 0i64;
    for i in 0..n {
        acc += u[n + i] as i64 * v[i] as i64 - u[i] as i64 * v[n + i] as i64;
    }
    f.reduce(acc)
}

/// Independent, pairwise commuting symplectic vectors. For qubits every
/// vector has even X/Z overlap, so the operator squares to the identity.
fn random_isotropic_basis(rng: &mut TestRng, f: Field, n: usize, m: usize) -> Vec<FpVector> {
    loop {
        let mut basis: Vec<FpVector> = Vec::new();
        let mut tries = 0;
        while basis.len() < m && tries < 500 {
            tries += 1;
            let v = random_vector(rng, f, 2 * n);
            if v.is_zero() {
                continue;
            }
            if f.p() == 2 {
                let s = v.as_slice();
                let overlap: u32 = (0..n).map(|i| s[i] * s[n + i]).sum();
                if overlap % 2 == 1 {
                    continue;
                }
            }
            if basis.iter().any(|b| symplectic_form(f, n, b, &v) != 0) {
                continue;
            }
            let mut candidate = basis.clone();
            candidate.push(v);
            if FpMatrix::from_vectors(f, 2 * n, &candidate).unwrap().rank() == candidate.len() {
                basis = candidate;
            }
        }
        if basis.len() == m {
            return basis;
        }
    }
}

/// A random valid stabilizer group with `m` generators on `n` qudits.
pub fn random_stabilizer(rng: &mut TestRng, f: Field, n: usize, m: usize) -> StabilizerGroup {
    let basis = random_isotropic_basis(rng, f, n, m);
    let gens: Vec<PauliOperator> = basis
        .iter()
        .map(|v| PauliOperator::from_symplectic(rng.gen_range(0..f.p()) as i64, v).unwrap())
        .collect();
    StabilizerGroup::new(f, n, gens).expect("isotropic independent basis is valid")
}

pub fn random_classical(rng: &mut TestRng, f: Field, m: usize, max_words: usize) -> ClassicalCode {
    let total = (f.p() as usize).pow(m as u32);
    let k = rng.gen_range(1..=max_words.min(total));
    let words = (0..k).map(|_| random_vector(rng, f, m)).collect();
    ClassicalCode::new(f, m, words).unwrap()
}

pub fn random_code(rng: &mut TestRng, f: Field, n: usize, m: usize, max_words: usize) -> CwsUstCode {
    let s = random_stabilizer(rng, f, n, m);
    let c = random_classical(rng, f, m, max_words);
    CwsUstCode::new(s, c).unwrap()
}

pub fn random_permutation(rng: &mut TestRng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::from_images(image).unwrap()
}

/// Random weighted graph whose adjacency matrix is invariant under `sigma`.
pub fn random_invariant_graph(rng: &mut TestRng, f: Field, sigma: &Permutation) -> WeightedGraph {
    let n = sigma.len();
    let mut weight = vec![vec![None::<u32>; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if weight[i][j].is_some() {
                continue;
            }
            let w = rng.gen_range(0..f.p());
            let (mut a, mut b) = (i, j);
            loop {
                weight[a][b] = Some(w);
                weight[b][a] = Some(w);
                a = sigma.apply(a);
                b = sigma.apply(b);
                if (a, b) == (i, j) || (a, b) == (j, i) {
                    break;
                }
            }
        }
    }
    for (i, row) in weight.iter().enumerate() {
        for (j, w) in row.iter().enumerate().skip(i + 1) {
            let w = w.unwrap();
            if w != 0 {
                edges.push((i, j, w as i64));
            }
        }
    }
    WeightedGraph::from_edges(f, n, &edges).unwrap()
}

/// Words of `seed` together with all their images under coordinate permutation by `sigma`.
pub fn permutation_closure(f: Field, sigma: &Permutation, seed: &[FpVector]) -> ClassicalCode {
    let n = sigma.len();
    let mut words = Vec::new();
    for w in seed {
        let mut cur = w.clone();
        for _ in 0..sigma.order() {
            words.push(cur.clone());
            let mut next = FpVector::zero(f, n);
            for i in 0..n {
                next.set(sigma.apply(i), cur.as_slice()[i] as i64);
            }
            cur = next;
        }
    }
    ClassicalCode::new(f, n, words).unwrap()
}

/// A different description of the same code: generators rebased by a random
/// invertible matrix, phases moved between generators and classical words,
/// and optionally one extra logical generator whose coordinate ranges freely.
pub fn rerepresent(rng: &mut TestRng, q: &CwsUstCode, add_logical: bool) -> CwsUstCode {
    let s = q.stabilizer();
    let f = s.field();
    let m = s.rank();
    let u = random_invertible(rng, f, m);
    let rebased = s.rebase(&u).unwrap();
    let mut cls = q.classical().transform(&u.transpose()).unwrap();

    let shifts = random_vector(rng, f, m);
    let gens: Vec<PauliOperator> = rebased
        .generators()
        .iter()
        .zip(shifts.as_slice())
        .map(|(g, &t)| g.times_omega(t as i64))
        .collect();
    cls = cls.translate(&shifts.neg()).unwrap();
    let mut stab = StabilizerGroup::new(f, s.n(), gens).unwrap();

    if add_logical && m < s.n() {
        let logicals = stab.logical_z_completion().unwrap();
        let extra = logicals[rng.gen_range(0..logicals.len())].clone();
        stab = stab.extend(&[extra]).unwrap();
        let mut words = Vec::new();
        for w in cls.words() {
            for x in 0..f.p() {
                words.push(w.concat(&FpVector::new(f, [x as i64])).unwrap());
            }
        }
        cls = ClassicalCode::new(f, m + 1, words).unwrap();
    }
    CwsUstCode::new(stab, cls).unwrap()
}

/// Codes that often have symmetries: graph codes over invariant graphs with
/// invariant classical codes, rebased and rephased so the symmetry is hidden.
pub fn hidden_symmetric_code(rng: &mut TestRng, f: Field, n: usize) -> CwsUstCode {
    let sigma = random_permutation(rng, n);
    let g = random_invariant_graph(rng, f, &sigma);
    let seed: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| random_vector(rng, f, n)).collect();
    let cls = permutation_closure(f, &sigma, &seed);
    let q = g.cws_code(cls).unwrap();
    rerepresent(rng, &q, false)
}

pub fn orbits(sigma: &Permutation) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            orbit.push(v);
            v = sigma.apply(v);
        }
        out.push(orbit);
    }
    out
}

/// A stabilizer code invariant under `sigma`: the graph-state generators of a
/// union of vertex orbits of an invariant graph, conjugated by the same local
/// gate on every qudit, then rebased.
pub fn random_symmetric_stabilizer_code(rng: &mut TestRng, f: Field, sigma: &Permutation) -> CwsUstCode {
    let n = sigma.len();
    let g = random_invariant_graph(rng, f, sigma);
    let all = g.graph_state_stabilizer();
    let orbit_list = orbits(sigma);
    let mut chosen: Vec<usize> = Vec::new();
    while chosen.is_empty() {
        for o in &orbit_list {
            if rng.gen_bool(0.5) {
                chosen.extend(o);
            }
        }
    }
    chosen.sort_unstable();
    let mut gates = vec![LocalGate::Fourier];
    if f.p() > 2 {
        gates.push(LocalGate::Phase(1));
        gates.push(LocalGate::Multiply(f.p() - 1));
    }
    let mut word = LocalCliffordWord::new(n);
    if rng.gen_bool(0.6) {
        let gate = gates[rng.gen_range(0..gates.len())];
        for q in 0..n {
            word.push(q, gate);
        }
    }
    let gens: Vec<PauliOperator> = chosen
        .iter()
        .map(|&v| word.conjugate(&all.generators()[v]).unwrap())
        .collect();
    let s = StabilizerGroup::new(f, n, gens).unwrap();
    let u = random_invertible(rng, f, s.rank());
    let s = s.rebase(&u).unwrap();
    CwsUstCode::new(s.clone(), ClassicalCode::zero_word(f, s.rank())).unwrap()
}
