mod common;

use common::*;
use cws_symmetry::graph::{code_to_graph, lc_orbit, to_graph, LocalGate};
use cws_symmetry::{DenseOperator, LocalCliffordWord, PauliOperator, StabilizerGroup, WeightedGraph};
use rand::Rng;

fn random_graph(rng: &mut TestRng, p: u32, n: usize) -> WeightedGraph {
    let f = field(p);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(0..p) as i64;
            if w != 0 {
                edges.push((i, j, w));
            }
        }
    }
    WeightedGraph::from_edges(f, n, &edges).unwrap()
}

#[test]
fn to_graph_word_maps_the_state_onto_the_graph_state() {
    let mut rng = rng(31);
    for p in [2u32, 3, 5] {
        let f = field(p);
        for _ in 0..60 {
            let n = rng.gen_range(1..=if p == 5 { 3 } else { 4 });
            let s = random_stabilizer(&mut rng, f, n, n);
            let form = to_graph(&s).unwrap();
            let image = form.word.apply(&s.state_dense().unwrap()).unwrap();
            let target = form.graph.state_dense().unwrap();
            assert!((image.fidelity(&target) - 1.0).abs() < 1e-9, "p={} s={:?}", p, s);
        }
    }
}

#[test]
fn to_graph_word_conjugates_generators_into_the_graph_group() {
    let mut rng = rng(32);
    for p in [2u32, 3, 7] {
        let f = field(p);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let s = random_stabilizer(&mut rng, f, n, n);
            let form = to_graph(&s).unwrap();
            let graph_group = form.graph.graph_state_stabilizer();
            let image: Vec<PauliOperator> = s
                .generators()
                .iter()
                .map(|g| form.word.conjugate(g).unwrap())
                .collect();
            let image = StabilizerGroup::new(f, n, image).unwrap();
            assert!(image.same_group(&graph_group));
        }
    }
}

#[test]
fn code_to_graph_maps_every_codeword_state_into_the_graph_code() {
    let mut rng = rng(33);
    for p in [2u32, 3] {
        let f = field(p);
        for _ in 0..40 {
            let n = rng.gen_range(1..=if p == 2 { 4 } else { 3 });
            let m = rng.gen_range(1..=n);
            let q = random_code(&mut rng, f, n, m, 3);
            let (form, cls) = code_to_graph(&q).unwrap();
            let target = form.graph.cws_code(cls).unwrap();
            assert_eq!(target.dimension(), q.dimension());
            let proj = target.projector_dense().unwrap();
            let full = cws_symmetry::graph::complete_to_cws(&q).unwrap();
            for c in full.classical().words() {
                let gens: Vec<PauliOperator> = full
                    .stabilizer()
                    .generators()
                    .iter()
                    .zip(c.as_slice())
                    .map(|(g, &ci)| g.times_omega(ci as i64))
                    .collect();
                let shifted = StabilizerGroup::new(f, n, gens).unwrap();
                let moved = form.word.apply(&shifted.state_dense().unwrap()).unwrap();
                let projected = moved.apply_operator(&proj);
                assert!((projected.fidelity(&moved) - 1.0).abs() < 1e-9);
                assert!((projected.norm_sqr() - moved.norm_sqr()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn local_complement_word_replays_on_dense_states() {
    let mut rng = rng(34);
    for _ in 0..80 {
        let n = rng.gen_range(2..=5);
        let g = random_graph(&mut rng, 2, n);
        let v = rng.gen_range(0..n);
        let word = g.local_complement_word(v).unwrap();
        let lc = g.local_complement(v).unwrap();
        let image = word.apply(&g.state_dense().unwrap()).unwrap();
        assert!((image.fidelity(&lc.state_dense().unwrap()) - 1.0).abs() < 1e-9);
        assert_eq!(lc.local_complement(v).unwrap(), g);
    }
}

#[test]
fn local_clifford_matrices_conjugate_paulis_as_declared() {
    for p in [2u32, 3, 5] {
        let f = field(p);
        let mut gates = vec![LocalGate::Fourier, LocalGate::Pauli(1, 0), LocalGate::Pauli(0, 1)];
        for c in 1..p {
            if p > 2 {
                gates.push(LocalGate::Phase(c));
            }
            gates.push(LocalGate::Multiply(c));
        }
        if p == 2 {
            gates.push(LocalGate::QubitPhase { dagger: false });
            gates.push(LocalGate::QubitPhase { dagger: true });
            assert!(LocalGate::Phase(1).matrix(f).is_err());
        }
        for gate in gates {
            let u = DenseOperator::from_entries(f, 1, gate.matrix(f).unwrap()).unwrap();
            for a in 0..p {
                for b in 0..p {
                    let op = PauliOperator::single(f, 1, 0, a as i64, b as i64);
                    let mut word = LocalCliffordWord::new(1);
                    word.push(0, gate);
                    let Ok(image) = word.conjugate(&op) else {
                        // S maps X to a multiple of XZ by i, outside the ±1 phase group.
                        assert!(matches!(gate, LocalGate::QubitPhase { .. }) && a == 1);
                        continue;
                    };
                    let expected = u
                        .mul(&DenseOperator::from_pauli(&op).unwrap())
                        .unwrap()
                        .mul(&u.adjoint())
                        .unwrap();
                    assert!(
                        DenseOperator::from_pauli(&image).unwrap().max_abs_diff(&expected) < 1e-9,
                        "p={} gate {:?} on X^{}Z^{}",
                        p,
                        gate,
                        a,
                        b
                    );
                }
            }
        }
    }
}

#[test]
fn ghz_class_orbit_has_stars_and_the_complete_graph() {
    let f = field(2);
    for n in 3..=6 {
        let star: Vec<(usize, usize, i64)> = (1..n).map(|j| (0, j, 1)).collect();
        let g = WeightedGraph::from_edges(f, n, &star).unwrap();
        let orbit = lc_orbit(&g, 1000).unwrap();
        assert_eq!(orbit.len(), n + 1);
        let complete: Vec<(usize, usize, i64)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j, 1)))
            .collect();
        assert!(orbit.contains(&WeightedGraph::from_edges(f, n, &complete).unwrap()));
    }
}

#[test]
fn orbit_members_are_lc_equivalent_on_dense_states() {
    let mut rng = rng(35);
    for _ in 0..10 {
        let n = rng.gen_range(2..=5);
        let g = random_graph(&mut rng, 2, n);
        let orbit = lc_orbit(&g, 100_000).unwrap();
        assert!(orbit.contains(&g));
        let member = &orbit[rng.gen_range(0..orbit.len())];
        for v in 0..n {
            assert!(orbit.contains(&member.local_complement(v).unwrap()));
        }
    }
}

#[test]
fn orbit_bound_is_enforced() {
    let g = WeightedGraph::cycle(field(2), 7);
    assert!(matches!(
        lc_orbit(&g, 3),
        Err(cws_symmetry::Error::BoundExceeded { .. })
    ));
    assert!(matches!(
        lc_orbit(&WeightedGraph::cycle(field(3), 4), 100),
        Err(cws_symmetry::Error::QubitsOnly(3))
    ));
}

#[test]
fn dot_output_is_deterministic() {
    let g = WeightedGraph::from_edges(field(3), 3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
    assert_eq!(
        g.to_dot(),
        "graph G {\n  0;\n  1;\n  2;\n  0 -- 1 [label=2];\n  1 -- 2 [label=1];\n}\n"
    );
}
