//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::cell::Cell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use cws_symmetry::cws::{
    canonical_equal, canonical_ust, check_sufficient_condition, has_symmetry, has_symmetry_dense,
    state_code, symmetry_verdict,
};
use cws_symmetry::dense::{tolerance, DEFAULT_ORACLE_BOUND};
use cws_symmetry::extension::{
    is_symmetric_group, is_symmetric_state_dense, symmetric_state_extension,
};
use cws_symmetry::stabilizer::validate;
use cws_symmetry::graph::{code_to_graph, orbit_order_search, orbit_symmetry_search};
use cws_symmetry::{zoo, CwsUstCode, DenseOperator, Error, Field, FpVector, PauliOperator, Permutation};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: cws_symmetry::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

thread_local! {
    static ORACLE_CHECKS: Cell<(usize, usize)> = const { Cell::new((0, 0)) };
}

/// Records one symbolic-versus-dense comparison for the concordance tally.
fn tally(agree: bool) -> bool {
    ORACLE_CHECKS.with(|c| {
        let (n, ok) = c.get();
        c.set((n + 1, ok + agree as usize));
    });
    agree
}

fn five_qubit_code() -> Outcome {
    let q = zoo::five_qubit();
    let s = q.stabilizer();
    ensure!(validate(s.field(), s.n(), s.generators()).is_ok(), "five-qubit group invalid");
    let shift = Permutation::cyclic_shift(5);
    ensure!(lib(has_symmetry(&q, &shift))?, "cyclic shift is not a symmetry");
    ensure!(tally(lib(has_symmetry_dense(&q, &shift))?), "dense oracle disagrees on the shift");
    let canon = canonical_ust(&q);
    ensure!(canon.rank() == 4, "canonical rank {}", canon.rank());
    ensure!(canon.code().classical().len() == 1, "canonical classical code has {} words", canon.code().classical().len());
    ensure!(
        canonical_equal(&q, &zoo::five_qubit_x_variant()),
        "Z and X logical variants differ"
    );
    Ok("4 generators, 1 word, cyclic".into())
}

fn ghz_family() -> Outcome {
    let f = field(2);
    let mut checked = 0;
    for n in 3..=6 {
        let a = lib(zoo::ghz_minus(n))?;
        let b = lib(zoo::ghz_minus_shifted(n))?;
        let canon = canonical_ust(&a);
        let expected = format!("1{}", "0".repeat(n - 1));
        ensure!(
            canon.code().classical()
                == &lib(cws_symmetry::ClassicalCode::from_strings(f, &[expected.as_str()]))?,
            "n={} canonical classical code {:?}",
            n,
            canon.code().classical()
        );
        ensure!(canon.serialize() == canonical_ust(&b).serialize(), "n={} variants serialize differently", n);
        if n <= 5 {
            for sigma in Permutation::all(n) {
                ensure!(lib(has_symmetry(&a, &sigma))?, "n={} not invariant under {}", n, sigma);
                ensure!(tally(lib(has_symmetry_dense(&a, &sigma))?), "n={} dense disagrees on {}", n, sigma);
                checked += 1;
            }
        }
    }
    Ok(format!("{} permutations checked", checked))
}

fn steane_code() -> Outcome {
    let q = zoo::steane();
    let (xs, zs) = zoo::steane_stabilizer().is_css().ok_or("Steane group is not CSS")?;
    ensure!(xs.len() == 3 && zs.len() == 3, "CSS split {}+{}", xs.len(), zs.len());
    let cycle = Permutation::cyclic_shift(7);
    ensure!(lib(has_symmetry(&q, &cycle))?, "code not cyclic");
    ensure!(tally(lib(has_symmetry_dense(&q, &cycle))?), "dense oracle disagrees on the cycle");
    let ext = lib(symmetric_state_extension(&q, std::slice::from_ref(&cycle)))?;
    ensure!(lib(is_symmetric_group(&ext.state, std::slice::from_ref(&cycle)))?, "state not cyclic");
    ensure!(tally(lib(is_symmetric_state_dense(&ext.state, &[cycle]))?), "dense state not cyclic");
    let (form, _) = lib(code_to_graph(&q))?;
    let sevens = lib(orbit_order_search(&form.graph, 7, 1_000_000))?;
    ensure!(sevens.count == 0, "{} orbit members have a 7-cycle automorphism", sevens.count);
    let threes = lib(orbit_order_search(&form.graph, 3, 1_000_000))?;
    let witness = match &threes.witness {
        Some((_, p)) => format!(", witness {}", p),
        None => String::new(),
    };
    Ok(format!(
        "orbit {}, no 7-cycle member, order-3 members {}{}",
        sevens.orbit_size, threes.count, witness
    ))
}

fn toric_code() -> Outcome {
    let t = lib(zoo::toric(2))?;
    let s = t.layout.stabilizer();
    let perms = [t.th.clone(), t.tv.clone()];
    for sigma in &perms {
        ensure!(lib(s.permute(sigma))?.same_group(&s), "generators not invariant under {}", sigma);
    }
    for a in t.layout.stars() {
        for b in t.layout.plaquettes() {
            ensure!(lib(a.commutes_with(&b))?, "star {} and plaquette {} anticommute", a, b);
        }
    }
    let logical = t.layout.logical_z();
    let full = lib(s.extend(&logical))?;
    ensure!(full.rank() == 8, "logical-00 group rank {}", full.rank());
    let state = lib(state_code(&full))?;
    for sigma in &perms {
        ensure!(lib(has_symmetry(&state, sigma))?, "logical-00 state moves under {}", sigma);
        ensure!(tally(lib(has_symmetry_dense(&state, sigma))?), "dense logical-00 state moves under {}", sigma);
    }
    let (form, _) = lib(code_to_graph(&t.code))?;
    let report = lib(orbit_symmetry_search(&form.graph, &perms, 1_000_000))?;
    ensure!(report.joint_count == 0, "{} orbit members invariant under Th and Tv", report.joint_count);
    Ok(format!(
        "orbit {}, Th-invariant {}, Tv-invariant {}, joint 0",
        report.orbit_size, report.per_permutation[0].1, report.per_permutation[1].1
    ))
}

fn canonical_uniqueness() -> Outcome {
    let mut rng = rng(1001);
    let mut cases = 0;
    for p in [2u32, 3] {
        let f = field(p);
        for _ in 0..40 {
            let n = rng.gen_range(1..=if p == 2 { 5 } else { 4 });
            let m = rng.gen_range(1..=n);
            let q = random_code(&mut rng, f, n, m, 4);
            let reference = canonical_ust(&q);
            let projector = lib(q.projector_dense())?;
            for _ in 0..2 {
                let add = rng.gen_bool(0.5);
                let other = rerepresent(&mut rng, &q, add);
                let diff = lib(other.projector_dense())?.max_abs_diff(&projector);
                ensure!(tally(diff <= tolerance(p)), "rerepresentation changed the projector by {}", diff);
                ensure!(
                    canonical_ust(&other).serialize() == reference.serialize(),
                    "canonical forms differ for {:?}",
                    q
                );
                let canon_diff = lib(reference.code().projector_dense())?.max_abs_diff(&projector);
                ensure!(tally(canon_diff <= tolerance(p)), "canonical projector off by {}", canon_diff);
                cases += 1;
            }
            let once = reference.into_code();
            ensure!(canonical_ust(&once).into_code() == once, "canonical form not idempotent for {:?}", q);
        }
    }
    Ok(format!("{} rerepresentations, idempotent", cases))
}

fn sufficiency_soundness() -> Outcome {
    let mut rng = rng(1002);
    let f = field(2);
    let mut cases = 0;
    let mut held = 0;
    while cases < 500 {
        let n = rng.gen_range(2..=4);
        let q = if rng.gen_bool(0.5) {
            let m = rng.gen_range(1..=n);
            random_code(&mut rng, f, n, m, 4)
        } else {
            hidden_symmetric_code(&mut rng, f, n)
        };
        let projector = lib(q.projector_dense())?;
        for sigma in Permutation::all(n) {
            if lib(check_sufficient_condition(&q, &sigma))?.holds {
                held += 1;
                let moved = lib(projector.conjugate_by_permutation(&sigma))?;
                ensure!(tally(moved.approx_eq(&projector)), "condition holds but {:?} moves under {}", q, sigma);
            }
            cases += 1;
        }
    }
    Ok(format!("{} cases, condition held in {}", cases, held))
}

fn invariant_graph_codes() -> Outcome {
    let mut rng = rng(1003);
    let mut pairs = 0;
    for p in [2u32, 3] {
        let f = field(p);
        for _ in 0..110 {
            let n = rng.gen_range(2..=if p == 2 { 5 } else { 4 });
            let sigma = random_permutation(&mut rng, n);
            let g = random_invariant_graph(&mut rng, f, &sigma);
            let seed: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_vector(&mut rng, f, n)).collect();
            let q = lib(g.cws_code(permutation_closure(f, &sigma, &seed)))?;
            ensure!(lib(has_symmetry(&q, &sigma))?, "graph code not symmetric under {}", sigma);
            ensure!(tally(lib(has_symmetry_dense(&q, &sigma))?), "dense oracle disagrees under {}", sigma);
            ensure!(lib(check_sufficient_condition(&q, &sigma))?.holds, "sufficient condition fails under {}", sigma);
            pairs += 1;
        }
    }
    Ok(format!("{} graph/permutation pairs", pairs))
}

fn verified_extension(q: &CwsUstCode, perms: &[Permutation]) -> Result<(), String> {
    let ext = match symmetric_state_extension(q, perms) {
        Ok(ext) => ext,
        Err(Error::ExtensionExhausted(msg)) => return Err(format!("exhausted: {}", msg)),
        Err(e) => return Err(e.to_string()),
    };
    ensure!(ext.state.rank() == q.n(), "state has rank {}", ext.state.rank());
    ensure!(lib(is_symmetric_group(&ext.state, perms))?, "state group not invariant");
    ensure!(canonical_equal(&ext.code, q), "re-expressed code differs");
    if q.n() <= 8 {
        ensure!(tally(lib(is_symmetric_state_dense(&ext.state, perms))?), "dense state not invariant");
        ensure!(
            tally(lib(ext.code.projector_dense())?.approx_eq(&lib(q.projector_dense())?)),
            "dense projectors differ"
        );
    }
    Ok(())
}

fn symmetric_extension() -> Outcome {
    let mut cases: Vec<(String, CwsUstCode, Vec<Permutation>)> = vec![
        ("five".into(), zoo::five_qubit(), vec![Permutation::cyclic_shift(5)]),
        ("steane".into(), zoo::steane(), vec![Permutation::cyclic_shift(7)]),
    ];
    let t = lib(zoo::toric(2))?;
    cases.push(("toric".into(), t.code, vec![t.th, t.tv]));
    for n in 3..=6 {
        cases.push((
            format!("ghz{}", n),
            lib(zoo::ghz_minus(n))?,
            vec![Permutation::cyclic_shift(n), Permutation::transposition(n, 0, 1)],
        ));
    }
    let mut rng = rng(1004);
    for p in [2u32, 3] {
        let f = field(p);
        for i in 0..30 {
            let n = rng.gen_range(2..=if p == 2 { 5 } else { 4 });
            let sigma = random_permutation(&mut rng, n);
            let q = if i % 2 == 0 {
                random_symmetric_stabilizer_code(&mut rng, f, &sigma)
            } else {
                let g = random_invariant_graph(&mut rng, f, &sigma);
                let seed = vec![random_vector(&mut rng, f, n)];
                lib(g.cws_code(permutation_closure(f, &sigma, &seed)))?
            };
            cases.push((format!("random p={} #{}", p, i), q, vec![sigma]));
        }
    }
    for (name, q, perms) in &cases {
        verified_extension(q, perms).map_err(|e| format!("{}: {}", name, e))?;
    }
    Ok(format!("{} codes extended, 0 exhausted", cases.len()))
}

/// Validity from matrices alone: each generator has order dividing `p`, the
/// generators commute, and the group sum `Σ` satisfies `Σ² = p^m Σ` with
/// trace `p^n` (no scalar other than the identity in the group).
fn dense_valid(f: Field, n: usize, gens: &[PauliOperator]) -> Result<bool, String> {
    let id = lib(DenseOperator::identity(f, n))?;
    let mats = gens
        .iter()
        .map(|g| lib(DenseOperator::from_pauli(g)))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, a) in mats.iter().enumerate() {
        let mut power = id.clone();
        for _ in 0..f.p() {
            power = lib(power.mul(a))?;
        }
        if !power.approx_eq(&id) {
            return Ok(false);
        }
        for b in &mats[i + 1..] {
            if !lib(a.mul(b))?.approx_eq(&lib(b.mul(a))?) {
                return Ok(false);
            }
        }
    }
    let mut sum = lib(DenseOperator::zero(f, n))?;
    for y in FpVector::all(f, gens.len()) {
        let mut term = id.clone();
        for (j, &e) in y.as_slice().iter().enumerate() {
            for _ in 0..e {
                term = lib(term.mul(&mats[j]))?;
            }
        }
        sum = lib(sum.add(&term))?;
    }
    let group_order = (f.p() as usize).pow(gens.len() as u32);
    let mut multiple = lib(DenseOperator::zero(f, n))?;
    for _ in 0..group_order {
        multiple = lib(multiple.add(&sum))?;
    }
    let expected_trace = (f.p() as f64).powi(n as i32);
    Ok(lib(sum.mul(&sum))?.approx_eq(&multiple) && (sum.trace().re - expected_trace).abs() < 1e-6)
}

fn oracle_concordance() -> Outcome {
    let mut rng = rng(1005);
    for p in [2u32, 3] {
        let f = field(p);
        for _ in 0..150 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=n);
            let mut gens = random_stabilizer(&mut rng, f, n, m).generators().to_vec();
            let i = rng.gen_range(0..gens.len());
            match rng.gen_range(0..3) {
                0 => {}
                1 => {
                    let v = random_vector(&mut rng, f, 2 * n);
                    gens[i] = lib(PauliOperator::from_symplectic(rng.gen_range(0..p) as i64, &v))?;
                }
                _ => {
                    let j = rng.gen_range(0..gens.len());
                    let prod = lib(gens[i].mul(&gens[j]))?;
                    gens.push(prod.times_omega(rng.gen_range(0..p) as i64));
                }
            }
            tally(validate(f, n, &gens).is_ok() == dense_valid(f, n, &gens)?);
        }
    }
    for p in [2u32, 3] {
        let f = field(p);
        for _ in 0..100 {
            let n = rng.gen_range(1..=if p == 2 { 5 } else { 4 });
            let q = if n >= 2 && rng.gen_bool(0.5) {
                hidden_symmetric_code(&mut rng, f, n)
            } else {
                let m = rng.gen_range(0..=n);
                random_code(&mut rng, f, n, m, 4)
            };
            let sigma = random_permutation(&mut rng, n);
            let v = lib(symmetry_verdict(&q, &sigma, DEFAULT_ORACLE_BOUND))?;
            tally(v.dense == Some(v.symmetric));
            let other = random_code(&mut rng, f, n, q.m(), 4);
            let dense_equal = lib(q.projector_dense())?.approx_eq(&lib(other.projector_dense())?);
            tally(canonical_equal(&q, &other) == dense_equal);
        }
    }
    let (total, agreed) = ORACLE_CHECKS.with(Cell::get);
    ensure!(total > 0, "no oracle comparisons recorded");
    ensure!(agreed == total, "{} of {} oracle comparisons agree", agreed, total);
    Ok(format!("{}/{} symbolic and dense results agree", agreed, total))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "five-qubit code", limit: Duration::from_secs(1), run: five_qubit_code },
        Criterion { name: "GHZ family", limit: Duration::from_secs(5), run: ghz_family },
        Criterion { name: "Steane code and LC orbit", limit: Duration::from_secs(600), run: steane_code },
        Criterion { name: "toric code L=2", limit: Duration::from_secs(1800), run: toric_code },
        Criterion { name: "canonical form uniqueness", limit: Duration::from_secs(600), run: canonical_uniqueness },
        Criterion { name: "sufficient condition soundness", limit: Duration::from_secs(600), run: sufficiency_soundness },
        Criterion { name: "invariant graph codes", limit: Duration::from_secs(600), run: invariant_graph_codes },
        Criterion { name: "symmetric state extension", limit: Duration::from_secs(600), run: symmetric_extension },
        Criterion { name: "dense oracle concordance", limit: Duration::from_secs(600), run: oracle_concordance },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("{} but exceeded {:?}", detail, c.limit)),
            other => other,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += result.is_err() as usize;
        println!("{} {}. {} ({:.2?}): {}", status, i + 1, c.name, elapsed, detail);
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
