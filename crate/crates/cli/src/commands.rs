use std::io::Read;
use std::path::Path;

use cws_symmetry::cws::{canonical_equal, canonical_ust, check_sufficient_condition, symmetry_verdict};
use cws_symmetry::dense::hilbert_dim;
use cws_symmetry::extension::{
    is_symmetric_group, is_symmetric_state_dense, probe_classical_symmetry,
    symmetric_state_extension_with, ExtensionStrategy,
};
use cws_symmetry::graph::{
    code_to_graph, orbit_automorphism_search, orbit_symmetry_search, permutations_of_order,
};
use cws_symmetry::text::{parse_input, parse_permutations, write_code, write_graph, GraphFile, InputFile, Layout};
use cws_symmetry::{
    zoo, ClassicalCode, CwsUstCode, DenseOperator, Error, Permutation, WeightedGraph,
};

use crate::report::{edge_list, perm_list, yes_no, Report};
use crate::{CliError, Outcome};

type CliResult<T> = Result<T, CliError>;

fn read_text(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|source| CliError::Read {
                path: p.display().to_string(),
                source,
            })
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Read {
                    path: "standard input".into(),
                    source,
                })?;
            Ok(s)
        }
    }
}

fn graph_code(g: &GraphFile) -> CliResult<CwsUstCode> {
    let cls = match &g.classical {
        Some(c) => c.clone(),
        None => ClassicalCode::zero_word(g.graph.field(), g.graph.n()),
    };
    Ok(g.graph.cws_code(cls)?)
}

/// Reads a code file, or a graph file interpreted as the code `(G, C)`.
fn load_code(path: Option<&Path>) -> CliResult<(CwsUstCode, Option<Layout>)> {
    match parse_input(&read_text(path)?)? {
        InputFile::Code(c) => Ok((c.code, c.layout)),
        InputFile::Graph(g) => Ok((graph_code(&g)?, g.layout)),
    }
}

fn labels(list: &str) -> Vec<String> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn load_perms(n: usize, list: &str, layout: Option<&Layout>) -> CliResult<Vec<Permutation>> {
    let perms = parse_permutations(n, list, layout)
        .map_err(|e| CliError::Usage(format!("bad permutation {:?}: {}", list, e)))?;
    if perms.is_empty() {
        return Err(CliError::Usage("no permutation given".into()));
    }
    Ok(perms)
}

fn oracle_fits(code: &CwsUstCode, bound: usize) -> bool {
    hilbert_dim(code.stabilizer().field(), code.n(), bound).is_ok()
}

pub fn canon(path: Option<&Path>) -> CliResult<Outcome> {
    let (code, layout) = load_code(path)?;
    let canonical = canonical_ust(&code);
    Ok(Outcome::ok(write_code(canonical.code(), layout.as_ref())))
}

pub fn sym_check(path: Option<&Path>, perm: &str, oracle_bound: usize) -> CliResult<Outcome> {
    let (code, layout) = load_code(path)?;
    let perms = load_perms(code.n(), perm, layout.as_ref())?;
    if perms.len() != 1 {
        return Err(CliError::Usage("sym-check takes exactly one permutation".into()));
    }
    let sigma = &perms[0];
    let verdict = symmetry_verdict(&code, sigma, oracle_bound)?;
    let suff = check_sufficient_condition(&code, sigma)?;

    let mut rep = Report::new();
    rep.put("permutation", sigma);
    rep.flag("symmetric", verdict.symmetric);
    match verdict.dense {
        Some(d) => {
            rep.flag("dense-symmetric", d);
            rep.flag("oracle-agrees", d == verdict.symmetric);
        }
        None => {
            rep.put("dense-symmetric", "skipped");
            rep.put("oracle-agrees", "skipped");
        }
    }
    rep.flag("r-exists", suff.r.is_some());
    let mut cr_equal = false;
    if let Some(r) = &suff.r {
        let rows: Vec<String> = r.r.row_vectors().iter().map(|v| v.to_string()).collect();
        rep.put("r-matrix", rows.join(" "));
        rep.put("r-phases", &r.phases);
        cr_equal = code
            .classical()
            .transform(&r.r)
            .is_ok_and(|c| c.set_equal(code.classical()));
    }
    rep.flag("r-applies", suff.applies);
    rep.flag("cr-equals-c", cr_equal);
    rep.flag("sufficient", suff.holds);

    let sound = !suff.holds || verdict.symmetric;
    let code_out = if verdict.consistent() && sound { 0 } else { 2 };
    Ok(Outcome {
        stdout: rep.to_string(),
        code: code_out,
    })
}

fn strategy_name(s: ExtensionStrategy) -> &'static str {
    match s {
        ExtensionStrategy::Auto => "auto",
        ExtensionStrategy::Css => "css",
        ExtensionStrategy::StandardForm => "standard-form",
        ExtensionStrategy::XCompletion => "x-completion",
        ExtensionStrategy::Search => "search",
    }
}

pub fn state_extend(
    path: Option<&Path>,
    list: &str,
    strategy: ExtensionStrategy,
    search_bound: usize,
    oracle_bound: usize,
) -> CliResult<Outcome> {
    let (code, layout) = load_code(path)?;
    let perms = load_perms(code.n(), list, layout.as_ref())?;
    let failure = |reason: &str, detail: String, exit: u8| {
        let mut rep = Report::new();
        rep.put("extension", "failed");
        rep.put("reason", reason);
        rep.put("detail", detail);
        Outcome {
            stdout: rep.to_string(),
            code: exit,
        }
    };
    let ext = match symmetric_state_extension_with(&code, &perms, strategy, search_bound) {
        Ok(ext) => ext,
        Err(Error::NotSymmetric(p)) => {
            return Ok(failure("code-not-symmetric", format!("permutation {}", p), 2))
        }
        Err(Error::ExtensionExhausted(k)) => {
            return Ok(failure("exhausted", format!("{} candidates examined", k), 3))
        }
        Err(e) => return Err(e.into()),
    };

    let invariant = is_symmetric_group(&ext.state, &perms)?;
    let reconstructs = canonical_equal(&ext.code, &code);
    let dense = if oracle_fits(&code, oracle_bound) {
        Some(is_symmetric_state_dense(&ext.state, &perms)?)
    } else {
        None
    };

    let mut rep = Report::new();
    rep.put("extension", "found");
    rep.put("strategy", strategy_name(strategy));
    rep.put("path", ext.path);
    rep.put("permutations", perm_list(&perms));
    rep.flag("state-invariant", invariant);
    rep.put("dense-state-invariant", dense.map_or("skipped", yes_no));
    rep.flag("reconstruction-equal", reconstructs);

    let ok = invariant && reconstructs && dense != Some(false);
    let mut out = rep.as_comments();
    out.push_str(&write_code(&ext.code, layout.as_ref()));
    Ok(Outcome {
        stdout: out,
        code: if ok { 0 } else { 2 },
    })
}

pub fn to_graph(path: Option<&Path>, dot: Option<&Path>) -> CliResult<Outcome> {
    let (code, layout) = load_code(path)?;
    let (form, classical) = code_to_graph(&code)?;
    let mut rep = Report::new();
    rep.put("lc-word", &form.word);
    rep.put("source-generators", code.m());
    rep.put("edges", form.graph.edges().len());
    if let Some(dot_path) = dot {
        std::fs::write(dot_path, form.graph.to_dot()).map_err(|source| CliError::Write {
            path: dot_path.display().to_string(),
            source,
        })?;
    }
    let file = GraphFile {
        graph: form.graph,
        classical: Some(classical),
        layout,
    };
    let mut out = rep.as_comments();
    out.push_str(&write_graph(&file));
    Ok(Outcome::ok(out))
}

fn witness_text(g: &Option<WeightedGraph>) -> String {
    g.as_ref().map_or_else(|| "none".into(), edge_list)
}

pub fn orbit(
    path: Option<&Path>,
    list: Option<&str>,
    order: Option<usize>,
    bound: usize,
) -> CliResult<Outcome> {
    if list.is_none() && order.is_none() {
        return Err(CliError::Usage("orbit needs --perms, --order or both".into()));
    }
    // Permutation symmetries are taken from the code as given: for a code
    // file that is the original code, not its local-Clifford image.
    let (graph, code, layout) = match parse_input(&read_text(path)?)? {
        InputFile::Graph(g) => {
            let code = match &g.classical {
                Some(_) => Some(graph_code(&g)?),
                None => None,
            };
            (g.graph, code, g.layout)
        }
        InputFile::Code(c) => {
            let (form, _) = code_to_graph(&c.code)?;
            (form.graph, Some(c.code), c.layout)
        }
    };
    let n = graph.n();
    let mut rep = Report::new();
    rep.put("qudits", n);
    rep.put("edges", edge_list(&graph));

    if let Some(list) = list {
        let perms = load_perms(n, list, layout.as_ref())?;
        let names = labels(list);
        let res = orbit_symmetry_search(&graph, &perms, bound)?;
        rep.put("orbit-size", res.orbit_size);
        for (name, (_, count, witness)) in names.iter().zip(&res.per_permutation) {
            rep.put(format!("invariant[{}]", name), count);
            rep.put(format!("witness[{}]", name), witness_text(witness));
        }
        rep.put("joint-invariant", res.joint_count);
        rep.put("joint-witness", witness_text(&res.joint_witness));
        rep.put(
            "verdict",
            if res.joint_count == 0 {
                "no orbit member is invariant under all permutations"
            } else {
                "some orbit member is invariant under all permutations"
            },
        );
    }

    if let Some(k) = order {
        let candidates = permutations_of_order(n, k)?;
        let res = orbit_automorphism_search(&graph, &candidates, bound)?;
        rep.put("orbit-size", res.orbit_size);
        rep.put("order", k);
        rep.put("order-candidates", res.candidates);
        rep.put("order-invariant", res.count);
        let (w, p) = match &res.witness {
            Some((g, p)) => (edge_list(g), p.to_string()),
            None => ("none".into(), "none".into()),
        };
        rep.put("order-witness", w);
        rep.put("order-witness-permutation", p);

        if let Some(code) = code {
            let mut symmetries = Vec::new();
            for sigma in candidates {
                if cws_symmetry::cws::has_symmetry(&code, &sigma)? {
                    symmetries.push(sigma);
                }
            }
            let res = orbit_automorphism_search(&graph, &symmetries, bound)?;
            rep.put("order-code-symmetries", res.candidates);
            rep.put("order-code-invariant", res.count);
            let (w, p) = match &res.witness {
                Some((g, p)) => (edge_list(g), p.to_string()),
                None => ("none".into(), "none".into()),
            };
            rep.put("order-code-witness", w);
            rep.put("order-code-witness-permutation", p);
        }
    }
    Ok(Outcome::ok(rep.to_string()))
}

pub enum ZooChoice {
    Five { x_variant: bool },
    Steane,
    Toric { l: usize },
    Ghz { n: usize, shifted: bool },
}

pub fn zoo(choice: ZooChoice) -> CliResult<Outcome> {
    let (name, code, layout) = match choice {
        ZooChoice::Five { x_variant: false } => ("five-qubit".to_string(), zoo::five_qubit(), None),
        ZooChoice::Five { x_variant: true } => {
            ("five-qubit-x".to_string(), zoo::five_qubit_x_variant(), None)
        }
        ZooChoice::Steane => ("steane".to_string(), zoo::steane(), None),
        ZooChoice::Toric { l } => {
            let t = zoo::toric(l)?;
            (format!("toric L={}", l), t.code, Some(Layout::Toric(t.layout)))
        }
        ZooChoice::Ghz { n, shifted } => {
            let code = if shifted {
                zoo::ghz_minus_shifted(n)?
            } else {
                zoo::ghz_minus(n)?
            };
            (format!("ghz-minus n={}", n), code, None)
        }
    };
    let mut rep = Report::new();
    rep.put("code", name);
    rep.put("dimension", code.dimension());
    let mut out = rep.as_comments();
    out.push_str(&write_code(&code, layout.as_ref()));
    Ok(Outcome::ok(out))
}

/// Dense commutation and `g^p = I` checks for every generator.
fn dense_generators_valid(code: &CwsUstCode, bound: usize) -> CliResult<bool> {
    let s = code.stabilizer();
    let mats = s
        .generators()
        .iter()
        .map(|g| DenseOperator::from_pauli_bounded(g, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let id = DenseOperator::identity(s.field(), s.n())?;
    for (i, a) in mats.iter().enumerate() {
        let mut power = id.clone();
        for _ in 0..s.field().p() {
            power = power.mul(a)?;
        }
        if !power.approx_eq(&id) {
            return Ok(false);
        }
        for b in &mats[i + 1..] {
            if !a.mul(b)?.approx_eq(&b.mul(a)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn oracle(path: Option<&Path>, against: Option<&Path>, bound: usize) -> CliResult<Outcome> {
    let (code, _) = load_code(path)?;
    let dim = hilbert_dim(code.stabilizer().field(), code.n(), bound)?;
    let proj = code.projector_dense_bounded(bound)?;
    let mut rep = Report::new();
    rep.put("hilbert-dimension", dim);

    let ok = match against {
        None => {
            let valid = dense_generators_valid(&code, bound)?;
            let hermitian = proj.is_hermitian();
            let idempotent = proj.is_idempotent();
            let trace = proj.trace();
            let expected = code.dimension() as f64;
            let trace_ok = (trace.re - expected).abs() <= 1e-6 && trace.im.abs() <= 1e-6;
            let canon = canonical_ust(&code).into_code().projector_dense_bounded(bound)?;
            let canon_ok = canon.approx_eq(&proj);
            rep.put("code-dimension", code.dimension());
            rep.flag("generators-valid-dense", valid);
            rep.flag("hermitian", hermitian);
            rep.flag("idempotent", idempotent);
            rep.put("trace", format!("{:.6}", trace.re));
            rep.flag("trace-matches-dimension", trace_ok);
            rep.flag("canonical-projector-equal", canon_ok);
            valid && hermitian && idempotent && trace_ok && canon_ok
        }
        Some(other) => {
            let (second, _) = load_code(Some(other))?;
            let symbolic = canonical_equal(&code, &second);
            let dense = if second.n() == code.n()
                && second.stabilizer().field() == code.stabilizer().field()
            {
                second.projector_dense_bounded(bound)?.approx_eq(&proj)
            } else {
                false
            };
            rep.flag("symbolic-equal", symbolic);
            rep.flag("dense-equal", dense);
            rep.flag("agree", symbolic == dense);
            symbolic == dense
        }
    };
    rep.flag("oracle-ok", ok);
    Ok(Outcome {
        stdout: rep.to_string(),
        code: if ok { 0 } else { 2 },
    })
}

pub fn classical_probe(path: Option<&Path>, list: &str, search_bound: usize) -> CliResult<Outcome> {
    let (code, layout) = load_code(path)?;
    let perms = load_perms(code.n(), list, layout.as_ref())?;
    let probes = match probe_classical_symmetry(&code, &perms, search_bound) {
        Err(Error::NotSymmetric(p)) => {
            let mut rep = Report::new();
            rep.put("probe", "failed");
            rep.put("reason", "code-not-symmetric");
            rep.put("detail", format!("permutation {}", p));
            return Ok(Outcome {
                stdout: rep.to_string(),
                code: 2,
            });
        }
        other => other?,
    };
    let mut rep = Report::new();
    rep.put("permutations", perm_list(&perms));
    let mut any = false;
    for probe in &probes {
        let name = strategy_name(probe.strategy);
        match &probe.extension {
            Some(ext) => rep.put(format!("extension[{}]", name), ext.path),
            None => rep.put(format!("extension[{}]", name), "exhausted"),
        };
        rep.flag(format!("classical-invariant[{}]", name), probe.classical_invariant);
        any |= probe.classical_invariant;
    }
    rep.flag("any-classical-invariant", any);
    Ok(Outcome::ok(rep.to_string()))
}
