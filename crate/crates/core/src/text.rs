//! Plain-text file formats.
//!
//! A code file holds a stabilizer block, a `---` separator and a classical
//! block:
//!
//! ```text
//! layout: toric L=2        (optional)
//! p=2 n=5
//! XZZXI
//! IXZZX
//! ---
//! p=2 n=2
//! 00
//! 01
//! ```
//!
//! The classical header's `n` is the word length, which equals the number of
//! generators. Words are digit strings for `p ≤ 10` and space-separated
//! numbers otherwise; the empty word is written `.`. Without a classical
//! block the code is `(S, {0…0})`. Lines starting with `#` are comments.
//!
//! A graph file starts with `graph p=<p> n=<n>` followed by the `n − 1`
//! upper-triangle rows of the adjacency matrix (row `i` lists the weights
//! to vertices `i+1..n`), optionally followed by `---` and a classical block.

use crate::classical::ClassicalCode;
use crate::cws::CwsUstCode;
use crate::error::{parse_err, Error, Result};
use crate::fp::{Field, FpMatrix, FpVector};
use crate::graph::WeightedGraph;
use crate::pauli::parse_pauli;
use crate::permutation::Permutation;
use crate::stabilizer::StabilizerGroup;
use crate::zoo::ToricLayout;

/// Geometric metadata carried by a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Toric(ToricLayout),
}

impl Layout {
    pub fn header(&self) -> String {
        match self {
            Layout::Toric(t) => format!("layout: toric L={}", t.l),
        }
    }

    /// Permutations addressable by name (`Th`, `Tv` for the toric layout).
    pub fn named_permutation(&self, name: &str) -> Option<Permutation> {
        match (self, name) {
            (Layout::Toric(t), "Th") => Some(t.th()),
            (Layout::Toric(t), "Tv") => Some(t.tv()),
            _ => None,
        }
    }

    pub fn qubits(&self) -> usize {
        match self {
            Layout::Toric(t) => t.qubits(),
        }
    }

    fn parse(line: usize, rest: &str) -> Result<Layout> {
        let mut parts = rest.split_whitespace();
        match parts.next() {
            Some("toric") => {
                let l = parts
                    .next()
                    .and_then(|t| t.strip_prefix("L="))
                    .and_then(|v| v.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line, "expected 'L=<n>' after 'toric'"))?;
                Ok(Layout::Toric(
                    ToricLayout::new(l).map_err(|e| parse_err(line, e.to_string()))?,
                ))
            }
            other => Err(parse_err(line, format!("unknown layout {:?}", other))),
        }
    }
}

/// Parsed contents of a code file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub code: CwsUstCode,
    pub layout: Option<Layout>,
}

/// Parsed contents of a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    pub classical: Option<ClassicalCode>,
    pub layout: Option<Layout>,
}

/// Either kind of input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputFile {
    Code(CodeFile),
    Graph(GraphFile),
}

impl InputFile {
    pub fn layout(&self) -> Option<Layout> {
        match self {
            InputFile::Code(c) => c.layout,
            InputFile::Graph(g) => g.layout,
        }
    }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let it = self.peek();
        self.pos += it.is_some() as usize;
        it
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |(l, _)| *l)
    }
}

fn parse_header(line: usize, text: &str) -> Result<(Field, usize)> {
    let mut p = None;
    let mut n = None;
    for tok in text.split_whitespace() {
        if let Some(v) = tok.strip_prefix("p=") {
            p = v.parse::<u32>().ok();
        } else if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse::<usize>().ok();
        } else {
            return Err(parse_err(line, format!("unexpected token {:?} in header", tok)));
        }
    }
    let (Some(p), Some(n)) = (p, n) else {
        return Err(parse_err(line, "expected header 'p=<prime> n=<count>'"));
    };
    let field = Field::new(p).map_err(|e| parse_err(line, e.to_string()))?;
    Ok((field, n))
}

fn parse_layout(lines: &mut Lines) -> Result<Option<Layout>> {
    match lines.peek() {
        Some((line, text)) if text.starts_with("layout:") => {
            lines.next();
            Ok(Some(Layout::parse(line, &text["layout:".len()..])?))
        }
        _ => Ok(None),
    }
}

fn parse_entries(field: Field, line: usize, text: &str) -> Result<Vec<i64>> {
    if text == "." {
        return Ok(Vec::new());
    }
    let values: Vec<i64> = if text.contains(char::is_whitespace) || field.p() > 10 {
        text.split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("bad entry {:?}", t))))
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as i64)
                    .ok_or_else(|| parse_err(line, format!("bad digit {:?}", c)))
            })
            .collect::<Result<_>>()?
    };
    if let Some(v) = values.iter().find(|&&v| v < 0 || v >= field.p() as i64) {
        return Err(parse_err(line, format!("entry {} is not a residue mod {}", v, field.p())));
    }
    Ok(values)
}

fn parse_classical_block(lines: &mut Lines, field: Field, expected_n: usize) -> Result<ClassicalCode> {
    let Some((hline, htext)) = lines.next() else {
        return Err(parse_err(lines.last_line(), "missing classical header after '---'"));
    };
    let (cf, n) = parse_header(hline, htext)?;
    if cf != field {
        return Err(parse_err(hline, "classical block uses a different modulus"));
    }
    if n != expected_n {
        return Err(parse_err(
            hline,
            format!("classical word length {} does not match {} generators", n, expected_n),
        ));
    }
    let mut words = Vec::new();
    while let Some((line, text)) = lines.next() {
        let v = parse_entries(field, line, text)?;
        if v.len() != n {
            return Err(parse_err(line, format!("word has length {}, expected {}", v.len(), n)));
        }
        words.push(FpVector::new(field, v));
    }
    ClassicalCode::new(field, n, words).map_err(|e| parse_err(hline, e.to_string()))
}

/// Parses a code file.
pub fn parse_code(text: &str) -> Result<CodeFile> {
    let mut lines = Lines::new(text);
    let layout = parse_layout(&mut lines)?;
    let Some((hline, htext)) = lines.next() else {
        return Err(parse_err(0, "empty input"));
    };
    let (field, n) = parse_header(hline, htext)?;
    let mut gens = Vec::new();
    let mut has_classical = false;
    while let Some((line, t)) = lines.next() {
        if t == "---" {
            has_classical = true;
            break;
        }
        let op = parse_pauli(field, t, line)?;
        if op.n() != n {
            return Err(parse_err(line, format!("Pauli string has {} qudits, expected {}", op.n(), n)));
        }
        gens.push(op);
    }
    if let Some(l) = layout {
        if l.qubits() != n {
            return Err(parse_err(hline, "layout does not match the number of qudits"));
        }
    }
    let m = gens.len();
    if m > n {
        return Err(parse_err(hline, format!("{} generators on {} qudits", m, n)));
    }
    let stab = StabilizerGroup::new(field, n, gens)?;
    let cls = if has_classical {
        parse_classical_block(&mut lines, field, m)?
    } else {
        ClassicalCode::zero_word(field, m)
    };
    Ok(CodeFile {
        code: CwsUstCode::new(stab, cls)?,
        layout,
    })
}

fn write_word(w: &FpVector) -> String {
    if w.is_empty() {
        ".".into()
    } else {
        w.to_string()
    }
}

fn write_classical(out: &mut String, cls: &ClassicalCode) {
    out.push_str(&format!("p={} n={}\n", cls.field().p(), cls.n()));
    for w in cls.words() {
        out.push_str(&write_word(w));
        out.push('\n');
    }
}

/// Serializes a code; the inverse of [`parse_code`].
pub fn write_code(code: &CwsUstCode, layout: Option<&Layout>) -> String {
    let mut out = String::new();
    if let Some(l) = layout {
        out.push_str(&l.header());
        out.push('\n');
    }
    let s = code.stabilizer();
    out.push_str(&format!("p={} n={}\n", s.field().p(), s.n()));
    for g in s.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out.push_str("---\n");
    write_classical(&mut out, code.classical());
    out
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = Lines::new(text);
    let layout = parse_layout(&mut lines)?;
    let Some((hline, htext)) = lines.next() else {
        return Err(parse_err(0, "empty input"));
    };
    let Some(rest) = htext.strip_prefix("graph") else {
        return Err(parse_err(hline, "expected header 'graph p=<prime> n=<count>'"));
    };
    let (field, n) = parse_header(hline, rest)?;
    let mut adj = FpMatrix::zeros(field, n, n);
    for i in 0..n.saturating_sub(1) {
        let Some((line, text)) = lines.next() else {
            return Err(parse_err(lines.last_line(), "missing adjacency rows"));
        };
        let row = parse_entries(field, line, text)?;
        if row.len() != n - 1 - i {
            return Err(parse_err(
                line,
                format!("row {} has {} weights, expected {}", i, row.len(), n - 1 - i),
            ));
        }
        for (k, &w) in row.iter().enumerate() {
            adj.set(i, i + 1 + k, w);
            adj.set(i + 1 + k, i, w);
        }
    }
    let classical = match lines.next() {
        None => None,
        Some((_, "---")) => Some(parse_classical_block(&mut lines, field, n)?),
        Some((line, t)) => return Err(parse_err(line, format!("unexpected line {:?}", t))),
    };
    if let Some(l) = layout {
        if l.qubits() != n {
            return Err(parse_err(hline, "layout does not match the number of vertices"));
        }
    }
    Ok(GraphFile {
        graph: WeightedGraph::new(adj)?,
        classical,
        layout,
    })
}

/// Serializes a graph; the inverse of [`parse_graph`].
pub fn write_graph(g: &GraphFile) -> String {
    let mut out = String::new();
    if let Some(l) = &g.layout {
        out.push_str(&l.header());
        out.push('\n');
    }
    let f = g.graph.field();
    let n = g.graph.n();
    out.push_str(&format!("graph p={} n={}\n", f.p(), n));
    for i in 0..n.saturating_sub(1) {
        let row = FpVector::new(f, (i + 1..n).map(|j| g.graph.weight(i, j) as i64));
        out.push_str(&row.to_string());
        out.push('\n');
    }
    if let Some(c) = &g.classical {
        out.push_str("---\n");
        write_classical(&mut out, c);
    }
    out
}

/// Parses either a code file or a graph file, told apart by the `graph` header.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let mut lines = Lines::new(text);
    parse_layout(&mut lines)?;
    match lines.peek() {
        Some((_, t)) if t.starts_with("graph") => Ok(InputFile::Graph(parse_graph(text)?)),
        _ => Ok(InputFile::Code(parse_code(text)?)),
    }
}

/// Parses `;`-separated permutations in cycle notation, or layout names.
pub fn parse_permutations(n: usize, list: &str, layout: Option<&Layout>) -> Result<Vec<Permutation>> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            if s.starts_with('(') {
                Permutation::parse_cycles(n, s)
            } else {
                layout
                    .and_then(|l| l.named_permutation(s))
                    .ok_or_else(|| {
                        Error::Precondition(format!("unknown permutation name {:?}", s))
                    })
            }
        })
        .collect()
}
