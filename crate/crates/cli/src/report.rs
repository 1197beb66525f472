//! Line-oriented `key: value` reports.

use std::fmt::{self, Display};

use cws_symmetry::{Permutation, WeightedGraph};

#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    pub fn flag(&mut self, key: impl Into<String>, value: bool) -> &mut Self {
        self.put(key, yes_no(value))
    }

    /// The report as `# key: value` comment lines, for embedding in a file.
    pub fn as_comments(&self) -> String {
        self.lines
            .iter()
            .map(|(k, v)| format!("# {}: {}\n", k, v))
            .collect()
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{}: {}", k, v)?;
        }
        Ok(())
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Edge list such as `0-4 0-5 1-5`, with `:w` appended to weights other than 1.
pub fn edge_list(g: &WeightedGraph) -> String {
    let edges: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(i, j, w)| {
            if w == 1 {
                format!("{}-{}", i, j)
            } else {
                format!("{}-{}:{}", i, j, w)
            }
        })
        .collect();
    if edges.is_empty() {
        "none".into()
    } else {
        edges.join(" ")
    }
}

pub fn perm_list(perms: &[Permutation]) -> String {
    perms
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(";")
}
