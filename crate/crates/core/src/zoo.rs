//! Constructors for the concrete codes studied in the library.

use crate::classical::ClassicalCode;
use crate::cws::CwsUstCode;
use crate::error::{Error, Result};
use crate::fp::{Field, FpVector};
use crate::pauli::PauliOperator;
use crate::permutation::Permutation;
use crate::stabilizer::StabilizerGroup;

fn qubits() -> Field {
    Field::new(2).expect("2 is prime")
}

/// Generators `XZZXI` and its cyclic shifts (four of them).
pub const FIVE_QUBIT_GENERATORS: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

pub const STEANE_GENERATORS: [&str; 6] = [
    "XIXXXII", "IXIXXXI", "IIXIXXX", "ZIZZZII", "IZIZZZI", "IIZIZZZ",
];

fn cws(gens: &[&str], words: &[&str]) -> CwsUstCode {
    let f = qubits();
    CwsUstCode::new(
        StabilizerGroup::from_strings(f, gens).expect("zoo generators are valid"),
        ClassicalCode::from_strings(f, words).expect("zoo words are valid"),
    )
    .expect("word length matches generator count")
}

/// The five-qubit code as `(⟨g_1..g_4, Z^{⊗5}⟩, {00000, 00001})`.
pub fn five_qubit() -> CwsUstCode {
    let mut gens = FIVE_QUBIT_GENERATORS.to_vec();
    gens.push("ZZZZZ");
    cws(&gens, &["00000", "00001"])
}

/// The same code with `X^{⊗5}` as the fifth generator.
pub fn five_qubit_x_variant() -> CwsUstCode {
    let mut gens = FIVE_QUBIT_GENERATORS.to_vec();
    gens.push("XXXXX");
    cws(&gens, &["00000", "00001"])
}

/// The Steane code as `(⟨g_1..g_6, Z^{⊗7}⟩, {0000000, 0000001})`.
pub fn steane() -> CwsUstCode {
    let mut gens = STEANE_GENERATORS.to_vec();
    gens.push("ZZZZZZZ");
    cws(&gens, &["0000000", "0000001"])
}

/// The Steane stabilizer code `⟨g_1..g_6⟩` without logical operators.
pub fn steane_stabilizer() -> StabilizerGroup {
    StabilizerGroup::from_strings(qubits(), &STEANE_GENERATORS).expect("valid")
}

pub fn five_qubit_stabilizer() -> StabilizerGroup {
    StabilizerGroup::from_strings(qubits(), &FIVE_QUBIT_GENERATORS).expect("valid")
}

/// Qubit indexing for the toric code on an `L × L` periodic lattice.
///
/// Horizontal edge `(r, c)` joins vertices `(r, c)` and `(r, c+1)` and has
/// index `r·L + c`; vertical edge `(r, c)` joins `(r, c)` and `(r+1, c)` and
/// has index `L² + r·L + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToricLayout {
    pub l: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeDirection {
    Horizontal,
    Vertical,
}

impl ToricLayout {
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::Precondition(format!("toric lattice needs L ≥ 2, got {}", l)));
        }
        Ok(ToricLayout { l })
    }

    pub fn qubits(&self) -> usize {
        2 * self.l * self.l
    }

    pub fn index(&self, dir: EdgeDirection, r: i64, c: i64) -> usize {
        let l = self.l as i64;
        let (r, c) = (r.rem_euclid(l) as usize, c.rem_euclid(l) as usize);
        let base = match dir {
            EdgeDirection::Horizontal => 0,
            EdgeDirection::Vertical => self.l * self.l,
        };
        base + r * self.l + c
    }

    pub fn edge(&self, q: usize) -> (EdgeDirection, usize, usize) {
        let ll = self.l * self.l;
        let dir = if q < ll {
            EdgeDirection::Horizontal
        } else {
            EdgeDirection::Vertical
        };
        let k = q % ll;
        (dir, k / self.l, k % self.l)
    }

    pub fn star(&self, r: i64, c: i64) -> Vec<usize> {
        use EdgeDirection::*;
        vec![
            self.index(Horizontal, r, c),
            self.index(Horizontal, r, c - 1),
            self.index(Vertical, r, c),
            self.index(Vertical, r - 1, c),
        ]
    }

    pub fn plaquette(&self, r: i64, c: i64) -> Vec<usize> {
        use EdgeDirection::*;
        vec![
            self.index(Horizontal, r, c),
            self.index(Horizontal, r + 1, c),
            self.index(Vertical, r, c),
            self.index(Vertical, r, c + 1),
        ]
    }

    fn translation(&self, dr: i64, dc: i64) -> Permutation {
        let image = (0..self.qubits())
            .map(|q| {
                let (dir, r, c) = self.edge(q);
                self.index(dir, r as i64 + dr, c as i64 + dc)
            })
            .collect();
        Permutation::from_images(image).expect("translations are bijective")
    }

    /// Horizontal translation by one column.
    pub fn th(&self) -> Permutation {
        self.translation(0, 1)
    }

    /// Vertical translation by one row.
    pub fn tv(&self) -> Permutation {
        self.translation(1, 0)
    }

    fn support_op(&self, support: &[usize], z: bool) -> PauliOperator {
        let f = qubits();
        let mut v = vec![0i64; self.qubits()];
        for &q in support {
            v[q] = 1;
        }
        let v = FpVector::new(f, v);
        let zero = FpVector::zero(f, self.qubits());
        if z {
            PauliOperator::new(0, zero, v).expect("same shape")
        } else {
            PauliOperator::new(0, v, zero).expect("same shape")
        }
    }

    /// All `L²` star operators, row-major over vertices.
    pub fn stars(&self) -> Vec<PauliOperator> {
        let l = self.l as i64;
        (0..l)
            .flat_map(|r| (0..l).map(move |c| (r, c)))
            .map(|(r, c)| self.support_op(&self.star(r, c), false))
            .collect()
    }

    /// All `L²` plaquette operators, row-major over faces.
    pub fn plaquettes(&self) -> Vec<PauliOperator> {
        let l = self.l as i64;
        (0..l)
            .flat_map(|r| (0..l).map(move |c| (r, c)))
            .map(|(r, c)| self.support_op(&self.plaquette(r, c), true))
            .collect()
    }

    /// `Z` on the horizontal edges of row 0 and `Z` on the vertical edges of column 0.
    pub fn logical_z(&self) -> [PauliOperator; 2] {
        let l = self.l as i64;
        let row: Vec<usize> = (0..l)
            .map(|c| self.index(EdgeDirection::Horizontal, 0, c))
            .collect();
        let col: Vec<usize> = (0..l)
            .map(|r| self.index(EdgeDirection::Vertical, r, 0))
            .collect();
        [self.support_op(&row, true), self.support_op(&col, true)]
    }

    /// Independent stabilizer generators: all stars and plaquettes except the last of each.
    pub fn stabilizer(&self) -> StabilizerGroup {
        let mut gens = self.stars();
        gens.pop();
        let mut plaq = self.plaquettes();
        plaq.pop();
        gens.extend(plaq);
        StabilizerGroup::new(qubits(), self.qubits(), gens).expect("toric generators are valid")
    }

    /// CWS form: the stabilizer plus both logical Z loops, with the
    /// classical code free in the two loop coordinates.
    pub fn code(&self) -> CwsUstCode {
        let f = qubits();
        let stab = self.stabilizer().extend(&self.logical_z()).expect("valid completion");
        let m = stab.rank();
        let words = (0..4)
            .map(|k| {
                let mut w = FpVector::zero(f, m);
                w.set(m - 2, (k >> 1) & 1);
                w.set(m - 1, k & 1);
                w
            })
            .collect();
        let cls = ClassicalCode::new(f, m, words).expect("nonempty");
        CwsUstCode::new(stab, cls).expect("lengths match")
    }
}

/// Toric code on an `L × L` lattice together with its translations.
pub struct Toric {
    pub layout: ToricLayout,
    pub code: CwsUstCode,
    pub th: Permutation,
    pub tv: Permutation,
}

pub fn toric(l: usize) -> Result<Toric> {
    let layout = ToricLayout::new(l)?;
    Ok(Toric {
        code: layout.code(),
        th: layout.th(),
        tv: layout.tv(),
        layout,
    })
}

fn ghz_generators(n: usize, minus: bool) -> Vec<String> {
    let mut gens = vec![format!("{}{}", if minus { "-" } else { "" }, "X".repeat(n))];
    for i in 0..n - 1 {
        let mut s = vec!['I'; n];
        s[i] = 'Z';
        s[i + 1] = 'Z';
        gens.push(s.into_iter().collect());
    }
    gens
}

/// The state `(|0…0⟩ − |1…1⟩)/√2` as `(⟨−X…X, Z_iZ_{i+1}⟩, {0…0})`.
pub fn ghz_minus(n: usize) -> Result<CwsUstCode> {
    if n < 2 {
        return Err(Error::Precondition(format!("GHZ state needs n ≥ 2, got {}", n)));
    }
    let gens = ghz_generators(n, true);
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let zero = "0".repeat(n);
    Ok(cws(&refs, &[zero.as_str()]))
}

/// The same state as `(⟨X…X, Z_iZ_{i+1}⟩, {10…0})`.
pub fn ghz_minus_shifted(n: usize) -> Result<CwsUstCode> {
    if n < 2 {
        return Err(Error::Precondition(format!("GHZ state needs n ≥ 2, got {}", n)));
    }
    let gens = ghz_generators(n, false);
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let word = format!("1{}", "0".repeat(n - 1));
    Ok(cws(&refs, &[word.as_str()]))
}
