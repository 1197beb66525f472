//! Symmetries of codeword-stabilized (CWS) and union-stabilizer quantum codes
//! over prime-dimensional qudits.
//!
//! The crate provides exact F_p linear algebra ([`fp`]), the phased Pauli
//! group ([`pauli`]), stabilizer groups ([`stabilizer`]), nonlinear classical
//! codes ([`classical`]), CWS/USt codes with their unique canonical form and
//! permutation-symmetry tests ([`cws`]), the construction of symmetric
//! stabilizer states ([`extension`]), graph states and local-complementation
//! orbits ([`graph`]), a catalogue of concrete codes ([`zoo`]), text formats
//! ([`text`]) and a dense-matrix oracle ([`dense`]) used to cross-check the
//! symbolic computations.
//!
//! # Pauli strings
//!
//! Operators are written as an optional phase prefix followed by one token
//! per qudit. The prefix is `w^k` for `ω^k`, or `-` for `ω = −1` when
//! `p = 2`. A token is `I`, `X`, `Z`, or `X<a>Z<b>` with decimal exponents;
//! `X<a>` and `Z<b>` alone are also accepted. Tokens may be separated by
//! spaces. Examples: `XZZXI`, `-XXXXX`, `w^2 X1Z2 I I` for `p = 3`.
//!
//! ```
//! use cws_symmetry::{cws, zoo, Permutation};
//!
//! let code = zoo::five_qubit();
//! assert!(cws::has_symmetry(&code, &Permutation::cyclic_shift(5)).unwrap());
//! assert_eq!(cws::canonical_ust(&code).rank(), 4);
//! ```

pub mod classical;
pub mod cws;
pub mod dense;
pub mod error;
pub mod extension;
pub mod fp;
pub mod graph;
pub mod pauli;
pub mod permutation;
pub mod stabilizer;
pub mod text;
pub mod zoo;

pub use classical::{CharSum, ClassicalCode};
pub use cws::{CanonicalUst, CwsUstCode};
pub use dense::{DenseOperator, DenseState};
pub use error::{Error, Result};
pub use fp::{Field, FpMatrix, FpVector, Subspace};
pub use graph::{LocalCliffordWord, LocalGate, WeightedGraph};
pub use pauli::PauliOperator;
pub use permutation::Permutation;
pub use stabilizer::{StabilizerGroup, StandardForm, Violation};
