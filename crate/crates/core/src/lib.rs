//! First-order logic with a first-class boolean sort.
//!
//! The crate parses FOOL problems, sort-checks and evaluates them, lowers
//! them to ordinary many-sorted first-order logic, checks model preservation
//! of the lowering by enumerating finite interpretations, and refutes the
//! result with a small saturation prover.

pub mod ast;
pub mod problem;
pub mod prover;
pub mod semantics;
pub mod tptp;
pub mod translate;
pub mod typing;

pub use ast::{
    Connective, LetIn, Path, Quantifier, Signature, SignatureError, Sort, Symbol, Term,
    TypeContext, TypeSig,
};
