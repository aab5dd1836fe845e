//! Finite interpretations, evaluation, and the enumeration oracle used to
//! check that translations preserve models.

mod enumerate;
mod eval;
mod preserve;

pub use enumerate::{
    empty_interpretation, enumerate_interpretations, enumerate_over, interpretation_count,
    DomainSpec, DomainSpecError, Interpretations, OracleError, DEFAULT_CAP,
};
pub use eval::{
    eval, eval_partial, models, Elem, EvalError, Interpretation, Table, FALSE, TRUE, UNKNOWN,
};
pub use preserve::{
    check_model_preservation, check_witnessability, find_extension, find_model, Direction,
    ExtensionSearch, OracleConfig, Report, Translated,
};
