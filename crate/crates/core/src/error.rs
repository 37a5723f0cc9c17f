use thiserror::Error;

use crate::classes::ClassKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must have at least one stored coefficient")]
    EmptySeries,
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("argument of sqrt(1+u) must have zero constant term")]
    NonzeroConstant,
    #[error("Schur parameter {index} has modulus {modulus} > 1")]
    InvalidSchurPoint { index: usize, modulus: f64 },
    #[error("coefficient triple violates the Schwarz constraints")]
    InfeasibleTriple,
    #[error("alpha out of range {range}")]
    AlphaOutOfRange {
        kind: ClassKind,
        alpha: f64,
        range: &'static str,
    },
    #[error("c1 = {0} out of range [0,1]")]
    C1OutOfRange(f64),
    #[error("omega is not a Schwarz function: constant term {0} is nonzero")]
    NonSchwarzInput(f64),
    #[error("series order {have} too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("need coefficients through a_{need}, only {have} given")]
    InsufficientCoefficients { have: usize, need: usize },
    #[error("Hankel determinant needs q >= 1 and n >= 1")]
    InvalidHankelIndex,
    #[error("{0} is not covered by a sharp theorem")]
    NotASharpTheorem(ClassKind),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}
