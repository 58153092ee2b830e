use thiserror::Error;

use crate::freegroup::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("Magnus comparison found no nonzero coefficient up to degree {cap}")]
    DegreeCapExhausted { cap: usize },
    #[error("Magnus coefficient overflowed 128-bit arithmetic")]
    CoefficientOverflow,
    #[error("the identity has no primitive root")]
    IdentityHasNoRoot,
    #[error("normal closure of the identity requested")]
    IdentityGenerator,
    #[error("enumeration exceeded its node budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("free groups here have rank at least 2, got {0}")]
    RankTooSmall(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficients from different fields cannot be combined")]
    FieldMismatch,
    #[error("{0} is not a square-free integer other than 0 and 1")]
    NotSquareFree(i64),
    #[error("the automorphism {0} does not act on this field")]
    UnsupportedAutomorphism(String),
    #[error("twist names generator {index} but the group has rank {rank}")]
    TwistRank { index: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the valuation is undefined on zero")]
    Zero,
    #[error("no stored term lies inside the precision window; the valuation is indeterminate")]
    Indeterminate,
    #[error("expected a series with valuation above 1, got valuation {0}")]
    NotAboveOne(Word),
    #[error("series from different rings cannot be combined")]
    RingMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] FreeGroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("sigma image is not a root of the defining polynomial")]
    NotARoot,
    #[error("defining polynomial is reducible: factor {0}")]
    Reducible(String),
    #[error("defining polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("the structure constant a must be nonzero")]
    ZeroParameter,
    #[error("sigma has order {order} on K, expected {expected}")]
    NotCyclic { order: usize, expected: usize },
    #[error("element {0} is not invertible")]
    Singular(String),
    #[error("the given span is not commutative")]
    NonCommutative,
    #[error("x does not normalize K: x·({0})·x⁻¹ leaves K")]
    NotNormalizing(String),
    #[error("the identity automorphism has no autocommutator witness")]
    IdentityAutomorphism,
    #[error("root search stopped at height {height} with {found} roots, expected {expected}")]
    RootSearchExhausted {
        height: i64,
        found: usize,
        expected: usize,
    },
    #[error("no primitive element a + λ·b found for λ up to {cap}")]
    LambdaCapReached { cap: i64 },
    #[error("elements do not commute")]
    NotCommuting,
    #[error("coordinate vector has length {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{0} is not available in this session")]
    Unsupported(String),
}

impl From<FieldError> for EvalError {
    fn from(e: FieldError) -> Self {
        EvalError::Series(e.into())
    }
}
