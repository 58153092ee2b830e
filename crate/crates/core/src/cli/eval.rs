//! Evaluation of parsed expressions in a series ring or a cyclic algebra.

use std::sync::Arc;

use num_rational::BigRational;

use super::parse::{parse, Expr};
use crate::coeffield::Field;
use crate::cyclicalg::{AlgebraElement, CyclicAlgebra};
use crate::error::EvalError;
use crate::freegroup::Word;
use crate::mnseries::{Precision, RingHandle, Series, SeriesRing};

pub fn eval_series(e: &Expr, ring: &Arc<SeriesRing>, depth: usize) -> Result<Series, EvalError> {
    let rank = ring.twist().rank();
    Ok(match e {
        Expr::Coeff(c) => ring.constant(ring.field().from_rational(c.clone())),
        Expr::Sqrt(d) => match ring.field() {
            Field::Quadratic { d: dd } if dd == *d => ring.constant(ring.field().sqrt_d()?),
            _ => return Err(EvalError::Unsupported(format!("sqrt({d})"))),
        },
        Expr::Atom(s) if s.name == "r" && !s.inverse => ring.constant(ring.field().sqrt_d()?),
        Expr::Atom(s) => {
            let g = s
                .generator_index()
                .filter(|&g| (g as usize) <= rank)
                .ok_or_else(|| EvalError::UnknownSymbol(s.name.clone()))?;
            let w = Word::generator(g);
            ring.word(if s.inverse { w.inverse() } else { w })
        }
        Expr::Sum(xs) => {
            let mut acc = ring.zero();
            for x in xs {
                acc = acc.add(&eval_series(x, ring, depth)?);
            }
            acc
        }
        Expr::Neg(x) => eval_series(x, ring, depth)?.neg(),
        Expr::Product(xs) => {
            let mut acc = ring.one();
            for x in xs {
                acc = acc.mul(&eval_series(x, ring, depth)?);
            }
            acc
        }
        Expr::Inverse(x) => eval_series(x, ring, depth)?.invert(depth)?,
        Expr::Power(x, n) => eval_series(x, ring, depth)?.pow(*n),
        Expr::Conj(g, a) => Series::conjugate(
            &eval_series(g, ring, depth)?,
            &eval_series(a, ring, depth)?,
            depth,
        )?,
        Expr::Tail(w) => ring.make_series(Vec::new(), Precision::Above(w.clone())),
    })
}

/// Parses and evaluates in one step.
pub fn series_from_str(text: &str, ring: &Arc<SeriesRing>, depth: usize) -> Result<Series, EvalError> {
    eval_series(&parse(text)?, ring, depth)
}

pub fn eval_algebra(e: &Expr, alg: &CyclicAlgebra) -> Result<AlgebraElement, EvalError> {
    Ok(match e {
        Expr::Coeff(c) => alg.scalar(c.clone()),
        Expr::Atom(s) => {
            let base = match s.name.as_str() {
                "v" => alg.v(),
                "u" => alg.u(),
                other => alg
                    .aliases()
                    .iter()
                    .find(|(n, _)| n == other)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| EvalError::UnknownSymbol(other.into()))?,
            };
            if s.inverse {
                alg.inv(&base)?
            } else {
                base
            }
        }
        Expr::Sum(xs) => {
            let mut acc = alg.zero();
            for x in xs {
                acc = alg.add(&acc, &eval_algebra(x, alg)?);
            }
            acc
        }
        Expr::Neg(x) => alg.neg(&eval_algebra(x, alg)?),
        Expr::Product(xs) => {
            let mut acc = alg.one();
            for x in xs {
                acc = alg.mul(&acc, &eval_algebra(x, alg)?);
            }
            acc
        }
        Expr::Inverse(x) => alg.inv(&eval_algebra(x, alg)?)?,
        Expr::Power(x, n) => alg.pow(&eval_algebra(x, alg)?, *n),
        Expr::Conj(g, a) => alg.conjugate(&eval_algebra(g, alg)?, &eval_algebra(a, alg)?)?,
        Expr::Sqrt(d) => return Err(EvalError::Unsupported(format!("sqrt({d})"))),
        Expr::Tail(w) => return Err(EvalError::Unsupported(format!("O(> {w})"))),
    })
}

pub fn algebra_from_str(text: &str, alg: &CyclicAlgebra) -> Result<AlgebraElement, EvalError> {
    eval_algebra(&parse(text)?, alg)
}

/// A rational literal such as `-3/4`.
pub fn rational_from_str(text: &str) -> Result<BigRational, EvalError> {
    match parse(text)? {
        Expr::Coeff(c) => Ok(c),
        Expr::Neg(b) => match *b {
            Expr::Coeff(c) => Ok(-c),
            other => Err(EvalError::Unsupported(format!("{other} as a rational"))),
        },
        other => Err(EvalError::Unsupported(format!("{other} as a rational"))),
    }
}
