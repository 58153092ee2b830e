use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// The coefficient field: ℚ, or ℚ(√d) for a fixed square-free `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Field {
    Rational,
    Quadratic { d: i64 },
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Field, FieldError> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(FieldError::NotSquareFree(d));
        }
        Ok(Field::Quadratic { d })
    }

    pub fn zero(&self) -> Coeff {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Coeff {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> Coeff {
        match *self {
            Field::Rational => Coeff::Rational(q),
            Field::Quadratic { d } => Coeff::Quadratic(Quad {
                a: q,
                b: BigRational::zero(),
                d,
            }),
        }
    }

    /// `√d`; fails over ℚ.
    pub fn sqrt_d(&self) -> Result<Coeff, FieldError> {
        match *self {
            Field::Rational => Err(FieldError::UnsupportedAutomorphism("sqrt".into())),
            Field::Quadratic { d } => Ok(Coeff::Quadratic(Quad {
                a: BigRational::zero(),
                b: BigRational::one(),
                d,
            })),
        }
    }

    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (Field::Rational, Coeff::Rational(_)) => true,
            (Field::Quadratic { d }, Coeff::Quadratic(q)) => q.d == *d,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

pub(crate) fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b·√d`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

/// An exact field element. Both variants are kept canonical: rationals in
/// lowest terms with positive denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Quadratic(Quad),
}

/// Operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

/// Result of [`field_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldValue {
    Coeff(Coeff),
    Bool(bool),
}

/// Checked entry point; the operator impls panic on field mismatch instead.
pub fn field_arith(op: FieldOp, operands: &[&Coeff]) -> Result<FieldValue, FieldError> {
    let binary = |f: fn(&Coeff, &Coeff) -> Result<Coeff, FieldError>| {
        let [a, b] = operands else {
            panic!("binary field op needs two operands");
        };
        f(a, b)
    };
    Ok(match op {
        FieldOp::Add => FieldValue::Coeff(binary(Coeff::try_add)?),
        FieldOp::Mul => FieldValue::Coeff(binary(Coeff::try_mul)?),
        FieldOp::Neg => FieldValue::Coeff(-operands[0]),
        FieldOp::Inv => FieldValue::Coeff(operands[0].inv()?),
        FieldOp::Eq => {
            let [a, b] = operands else {
                panic!("eq needs two operands");
            };
            if !a.same_field(b) {
                return Err(FieldError::FieldMismatch);
            }
            FieldValue::Bool(a == b)
        }
    })
}

impl Coeff {
    pub fn rational(n: i64, d: i64) -> Coeff {
        Coeff::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn field(&self) -> Field {
        match self {
            Coeff::Rational(_) => Field::Rational,
            Coeff::Quadratic(q) => Field::Quadratic { d: q.d },
        }
    }

    pub fn same_field(&self, other: &Coeff) -> bool {
        self.field() == other.field()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Quadratic(q) => q.a.is_zero() && q.b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Quadratic(q) => q.a.is_one() && q.b.is_zero(),
        }
    }

    /// The rational part when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(r) => Some(r),
            Coeff::Quadratic(q) if q.b.is_zero() => Some(&q.a),
            Coeff::Quadratic(_) => None,
        }
    }

    pub fn try_add(&self, other: &Coeff) -> Result<Coeff, FieldError> {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a + b)),
            (Coeff::Quadratic(x), Coeff::Quadratic(y)) if x.d == y.d => {
                Ok(Coeff::Quadratic(Quad {
                    a: &x.a + &y.a,
                    b: &x.b + &y.b,
                    d: x.d,
                }))
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn try_mul(&self, other: &Coeff) -> Result<Coeff, FieldError> {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a * b)),
            (Coeff::Quadratic(x), Coeff::Quadratic(y)) if x.d == y.d => {
                let d = BigRational::from_integer(x.d.into());
                Ok(Coeff::Quadratic(Quad {
                    a: &x.a * &y.a + &x.b * &y.b * d,
                    b: &x.a * &y.b + &x.b * &y.a,
                    d: x.d,
                }))
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn inv(&self) -> Result<Coeff, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(r) => Coeff::Rational(r.recip()),
            Coeff::Quadratic(q) => {
                let d = BigRational::from_integer(q.d.into());
                let norm = &q.a * &q.a - &q.b * &q.b * d;
                Coeff::Quadratic(Quad {
                    a: &q.a / &norm,
                    b: -&q.b / &norm,
                    d: q.d,
                })
            }
        })
    }

    pub fn try_div(&self, other: &Coeff) -> Result<Coeff, FieldError> {
        self.try_mul(&other.inv()?)
    }

    /// `√d ↦ -√d`; the identity on rationals.
    pub fn conjugate(&self) -> Coeff {
        match self {
            Coeff::Rational(_) => self.clone(),
            Coeff::Quadratic(q) => Coeff::Quadratic(Quad {
                a: q.a.clone(),
                b: -&q.b,
                d: q.d,
            }),
        }
    }

    /// True when printing needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        matches!(self, Coeff::Quadratic(q) if !q.a.is_zero() && !q.b.is_zero())
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.try_add(rhs).expect("coefficient field mismatch")
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.try_mul(rhs).expect("coefficient field mismatch")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(r) => Coeff::Rational(-r),
            Coeff::Quadratic(q) => Coeff::Quadratic(Quad {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    /// `3/4`, `-2`, `r`, `-1/2r`, `1+2r` (with `r = √d`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Coeff::Quadratic(q) => {
                let rpart = |b: &BigRational| -> String {
                    if b.is_one() {
                        "r".into()
                    } else if *b == -BigRational::one() {
                        "-r".into()
                    } else {
                        format!("{}r", fmt_rational(b))
                    }
                };
                match (q.a.is_zero(), q.b.is_zero()) {
                    (_, true) => write!(f, "{}", fmt_rational(&q.a)),
                    (true, false) => write!(f, "{}", rpart(&q.b)),
                    (false, false) => {
                        let sign = if q.b.is_negative() { "-" } else { "+" };
                        write!(f, "{}{}{}", fmt_rational(&q.a), sign, rpart(&q.b.abs()))
                    }
                }
            }
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<BigInt> for Coeff {
    fn from(n: BigInt) -> Self {
        Coeff::Rational(BigRational::from_integer(n))
    }
}
