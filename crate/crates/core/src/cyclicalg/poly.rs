//! Dense polynomials over ℚ and the number fields `ℚ[t]/(f)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term up, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::new(vec![c])
    }

    /// `t`
    pub fn var() -> Poly {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.0.clone();
        let mut quo = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, b) in d.0.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            quo[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(BigRational::one() / l)),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner) mod m` (Horner).
    pub fn compose_mod(&self, inner: &Poly, m: &Poly) -> Poly {
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| {
                acc.mul(inner).add(&Poly::constant(c.clone())).rem(m)
            })
    }

    /// `self(inner)` without reduction.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(inner).add(&Poly::constant(c.clone())))
    }

    /// Formats with the given variable name, e.g. `v^3 - 3*v + 1`.
    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_q(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", fmt_q(&a)));
            }
        }
        out
    }
}

pub(crate) fn fmt_q(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("t"))
    }
}

/// Multiplicative inverse of `p` modulo an irreducible `m`.
pub fn inverse_mod(p: &Poly, m: &Poly) -> Option<Poly> {
    // extended Euclid tracking the coefficient of p
    let (mut r0, mut r1) = (m.clone(), p.rem(m));
    let (mut s0, mut s1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (quo, r) = r0.divrem(&r1);
        let s = s0.sub(&quo.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let c = BigRational::one() / r0.leading().unwrap();
    Some(s0.scale(&c).rem(m))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("evaluation too large for trial division");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = Poly::new(vec![-xj.clone(), BigRational::one()]);
                basis = basis.mul(&lin).scale(&(BigRational::one() / (xi - xj)));
            }
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Kronecker's method: a nontrivial factor of an integer polynomial, if any.
pub fn find_factor(f: &Poly) -> Option<Poly> {
    let n = f.degree()?;
    let mut points = Vec::new();
    let mut k: i64 = 0;
    while points.len() <= n / 2 {
        let x = q(k);
        let y = f.eval(&x);
        if y.is_zero() {
            return Some(Poly::new(vec![-x, BigRational::one()]));
        }
        points.push((x, y.to_integer()));
        k = if k > 0 { -k } else { -k + 1 };
    }
    for m in 1..=n / 2 {
        let xs: Vec<BigRational> = points[..=m].iter().map(|p| p.0.clone()).collect();
        let divs: Vec<Vec<BigInt>> = points[..=m].iter().map(|p| divisors(&p.1)).collect();
        let mut idx = vec![0usize; m + 1];
        let mut signs = vec![false; m + 1];
        loop {
            let ys: Vec<BigRational> = (0..=m)
                .map(|i| {
                    let d = BigRational::from_integer(divs[i][idx[i]].clone());
                    if signs[i] {
                        -d
                    } else {
                        d
                    }
                })
                .collect();
            let g = interpolate(&xs, &ys);
            if g.degree() == Some(m) && g.has_integer_coeffs() && f.rem(&g).is_zero() {
                return Some(g);
            }
            // odometer; the first sign stays fixed since ±g give the same factor
            let mut i = 0;
            loop {
                if i > m {
                    break;
                }
                if i > 0 && !signs[i] {
                    signs[i] = true;
                    break;
                }
                signs[i] = false;
                idx[i] += 1;
                if idx[i] < divs[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i > m {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = Poly::from_ints(&[1, -3, 0, 1]);
        assert_eq!(f.to_string(), "t^3 - 3*t + 1");
        assert_eq!(f.fmt_with("v"), "v^3 - 3*v + 1");
        let s = Poly::from_ints(&[-2, 0, 1]);
        assert!(s.compose_mod(&s, &f).compose_mod(&s, &f) == Poly::var());
        assert!(f.compose_mod(&s, &f).is_zero());
        let bad = Poly::from_ints(&[-1, 0, 1]);
        assert!(!f.compose_mod(&bad, &f).is_zero());
        let (quo, r) = f.divrem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(quo.mul(&Poly::from_ints(&[-1, 1])).add(&r), f);
    }

    #[test]
    fn inverses() {
        let f = Poly::from_ints(&[1, 0, 1]);
        let p = Poly::from_ints(&[1, 1]);
        let inv = inverse_mod(&p, &f).unwrap();
        assert_eq!(p.mul(&inv).rem(&f), Poly::one());
        assert!(inverse_mod(&Poly::zero(), &f).is_none());
    }

    #[test]
    fn irreducibility() {
        assert!(find_factor(&Poly::from_ints(&[1, -3, 0, 1])).is_none());
        assert!(find_factor(&Poly::from_ints(&[1, 0, 1])).is_none());
        assert!(find_factor(&Poly::from_ints(&[-2, 0, 0, 1])).is_none());
        assert!(find_factor(&Poly::from_ints(&[1, 1, 1, 1, 1, 1, 1])).is_none());
        // (t^2+1)(t^2+t+1)
        let g = find_factor(&Poly::from_ints(&[1, 1, 2, 1, 1])).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(find_factor(&Poly::from_ints(&[-1, 0, 1])).is_some());
        // (t^3 - 2)(t^3 + 3)
        assert!(find_factor(&Poly::from_ints(&[-6, 0, 0, 1, 0, 0, 1])).is_some());
    }
}
