//! Cyclic algebras `(K/ℚ, σ, a)`: `K = ℚ(v) = ℚ[t]/(f)`, `u·k = σ(k)·u`,
//! `u^n = a`. Elements are coordinate vectors in the basis `v^i u^j`, index
//! `i + n·j`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{rank_of, Matrix, Vector};
use super::poly::{find_factor, fmt_q, Poly};
use crate::error::AlgebraError;

pub const PRESET_NAMES: [&str; 2] = ["lam-14-16", "quaternion"];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vector,
}

impl AlgebraElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Number of nonzero coordinates.
    pub fn support_size(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }
}

#[derive(Clone, Debug)]
pub struct CyclicAlgebra {
    name: String,
    f: Poly,
    sigma_image: Poly,
    a: BigRational,
    n: usize,
    /// `σ^j(v)` for `0 <= j < n`.
    sigma_powers: Vec<Poly>,
    verified_division: bool,
    /// Extra symbol names usable in expressions, e.g. `w = u`.
    aliases: Vec<(String, AlgebraElement)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub minpoly: String,
    pub sigma_image: String,
    pub a: String,
    pub n: usize,
    pub dim_f: usize,
    pub verified_division: bool,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CyclicAlgebra {
    /// Checks that `f` is monic, integral and irreducible, that `sigma_image`
    /// is a root of `f` in `K`, that `σ` has order exactly `n`, and `a ≠ 0`.
    pub fn build(f: Poly, sigma_image: Poly, a: BigRational) -> Result<CyclicAlgebra, AlgebraError> {
        let n = match f.degree() {
            Some(n) if n >= 1 && f.is_monic() && f.has_integer_coeffs() => n,
            _ => return Err(AlgebraError::NotMonic),
        };
        if let Some(g) = find_factor(&f) {
            return Err(AlgebraError::Reducible(g.fmt_with("v")));
        }
        let sigma_image = sigma_image.rem(&f);
        if !f.compose_mod(&sigma_image, &f).is_zero() {
            return Err(AlgebraError::NotARoot);
        }
        if a.is_zero() {
            return Err(AlgebraError::ZeroParameter);
        }
        let mut sigma_powers = vec![Poly::var().rem(&f)];
        for k in 1..=n {
            let next = sigma_powers[k - 1].compose_mod(&sigma_image, &f);
            let back_to_v = next == sigma_powers[0];
            if back_to_v != (k == n) {
                return Err(AlgebraError::NotCyclic {
                    order: k,
                    expected: n,
                });
            }
            if k < n {
                sigma_powers.push(next);
            }
        }
        Ok(CyclicAlgebra {
            name: "custom".into(),
            f,
            sigma_image,
            a,
            n,
            sigma_powers,
            verified_division: false,
            aliases: Vec::new(),
        })
    }

    /// `lam-14-16`: `v³ - 3v + 1`, `σ(v) = v² - 2`, `a = 2`, with `w = u`
    /// (`w³ = 2`). `quaternion`: `v² + 1`, `σ(v) = -v`, `a = -1`.
    pub fn preset(name: &str) -> Result<CyclicAlgebra, AlgebraError> {
        let mut alg = match name {
            "lam-14-16" => {
                let mut alg = CyclicAlgebra::build(
                    Poly::from_ints(&[1, -3, 0, 1]),
                    Poly::from_ints(&[-2, 0, 1]),
                    rat(2),
                )?;
                let u = alg.u();
                alg.aliases.push(("w".into(), u));
                alg
            }
            "quaternion" => CyclicAlgebra::build(
                Poly::from_ints(&[1, 0, 1]),
                Poly::from_ints(&[0, -1]),
                rat(-1),
            )?,
            other => return Err(AlgebraError::UnknownPreset(other.into())),
        };
        alg.name = name.into();
        alg.verified_division = true;
        Ok(alg)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_f(&self) -> usize {
        self.n * self.n
    }

    pub fn minpoly(&self) -> &Poly {
        &self.f
    }

    pub fn sigma_image(&self) -> &Poly {
        &self.sigma_image
    }

    pub fn parameter(&self) -> &BigRational {
        &self.a
    }

    pub fn verified_division(&self) -> bool {
        self.verified_division
    }

    pub fn aliases(&self) -> &[(String, AlgebraElement)] {
        &self.aliases
    }

    pub fn summary(&self) -> AlgebraSummary {
        AlgebraSummary {
            name: self.name.clone(),
            minpoly: self.f.fmt_with("v"),
            sigma_image: self.sigma_image.fmt_with("v"),
            a: fmt_q(&self.a),
            n: self.n,
            dim_f: self.dim_f(),
            verified_division: self.verified_division,
        }
    }

    /// `σ^j` applied to `p ∈ K`.
    pub fn sigma_pow(&self, p: &Poly, j: usize) -> Poly {
        p.compose_mod(&self.sigma_powers[j % self.n], &self.f)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coords: vec![BigRational::zero(); self.dim_f()],
        }
    }

    pub fn scalar(&self, c: BigRational) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(BigRational::one())
    }

    pub fn basis_element(&self, i: usize, j: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[i + self.n * j] = BigRational::one();
        e
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dim_f())
            .map(|k| self.basis_element(k % self.n, k / self.n))
            .collect()
    }

    pub fn v(&self) -> AlgebraElement {
        self.from_k(&Poly::var())
    }

    pub fn u(&self) -> AlgebraElement {
        if self.n == 1 {
            return self.scalar(self.a.clone());
        }
        self.basis_element(0, 1)
    }

    pub fn from_coords(&self, coords: Vector) -> Result<AlgebraElement, AlgebraError> {
        if coords.len() != self.dim_f() {
            return Err(AlgebraError::Dimension {
                got: coords.len(),
                expected: self.dim_f(),
            });
        }
        Ok(AlgebraElement { coords })
    }

    /// `Σ_j parts[j]·u^j`
    pub fn from_parts(&self, parts: &[Poly]) -> AlgebraElement {
        let mut e = self.zero();
        for (j, p) in parts.iter().enumerate() {
            let p = p.rem(&self.f);
            for i in 0..self.n {
                e.coords[i + self.n * j] = p.coeff(i);
            }
        }
        e
    }

    pub fn from_k(&self, p: &Poly) -> AlgebraElement {
        self.from_parts(std::slice::from_ref(p))
    }

    pub fn parts(&self, e: &AlgebraElement) -> Vec<Poly> {
        (0..self.n)
            .map(|j| Poly::new(e.coords[self.n * j..self.n * (j + 1)].to_vec()))
            .collect()
    }

    /// The `K`-part of `e` if `e ∈ K`.
    pub fn as_k(&self, e: &AlgebraElement) -> Option<Poly> {
        e.coords[self.n..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.parts(e).swap_remove(0))
    }

    /// The scalar if `e ∈ F = ℚ`.
    pub fn as_scalar(&self, e: &AlgebraElement) -> Option<BigRational> {
        e.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| e.coords[0].clone())
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, c: &BigRational, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// `(p u^j)(q u^l) = p·σ^j(q)·u^{j+l}`, folding `u^n = a`.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let n = self.n;
        let xp = self.parts(x);
        let yp = self.parts(y);
        let mut out = vec![Poly::zero(); n];
        for (j, p) in xp.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (l, q) in yp.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let mut term = p.mul(&self.sigma_pow(q, j)).rem(&self.f);
                let mut s = j + l;
                if s >= n {
                    term = term.scale(&self.a);
                    s -= n;
                }
                out[s] = out[s].add(&term);
            }
        }
        self.from_parts(&out)
    }

    pub fn pow(&self, x: &AlgebraElement, e: u32) -> AlgebraElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// `x^e`, inverting first for negative `e`.
    pub fn pow_signed(&self, x: &AlgebraElement, e: i64) -> Result<AlgebraElement, AlgebraError> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        Ok(self.pow(&base, e.unsigned_abs() as u32))
    }

    pub fn commutes(&self, x: &AlgebraElement, y: &AlgebraElement) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_matrix(&self, x: &AlgebraElement) -> Matrix {
        let cols: Vec<Vector> = self
            .basis()
            .iter()
            .map(|b| self.mul(x, b).coords)
            .collect();
        Matrix::from_columns(&cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_matrix(&self, x: &AlgebraElement) -> Matrix {
        let cols: Vec<Vector> = self
            .basis()
            .iter()
            .map(|b| self.mul(b, x).coords)
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn is_invertible(&self, x: &AlgebraElement) -> bool {
        self.left_matrix(x).rank() == self.dim_f()
    }

    /// Solves `x·y = 1` through the left-regular representation.
    pub fn inv(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let m = self.left_matrix(x);
        if m.rank() < self.dim_f() {
            return Err(AlgebraError::Singular(self.fmt_element(x)));
        }
        let y = m
            .solve(&self.one().coords)
            .expect("full-rank system is solvable");
        Ok(AlgebraElement { coords: y })
    }

    pub fn conjugate(&self, x: &AlgebraElement, k: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        Ok(self.mul(&self.mul(x, k), &self.inv(x)?))
    }

    /// `deg_F(e)`: rank of `{1, e, e², …}`.
    pub fn degree(&self, e: &AlgebraElement) -> usize {
        let mut powers: Vec<Vector> = vec![self.one().coords];
        let mut p = self.one();
        loop {
            p = self.mul(&p, e);
            powers.push(p.coords.clone());
            if rank_of(&powers) < powers.len() {
                return powers.len() - 1;
            }
        }
    }

    /// Monic minimal polynomial of `e` over ℚ.
    pub fn min_poly(&self, e: &AlgebraElement) -> Poly {
        let d = self.degree(e);
        let powers: Vec<AlgebraElement> = (0..=d as u32).map(|k| self.pow(e, k)).collect();
        // solve Σ_{k<d} c_k e^k = -e^d
        let cols: Vec<Vector> = powers[..d].iter().map(|p| p.coords.clone()).collect();
        let m = Matrix::from_columns(&cols);
        let rhs: Vector = powers[d].coords.iter().map(|c| -c).collect();
        let mut c = m.solve(&rhs).expect("e^d is dependent on lower powers");
        c.push(BigRational::one());
        Poly::new(c)
    }

    /// Evaluates `p(e)`.
    pub fn eval_poly(&self, p: &Poly, e: &AlgebraElement) -> AlgebraElement {
        p.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, e), &self.scalar(c.clone()))
        })
    }

    /// `1 + 2*v - 1/2*v^2*u`; parses back to the same element.
    pub fn fmt_element(&self, e: &AlgebraElement) -> String {
        let mut out = String::new();
        for j in 0..self.n {
            for i in 0..self.n {
                let c = &e.coords[i + self.n * j];
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push("v".to_string()),
                    _ => mono.push(format!("v^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push("u".to_string()),
                    _ => mono.push(format!("u^{j}")),
                }
                let mono = mono.join("*");
                let neg = c.is_negative();
                let a = c.abs();
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                if mono.is_empty() {
                    out.push_str(&fmt_q(&a));
                } else if a.is_one() {
                    out.push_str(&mono);
                } else {
                    out.push_str(&format!("{}*{mono}", fmt_q(&a)));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn display<'a>(&'a self, e: &'a AlgebraElement) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, e }
    }
}

pub struct ElementDisplay<'a> {
    alg: &'a CyclicAlgebra,
    e: &'a AlgebraElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alg.fmt_element(self.e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgOp {
    Mul,
    Add,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgValue {
    Element(AlgebraElement),
    Bool(bool),
}

/// Binary `mul`/`add`/`eq` (folded left over any number of operands) and unary `inv`.
pub fn algebra_arith(
    alg: &CyclicAlgebra,
    op: AlgOp,
    operands: &[&AlgebraElement],
) -> Result<AlgValue, AlgebraError> {
    let first = operands.first().copied().cloned();
    Ok(match op {
        AlgOp::Mul => AlgValue::Element(
            operands
                .iter()
                .fold(alg.one(), |acc, x| alg.mul(&acc, x)),
        ),
        AlgOp::Add => AlgValue::Element(
            operands
                .iter()
                .fold(alg.zero(), |acc, x| alg.add(&acc, x)),
        ),
        AlgOp::Inv => AlgValue::Element(alg.inv(&first.unwrap_or_else(|| alg.zero()))?),
        AlgOp::Eq => AlgValue::Bool(operands.windows(2).all(|w| w[0] == w[1])),
    })
}

/// First nonzero `x` of height `<= height` with a nonzero `y`, `x·y = 0`.
pub fn zero_divisor_search(
    alg: &CyclicAlgebra,
    height: i64,
    max_support: usize,
) -> Option<(AlgebraElement, AlgebraElement)> {
    for v in small_vectors(alg.dim_f(), height, max_support) {
        let x = AlgebraElement {
            coords: v.iter().map(|&c| rat(c)).collect(),
        };
        let ns = alg.left_matrix(&x).nullspace();
        if let Some(y) = sparsest(ns) {
            return Some((x, AlgebraElement { coords: y }));
        }
    }
    None
}

/// The vector with fewest nonzeros (ties: earliest first nonzero), scaled so
/// its first nonzero coordinate is 1.
pub(crate) fn sparsest(vectors: Vec<Vector>) -> Option<Vector> {
    let key = |v: &Vector| {
        (
            v.iter().filter(|c| !c.is_zero()).count(),
            v.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX),
        )
    };
    let best = vectors.into_iter().min_by_key(key)?;
    let lead = best.iter().find(|c| !c.is_zero())?.clone();
    Some(best.iter().map(|c| c / &lead).collect())
}

/// Integer vectors ordered by height, then support size, then positions,
/// then values `1, -1, 2, -2, …`.
pub(crate) fn small_vectors(len: usize, height: i64, max_support: usize) -> Vec<Vec<i64>> {
    (1..=height)
        .flat_map(|h| vector_shell(len, h, max_support))
        .collect()
}

/// The vectors of [`small_vectors`] whose largest entry has absolute value `h`.
pub(crate) fn vector_shell(len: usize, h: i64, max_support: usize) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (1..=h).flat_map(|k| [k, -k]).collect();
    let mut out = Vec::new();
    for s in 1..=max_support.min(len) {
        for positions in combinations(len, s) {
            let mut idx = vec![0usize; s];
            loop {
                let vals: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
                if vals.iter().any(|v| v.abs() == h) {
                    let mut v = vec![0; len];
                    for (p, x) in positions.iter().zip(&vals) {
                        v[*p] = *x;
                    }
                    out.push(v);
                }
                let mut k = s;
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < values.len() {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build() {
        let lam = CyclicAlgebra::preset("lam-14-16").unwrap();
        assert_eq!(lam.dim_f(), 9);
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        assert_eq!(h.dim_f(), 4);
        assert!(matches!(
            CyclicAlgebra::preset("octonion"),
            Err(AlgebraError::UnknownPreset(_))
        ));
    }

    #[test]
    fn construction_errors() {
        let f = Poly::from_ints(&[1, -3, 0, 1]);
        assert_eq!(
            CyclicAlgebra::build(f.clone(), Poly::from_ints(&[-1, 0, 1]), rat(2)).unwrap_err(),
            AlgebraError::NotARoot
        );
        assert_eq!(
            CyclicAlgebra::build(f.clone(), Poly::from_ints(&[-2, 0, 1]), rat(0)).unwrap_err(),
            AlgebraError::ZeroParameter
        );
        assert!(matches!(
            CyclicAlgebra::build(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, -1]), rat(1)),
            Err(AlgebraError::Reducible(_))
        ));
        assert!(matches!(
            CyclicAlgebra::build(f, Poly::var(), rat(2)),
            Err(AlgebraError::NotCyclic { order: 1, .. })
        ));
    }

    #[test]
    fn quaternion_relations() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let (u, v) = (h.u(), h.v());
        assert_eq!(h.mul(&u, &v), h.neg(&h.mul(&v, &u)));
        assert_eq!(h.inv(&v).unwrap(), h.neg(&v));
        let x = h.add(&h.add(&h.one(), &v), &u);
        assert_eq!(h.mul(&x, &h.inv(&x).unwrap()), h.one());
        assert_eq!(h.fmt_element(&h.mul(&v, &u)), "v*u");
    }

    #[test]
    fn lam_relations() {
        let lam = CyclicAlgebra::preset("lam-14-16").unwrap();
        let u = lam.u();
        assert_eq!(lam.pow(&u, 3), lam.scalar(rat(2)));
        for k in 0..3 {
            let b = lam.basis_element(k, 0);
            let lhs = lam.conjugate(&u, &b).unwrap();
            let rhs = lam.from_k(&lam.sigma_pow(&Poly::new(b.coords()[..3].to_vec()), 1));
            assert_eq!(lhs, rhs);
        }
        assert_eq!(lam.min_poly(&u), Poly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(lam.degree(&lam.v()), 3);
    }

    #[test]
    fn split_quaternions_have_zero_divisors() {
        let s = CyclicAlgebra::build(Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[0, -1]), rat(1))
            .unwrap();
        let (x, y) = zero_divisor_search(&s, 1, 2).unwrap();
        assert!(s.mul(&x, &y).is_zero());
        assert_eq!(s.fmt_element(&x), "1 + u");
        assert_eq!(s.fmt_element(&y), "1 - u");
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        assert!(zero_divisor_search(&h, 1, 4).is_none());
    }

    #[test]
    fn vector_order() {
        let v = small_vectors(2, 1, 2);
        assert_eq!(v[0], vec![1, 0]);
        assert_eq!(v[1], vec![-1, 0]);
        assert_eq!(v[4], vec![1, 1]);
        assert_eq!(small_vectors(3, 2, 3).len(), 5usize.pow(3) - 1);
    }
}
