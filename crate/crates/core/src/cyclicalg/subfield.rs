//! Subfields `K = ℚ(g)` of a cyclic algebra: centralizers, maximality,
//! Galois roots, normalizer witnesses, power spans and primitive elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{small_vectors, sparsest, vector_shell, AlgebraElement, CyclicAlgebra};
use super::linalg::{in_span, rank_of, same_span, span_basis, Matrix, Vector};
use super::poly::Poly;
use crate::error::AlgebraError;

pub const DEFAULT_ROOT_HEIGHT: i64 = 8;
pub const ROOT_HEIGHT_CAP: i64 = 64;
pub const DEFAULT_LAMBDA_CAP: i64 = 64;
pub const DEFAULT_PROBE_HEIGHT: i64 = 3;

fn coords(xs: &[AlgebraElement]) -> Vec<Vector> {
    xs.iter().map(|x| x.coords().to_vec()).collect()
}

/// `(dim C_D(S), basis)`; the whole algebra for empty `S`.
pub fn centralizer(alg: &CyclicAlgebra, s: &[AlgebraElement]) -> (usize, Vec<AlgebraElement>) {
    let dim = alg.dim_f();
    let m = s.iter().fold(Matrix::zeros(0, dim), |acc, x| {
        acc.vstack(&alg.left_matrix(x).sub(&alg.right_matrix(x)))
    });
    let basis: Vec<AlgebraElement> = m
        .nullspace()
        .into_iter()
        .map(|v| alg.from_coords(v).unwrap())
        .collect();
    (basis.len(), basis)
}

fn check_commutative(alg: &CyclicAlgebra, k: &[AlgebraElement]) -> Result<(), AlgebraError> {
    for (i, a) in k.iter().enumerate() {
        for b in &k[i + 1..] {
            if !alg.commutes(a, b) {
                return Err(AlgebraError::NonCommutative);
            }
        }
    }
    Ok(())
}

/// `C_D(K) = K`.
pub fn is_maximal_subfield(alg: &CyclicAlgebra, k_basis: &[AlgebraElement]) -> Result<bool, AlgebraError> {
    check_commutative(alg, k_basis)?;
    let (_, c) = centralizer(alg, k_basis);
    let maximal = same_span(&coords(&c), &coords(k_basis));
    if maximal {
        let d = rank_of(&coords(k_basis));
        assert_eq!(d * d, alg.dim_f(), "maximal subfield of the wrong dimension");
    }
    Ok(maximal)
}

/// `ℚ(g)` with its power basis and minimal polynomial.
#[derive(Clone, Debug)]
pub struct Subfield {
    pub generator: AlgebraElement,
    pub min_poly: Poly,
    pub basis: Vec<AlgebraElement>,
}

impl Subfield {
    pub fn generated_by(alg: &CyclicAlgebra, g: &AlgebraElement) -> Subfield {
        let min_poly = alg.min_poly(g);
        let d = min_poly.degree().unwrap();
        let basis = (0..d as u32).map(|k| alg.pow(g, k)).collect();
        Subfield {
            generator: g.clone(),
            min_poly,
            basis,
        }
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// `p(g)`
    pub fn element(&self, alg: &CyclicAlgebra, p: &Poly) -> AlgebraElement {
        alg.eval_poly(p, &self.generator)
    }

    /// `x K x⁻¹ = ℚ(x g x⁻¹)`
    pub fn conjugated(&self, alg: &CyclicAlgebra, x: &AlgebraElement) -> Result<Subfield, AlgebraError> {
        Ok(Subfield::generated_by(alg, &alg.conjugate(x, &self.generator)?))
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    !q.is_negative() && sq(q.numer()) && sq(q.denom())
}

/// How many roots a minimal polynomial has in its own stem field, when this
/// is decidable from the discriminant alone.
pub fn expected_root_count(m: &Poly) -> Option<usize> {
    match m.degree()? {
        0 => None,
        1 => Some(1),
        2 => Some(2),
        3 => {
            let lead = m.coeff(3);
            let (b, c, d) = (m.coeff(2) / &lead, m.coeff(1) / &lead, m.coeff(0) / &lead);
            let four = BigRational::from_integer(4.into());
            let disc = &b * &b * &c * &c - &four * &c * &c * &c - &four * &b * &b * &b * &d
                - BigRational::from_integer(27.into()) * &d * &d
                + BigRational::from_integer(18.into()) * &b * &c * &d;
            Some(if is_rational_square(&disc) { 3 } else { 1 })
        }
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisRoots {
    /// Roots of the minimal polynomial of `g`, as polynomials in `t = g`;
    /// `t` itself comes first.
    #[serde(serialize_with = "ser_polys")]
    pub roots: Vec<Poly>,
    pub height_searched: i64,
    pub expected: Option<usize>,
    pub complete: bool,
}

fn ser_polys<S: serde::Serializer>(ps: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.fmt_with("t")))
}

/// Bounded-height search for roots of `m` in `ℚ[t]/(m)`, escalating the
/// height from `start_height` by doubling up to [`ROOT_HEIGHT_CAP`].
pub fn galois_roots(m: &Poly, start_height: i64) -> Result<GaloisRoots, AlgebraError> {
    let d = m.degree().ok_or(AlgebraError::NotMonic)?;
    let expected = expected_root_count(m);
    if d == 1 {
        return Ok(GaloisRoots {
            roots: vec![Poly::var().rem(m)],
            height_searched: 0,
            expected,
            complete: true,
        });
    }
    let target = expected.unwrap_or(d);
    let mut roots: Vec<Poly> = Vec::new();
    let mut limit = start_height;
    let mut h = 1;
    loop {
        while h <= limit {
            for v in vector_shell(d, h, d) {
                let p = Poly::from_ints(&v);
                if m.compose_mod(&p, m).is_zero() && !roots.contains(&p) {
                    roots.push(p);
                }
            }
            if roots.len() >= target {
                break;
            }
            h += 1;
        }
        let searched = h.min(limit);
        if roots.len() >= target {
            return Ok(finish(roots, searched, expected, true));
        }
        if expected.is_none() {
            return Ok(finish(roots, searched, expected, false));
        }
        if limit >= ROOT_HEIGHT_CAP {
            return Err(AlgebraError::RootSearchExhausted {
                height: limit,
                found: roots.len(),
                expected: target,
            });
        }
        limit = (limit * 2).min(ROOT_HEIGHT_CAP);
    }
}

fn finish(mut roots: Vec<Poly>, height: i64, expected: Option<usize>, complete: bool) -> GaloisRoots {
    let t = Poly::var();
    roots.sort_by_key(|p| *p != t);
    GaloisRoots {
        roots,
        height_searched: height,
        expected,
        complete,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizerWitness {
    /// `τ(g)` as a polynomial in `t = g`.
    pub root: String,
    pub root_element: String,
    /// Dimension of `{x : x·g = τ(g)·x}`.
    pub solution_dim: usize,
    pub witness: Option<String>,
    #[serde(skip)]
    pub witness_element: Option<AlgebraElement>,
    #[serde(skip)]
    pub root_poly: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubfieldReport {
    pub algebra: String,
    pub generator: String,
    pub min_poly_over_f: String,
    pub degree: usize,
    pub dim_f_algebra: usize,
    pub centralizer_dim: usize,
    pub is_maximal: bool,
    pub galois: GaloisRoots,
    pub galois_trivial: bool,
    pub self_invariant: bool,
    /// One entry per nontrivial root.
    pub normalizer_witnesses: Vec<NormalizerWitness>,
    /// Whether the identity system's solutions are exactly `C_D(K)`.
    pub identity_consistent: bool,
    /// Largest `deg_F` among the sampled elements of `K`; a lower bound.
    pub degmax_lower_bound: usize,
}

impl SubfieldReport {
    /// The first recorded normalizer witness.
    pub fn first_witness(&self) -> Option<&AlgebraElement> {
        self.normalizer_witnesses
            .iter()
            .find_map(|w| w.witness_element.as_ref())
    }
}

/// Solutions of `x·g = τ(g)·x`.
fn normalizer_solutions(alg: &CyclicAlgebra, g: &AlgebraElement, tau_g: &AlgebraElement) -> Vec<Vector> {
    alg.right_matrix(g).sub(&alg.left_matrix(tau_g)).nullspace()
}

/// `K = ℚ(g)` is self-invariant iff its normalizer is `K*`: the centralizer
/// equals `K` and no nontrivial root `τ` admits `x ≠ 0` with `x·g = τ(g)·x`.
pub fn self_invariance_report(alg: &CyclicAlgebra, g: &AlgebraElement) -> Result<SubfieldReport, AlgebraError> {
    let k = Subfield::generated_by(alg, g);
    let (cdim, cbasis) = centralizer(alg, std::slice::from_ref(g));
    let is_maximal = same_span(&coords(&cbasis), &coords(&k.basis));
    let galois = galois_roots(&k.min_poly, DEFAULT_ROOT_HEIGHT)?;

    let t = Poly::var();
    let mut identity_consistent = false;
    let mut witnesses = Vec::new();
    for root in &galois.roots {
        let tau_g = k.element(alg, root);
        let sols = normalizer_solutions(alg, g, &tau_g);
        if *root == t {
            identity_consistent = same_span(&sols, &coords(&cbasis));
            continue;
        }
        let witness_element = sparsest(sols.clone()).map(|v| alg.from_coords(v).unwrap());
        witnesses.push(NormalizerWitness {
            root: root.fmt_with("t"),
            root_element: alg.fmt_element(&tau_g),
            solution_dim: sols.len(),
            witness: witness_element.as_ref().map(|x| alg.fmt_element(x)),
            witness_element,
            root_poly: root.clone(),
        });
    }
    let self_invariant = is_maximal && witnesses.iter().all(|w| w.witness_element.is_none());
    let degmax_lower_bound = k
        .basis
        .iter()
        .chain(std::iter::once(g))
        .map(|b| alg.degree(b))
        .max()
        .unwrap_or(1);

    Ok(SubfieldReport {
        algebra: alg.name().into(),
        generator: alg.fmt_element(g),
        min_poly_over_f: k.min_poly.fmt_with("t"),
        degree: k.degree(),
        dim_f_algebra: alg.dim_f(),
        centralizer_dim: cdim,
        is_maximal,
        galois_trivial: galois.roots.len() == 1,
        galois,
        self_invariant,
        normalizer_witnesses: witnesses,
        identity_consistent,
        degmax_lower_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanClosure {
    #[serde(skip)]
    pub basis: Vec<AlgebraElement>,
    pub basis_text: Vec<String>,
    pub dim_over_k: usize,
    pub dim_f: usize,
    /// Power of `x` at which the span stopped growing.
    pub stabilized_at: usize,
    pub closed_under_mul: bool,
    pub inversion_samples: usize,
    pub inverses_inside: usize,
}

impl SpanClosure {
    pub fn is_division_closed(&self) -> bool {
        self.inverses_inside == self.inversion_samples
    }
}

/// `L = K + Kx + Kx² + ⋯` for `x` normalizing `K`.
pub fn span_closure(
    alg: &CyclicAlgebra,
    k_basis: &[AlgebraElement],
    x: &AlgebraElement,
    samples: usize,
    seed: u64,
) -> Result<SpanClosure, AlgebraError> {
    let kb = coords(k_basis);
    let x_inv = alg.inv(x)?;
    for k in k_basis {
        let c = alg.mul(&alg.mul(x, k), &x_inv);
        if !in_span(&kb, c.coords()) {
            return Err(AlgebraError::NotNormalizing(alg.fmt_element(k)));
        }
    }
    let dim_k = rank_of(&kb);
    let mut gens = kb.clone();
    let mut power = alg.one();
    let mut stabilized_at = 0;
    loop {
        power = alg.mul(&power, x);
        let before = rank_of(&gens);
        for k in k_basis {
            gens.push(alg.mul(k, &power).coords().to_vec());
        }
        stabilized_at += 1;
        if rank_of(&gens) == before {
            break;
        }
    }
    let basis_v = span_basis(&gens);
    let basis: Vec<AlgebraElement> = basis_v
        .iter()
        .map(|v| alg.from_coords(v.clone()).unwrap())
        .collect();

    let closed_under_mul = basis
        .iter()
        .all(|a| basis.iter().all(|b| in_span(&basis_v, alg.mul(a, b).coords())));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = 0;
    let mut drawn = 0;
    while drawn < samples {
        let e = basis.iter().fold(alg.zero(), |acc, b| {
            let c = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
            alg.add(&acc, &alg.scale(&c, b))
        });
        if e.is_zero() {
            continue;
        }
        drawn += 1;
        if let Ok(inv) = alg.inv(&e) {
            if in_span(&basis_v, inv.coords()) {
                inside += 1;
            }
        }
    }

    Ok(SpanClosure {
        basis_text: basis.iter().map(|b| alg.fmt_element(b)).collect(),
        dim_f: basis.len(),
        dim_over_k: basis.len() / dim_k.max(1),
        basis,
        stabilized_at,
        closed_under_mul,
        inversion_samples: samples,
        inverses_inside: inside,
    })
}

#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub c: AlgebraElement,
    /// `None` when `a` or `b` alone already generates.
    pub lambda: Option<i64>,
    pub degree: usize,
}

/// `c` with `ℚ(c) = ℚ(a, b)` for commuting `a`, `b`.
pub fn primitive_element(
    alg: &CyclicAlgebra,
    a: &AlgebraElement,
    b: &AlgebraElement,
    lambda_cap: i64,
) -> Result<PrimitiveElement, AlgebraError> {
    if !alg.commutes(a, b) {
        return Err(AlgebraError::NotCommuting);
    }
    let (da, db) = (alg.degree(a), alg.degree(b));
    let mut monomials = Vec::new();
    for i in 0..da as u32 {
        let ai = alg.pow(a, i);
        for j in 0..db as u32 {
            monomials.push(alg.mul(&ai, &alg.pow(b, j)).coords().to_vec());
        }
    }
    let dim = rank_of(&monomials);
    if da == dim {
        return Ok(PrimitiveElement { c: a.clone(), lambda: None, degree: da });
    }
    if db == dim {
        return Ok(PrimitiveElement { c: b.clone(), lambda: None, degree: db });
    }
    for lambda in 1..=lambda_cap {
        let l = BigRational::from_integer(lambda.into());
        let c = alg.add(a, &alg.scale(&l, b));
        let d = alg.degree(&c);
        if d == dim {
            return Ok(PrimitiveElement { c, lambda: Some(lambda), degree: d });
        }
    }
    Err(AlgebraError::LambdaCapReached { cap: lambda_cap })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AutocommOutcome {
    /// `x⁻¹τ(x) ∉ F`
    Witness {
        x: String,
        quotient: String,
        #[serde(skip)]
        element: AlgebraElement,
    },
    Exhausted { height: i64 },
}

/// Searches `x = p(g)`, `p` of bounded integer height and `x ∉ F`, with
/// `x⁻¹τ(x) ∉ F`, where `τ(g) = root(g)`.
pub fn autocommutator_probe(
    alg: &CyclicAlgebra,
    g: &AlgebraElement,
    root: &Poly,
    height: i64,
) -> Result<AutocommOutcome, AlgebraError> {
    let k = Subfield::generated_by(alg, g);
    let root = root.rem(&k.min_poly);
    if root == Poly::var().rem(&k.min_poly) {
        return Err(AlgebraError::IdentityAutomorphism);
    }
    if !k.min_poly.compose_mod(&root, &k.min_poly).is_zero() {
        return Err(AlgebraError::NotARoot);
    }
    let tau_g = k.element(alg, &root);
    let d = k.degree();
    for v in small_vectors(d, height, d) {
        if v[1..].iter().all(|c| *c == 0) {
            continue;
        }
        let p = Poly::from_ints(&v);
        let x = k.element(alg, &p);
        let tau_x = alg.eval_poly(&p, &tau_g);
        let quotient = alg.mul(&alg.inv(&x)?, &tau_x);
        if alg.as_scalar(&quotient).is_none() {
            return Ok(AutocommOutcome::Witness {
                x: alg.fmt_element(&x),
                quotient: alg.fmt_element(&quotient),
                element: x,
            });
        }
    }
    Ok(AutocommOutcome::Exhausted { height })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn centralizer_examples() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let (d, b) = centralizer(&h, &[h.v()]);
        assert_eq!(d, 2);
        assert!(same_span(&coords(&b), &coords(&[h.one(), h.v()])));
        assert_eq!(centralizer(&h, &h.basis()).0, 1);
        assert_eq!(centralizer(&h, &[]).0, 4);
    }

    #[test]
    fn maximality() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        assert!(is_maximal_subfield(&h, &[h.one(), h.v()]).unwrap());
        assert!(!is_maximal_subfield(&h, &[h.one()]).unwrap());
        assert_eq!(
            is_maximal_subfield(&h, &[h.v(), h.u()]),
            Err(AlgebraError::NonCommutative)
        );
    }

    #[test]
    fn roots() {
        let r = galois_roots(&Poly::from_ints(&[1, 0, 1]), 8).unwrap();
        assert_eq!(r.roots, vec![Poly::var(), Poly::from_ints(&[0, -1])]);
        let r = galois_roots(&Poly::from_ints(&[1, -3, 0, 1]), 8).unwrap();
        assert_eq!(
            r.roots,
            vec![Poly::var(), Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[2, -1, -1])]
        );
        let r = galois_roots(&Poly::from_ints(&[-2, 0, 0, 1]), 8).unwrap();
        assert_eq!(r.roots, vec![Poly::var()]);
        assert!(r.complete);
    }

    #[test]
    fn quaternion_report() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let r = self_invariance_report(&h, &h.v()).unwrap();
        assert!(r.is_maximal);
        assert!(!r.self_invariant);
        assert_eq!(r.first_witness(), Some(&h.u()));
        assert!(r.identity_consistent);
    }

    #[test]
    fn span_examples() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let k = [h.one(), h.v()];
        let s = span_closure(&h, &k, &h.u(), 10, 1).unwrap();
        assert_eq!((s.dim_f, s.dim_over_k), (4, 2));
        assert!(s.closed_under_mul && s.is_division_closed());
        let s = span_closure(&h, &k, &h.v(), 10, 1).unwrap();
        assert_eq!((s.dim_f, s.dim_over_k), (2, 1));
        let x = h.add(&h.one(), &h.u());
        assert!(matches!(
            span_closure(&h, &k, &x, 10, 1),
            Err(AlgebraError::NotNormalizing(_))
        ));
    }

    #[test]
    fn primitive_examples() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let v = h.v();
        let p = primitive_element(&h, &v, &h.neg(&v), 8).unwrap();
        assert_eq!(p.c, v);
        let p = primitive_element(&h, &h.scalar(rat(3)), &v, 8).unwrap();
        assert_eq!(p.c, v);
        assert_eq!(
            primitive_element(&h, &v, &h.u(), 8).unwrap_err(),
            AlgebraError::NotCommuting
        );
    }

    #[test]
    fn autocommutator_examples() {
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let out = autocommutator_probe(&h, &h.v(), &Poly::from_ints(&[0, -1]), 2).unwrap();
        match out {
            AutocommOutcome::Witness { element, quotient, .. } => {
                assert_eq!(element, h.add(&h.one(), &h.v()));
                assert_eq!(quotient, "-v");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            autocommutator_probe(&h, &h.v(), &Poly::var(), 2).unwrap_err(),
            AlgebraError::IdentityAutomorphism
        );
    }
}
