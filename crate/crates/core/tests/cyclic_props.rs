use malcev::cyclicalg::{
    centralizer, self_invariance_report, AlgebraElement, CyclicAlgebra, Poly, Subfield,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn element(alg: &CyclicAlgebra, c: &[i64]) -> AlgebraElement {
    alg.from_coords(c.iter().map(|&x| rat(x)).collect()).unwrap()
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, dim)
}

/// Hamilton product on `(1, i, j, k)` coordinates.
fn hamilton(p: &[i64], q: &[i64]) -> [i64; 4] {
    let (a1, b1, c1, d1) = (p[0], p[1], p[2], p[3]);
    let (a2, b2, c2, d2) = (q[0], q[1], q[2], q[3]);
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn presets() -> Vec<CyclicAlgebra> {
    ["quaternion", "lam-14-16"]
        .iter()
        .map(|n| CyclicAlgebra::preset(n).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn quaternion_matches_hamilton(p in coords(4), q in coords(4)) {
        // v ↦ i, u ↦ j, vu ↦ ij = k
        let h = CyclicAlgebra::preset("quaternion").unwrap();
        let prod = h.mul(&element(&h, &p), &element(&h, &q));
        prop_assert_eq!(prod, element(&h, &hamilton(&p, &q)));
    }

    #[test]
    fn regular_representation_is_multiplicative(p in coords(9), q in coords(9), r in coords(9)) {
        for alg in presets() {
            let n = alg.dim_f();
            let (x, y, z) = (element(&alg, &p[..n]), element(&alg, &q[..n]), element(&alg, &r[..n]));
            let xy = alg.mul(&x, &y);
            prop_assert_eq!(alg.left_matrix(&xy), alg.left_matrix(&x).mul(&alg.left_matrix(&y)));
            prop_assert_eq!(alg.mul(&xy, &z), alg.mul(&x, &alg.mul(&y, &z)));
        }
    }

    #[test]
    fn division_presets_invert(p in coords(9)) {
        for alg in presets() {
            let x = element(&alg, &p[..alg.dim_f()]);
            if x.is_zero() {
                continue;
            }
            let inv = alg.inv(&x).unwrap();
            prop_assert_eq!(alg.mul(&x, &inv), alg.one());
            prop_assert_eq!(alg.mul(&inv, &x), alg.one());
        }
    }

    #[test]
    fn conjugation_preserves_self_invariance(p in coords(9)) {
        for alg in presets() {
            let x = element(&alg, &p[..alg.dim_f()]);
            prop_assume!(!x.is_zero());
            let mut gens = vec![alg.v()];
            gens.extend(alg.aliases().iter().map(|(_, g)| g.clone()));
            for g in gens {
                let before = self_invariance_report(&alg, &g).unwrap();
                let after = self_invariance_report(&alg, &alg.conjugate(&x, &g).unwrap()).unwrap();
                prop_assert_eq!(before.self_invariant, after.self_invariant);
                prop_assert_eq!(before.is_maximal, after.is_maximal);
                prop_assert_eq!(before.min_poly_over_f, after.min_poly_over_f);
            }
        }
    }
}

#[test]
fn defining_relations() {
    for alg in presets() {
        let n = alg.n();
        let u = alg.u();
        assert_eq!(alg.pow(&u, n as u32), alg.scalar(alg.parameter().clone()));
        let uvu = alg.mul(&alg.mul(&u, &alg.v()), &alg.inv(&u).unwrap());
        assert_eq!(uvu, alg.eval_poly(alg.sigma_image(), &alg.v()));
        assert!(alg.eval_poly(alg.minpoly(), &alg.v()).is_zero());
        assert_eq!(centralizer(&alg, &alg.basis()).0, 1, "center is F");
    }
}

#[test]
fn skolem_noether_realizations() {
    for alg in presets() {
        let mut gens = vec![alg.v()];
        gens.extend(alg.aliases().iter().map(|(_, g)| g.clone()));
        for g in gens {
            let k = Subfield::generated_by(&alg, &g);
            let rep = self_invariance_report(&alg, &g).unwrap();
            for w in &rep.normalizer_witnesses {
                let x = w.witness_element.as_ref().expect("every automorphism is realized");
                let x_inv = alg.inv(x).unwrap();
                for p in [Poly::var(), Poly::from_ints(&[1, 2, 1]), Poly::from_ints(&[0, 0, 3])] {
                    let kp = k.element(&alg, &p);
                    let image = alg.mul(&alg.mul(x, &kp), &x_inv);
                    let tau_g = k.element(&alg, &w.root_poly);
                    assert_eq!(image, alg.eval_poly(&p, &tau_g));
                }
            }
        }
    }
}

#[test]
fn double_centralizer() {
    for alg in presets() {
        let mut gens = vec![alg.v(), alg.add(&alg.v(), &alg.u())];
        gens.extend(alg.aliases().iter().map(|(_, g)| g.clone()));
        for g in gens {
            let k = Subfield::generated_by(&alg, &g);
            let (cdim, cbasis) = centralizer(&alg, &k.basis);
            assert_eq!(k.degree() * cdim, alg.dim_f(), "{}", alg.fmt_element(&g));
            let (ccdim, _) = centralizer(&alg, &cbasis);
            assert_eq!(ccdim, k.degree());
        }
    }
}
