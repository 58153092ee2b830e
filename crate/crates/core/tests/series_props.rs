mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::{magnus_cmp, naive_product, naive_valuation, word};
use malcev::coeffield::{Coeff, Field, FieldAut, TwistSpec};
use malcev::freegroup::{compare, Word};
use malcev::mnseries::{laurent_membership, LaurentVerdict, Precision, RingHandle, Series, SeriesRing};
use proptest::prelude::*;

fn twisted() -> Arc<SeriesRing> {
    let f = Field::quadratic(2).unwrap();
    SeriesRing::new(f, TwistSpec::new(f, vec![FieldAut::Conjugation, FieldAut::Identity]).unwrap())
}

fn letters() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..=3)
}

fn raw_terms() -> impl Strategy<Value = Vec<(Vec<i32>, i64, i64)>> {
    prop::collection::vec((letters(), -3i64..=3, -2i64..=2), 1..=4)
}

fn build(ring: &Arc<SeriesRing>, raw: &[(Vec<i32>, i64, i64)]) -> Series {
    let f = ring.field();
    let r = f.sqrt_d().ok();
    let terms = raw
        .iter()
        .map(|(w, a, b)| {
            let mut c = f.from_int(*a);
            if let Some(r) = &r {
                c = &c + &(&f.from_int(*b) * r);
            }
            (word(w), c)
        })
        .collect();
    ring.make_series(terms, Precision::Exact)
}

fn nonzero(ring: &Arc<SeriesRing>, raw: &[(Vec<i32>, i64, i64)]) -> Option<Series> {
    Some(build(ring, raw)).filter(|s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_naive(a in raw_terms(), b in raw_terms()) {
        for ring in [SeriesRing::untwisted_rationals(2), twisted()] {
            let (x, y) = (build(&ring, &a), build(&ring, &b));
            let p = x.mul(&y);
            let naive = naive_product(&x, &y, ring.twist());
            prop_assert_eq!(p.terms().len(), naive.len());
            for (w, c) in p.terms() {
                prop_assert_eq!(naive.get(w.letters()), Some(c));
            }
            prop_assert!(p.precision().is_exact());
        }
    }

    #[test]
    fn terms_sorted_by_magnus_order(a in raw_terms()) {
        let s = build(&twisted(), &a);
        for pair in s.terms().windows(2) {
            prop_assert_eq!(magnus_cmp(pair[0].0.letters(), pair[1].0.letters()), Ordering::Less);
        }
        if !s.is_zero() {
            prop_assert_eq!(s.valuation().unwrap().letters().to_vec(), naive_valuation(&s).unwrap());
        }
    }

    #[test]
    fn valuation_is_a_morphism(a in raw_terms(), b in raw_terms()) {
        let ring = twisted();
        if let (Some(x), Some(y)) = (nonzero(&ring, &a), nonzero(&ring, &b)) {
            let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
            prop_assert_eq!(x.mul(&y).valuation().unwrap(), &vx * &vy);
            if vx != vy {
                let m = if compare(&vx, &vy) == Ordering::Less { vx } else { vy };
                prop_assert_eq!(x.add(&y).valuation().unwrap(), m);
            }
        }
    }

    #[test]
    fn ring_laws(a in raw_terms(), b in raw_terms(), c in raw_terms()) {
        let ring = twisted();
        let (x, y, z) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert_eq!(x.mul(&ring.one()), x.clone());
    }

    #[test]
    fn inverse_agrees_with_one(a in raw_terms(), depth in 1usize..=5) {
        let ring = twisted();
        if let Some(x) = nonzero(&ring, &a) {
            let inv = x.invert(depth).unwrap();
            prop_assert!(x.mul(&inv).agrees_with(&ring.one()));
            prop_assert!(inv.mul(&x).agrees_with(&ring.one()));
            let deeper = x.invert(depth + 1).unwrap();
            prop_assert!(inv.agrees_with(&deeper));
        }
    }

    #[test]
    fn truncation_is_sound(a in raw_terms(), b in raw_terms(), cut in letters()) {
        let ring = SeriesRing::untwisted_rationals(2);
        let (x, y) = (build(&ring, &a), build(&ring, &b));
        let cut = word(&cut);
        let xt = x.truncated(&Precision::Above(cut));
        let p = xt.mul(&y);
        prop_assert!(p.agrees_with(&x.mul(&y)));
        prop_assert!(xt.add(&y).agrees_with(&x.add(&y)));
    }

    #[test]
    fn scalars_are_central_untwisted(a in raw_terms(), n in 1i64..5) {
        let ring = SeriesRing::untwisted_rationals(2);
        let x = build(&ring, &a);
        let c = ring.constant(Coeff::rational(n, 3));
        prop_assert_eq!(c.mul(&x), x.mul(&c));
    }
}

#[test]
fn twisted_commutation() {
    let ring = twisted();
    let r = ring.constant(ring.field().sqrt_d().unwrap());
    let x = ring.word(Word::generator(1));
    let y = ring.word(Word::generator(2));
    assert_eq!(x.mul(&r), r.neg().mul(&x));
    assert_eq!(y.mul(&r), r.mul(&y));
}

#[test]
fn geometric_series() {
    let ring = SeriesRing::untwisted_rationals(2);
    let x = ring.word(Word::generator(1));
    let inv = ring.one().sub(&x).invert(3).unwrap();
    let expected: Vec<Word> = (0..=3).map(|k| Word::generator(1).pow(k)).collect();
    assert_eq!(inv.support().cloned().collect::<Vec<_>>(), expected);
    assert!(matches!(
        laurent_membership(&inv, &Word::generator(1)),
        LaurentVerdict::Yes { .. }
    ));
    assert!(ring.zero().invert(3).is_err());
}

#[test]
fn cohn_undoes_a_hidden_conjugation() {
    use malcev::freegroup::FreeGroup;
    use malcev::mnseries::cohn_normalize;
    let ring = SeriesRing::untwisted_rationals(2);
    let x = Word::generator(1);
    for hidden in ["1 + y", "1 - 2*Y", "1 + 1/2*yy"] {
        let b = malcev::cli::series_from_str(hidden, &ring, 6).unwrap();
        let alpha = Series::conjugate(&b, &ring.word(x.clone()), 6).unwrap();
        let out = cohn_normalize(&alpha, 12, 6, FreeGroup::new(2).unwrap(), 1).unwrap();
        assert!(out.report.success, "{hidden}: {:?}", out.report.residual);
        assert_eq!(out.report.h, alpha.valuation().unwrap());
        let verdict = laurent_membership(&out.conjugated, &out.report.h);
        assert!(matches!(verdict, LaurentVerdict::Yes { .. }), "{hidden}: {} {verdict:?}", out.conjugated);
        let again = Series::conjugate(&out.beta, &alpha, 6).unwrap();
        assert!(again.agrees_with(&out.conjugated));
    }
}
