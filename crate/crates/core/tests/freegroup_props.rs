mod common;

use std::cmp::Ordering;

use common::{concat, invert, magnus_cmp, reduce, word};
use malcev::freegroup::magnus::leading_term;
use malcev::freegroup::{compare, magnus_expand, sign, ClosureTower, FreeGroup, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn letters(rank: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..=rank, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_matches_stack(raw in letters(3, 12)) {
        prop_assert_eq!(word(&raw).letters().to_vec(), reduce(&raw));
    }

    #[test]
    fn group_laws(a in letters(3, 6), b in letters(3, 6), c in letters(3, 6)) {
        let (a, b, c) = (word(&a), word(&b), word(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        let conj = concat(&concat(b.letters(), a.letters()), &invert(b.letters()));
        prop_assert_eq!(a.conjugate_by(&b).letters().to_vec(), conj);
    }

    #[test]
    fn order_matches_oracle(u in letters(2, 5), w in letters(2, 5)) {
        let (ru, rw) = (reduce(&u), reduce(&w));
        prop_assert_eq!(compare(&word(&u), &word(&w)), magnus_cmp(&ru, &rw));
    }

    #[test]
    fn order_is_bi_invariant(u in letters(3, 4), w in letters(3, 4), g in letters(3, 4)) {
        let (u, w, g) = (word(&u), word(&w), word(&g));
        let o = compare(&u, &w);
        prop_assert_eq!(compare(&(&g * &u), &(&g * &w)), o);
        prop_assert_eq!(compare(&(&u * &g), &(&w * &g)), o);
        prop_assert_eq!(compare(&w, &u), o.reverse());
    }

    #[test]
    fn order_is_transitive(a in letters(2, 4), b in letters(2, 4), c in letters(2, 4)) {
        let mut v = [word(&a), word(&b), word(&c)];
        v.sort_by(compare);
        prop_assert_ne!(compare(&v[0], &v[2]), Ordering::Greater);
    }

    #[test]
    fn lead_search_matches_expansion(raw in letters(3, 7)) {
        let w = word(&raw);
        prop_assume!(!w.is_identity());
        let (m, c) = leading_term(&w, 64).unwrap().unwrap();
        let full = magnus_expand(&w, w.len());
        let (fm, fc) = full.leading_nonconstant().unwrap();
        prop_assert_eq!(&m, fm);
        prop_assert_eq!(BigInt::from(c), fc.clone());
    }

    #[test]
    fn positive_cone_closed(a in letters(2, 4), b in letters(2, 4)) {
        let (a, b) = (word(&a), word(&b));
        if sign(&a).unwrap() == Ordering::Greater && sign(&b).unwrap() == Ordering::Greater {
            prop_assert_eq!(sign(&(&a * &b)).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn primitive_root_is_root(base in letters(2, 4), k in 1u64..4) {
        let b = word(&base);
        prop_assume!(!b.is_identity());
        let w = b.pow(k as i64);
        let (r, e) = w.primitive_root().unwrap();
        prop_assert_eq!(r.pow(e as i64), w.clone());
        prop_assert_eq!(e % k, 0);
        prop_assert!(b.power_of(&r).is_some());
    }
}

#[test]
fn generator_convention() {
    // x > y > 1 in this order: y⁻¹x has leading monomial t_x with coefficient 1.
    assert_eq!(compare(&word(&[2]), &word(&[1])), Ordering::Less);
    assert_eq!(magnus_cmp(&[2], &[1]), Ordering::Less);
    assert_eq!(compare(&word(&[1, 2, -1, -2]), &Word::identity()), magnus_cmp(&[1, 2, -1, -2], &[]));
    assert_eq!(concat(&[1, 2], &invert(&[1, 2])), Vec::<i32>::new());
}

#[test]
fn closure_certificates_replay() {
    let g = FreeGroup::new(2).unwrap();
    let x = Word::generator(1);
    let mut t = ClosureTower::new(g, x.clone(), 4, 1_000_000).unwrap();
    t.extend_to(3).unwrap();
    for depth in 1..=3 {
        for w in t.ball(depth).members() {
            let d = t.derive(w, depth).expect("members derive");
            assert_eq!(&d.replay(&x), w);
            assert!(d.is_well_formed());
        }
        assert!(t.ball(depth).is_subset_of(t.ball(depth - 1)));
    }
}
