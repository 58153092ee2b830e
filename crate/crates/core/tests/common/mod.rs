//! Independent oracles shared by the integration tests. Nothing here calls
//! into the fast paths it is used to check.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use malcev::coeffield::{Coeff, FieldAut, TwistSpec};
use malcev::freegroup::Word;
use malcev::mnseries::Series;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Free reduction by a stack.
pub fn reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn concat(u: &[i32], w: &[i32]) -> Vec<i32> {
    reduce(&[u, w].concat())
}

pub fn invert(u: &[i32]) -> Vec<i32> {
    u.iter().rev().map(|l| -l).collect()
}

type Expansion = BTreeMap<Vec<u32>, BigInt>;

fn trunc_mul(a: &Expansion, b: &Expansion, maxdeg: usize) -> Expansion {
    let mut out = Expansion::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if ma.len() + mb.len() > maxdeg {
                continue;
            }
            let m = [ma.as_slice(), mb.as_slice()].concat();
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

/// Full Magnus expansion up to `maxdeg`: `x ↦ 1 + t`, `x⁻¹ ↦ Σ (−t)^k`.
pub fn magnus(letters: &[i32], maxdeg: usize) -> Expansion {
    let mut acc = Expansion::new();
    acc.insert(vec![], BigInt::from(1));
    for &l in letters {
        let g = l.unsigned_abs();
        let mut f = Expansion::new();
        if l > 0 {
            f.insert(vec![], BigInt::from(1));
            f.insert(vec![g], BigInt::from(1));
        } else {
            for k in 0..=maxdeg {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                f.insert(vec![g; k], BigInt::from(sign));
            }
        }
        acc = trunc_mul(&acc, &f, maxdeg);
    }
    acc
}

/// Sign of `w` against the identity from the least nonconstant monomial,
/// expanding one more degree at a time.
pub fn magnus_sign(letters: &[i32]) -> Ordering {
    let w = reduce(letters);
    if w.is_empty() {
        return Ordering::Equal;
    }
    for deg in 1..=w.len() {
        let e = magnus(&w, deg);
        let least = e
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .min_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some((_, c)) = least {
            return c.cmp(&BigInt::from(0));
        }
    }
    unreachable!("Magnus embedding is injective")
}

/// `u < w` iff `u⁻¹w > 1`.
pub fn magnus_cmp(u: &[i32], w: &[i32]) -> Ordering {
    magnus_sign(&concat(&invert(u), w)).reverse()
}

/// Reduced words over generators `1..=rank` with at most `max_len` letters.
pub fn all_words(rank: i32, max_len: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..=rank).flat_map(|g| [g, -g]).collect();
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if (w as &Vec<i32>).last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `Σ a_g σ_g(b_h) gh` over every pair of stored terms.
pub fn naive_product(a: &Series, b: &Series, twist: &TwistSpec) -> BTreeMap<Vec<i32>, Coeff> {
    let mut out: BTreeMap<Vec<i32>, Coeff> = BTreeMap::new();
    for (g, ca) in a.terms() {
        let sigma = twist_of(twist, g.letters());
        for (h, cb) in b.terms() {
            let w = concat(g.letters(), h.letters());
            let c = ca * &sigma.apply(cb);
            let slot = out.entry(w).or_insert_with(|| c.field().zero());
            *slot = &*slot + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `σ_w` from the generator images: conjugation counts mod 2.
pub fn twist_of(twist: &TwistSpec, letters: &[i32]) -> FieldAut {
    let flips = letters
        .iter()
        .filter(|l| twist.generator_images()[l.unsigned_abs() as usize - 1] == FieldAut::Conjugation)
        .count();
    if flips % 2 == 0 {
        FieldAut::Identity
    } else {
        FieldAut::Conjugation
    }
}

/// Least support word under the oracle order.
pub fn naive_valuation(s: &Series) -> Option<Vec<i32>> {
    s.terms()
        .iter()
        .map(|(w, _)| w.letters().to_vec())
        .min_by(|a, b| magnus_cmp(a, b))
}

pub fn word(letters: &[i32]) -> Word {
    Word::from_letters(letters.iter().copied())
}

/// `ℚ(√d)` as pairs, with its own arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair(pub BigRational, pub BigRational);

impl Pair {
    pub fn mul(&self, o: &Pair, d: i64) -> Pair {
        let d = BigRational::from_integer(d.into());
        Pair(
            &self.0 * &o.0 + &self.1 * &o.1 * d,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }

    pub fn add(&self, o: &Pair) -> Pair {
        Pair(&self.0 + &o.0, &self.1 + &o.1)
    }

    pub fn of(c: &Coeff) -> Pair {
        match c {
            Coeff::Rational(q) => Pair(q.clone(), BigRational::from_integer(0.into())),
            Coeff::Quadratic(q) => Pair(q.a.clone(), q.b.clone()),
        }
    }
}
