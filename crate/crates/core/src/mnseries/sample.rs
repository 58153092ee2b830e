//! Seeded random series for sampling-based checks.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::series::{Precision, RingHandle, Series, SeriesRing};
use crate::coeffield::Coeff;
use crate::freegroup::{compare, Word};

/// `{±1, ±2, 1/2}`
pub fn sample_coeffs() -> Vec<Coeff> {
    vec![
        Coeff::rational(1, 1),
        Coeff::rational(-1, 1),
        Coeff::rational(2, 1),
        Coeff::rational(-2, 1),
        Coeff::rational(1, 2),
    ]
}

fn ring_coeffs(ring: &Arc<SeriesRing>) -> Vec<Coeff> {
    let f = ring.field();
    sample_coeffs()
        .iter()
        .map(|c| f.from_rational(c.as_rational().unwrap().clone()))
        .collect()
}

/// A series with `1..=max_terms` terms, words drawn from `words`.
pub fn random_series<R: Rng>(
    rng: &mut R,
    ring: &Arc<SeriesRing>,
    words: &[Word],
    max_terms: usize,
) -> Series {
    let coeffs = ring_coeffs(ring);
    let n = rng.gen_range(1..=max_terms);
    let raw = (0..n)
        .map(|_| {
            let w = words.choose(rng).expect("nonempty word pool").clone();
            let c = coeffs.choose(rng).unwrap().clone();
            (w, c)
        })
        .collect();
    let s = ring.make_series(raw, Precision::Exact);
    if s.is_zero() {
        ring.word(words[0].clone())
    } else {
        s
    }
}

/// A series with leading word `lead` and up to `max_terms - 1` further terms
/// drawn from `words` above `lead`.
pub fn random_series_with_lead<R: Rng>(
    rng: &mut R,
    ring: &Arc<SeriesRing>,
    lead: &Word,
    words: &[Word],
    max_terms: usize,
) -> Series {
    let coeffs = ring_coeffs(ring);
    let above: Vec<&Word> = words
        .iter()
        .filter(|w| compare(w, lead) == Ordering::Greater)
        .collect();
    let extra = if above.is_empty() {
        0
    } else {
        rng.gen_range(0..max_terms)
    };
    let mut raw = vec![(lead.clone(), coeffs.choose(rng).unwrap().clone())];
    for _ in 0..extra {
        let w = (*above.choose(rng).unwrap()).clone();
        raw.push((w, coeffs.choose(rng).unwrap().clone()));
    }
    ring.make_series(raw, Precision::Exact)
}
