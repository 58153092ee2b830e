//! The Magnus embedding `x_i ↦ 1 + t_i` into noncommuting integer power
//! series, and the bi-invariant total order it induces on the free group.
//!
//! `w > 1` iff the least monomial (total degree first, then left-to-right on
//! symbol indices) with a nonzero coefficient in `w - 1` has a positive
//! coefficient. `u < w` iff `u⁻¹w > 1`.
//!
//! [`magnus_expand`] computes a full truncated expansion and is the reference
//! route. [`try_compare`] never materializes the expansion: it walks
//! monomials degree by degree in lexicographic order, tracking how a prefix can
//! be produced from the syllables of the word, and stops at the first nonzero
//! coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::{Syllable, Word, LETTER_NAMES};
use crate::error::FreeGroupError;

/// Default hard cap on the degree searched by [`compare`].
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// A noncommutative monomial `t_{i1} t_{i2} ...`; ordered by degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self
            .0
            .iter()
            .map(|&g| match g {
                1..=4 => format!("t_{}", LETTER_NAMES[(g - 1) as usize]),
                _ => format!("t_{g}"),
            })
            .collect();
        write!(f, "{}", names.join(" "))
    }
}

/// A truncated Magnus expansion: monomials of degree `<= maxdeg` with nonzero
/// integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusPoly {
    maxdeg: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusPoly {
    pub fn one(maxdeg: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(Vec::new()), BigInt::one());
        MagnusPoly { maxdeg, terms }
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(m.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Least non-constant monomial with a nonzero coefficient.
    pub fn leading_nonconstant(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().find(|(m, _)| m.degree() > 0)
    }

    fn mul_truncated(&self, other: &MagnusPoly) -> MagnusPoly {
        let maxdeg = self.maxdeg.min(other.maxdeg);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > maxdeg {
                    continue;
                }
                let mut m = m1.0.clone();
                m.extend_from_slice(&m2.0);
                *terms.entry(Monomial(m)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MagnusPoly { maxdeg, terms }
    }

    /// `(1 + t_g)^{±1}` truncated at `maxdeg`.
    fn letter(letter: i32, maxdeg: usize) -> MagnusPoly {
        let g = letter.unsigned_abs();
        let mut p = MagnusPoly::one(maxdeg);
        if letter > 0 {
            if maxdeg >= 1 {
                p.terms.insert(Monomial(vec![g]), BigInt::one());
            }
        } else {
            for r in 1..=maxdeg {
                let c = if r % 2 == 0 { 1 } else { -1 };
                p.terms.insert(Monomial(vec![g; r]), BigInt::from(c));
            }
        }
        p
    }
}

impl fmt::Display for MagnusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            let mag = c.abs();
            let body = match (m.degree(), mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => m.to_string(),
                _ => format!("{mag} {m}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c.is_negative() { "-" } else { "+" })?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Image of `w` under the Magnus embedding, truncated at degree `maxdeg`.
pub fn magnus_expand(w: &Word, maxdeg: usize) -> MagnusPoly {
    w.letters()
        .iter()
        .fold(MagnusPoly::one(maxdeg), |acc, &l| {
            acc.mul_truncated(&MagnusPoly::letter(l, maxdeg))
        })
}

/// Generalized binomial coefficient `C(e, r)` for integer `e`.
fn binomial(e: i64, r: usize) -> Option<i128> {
    let mut acc: i128 = 1;
    for i in 0..r as i128 {
        acc = acc.checked_mul(e as i128 - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Partial production of a monomial prefix: syllable `syl` is open and has
/// consumed the last `run` symbols.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Open {
    syl: usize,
    run: usize,
}

struct LeadSearch<'a> {
    syllables: &'a [Syllable],
    symbols: Vec<u32>,
}

impl LeadSearch<'_> {
    fn step(
        &self,
        state: &[(Open, i128)],
        at_start: bool,
        c: u32,
    ) -> Result<Vec<(Open, i128)>, FreeGroupError> {
        let mut next: BTreeMap<Open, i128> = BTreeMap::new();
        let mut push = |o: Open, w: i128| -> Result<(), FreeGroupError> {
            let e = next.entry(o).or_insert(0);
            *e = e.checked_add(w).ok_or(FreeGroupError::CoefficientOverflow)?;
            Ok(())
        };
        if at_start {
            for (s, syl) in self.syllables.iter().enumerate() {
                if syl.generator == c {
                    push(Open { syl: s, run: 1 }, 1)?;
                }
            }
        }
        for &(o, w) in state {
            let syl = self.syllables[o.syl];
            if syl.generator == c {
                push(Open { syl: o.syl, run: o.run + 1 }, w)?;
            }
            let closed = binomial(syl.exponent, o.run)
                .and_then(|b| b.checked_mul(w))
                .ok_or(FreeGroupError::CoefficientOverflow)?;
            if closed != 0 {
                for (s2, later) in self.syllables.iter().enumerate().skip(o.syl + 1) {
                    if later.generator == c {
                        push(Open { syl: s2, run: 1 }, closed)?;
                    }
                }
            }
        }
        Ok(next.into_iter().filter(|&(_, w)| w != 0).collect())
    }

    fn coefficient(&self, state: &[(Open, i128)]) -> Result<i128, FreeGroupError> {
        let mut total: i128 = 0;
        for &(o, w) in state {
            let term = binomial(self.syllables[o.syl].exponent, o.run)
                .and_then(|b| b.checked_mul(w))
                .ok_or(FreeGroupError::CoefficientOverflow)?;
            total = total
                .checked_add(term)
                .ok_or(FreeGroupError::CoefficientOverflow)?;
        }
        Ok(total)
    }

    /// First nonzero coefficient among monomials of exactly `remaining` more
    /// symbols extending the current prefix, in lexicographic order.
    fn dfs(
        &self,
        prefix: &mut Vec<u32>,
        state: &[(Open, i128)],
        remaining: usize,
    ) -> Result<Option<i128>, FreeGroupError> {
        if remaining == 0 {
            let c = self.coefficient(state)?;
            return Ok((c != 0).then_some(c));
        }
        for &c in &self.symbols {
            let next = self.step(state, prefix.is_empty(), c)?;
            if next.is_empty() {
                continue;
            }
            prefix.push(c);
            if let Some(found) = self.dfs(prefix, &next, remaining - 1)? {
                return Ok(Some(found));
            }
            prefix.pop();
        }
        Ok(None)
    }
}

/// Least monomial of `w - 1` with a nonzero coefficient, searching degrees up to `cap`.
pub fn leading_term(w: &Word, cap: usize) -> Result<Option<(Monomial, i128)>, FreeGroupError> {
    if w.is_identity() {
        return Ok(None);
    }
    // Degree 1 coefficients are exponent sums.
    let mut gens: Vec<u32> = w.letters().iter().map(|l| l.unsigned_abs()).collect();
    gens.sort_unstable();
    gens.dedup();
    for &g in &gens {
        let e = w.exponent_sum(g);
        if e != 0 {
            return Ok(Some((Monomial(vec![g]), e as i128)));
        }
    }
    let syllables = w.syllables();
    let search = LeadSearch {
        syllables: &syllables,
        symbols: gens,
    };
    for degree in 2..=cap {
        let mut prefix = Vec::with_capacity(degree);
        if let Some(c) = search.dfs(&mut prefix, &[], degree)? {
            return Ok(Some((Monomial(prefix), c)));
        }
    }
    Err(FreeGroupError::DegreeCapExhausted { cap })
}

/// Sign of `w` relative to the identity.
pub fn sign(w: &Word) -> Result<Ordering, FreeGroupError> {
    Ok(match leading_term(w, DEFAULT_DEGREE_CAP)? {
        None => Ordering::Equal,
        Some((_, c)) if c > 0 => Ordering::Greater,
        Some(_) => Ordering::Less,
    })
}

pub fn try_compare_with_cap(u: &Word, w: &Word, cap: usize) -> Result<Ordering, FreeGroupError> {
    if u == w {
        return Ok(Ordering::Equal);
    }
    let quotient = &u.inverse() * w;
    match leading_term(&quotient, cap)? {
        Some((_, c)) if c > 0 => Ok(Ordering::Less),
        Some(_) => Ok(Ordering::Greater),
        None => Ok(Ordering::Equal),
    }
}

pub fn try_compare(u: &Word, w: &Word) -> Result<Ordering, FreeGroupError> {
    try_compare_with_cap(u, w, DEFAULT_DEGREE_CAP)
}

/// The Magnus order.
///
/// # Panics
/// If the degree cap is exhausted, which the injectivity of the Magnus
/// embedding rules out for reduced words with fewer than 64 syllables.
pub fn compare(u: &Word, w: &Word) -> Ordering {
    try_compare(u, w).unwrap_or_else(|e| panic!("Magnus comparison of {u} and {w} failed: {e}"))
}

pub fn min_word<'a>(u: &'a Word, w: &'a Word) -> &'a Word {
    if compare(u, w) == Ordering::Greater {
        w
    } else {
        u
    }
}
