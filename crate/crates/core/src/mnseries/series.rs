//! Truncated elements of `Δ((G,σ))`.
//!
//! A [`Series`] stores finitely many terms `a_g·g` sorted by the Magnus order
//! together with a [`Precision`]. `Above(π)` promises that every term of the
//! represented element that is not stored has support strictly greater than
//! `π`, and every stored term is `<= π`.
//!
//! Product precision: if `α = A + tail_α` with `tail_α > π_α`, then
//! `A·tail_β > v(α)·π_β`, `tail_α·B > π_α·v(β)` and `tail_α·tail_β > π_α·π_β`,
//! all by bi-invariance of the order. The result precision is the least of
//! the bounds that apply.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeffield::{Coeff, Field, TwistSpec};
use crate::error::{FieldError, SeriesError};
use crate::freegroup::{compare, Word};

/// Default number of correction terms used by [`Series::invert`].
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    Exact,
    /// Hidden terms lie strictly above the word.
    Above(Word),
}

impl Precision {
    /// `Exact` is treated as `+∞`.
    pub fn min(&self, other: &Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p.clone(),
            (Precision::Above(a), Precision::Above(b)) => {
                if compare(a, b) == Ordering::Greater {
                    Precision::Above(b.clone())
                } else {
                    Precision::Above(a.clone())
                }
            }
        }
    }

    /// Whether a term at `w` lies inside the window.
    pub fn admits(&self, w: &Word) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Above(p) => compare(w, p) != Ordering::Greater,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Precision::Exact)
    }

    pub fn marker(&self) -> Option<&Word> {
        match self {
            Precision::Exact => None,
            Precision::Above(p) => Some(p),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => write!(f, "exact"),
            Precision::Above(p) => write!(f, "O(> {p})"),
        }
    }
}

impl Serialize for Precision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Precision::Exact => s.serialize_str("exact"),
            Precision::Above(p) => {
                let mut st = s.serialize_struct("Precision", 1)?;
                st.serialize_field("above", p)?;
                st.end()
            }
        }
    }
}

/// The coefficient field and twist shared by all series of one session.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    field: Field,
    twist: TwistSpec,
}

impl SeriesRing {
    pub fn new(field: Field, twist: TwistSpec) -> Arc<SeriesRing> {
        Arc::new(SeriesRing { field, twist })
    }

    /// `Δ((G))` over ℚ with trivial twist.
    pub fn untwisted_rationals(rank: usize) -> Arc<SeriesRing> {
        SeriesRing::new(Field::Rational, TwistSpec::trivial(rank))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }
}

pub trait RingHandle {
    fn zero(&self) -> Series;
    fn one(&self) -> Series;
    fn constant(&self, c: Coeff) -> Series;
    fn monomial(&self, c: Coeff, w: Word) -> Series;
    fn word(&self, w: Word) -> Series;
    fn make_series(&self, raw: Vec<(Word, Coeff)>, prec: Precision) -> Series;
}

impl RingHandle for Arc<SeriesRing> {
    fn zero(&self) -> Series {
        Series {
            ring: self.clone(),
            terms: Vec::new(),
            prec: Precision::Exact,
        }
    }

    fn one(&self) -> Series {
        self.constant(self.field.one())
    }

    fn constant(&self, c: Coeff) -> Series {
        self.monomial(c, Word::identity())
    }

    fn monomial(&self, c: Coeff, w: Word) -> Series {
        self.make_series(vec![(w, c)], Precision::Exact)
    }

    fn word(&self, w: Word) -> Series {
        self.monomial(self.field.one(), w)
    }

    /// Merges duplicate words, drops zeros and terms beyond the window, sorts.
    fn make_series(&self, raw: Vec<(Word, Coeff)>, prec: Precision) -> Series {
        Series::from_parts(self.clone(), collect_terms(raw), prec)
    }
}

fn collect_terms(raw: impl IntoIterator<Item = (Word, Coeff)>) -> HashMap<Word, Coeff> {
    let mut acc: HashMap<Word, Coeff> = HashMap::new();
    for (w, c) in raw {
        match acc.get_mut(&w) {
            Some(e) => *e = &*e + &c,
            None => {
                acc.insert(w, c);
            }
        }
    }
    acc
}

/// A truncated Mal'cev-Neumann series.
#[derive(Clone, Debug)]
pub struct Series {
    ring: Arc<SeriesRing>,
    terms: Vec<(Word, Coeff)>,
    prec: Precision,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.prec == other.prec && *self.ring == *other.ring
    }
}

impl Series {
    fn from_parts(ring: Arc<SeriesRing>, terms: HashMap<Word, Coeff>, prec: Precision) -> Series {
        let mut terms: Vec<(Word, Coeff)> = terms
            .into_iter()
            .filter(|(w, c)| !c.is_zero() && prec.admits(w))
            .collect();
        debug_assert!(terms.iter().all(|(_, c)| ring.field.contains(c)));
        terms.sort_by(|a, b| compare(&a.0, &b.0));
        Series { ring, terms, prec }
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Word, Coeff)] {
        &self.terms
    }

    pub fn precision(&self) -> &Precision {
        &self.prec
    }

    /// No stored terms (the element may still be nonzero beyond the window).
    pub fn is_empty_window(&self) -> bool {
        self.terms.is_empty()
    }

    /// The canonical exact zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_exact()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Coeff> {
        self.terms.iter().find(|(g, _)| g == w).map(|(_, c)| c)
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter().map(|(w, _)| w)
    }

    fn check_ring(&self, other: &Series) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "{}",
            SeriesError::RingMismatch
        );
    }

    /// Intersects the window with `bound`.
    pub fn truncated(&self, bound: &Precision) -> Series {
        let prec = self.prec.min(bound);
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| prec.admits(w))
            .cloned()
            .collect();
        Series {
            ring: self.ring.clone(),
            terms,
            prec,
        }
    }

    /// Restricts to the stored terms whose word satisfies `keep`; keeps the precision.
    pub fn filter_terms(&self, keep: impl Fn(&Word) -> bool) -> Series {
        Series {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(w)).cloned().collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        self.check_ring(other);
        let prec = self.prec.min(&other.prec);
        let raw = self.terms.iter().chain(other.terms.iter()).cloned();
        Series::from_parts(self.ring.clone(), collect_terms(raw), prec)
    }

    pub fn neg(&self) -> Series {
        Series {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    /// Left scalar multiple `c·α`.
    pub fn scale(&self, c: &Coeff) -> Series {
        if c.is_zero() {
            return self.ring.zero();
        }
        Series {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), c * a)).collect(),
            prec: self.prec.clone(),
        }
    }

    /// `αβ = Σ_t (Σ_{gh=t} a_g σ_g(b_h)) t`, truncated to the propagated precision.
    pub fn mul(&self, other: &Series) -> Series {
        self.check_ring(other);
        let lead_a = self.terms.first().map(|t| &t.0);
        let lead_b = other.terms.first().map(|t| &t.0);
        let mut prec = Precision::Exact;
        if let Precision::Above(pa) = &self.prec {
            if let Some(vb) = lead_b {
                prec = prec.min(&Precision::Above(pa * vb));
            }
            if let Precision::Above(pb) = &other.prec {
                prec = prec.min(&Precision::Above(pa * pb));
            }
        }
        if let Precision::Above(pb) = &other.prec {
            if let Some(va) = lead_a {
                prec = prec.min(&Precision::Above(va * pb));
            }
        }

        let twist = &self.ring.twist;
        let mut acc: HashMap<Word, Coeff> = HashMap::new();
        for (g, a) in &self.terms {
            let sigma = twist.twist_of_word(g);
            for (h, b) in &other.terms {
                let c = a * &sigma.apply(b);
                let t = g * h;
                match acc.get_mut(&t) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(t, c);
                    }
                }
            }
        }
        Series::from_parts(self.ring.clone(), acc, prec)
    }

    pub fn pow(&self, n: u32) -> Series {
        (0..n).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    /// `v(α) = min supp(α)`.
    pub fn valuation(&self) -> Result<Word, SeriesError> {
        match self.terms.first() {
            Some((w, _)) => Ok(w.clone()),
            None if self.prec.is_exact() => Err(SeriesError::Zero),
            None => Err(SeriesError::Indeterminate),
        }
    }

    pub fn leading_term(&self) -> Result<(&Word, &Coeff), SeriesError> {
        self.valuation()?;
        let (w, c) = &self.terms[0];
        Ok((w, c))
    }

    /// Inverse via `α = a·g·(1 + ε)` with `v(ε) > 1`:
    /// `α⁻¹ = Σ_{i<=depth} (-ε)^i · σ_{g⁻¹}(a⁻¹)·g⁻¹`.
    /// The remainder lies at or above `v(ε)^{depth+1}·g⁻¹`, so the result
    /// carries precision `Above(v(ε)^depth · g⁻¹)`.
    pub fn invert(&self, depth: usize) -> Result<Series, SeriesError> {
        let (g, a) = self.leading_term()?;
        let g_inv = g.inverse();
        let lead_inv = self
            .ring
            .twist
            .twist_of_word(&g_inv)
            .apply(&a.inv().map_err(|_: FieldError| SeriesError::Zero)?);
        let l_inv = self.ring.monomial(lead_inv, g_inv);
        let one = self.ring.one();
        let eps = l_inv.mul(self).sub(&one);
        if eps.is_zero() {
            return Ok(l_inv);
        }
        let e = match (eps.terms.first(), &eps.prec) {
            (Some((w, _)), _) => w.clone(),
            (None, Precision::Above(p)) => p.clone(),
            (None, Precision::Exact) => unreachable!("zero handled above"),
        };
        let window = Precision::Above(e.pow(depth as i64));
        let neg_eps = eps.neg().truncated(&window);
        let mut power = one.truncated(&window);
        let mut sum = power.clone();
        for _ in 0..depth {
            power = power.mul(&neg_eps).truncated(&window);
            sum = sum.add(&power);
        }
        Ok(sum.truncated(&window).mul(&l_inv))
    }

    /// `γ α γ⁻¹`
    pub fn conjugate(gamma: &Series, alpha: &Series, depth: usize) -> Result<Series, SeriesError> {
        let inv = gamma.invert(depth)?;
        Ok(gamma.mul(alpha).mul(&inv))
    }

    /// Equality on every term inside both windows.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let window = self.prec.min(&other.prec);
        self.truncated(&window).terms == other.truncated(&window).terms
    }

    /// Whether every stored term is a scalar (word 1).
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(w, _)| w.is_identity())
    }
}

fn fmt_term(w: &Word, c: &Coeff) -> String {
    let coeff = if c.is_compound() {
        format!("({c})")
    } else {
        c.to_string()
    };
    if w.is_identity() {
        coeff
    } else if c.is_one() {
        w.to_string()
    } else if (-c).is_one() {
        format!("-{w}")
    } else {
        format!("{coeff}*{w}")
    }
}

impl fmt::Display for Series {
    /// `3/4*xy - 2*Y + O(> xx)`; parses back to an equal value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|(w, c)| fmt_term(w, c)).collect();
        if let Precision::Above(p) = &self.prec {
            parts.push(format!("O(> {p})"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        write!(f, "{out}")
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    word: &'a Word,
    coeff: &'a Coeff,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Series", 3)?;
        let terms: Vec<TermOut<'_>> = self
            .terms
            .iter()
            .map(|(word, coeff)| TermOut { word, coeff })
            .collect();
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("precision", &self.prec)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::{FieldAut, Quad};
    use num_rational::BigRational;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    fn q(n: i64) -> Coeff {
        Coeff::rational(n, 1)
    }

    fn ring() -> Arc<SeriesRing> {
        SeriesRing::untwisted_rationals(2)
    }

    fn sqrt2_ring() -> Arc<SeriesRing> {
        let f = Field::quadratic(2).unwrap();
        SeriesRing::new(
            f,
            TwistSpec::new(f, vec![FieldAut::Conjugation, FieldAut::Identity]).unwrap(),
        )
    }

    fn sq(a: (i64, i64), b: (i64, i64)) -> Coeff {
        Coeff::Quadratic(Quad {
            a: BigRational::new(a.0.into(), a.1.into()),
            b: BigRational::new(b.0.into(), b.1.into()),
            d: 2,
        })
    }

    #[test]
    fn make_series_examples() {
        let r = ring();
        let s = r.make_series(vec![(w(&[1]), q(1)), (w(&[1]), q(-1))], Precision::Exact);
        assert!(s.is_zero());
        let s = r.make_series(vec![(w(&[2]), q(1)), (w(&[1]), q(1))], Precision::Exact);
        assert_eq!(s.terms()[0].0, w(&[2]));
        assert_eq!(s.terms()[1].0, w(&[1]));
        let s = r.make_series(vec![(w(&[1, 1]), q(1))], Precision::Above(w(&[1])));
        assert!(s.is_empty_window());
        assert_eq!(s.precision(), &Precision::Above(w(&[1])));
    }

    #[test]
    fn add_examples() {
        let r = ring();
        let x = r.word(w(&[1]));
        assert_eq!(x.add(&r.zero()), x);
        assert!(x.add(&x.neg()).is_zero());
        let a = r.one().add(&x);
        let b = r.make_series(vec![(Word::identity(), q(-1))], Precision::Above(w(&[1, 1])));
        let s = a.add(&b);
        assert_eq!(s.terms(), &[(w(&[1]), q(1))]);
        assert_eq!(s.precision(), &Precision::Above(w(&[1, 1])));
    }

    #[test]
    fn twisted_product() {
        let r = sqrt2_ring();
        let x = r.word(w(&[1]));
        let root2 = r.constant(sq((0, 1), (1, 1)));
        let p = x.mul(&root2);
        assert_eq!(p.terms(), &[(w(&[1]), sq((0, 1), (-1, 1)))]);
        let p = root2.mul(&x);
        assert_eq!(p.terms(), &[(w(&[1]), sq((0, 1), (1, 1)))]);
    }

    #[test]
    fn valuation_examples() {
        let r = ring();
        let g = w(&[1, -2, 1]);
        assert_eq!(r.word(g.clone()).valuation().unwrap(), g);
        let s = r
            .word(w(&[1]))
            .add(&r.word(w(&[1, 1])))
            .mul(&r.word(w(&[2])));
        assert_eq!(s.valuation().unwrap(), w(&[1, 2]));
        assert_eq!(r.zero().valuation(), Err(SeriesError::Zero));
        let hidden = r.make_series(vec![], Precision::Above(w(&[1])));
        assert_eq!(hidden.valuation(), Err(SeriesError::Indeterminate));
    }

    #[test]
    fn geometric_inverse() {
        let r = ring();
        let a = r.one().sub(&r.word(w(&[1])));
        let inv = a.invert(3).unwrap();
        let expect: Vec<(Word, Coeff)> = (0..=3).map(|i| (w(&[1]).pow(i), q(1))).collect();
        assert_eq!(inv.terms(), expect.as_slice());
        assert_eq!(inv.precision(), &Precision::Above(w(&[1, 1, 1])));
        let prod = a.mul(&inv);
        assert_eq!(prod.terms(), &[(Word::identity(), q(1))]);
    }

    #[test]
    fn scalar_and_twisted_monomial_inverse() {
        let r = ring();
        let inv = r.constant(q(2)).invert(4).unwrap();
        assert_eq!(inv, r.constant(Coeff::rational(1, 2)));

        let r = sqrt2_ring();
        let a = r.monomial(sq((0, 1), (1, 1)), w(&[1]));
        let inv = a.invert(4).unwrap();
        assert_eq!(inv.terms(), &[(w(&[-1]), sq((0, 1), (-1, 2)))]);
        assert!(inv.precision().is_exact());
        assert_eq!(a.mul(&inv), r.one());
        assert_eq!(inv.mul(&a), r.one());
    }

    #[test]
    fn conjugation_examples() {
        let r = ring();
        let y = r.word(w(&[2]));
        let x = r.word(w(&[1]));
        assert_eq!(
            Series::conjugate(&y, &x, 4).unwrap(),
            r.word(w(&[2, 1, -2]))
        );
        let c = r.constant(Coeff::rational(3, 5));
        let gamma = r.one().add(&y);
        let conj = Series::conjugate(&gamma, &c, 4).unwrap();
        assert!(conj.agrees_with(&c));

        // (1+y) x (1+y)⁻¹ = x + yx - xy - yxy + ...
        let conj = Series::conjugate(&gamma, &x, 4).unwrap();
        for (word, coeff) in [
            (w(&[1]), 1),
            (w(&[2, 1]), 1),
            (w(&[1, 2]), -1),
            (w(&[2, 1, 2]), -1),
        ] {
            assert_eq!(conj.coefficient(&word), Some(&q(coeff)), "{word}");
        }
    }

    #[test]
    fn display_forms() {
        let r = ring();
        let s = r.make_series(
            vec![
                (w(&[1, 2]), Coeff::rational(3, 4)),
                (w(&[-2]), q(-2)),
                (Word::identity(), q(1)),
            ],
            Precision::Above(w(&[1, 1])),
        );
        assert_eq!(s.to_string(), "-2*Y + 1 + 3/4*xy + O(> xx)");
        assert_eq!(r.zero().to_string(), "0");
    }
}
