use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FreeGroupError;

/// A freely reduced word in a free group.
///
/// Letters are nonzero integers: `i` is the generator `x_i`, `-i` its inverse.
/// The letter sequence never contains an adjacent pair `i, -i`, so equality of
/// words is equality of group elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

/// A maximal run `x_gen^exp` inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i64,
}

/// Names used for generators 1..=4 in canonical text.
pub(crate) const LETTER_NAMES: [char; 4] = ['x', 'y', 'z', 'w'];

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Word(vec![index as i32])
    }

    /// Builds a word from raw letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index that occurs in the word (0 for the identity).
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        if n < 0 {
            return self.inverse().pow(-n);
        }
        let mut acc = Word::identity();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &Word) -> Word {
        &(c * self) * &c.inverse()
    }

    pub fn commutes_with(&self, other: &Word) -> bool {
        (self * other) == (other * self)
    }

    pub fn exponent_sum(&self, generator: u32) -> i64 {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() == generator)
            .map(|l| l.signum() as i64)
            .sum()
    }

    pub fn syllables(&self) -> Vec<Syllable> {
        let mut out: Vec<Syllable> = Vec::new();
        for &l in &self.0 {
            let g = l.unsigned_abs();
            let s = l.signum() as i64;
            match out.last_mut() {
                Some(last) if last.generator == g => last.exponent += s,
                _ => out.push(Syllable {
                    generator: g,
                    exponent: s,
                }),
            }
        }
        out
    }

    /// Writes `self = c · core · c⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let v = &self.0;
        let mut i = 0;
        while v.len() >= 2 * (i + 1) && v[i] == -v[v.len() - 1 - i] {
            i += 1;
        }
        (
            Word(v[..i].to_vec()),
            Word(v[i..v.len() - i].to_vec()),
        )
    }

    /// Returns `(root, exponent)` with `self = root^exponent` and `root` not a proper power.
    pub fn primitive_root(&self) -> Result<(Word, u64), FreeGroupError> {
        if self.is_identity() {
            return Err(FreeGroupError::IdentityHasNoRoot);
        }
        let (conj, core) = self.cyclic_reduction();
        let letters = core.letters();
        let n = letters.len();
        let period = (1..=n)
            .filter(|p| n % p == 0)
            .find(|&p| (p..n).all(|i| letters[i] == letters[i - p]))
            .unwrap_or(n);
        let root = Word(letters[..period].to_vec()).conjugate_by(&conj);
        Ok((root, (n / period) as u64))
    }

    /// `Some(m)` when `self = base^m`. `base` must not be the identity.
    pub fn power_of(&self, base: &Word) -> Option<i64> {
        if self.is_identity() {
            return Some(0);
        }
        let (r, a) = base.primitive_root().ok()?;
        let (s, b) = self.primitive_root().ok()?;
        let (a, b) = (a as i64, b as i64);
        if b % a != 0 {
            return None;
        }
        if s == r {
            Some(b / a)
        } else if s == r.inverse() {
            Some(-(b / a))
        } else {
            None
        }
    }

    /// Length first, then letters ordered `x < X < y < Y < ...`. Used only for
    /// deterministic enumeration, never for the group order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        fn key(l: i32) -> (u32, bool) {
            (l.unsigned_abs(), l < 0)
        }
        self.len().cmp(&other.len()).then_with(|| {
            self.0
                .iter()
                .map(|&l| key(l))
                .cmp(other.0.iter().map(|&l| key(l)))
        })
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.0.clone();
        let mut j = 0;
        while j < rhs.0.len() && out.last() == Some(&-rhs.0[j]) {
            out.pop();
            j += 1;
        }
        out.extend_from_slice(&rhs.0[j..]);
        Word(out)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

pub(crate) fn letter_name(l: i32) -> String {
    let g = l.unsigned_abs();
    if (1..=4).contains(&g) {
        let c = LETTER_NAMES[(g - 1) as usize];
        if l > 0 {
            c.to_string()
        } else {
            c.to_ascii_uppercase().to_string()
        }
    } else if l > 0 {
        format!("x{g}")
    } else {
        format!("x{g}^-1")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            write!(f, "{}", letter_name(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        crate::cli::parse::parse_word(&text).map_err(serde::de::Error::custom)
    }
}

/// The free group of a fixed rank; used for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u32) -> Result<Self, FreeGroupError> {
        if rank < 2 {
            return Err(FreeGroupError::RankTooSmall(rank));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> Vec<Word> {
        (1..=self.rank).map(Word::generator).collect()
    }

    /// Letters in shortlex order: x, X, y, Y, ...
    pub fn letters(&self) -> Vec<i32> {
        (1..=self.rank as i32).flat_map(|g| [g, -g]).collect()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.max_generator() <= self.rank
    }

    /// Every reduced word of length at most `max_len`, in shortlex order.
    pub fn ball(&self, max_len: usize) -> Vec<Word> {
        let letters = self.letters();
        let mut out = vec![Word::identity()];
        let mut frontier = vec![Word::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    if w.0.last() == Some(&-l) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}
