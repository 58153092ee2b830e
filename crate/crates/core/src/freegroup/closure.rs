//! Bounded enumeration of iterated normal closures.
//!
//! `⟨g⟩_0 = G` and `⟨g⟩_n` is the normal closure of `g` inside `⟨g⟩_{n-1}`,
//! generated by the conjugates `c g^{±1} c⁻¹` with `c ∈ ⟨g⟩_{n-1}`. Level `n`
//! of a [`ClosureTower`] is a breadth-first closure of those conjugates whose
//! conjugator lies in level `n-1`, never passing through a word longer than
//! the length bound. Every enumerated word is a genuine member; a missing word
//! proves nothing.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::{FreeGroup, Word};
use crate::error::FreeGroupError;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// A word together with the data that generated it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallOrigin {
    pub generator: Word,
    pub depth: usize,
    pub max_len: usize,
}

/// Enumerated members of `⟨g⟩_n` of length at most `max_len`, in shortlex order.
#[derive(Clone, Debug)]
pub struct WordBall {
    pub origin: BallOrigin,
    members: Vec<Word>,
}

impl WordBall {
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members
            .binary_search_by(|m| m.shortlex_cmp(w))
            .is_ok()
    }

    pub fn is_subset_of(&self, other: &WordBall) -> bool {
        self.members.iter().all(|w| other.contains(w))
    }
}

/// One factor `c g^sign c⁻¹` of a derivation, with `c` itself derived one level up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    pub conjugator: Derivation,
    pub sign: i8,
}

/// A replayable proof that a word lies in `⟨g⟩_depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    /// Depth 0: every word lies in `⟨g⟩_0 = G`.
    Whole { word: Word },
    /// A product of conjugates of `g^{±1}` by members of the previous level.
    Conjugates {
        depth: usize,
        factors: Vec<ConjugateFactor>,
    },
}

impl Derivation {
    pub fn depth(&self) -> usize {
        match self {
            Derivation::Whole { .. } => 0,
            Derivation::Conjugates { depth, .. } => *depth,
        }
    }

    /// The identity at the given depth.
    pub fn identity(depth: usize) -> Derivation {
        if depth == 0 {
            Derivation::Whole {
                word: Word::identity(),
            }
        } else {
            Derivation::Conjugates {
                depth,
                factors: Vec::new(),
            }
        }
    }

    /// Recomputes the certified word from scratch.
    pub fn replay(&self, g: &Word) -> Word {
        match self {
            Derivation::Whole { word } => word.clone(),
            Derivation::Conjugates { factors, .. } => {
                factors.iter().fold(Word::identity(), |acc, f| {
                    let c = f.conjugator.replay(g);
                    &acc * &g.pow(f.sign as i64).conjugate_by(&c)
                })
            }
        }
    }

    /// Structural validity: conjugators sit exactly one level up and signs are ±1.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Derivation::Whole { .. } => true,
            Derivation::Conjugates { depth, factors } => {
                *depth >= 1
                    && factors.iter().all(|f| {
                        (f.sign == 1 || f.sign == -1)
                            && f.conjugator.depth() + 1 == *depth
                            && f.conjugator.is_well_formed()
                    })
            }
        }
    }

    /// Derivation of the product of the two certified words (same depth).
    pub fn product(&self, other: &Derivation) -> Derivation {
        match (self, other) {
            (Derivation::Whole { word: a }, Derivation::Whole { word: b }) => {
                Derivation::Whole { word: a * b }
            }
            (
                Derivation::Conjugates { depth, factors: a },
                Derivation::Conjugates { depth: d2, factors: b },
            ) if depth == d2 => Derivation::Conjugates {
                depth: *depth,
                factors: a.iter().chain(b.iter()).cloned().collect(),
            },
            _ => panic!("derivations of different depths cannot be multiplied"),
        }
    }

    /// Given a derivation of `b` one level up, a derivation of `b · w · b⁻¹`.
    /// Normality of `⟨g⟩_n` in `⟨g⟩_{n-1}` is exactly this transport.
    pub fn conjugate_by(&self, b: &Derivation) -> Derivation {
        match self {
            Derivation::Whole { word } => match b {
                Derivation::Whole { word: bw } => Derivation::Whole {
                    word: word.conjugate_by(bw),
                },
                _ => panic!("a depth-0 derivation is conjugated by a raw word"),
            },
            Derivation::Conjugates { depth, factors } => {
                assert_eq!(b.depth() + 1, *depth, "conjugator must sit one level up");
                Derivation::Conjugates {
                    depth: *depth,
                    factors: factors
                        .iter()
                        .map(|f| ConjugateFactor {
                            conjugator: b.product(&f.conjugator),
                            sign: f.sign,
                        })
                        .collect(),
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Step {
    parent: Word,
    conjugator: Word,
    sign: i8,
}

#[derive(Clone, Debug)]
struct Level {
    /// `None` for the identity (and for every word at level 0).
    steps: HashMap<Word, Option<Step>>,
    ball: WordBall,
}

/// Levels `0..=depth` of the bounded normal-closure enumeration for one `g`.
#[derive(Clone, Debug)]
pub struct ClosureTower {
    group: FreeGroup,
    generator: Word,
    max_len: usize,
    budget: usize,
    levels: Vec<Level>,
}

impl ClosureTower {
    pub fn new(
        group: FreeGroup,
        generator: Word,
        max_len: usize,
        budget: usize,
    ) -> Result<Self, FreeGroupError> {
        if generator.is_identity() {
            return Err(FreeGroupError::IdentityGenerator);
        }
        let members = group.ball(max_len);
        if members.len() > budget {
            return Err(FreeGroupError::BudgetExceeded { budget });
        }
        let steps = members.iter().map(|w| (w.clone(), None)).collect();
        let ball = WordBall {
            origin: BallOrigin {
                generator: generator.clone(),
                depth: 0,
                max_len,
            },
            members,
        };
        Ok(ClosureTower {
            group,
            generator,
            max_len,
            budget,
            levels: vec![Level { steps, ball }],
        })
    }

    pub fn group(&self) -> &FreeGroup {
        &self.group
    }

    pub fn generator(&self) -> &Word {
        &self.generator
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    fn total_nodes(&self) -> usize {
        self.levels.iter().map(|l| l.ball.len()).sum()
    }

    /// Extends the tower until it has levels `0..=depth`.
    pub fn extend_to(&mut self, depth: usize) -> Result<(), FreeGroupError> {
        while self.depth() < depth {
            let level = self.next_level()?;
            self.levels.push(level);
        }
        Ok(())
    }

    fn next_level(&self) -> Result<Level, FreeGroupError> {
        let prev = self.levels.last().expect("level 0 always exists");
        let depth = self.levels.len();
        let g = &self.generator;

        let mut gens: Vec<(Word, Word, i8)> = Vec::new();
        let mut seen_gen: HashMap<Word, ()> = HashMap::new();
        for c in prev.ball.members() {
            for sign in [1i8, -1] {
                let t = g.pow(sign as i64).conjugate_by(c);
                if t.len() <= self.max_len && seen_gen.insert(t.clone(), ()).is_none() {
                    gens.push((t, c.clone(), sign));
                }
            }
        }

        let mut steps: HashMap<Word, Option<Step>> = HashMap::new();
        steps.insert(Word::identity(), None);
        let mut queue = VecDeque::from([Word::identity()]);
        let used = self.total_nodes();
        while let Some(p) = queue.pop_front() {
            for (t, c, sign) in &gens {
                let q = &p * t;
                if q.len() > self.max_len || steps.contains_key(&q) {
                    continue;
                }
                steps.insert(
                    q.clone(),
                    Some(Step {
                        parent: p.clone(),
                        conjugator: c.clone(),
                        sign: *sign,
                    }),
                );
                if used + steps.len() > self.budget {
                    return Err(FreeGroupError::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                queue.push_back(q);
            }
        }

        let mut members: Vec<Word> = steps.keys().cloned().collect();
        members.sort_by(|a, b| a.shortlex_cmp(b));
        Ok(Level {
            steps,
            ball: WordBall {
                origin: BallOrigin {
                    generator: g.clone(),
                    depth,
                    max_len: self.max_len,
                },
                members,
            },
        })
    }

    pub fn ball(&self, depth: usize) -> &WordBall {
        &self.levels[depth].ball
    }

    /// A derivation of `w ∈ ⟨g⟩_depth`, if `w` was enumerated at that depth.
    pub fn derive(&self, w: &Word, depth: usize) -> Option<Derivation> {
        if depth == 0 {
            return Some(Derivation::Whole { word: w.clone() });
        }
        let level = self.levels.get(depth)?;
        let mut factors = Vec::new();
        let mut cur = w.clone();
        loop {
            match level.steps.get(&cur)? {
                None => break,
                Some(step) => {
                    factors.push(ConjugateFactor {
                        conjugator: self.derive(&step.conjugator, depth - 1)?,
                        sign: step.sign,
                    });
                    cur = step.parent.clone();
                }
            }
        }
        factors.reverse();
        Some(Derivation::Conjugates { depth, factors })
    }
}

/// Enumerates `⟨g⟩_depth ∩ {|w| <= max_len}` (one-sided, see module docs).
pub fn normal_closure_ball(
    group: FreeGroup,
    g: &Word,
    depth: usize,
    max_len: usize,
    budget: usize,
) -> Result<WordBall, FreeGroupError> {
    let mut tower = ClosureTower::new(group, g.clone(), max_len, budget)?;
    tower.extend_to(depth)?;
    Ok(tower.ball(depth).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    fn rank2() -> FreeGroup {
        FreeGroup::new(2).unwrap()
    }

    #[test]
    fn depth_zero_is_everything() {
        let b = normal_closure_ball(rank2(), &w(&[1]), 0, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(b.len(), 17);
    }

    #[test]
    fn depth_one_contains_powers_and_conjugates() {
        let b = normal_closure_ball(rank2(), &w(&[1]), 1, 2, DEFAULT_NODE_BUDGET).unwrap();
        for m in [w(&[1]), w(&[-1]), w(&[1, 1])] {
            assert!(b.contains(&m), "{m}");
        }
        assert!(!b.contains(&w(&[2])));
        let b3 = normal_closure_ball(rank2(), &w(&[1]), 1, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert!(b3.contains(&w(&[2, 1, -2])));
    }

    #[test]
    fn members_have_zero_y_exponent_sum() {
        let b = normal_closure_ball(rank2(), &w(&[1]), 1, 5, DEFAULT_NODE_BUDGET).unwrap();
        assert!(b.members().iter().all(|m| m.exponent_sum(2) == 0));
        assert!(b.members().iter().all(|m| m.len() <= 5));
    }

    #[test]
    fn derivations_replay() {
        let g = w(&[1]);
        let mut t = ClosureTower::new(rank2(), g.clone(), 5, DEFAULT_NODE_BUDGET).unwrap();
        t.extend_to(3).unwrap();
        for d in 0..=3 {
            for m in t.ball(d).members() {
                let der = t.derive(m, d).unwrap();
                assert!(der.is_well_formed());
                assert_eq!(der.depth(), d);
                assert_eq!(&der.replay(&g), m);
            }
        }
    }

    #[test]
    fn transport_under_conjugation() {
        let g = w(&[1]);
        let mut t = ClosureTower::new(rank2(), g.clone(), 5, DEFAULT_NODE_BUDGET).unwrap();
        t.extend_to(2).unwrap();
        let a = w(&[1, 1]);
        let b = w(&[2, 1, -2]);
        let da = t.derive(&a, 2).unwrap();
        let db = t.derive(&b, 1).unwrap();
        let moved = da.conjugate_by(&db);
        assert_eq!(moved.replay(&g), a.conjugate_by(&b));
        assert!(moved.is_well_formed());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            ClosureTower::new(rank2(), w(&[1]), 6, 100),
            Err(FreeGroupError::BudgetExceeded { budget: 100 })
        ));
        assert!(ClosureTower::new(rank2(), Word::identity(), 3, 100).is_err());
    }
}
