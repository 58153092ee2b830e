use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, Field};
use crate::error::FieldError;
use crate::freegroup::Word;

/// An automorphism of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldAut {
    Identity,
    /// `√d ↦ -√d`
    Conjugation,
}

impl FieldAut {
    pub fn apply(&self, c: &Coeff) -> Coeff {
        match self {
            FieldAut::Identity => c.clone(),
            FieldAut::Conjugation => c.conjugate(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FieldAut) -> FieldAut {
        if self == other {
            FieldAut::Identity
        } else {
            FieldAut::Conjugation
        }
    }

    pub fn inverse(&self) -> FieldAut {
        *self
    }
}

impl fmt::Display for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldAut::Identity => "id",
            FieldAut::Conjugation => "conj",
        })
    }
}

impl FromStr for FieldAut {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "id" | "identity" => Ok(FieldAut::Identity),
            "conj" | "conjugation" => Ok(FieldAut::Conjugation),
            other => Err(FieldError::UnsupportedAutomorphism(other.into())),
        }
    }
}

/// The morphism `σ: G → Aut(Δ)`, given by its values on the generators.
/// Any assignment extends uniquely because `G` is free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistSpec {
    generator_images: Vec<FieldAut>,
}

impl TwistSpec {
    pub fn trivial(rank: usize) -> Self {
        TwistSpec {
            generator_images: vec![FieldAut::Identity; rank],
        }
    }

    /// Conjugation over ℚ is rejected: `Aut(ℚ)` is trivial.
    pub fn new(field: Field, generator_images: Vec<FieldAut>) -> Result<Self, FieldError> {
        if field == Field::Rational && generator_images.contains(&FieldAut::Conjugation) {
            return Err(FieldError::UnsupportedAutomorphism(
                "conj over Q".into(),
            ));
        }
        Ok(TwistSpec { generator_images })
    }

    pub fn rank(&self) -> usize {
        self.generator_images.len()
    }

    pub fn generator_images(&self) -> &[FieldAut] {
        &self.generator_images
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_images.iter().all(|a| *a == FieldAut::Identity)
    }

    fn image(&self, generator: u32) -> FieldAut {
        self.generator_images
            .get(generator as usize - 1)
            .copied()
            .unwrap_or(FieldAut::Identity)
    }

    /// `σ_w`, composing generator images along the word.
    pub fn twist_of_word(&self, w: &Word) -> FieldAut {
        w.letters().iter().fold(FieldAut::Identity, |acc, &l| {
            let a = self.image(l.unsigned_abs());
            let a = if l > 0 { a } else { a.inverse() };
            acc.compose(&a)
        })
    }
}
