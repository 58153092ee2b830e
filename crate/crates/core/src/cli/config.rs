//! Session configuration: defaults, then a TOML file, then `MALCEV_*`
//! environment variables, then command-line flags.
//!
//! ```toml
//! rank = 2
//! d = 2                    # coefficient field Q(sqrt(2)); omit for Q
//! twist = { x = "conj" }   # generator -> id | conj
//! depth = 8                # inversion depth
//! degree_cap = 64          # Magnus comparison degree cap
//! ball_budget = 1000000    # normal-closure node budget
//! seed = 24301
//! samples = 200
//!
//! [algebra]                # `cyclic --preset custom`
//! f = [1, 0, 1]            # constant term first, monic
//! sigma = ["0", "-1"]
//! a = "-1"
//! ```
//!
//! Environment keys: `MALCEV_RANK`, `MALCEV_D`, `MALCEV_TWIST` (`x=conj,y=id`),
//! `MALCEV_DEPTH`, `MALCEV_DEGREE_CAP`, `MALCEV_BALL_BUDGET`, `MALCEV_SEED`,
//! `MALCEV_SAMPLES`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::eval::rational_from_str;
use crate::coeffield::{Field, FieldAut, TwistSpec};
use crate::cyclicalg::{CyclicAlgebra, Poly};
use crate::error::{AlgebraError, FieldError};
use crate::freegroup::{FreeGroup, DEFAULT_DEGREE_CAP, DEFAULT_NODE_BUDGET};
use crate::mnseries::{SeriesRing, DEFAULT_DEPTH};
use crate::subnormal::DEFAULT_SEED;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(String),
    #[error("malformed config: {0}")]
    Toml(String),
    #[error("bad value for {key}: {value:?}")]
    Env { key: String, value: String },
    #[error("rank must be at least 2, got {0}")]
    Rank(u32),
    #[error("unknown generator {0:?} in twist")]
    TwistGenerator(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no [algebra] table configured for the custom preset")]
    NoCustomAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomAlgebra {
    pub f: Vec<i64>,
    pub sigma: Vec<String>,
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    pub rank: u32,
    pub d: Option<i64>,
    pub twist: BTreeMap<String, String>,
    pub depth: usize,
    pub degree_cap: usize,
    pub ball_budget: usize,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<CustomAlgebra>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            rank: 2,
            d: None,
            twist: BTreeMap::new(),
            depth: DEFAULT_DEPTH,
            degree_cap: DEFAULT_DEGREE_CAP,
            ball_budget: DEFAULT_NODE_BUDGET,
            seed: DEFAULT_SEED,
            samples: 200,
            algebra: None,
        }
    }
}

fn parse_env<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::Env {
        key: key.into(),
        value: value.into(),
    })
}

impl SessionConfig {
    pub fn from_toml(text: &str) -> Result<SessionConfig, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string()))
    }

    /// Applies `MALCEV_*` overrides from `vars`.
    pub fn apply_env<I, K, V>(&mut self, vars: I) -> Result<(), ConfigError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        for (k, v) in vars {
            let (k, v) = (k.as_ref(), v.as_ref());
            match k {
                "MALCEV_RANK" => self.rank = parse_env(k, v)?,
                "MALCEV_D" => self.d = Some(parse_env(k, v)?),
                "MALCEV_DEPTH" => self.depth = parse_env(k, v)?,
                "MALCEV_DEGREE_CAP" => self.degree_cap = parse_env(k, v)?,
                "MALCEV_BALL_BUDGET" => self.ball_budget = parse_env(k, v)?,
                "MALCEV_SEED" => self.seed = parse_env(k, v)?,
                "MALCEV_SAMPLES" => self.samples = parse_env(k, v)?,
                "MALCEV_TWIST" => {
                    self.twist.clear();
                    for item in v.split(',').filter(|s| !s.trim().is_empty()) {
                        let (g, a) = item.split_once('=').ok_or_else(|| ConfigError::Env {
                            key: k.into(),
                            value: v.into(),
                        })?;
                        self.twist.insert(g.trim().into(), a.trim().into());
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Loads `path` (if any) over the defaults, then applies `env`.
    pub fn load<I, K, V>(path: Option<&std::path::Path>, env: I) -> Result<SessionConfig, ConfigError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| ConfigError::Io(e.to_string()))?;
                SessionConfig::from_toml(&text)?
            }
            None => SessionConfig::default(),
        };
        cfg.apply_env(env)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.group()?;
        self.ring()?;
        Ok(())
    }

    pub fn group(&self) -> Result<FreeGroup, ConfigError> {
        FreeGroup::new(self.rank).map_err(|_| ConfigError::Rank(self.rank))
    }

    pub fn field(&self) -> Result<Field, ConfigError> {
        Ok(match self.d {
            None => Field::Rational,
            Some(d) => Field::quadratic(d)?,
        })
    }

    pub fn twist_spec(&self) -> Result<TwistSpec, ConfigError> {
        let field = self.field()?;
        let mut images = vec![FieldAut::Identity; self.rank as usize];
        for (g, a) in &self.twist {
            let sym = super::parse::Symbol {
                name: g.to_ascii_lowercase(),
                inverse: false,
            };
            let idx = sym
                .generator_index()
                .ok_or_else(|| ConfigError::TwistGenerator(g.clone()))? as usize;
            if idx > self.rank as usize {
                return Err(FieldError::TwistRank {
                    index: idx,
                    rank: self.rank as usize,
                }
                .into());
            }
            images[idx - 1] = a.parse::<FieldAut>()?;
        }
        Ok(TwistSpec::new(field, images)?)
    }

    pub fn ring(&self) -> Result<Arc<SeriesRing>, ConfigError> {
        Ok(SeriesRing::new(self.field()?, self.twist_spec()?))
    }

    /// A shipped preset, or `custom` for the `[algebra]` table.
    pub fn algebra(&self, preset: &str) -> Result<CyclicAlgebra, ConfigError> {
        if preset != "custom" {
            return Ok(CyclicAlgebra::preset(preset)?);
        }
        let spec = self.algebra.as_ref().ok_or(ConfigError::NoCustomAlgebra)?;
        let bad = |value: &str| ConfigError::Env {
            key: "algebra".into(),
            value: value.into(),
        };
        let sigma: Vec<BigRational> = spec
            .sigma
            .iter()
            .map(|s| rational_from_str(s).map_err(|_| bad(s)))
            .collect::<Result<_, _>>()?;
        let a = rational_from_str(&spec.a).map_err(|_| bad(&spec.a))?;
        Ok(CyclicAlgebra::build(Poly::from_ints(&spec.f), Poly::new(sigma), a)?.with_name("custom"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = SessionConfig::load(None, [("MALCEV_SEED", "7"), ("HOME", "/")]).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.rank, 2);
        let mut cfg = SessionConfig::from_toml("rank = 3\nd = 2\ntwist = { y = \"conj\" }").unwrap();
        assert_eq!(cfg.twist_spec().unwrap().generator_images()[1], FieldAut::Conjugation);
        cfg.apply_env([("MALCEV_TWIST", "x=conj")]).unwrap();
        assert_eq!(cfg.twist_spec().unwrap().generator_images()[0], FieldAut::Conjugation);
        assert_eq!(cfg.twist_spec().unwrap().generator_images()[1], FieldAut::Identity);
    }

    #[test]
    fn invalid_configs() {
        assert!(matches!(
            SessionConfig::load(None, [("MALCEV_RANK", "1")]),
            Err(ConfigError::Rank(1))
        ));
        assert!(SessionConfig::load(None, [("MALCEV_D", "4")]).is_err());
        assert!(SessionConfig::from_toml("colour = 1").is_err());
        let cfg = SessionConfig::from_toml("twist = { x = \"conj\" }").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = SessionConfig::from_toml("d = 3\ntwist = { z = \"conj\" }").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn custom_algebra() {
        let cfg = SessionConfig::from_toml(
            "[algebra]\nf = [1, 0, 1]\nsigma = [\"0\", \"-1\"]\na = \"-1\"",
        )
        .unwrap();
        assert_eq!(cfg.algebra("custom").unwrap().dim_f(), 4);
        assert!(SessionConfig::default().algebra("custom").is_err());
    }
}
