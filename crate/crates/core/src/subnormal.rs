//! The chain `N_n = v⁻¹(⟨x⟩_n) ⊴ N_{n-1} ⊴ ⋯ ⊴ N_0 = D*` at bounded scale.
//!
//! Membership of `α` in `N_i` is decided by `v(α)` alone, so a certificate is
//! a replayable derivation of `v(α) ∈ ⟨x⟩_i`. Normality of `N_i` in `N_{i-1}`
//! is sampled: for `α ∈ N_i`, `β ∈ N_{i-1}` the derivation of `v(α)` is
//! conjugated by the derivation of `v(β)`, replayed, and compared with the
//! valuation of the actual series `βαβ⁻¹`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FreeGroupError, SeriesError};
use crate::freegroup::{ClosureTower, Derivation, FreeGroup, Word, WordBall};
use crate::mnseries::{random_series, random_series_with_lead, Series, SeriesRing};

pub const DEFAULT_SEED: u64 = 0x5EED;
/// Words in sampled series have at most this length.
pub const SAMPLE_WORD_LEN: usize = 4;
pub const SAMPLE_MAX_TERMS: usize = 4;

/// Level `n` of the chain: `⟨x⟩_n` enumerated up to length `max_len`.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    tower: Arc<ClosureTower>,
    n: usize,
}

impl ChainLevel {
    /// Levels `0..=max_depth` sharing one enumeration.
    pub fn build(
        group: FreeGroup,
        x: &Word,
        max_depth: usize,
        max_len: usize,
        budget: usize,
    ) -> Result<Vec<ChainLevel>, FreeGroupError> {
        let mut tower = ClosureTower::new(group, x.clone(), max_len, budget)?;
        tower.extend_to(max_depth)?;
        let tower = Arc::new(tower);
        Ok((0..=max_depth)
            .map(|n| ChainLevel {
                tower: tower.clone(),
                n,
            })
            .collect())
    }

    pub fn new(
        group: FreeGroup,
        x: &Word,
        n: usize,
        max_len: usize,
        budget: usize,
    ) -> Result<ChainLevel, FreeGroupError> {
        Ok(Self::build(group, x, n, max_len, budget)?.pop().unwrap())
    }

    pub fn x(&self) -> &Word {
        self.tower.generator()
    }

    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.tower.max_len()
    }

    pub fn ball(&self) -> &WordBall {
        self.tower.ball(self.n)
    }

    pub fn derive(&self, w: &Word) -> Option<Derivation> {
        self.tower.derive(w, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub alpha_valuation: Word,
    pub x: Word,
    pub membership_witness: Derivation,
}

impl Certificate {
    pub fn depth(&self) -> usize {
        self.membership_witness.depth()
    }

    /// Replays the witness and checks it reproduces `alpha_valuation`.
    pub fn verify(&self) -> bool {
        self.membership_witness.is_well_formed()
            && self.membership_witness.replay(&self.x) == self.alpha_valuation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Certified(Certificate),
    /// `v(α)` was not enumerated; proves nothing either way.
    Inconclusive { valuation: Word },
}

impl Membership {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Certified(c) => Some(c),
            Membership::Inconclusive { .. } => None,
        }
    }
}

pub fn chain_member_certificate(
    alpha: &Series,
    level: &ChainLevel,
) -> Result<Membership, SeriesError> {
    let v = alpha.valuation()?;
    Ok(match level.derive(&v) {
        Some(d) => Membership::Certified(Certificate {
            alpha_valuation: v,
            x: level.x().clone(),
            membership_witness: d,
        }),
        None => Membership::Inconclusive { valuation: v },
    })
}

#[derive(Clone, Debug)]
pub struct ChainParams {
    pub group: FreeGroup,
    pub x: Word,
    pub max_depth: usize,
    pub max_len: usize,
    /// Length bound of the enlarged enumeration used to cross-check samples.
    pub enlarged_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub budget: usize,
    pub inversion_depth: usize,
    pub inline_certificates: bool,
}

impl ChainParams {
    pub fn new(group: FreeGroup, x: Word, max_depth: usize, max_len: usize) -> Self {
        ChainParams {
            group,
            x,
            max_depth,
            max_len,
            enlarged_len: max_len + 2,
            samples: 200,
            seed: DEFAULT_SEED,
            budget: crate::freegroup::DEFAULT_NODE_BUDGET,
            inversion_depth: 3,
            inline_certificates: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionEvidence {
    pub members: usize,
    pub previous_members: usize,
    pub holds: bool,
    /// First member of level `i` missing from level `i-1`.
    pub missing: Option<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub alpha: Series,
    pub beta: Series,
    pub conjugate_valuation: Word,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub alpha: Series,
    pub beta: Series,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub depth: usize,
    pub inclusion: InclusionEvidence,
    pub samples: usize,
    /// Samples whose conjugate valuation has length `<= enlarged_len`.
    pub checked_in_enlarged_ball: usize,
    /// Of those, how many the enlarged enumeration found.
    pub found_in_enlarged_ball: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<SampleRecord>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub x: Word,
    pub max_depth: usize,
    pub max_len: usize,
    pub enlarged_len: usize,
    pub seed: u64,
    pub level_sizes: Vec<usize>,
    pub levels: Vec<LevelReport>,
    /// Claims taken on trust rather than evidenced.
    pub not_checked: Vec<String>,
    pub passed: bool,
}

/// Inclusion evidence and sampled normality for every level `1..=max_depth`.
pub fn chain_report(params: &ChainParams) -> Result<ChainReport, SeriesError> {
    let x = &params.x;
    if x.is_identity() {
        return Err(FreeGroupError::IdentityGenerator.into());
    }
    let levels = ChainLevel::build(
        params.group,
        x,
        params.max_depth,
        params.max_len,
        params.budget,
    )?;
    let mut enlarged = ClosureTower::new(
        params.group,
        x.clone(),
        params.enlarged_len,
        params.budget,
    )?;
    enlarged.extend_to(params.max_depth)?;

    let ring = SeriesRing::untwisted_rationals(params.group.rank() as usize);
    let pool = params.group.ball(SAMPLE_WORD_LEN);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut reports = Vec::new();
    for i in 1..=params.max_depth {
        let cur = &levels[i];
        let prev = &levels[i - 1];
        let missing = cur
            .ball()
            .members()
            .iter()
            .find(|w| !prev.ball().contains(w))
            .cloned();
        let inclusion = InclusionEvidence {
            members: cur.ball().len(),
            previous_members: prev.ball().len(),
            holds: missing.is_none(),
            missing,
        };

        let leads: Vec<Word> = cur
            .ball()
            .members()
            .iter()
            .filter(|w| w.len() <= SAMPLE_WORD_LEN)
            .cloned()
            .collect();
        let beta_leads: Vec<Word> = prev
            .ball()
            .members()
            .iter()
            .filter(|w| w.len() <= SAMPLE_WORD_LEN)
            .cloned()
            .collect();

        let mut counterexamples = Vec::new();
        let mut certificates = Vec::new();
        let mut checked = 0;
        let mut found = 0;
        for _ in 0..params.samples {
            let lead = leads.choose(&mut rng).unwrap();
            let alpha = random_series_with_lead(&mut rng, &ring, lead, &pool, SAMPLE_MAX_TERMS);
            let beta = if i == 1 {
                random_series(&mut rng, &ring, &pool, SAMPLE_MAX_TERMS)
            } else {
                let b = beta_leads.choose(&mut rng).unwrap();
                random_series_with_lead(&mut rng, &ring, b, &pool, SAMPLE_MAX_TERMS)
            };
            let sample = check_sample(&alpha, &beta, cur, prev, params.inversion_depth)?;
            match sample {
                Ok(record) => {
                    let w = &record.conjugate_valuation;
                    if w.len() <= params.enlarged_len {
                        checked += 1;
                        if enlarged.ball(i).contains(w) {
                            found += 1;
                        }
                    }
                    if params.inline_certificates {
                        certificates.push(record);
                    }
                }
                Err(reason) => counterexamples.push(Counterexample {
                    alpha,
                    beta,
                    reason,
                }),
            }
        }
        reports.push(LevelReport {
            depth: i,
            passed: inclusion.holds && counterexamples.is_empty(),
            inclusion,
            samples: params.samples,
            checked_in_enlarged_ball: checked,
            found_in_enlarged_ball: found,
            counterexamples,
            certificates,
        });
    }

    Ok(ChainReport {
        x: x.clone(),
        max_depth: params.max_depth,
        max_len: params.max_len,
        enlarged_len: params.enlarged_len,
        seed: params.seed,
        level_sizes: levels.iter().map(|l| l.ball().len()).collect(),
        passed: reports.iter().all(|r| r.passed),
        levels: reports,
        not_checked: vec![
            "minimality of the subnormal length of N_n".into(),
            "membership of words outside the enumerated balls".into(),
        ],
    })
}

/// `Ok(Ok(record))` when `v(βαβ⁻¹)` is certified in `⟨x⟩_i`, `Ok(Err(reason))`
/// for a validated counterexample.
fn check_sample(
    alpha: &Series,
    beta: &Series,
    cur: &ChainLevel,
    prev: &ChainLevel,
    depth: usize,
) -> Result<Result<SampleRecord, String>, SeriesError> {
    let cert_a = match chain_member_certificate(alpha, cur)? {
        Membership::Certified(c) => c,
        Membership::Inconclusive { valuation } => {
            return Ok(Err(format!("sampled alpha with uncertified valuation {valuation}")))
        }
    };
    let cert_b = match chain_member_certificate(beta, prev)? {
        Membership::Certified(c) => c,
        Membership::Inconclusive { valuation } => {
            return Ok(Err(format!("sampled beta with uncertified valuation {valuation}")))
        }
    };
    let product = Series::conjugate(beta, alpha, depth)?;
    let actual = product.valuation()?;
    let vb = &cert_b.alpha_valuation;
    let predicted = cert_a.alpha_valuation.conjugate_by(vb);
    if actual != predicted {
        return Ok(Err(format!(
            "v(βαβ⁻¹) = {actual} but v(β)v(α)v(β)⁻¹ = {predicted}"
        )));
    }
    let transported = Certificate {
        alpha_valuation: actual.clone(),
        x: cur.x().clone(),
        membership_witness: cert_a
            .membership_witness
            .conjugate_by(&cert_b.membership_witness),
    };
    if !transported.verify() {
        return Ok(Err(format!(
            "transported derivation does not replay to {actual}"
        )));
    }
    Ok(Ok(SampleRecord {
        alpha: alpha.clone(),
        beta: beta.clone(),
        conjugate_valuation: actual,
        certificate: transported,
    }))
}
