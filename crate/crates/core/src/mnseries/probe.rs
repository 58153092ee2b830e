//! Probes over truncated series: membership in `Δ((h))`, a budgeted search
//! for conjugators that push a series into `Δ((h))`, and the self-invariance
//! probe that records which ordering case a non-normalizing element falls in.

use std::cmp::Ordering;

use serde::Serialize;

use super::series::{Precision, RingHandle, Series};
use crate::coeffield::Coeff;
use crate::error::SeriesError;
use crate::freegroup::{compare, FreeGroup, Word};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LaurentVerdict {
    /// Every stored word is a power of `h`; holds up to the attached precision.
    Yes { precision: Precision },
    No { witness: Word },
    /// Nothing is stored inside the window.
    IndeterminateBeyondPrecision,
}

impl LaurentVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, LaurentVerdict::Yes { .. })
    }
}

/// Tests whether every stored term of `alpha` sits on a power of `h` (not of
/// its primitive root).
pub fn laurent_membership(alpha: &Series, h: &Word) -> LaurentVerdict {
    assert!(!h.is_identity(), "Δ((1)) is not a Laurent ring");
    if let Some(w) = alpha.support().find(|w| w.power_of(h).is_none()) {
        return LaurentVerdict::No { witness: w.clone() };
    }
    if alpha.is_empty_window() && !alpha.precision().is_exact() {
        return LaurentVerdict::IndeterminateBeyondPrecision;
    }
    LaurentVerdict::Yes {
        precision: alpha.precision().clone(),
    }
}

fn least_off_h(alpha: &Series, h: &Word) -> Option<(Word, Coeff)> {
    alpha
        .terms()
        .iter()
        .find(|(w, _)| w.power_of(h).is_none())
        .cloned()
}

#[derive(Clone, Debug, Serialize)]
pub struct CohnStep {
    pub conjugator_word: Word,
    pub coefficient: Coeff,
    /// Least off-`⟨h⟩` word before the step.
    pub cancelled: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohnReport {
    pub h: Word,
    pub success: bool,
    pub steps: Vec<CohnStep>,
    /// Least remaining off-`⟨h⟩` term, if any is stored.
    pub residual: Option<(Word, Coeff)>,
    pub precision: Precision,
}

#[derive(Clone, Debug)]
pub struct CohnOutcome {
    pub beta: Series,
    pub conjugated: Series,
    pub report: CohnReport,
}

/// Best-effort search for `β` with `βαβ⁻¹ ∈ Δ((h))`, `h = v(α) > 1`.
///
/// Each step tries conjugators `1 + c·k`, first with `k·h` or `h·k` equal to
/// the least off-`⟨h⟩` word `w`, then with `k` from the ball of radius
/// `ball_radius`. `c` is solved from the linear part so that the coefficient
/// at `w` cancels. A step is accepted only if the valuation stays `h` and the
/// least off-`⟨h⟩` word strictly increases.
pub fn cohn_normalize(
    alpha: &Series,
    budget: usize,
    depth: usize,
    group: FreeGroup,
    ball_radius: usize,
) -> Result<CohnOutcome, SeriesError> {
    let ring = alpha.ring().clone();
    let h = alpha.valuation()?;
    if compare(&h, &Word::identity()) != Ordering::Greater {
        return Err(SeriesError::NotAboveOne(h));
    }
    let mut beta = ring.one();
    let mut current = alpha.clone();
    let mut steps = Vec::new();
    let extra: Vec<Word> = group
        .ball(ball_radius)
        .into_iter()
        .filter(|k| !k.is_identity())
        .collect();

    while steps.len() < budget {
        let Some((w, b)) = least_off_h(&current, &h) else {
            break;
        };
        let mut candidates = vec![&w * &h.inverse(), &h.inverse() * &w];
        candidates.extend(extra.iter().cloned());
        let mut accepted = None;
        for k in candidates {
            if k.is_identity() {
                continue;
            }
            let kk = ring.word(k.clone());
            let linear = kk.mul(&current).sub(&current.mul(&kk));
            let Some(dw) = linear.coefficient(&w) else {
                continue;
            };
            let c = -&b.try_div(dw)?;
            let step = ring.one().add(&ring.monomial(c.clone(), k.clone()));
            let candidate_beta = step.mul(&beta);
            let next = Series::conjugate(&candidate_beta, alpha, depth)?;
            if next.valuation().ok().as_ref() != Some(&h) {
                continue;
            }
            let improved = match least_off_h(&next, &h) {
                None => true,
                Some((w2, _)) => compare(&w2, &w) == Ordering::Greater,
            };
            if improved {
                accepted = Some((candidate_beta, next, k, c));
                break;
            }
        }
        match accepted {
            Some((nb, next, k, c)) => {
                steps.push(CohnStep {
                    conjugator_word: k,
                    coefficient: c,
                    cancelled: w,
                });
                beta = nb;
                current = next;
            }
            None => break,
        }
    }

    let residual = least_off_h(&current, &h);
    let report = CohnReport {
        h: h.clone(),
        success: residual.is_none() && laurent_membership(&current, &h).is_yes(),
        steps,
        residual,
        precision: current.precision().clone(),
    };
    Ok(CohnOutcome {
        beta,
        conjugated: current,
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `v(εh^ℓ) > v(λε)`
    Case1,
    /// `v(εh^ℓ) < v(λε)`
    Case2,
    /// `v(εh^ℓ) = v(λε)`
    Case3,
    NoViolation,
}

impl CaseTag {
    pub fn from_ordering(o: Ordering) -> CaseTag {
        match o {
            Ordering::Greater => CaseTag::Case1,
            Ordering::Less => CaseTag::Case2,
            Ordering::Equal => CaseTag::Case3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub ell: i64,
    pub lambda: Series,
    /// First stored word of `λ` outside `⟨h⟩`.
    pub witness: Word,
    pub v_eps_h_ell: Word,
    pub v_lambda_eps: Word,
}

/// Outcome of [`self_invariance_probe`]. `NoViolation` is inconclusive.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeTrace {
    pub gamma: Series,
    pub h: Word,
    pub ell_range: (i64, i64),
    pub delta: Series,
    pub epsilon: Series,
    pub case_tag: CaseTag,
    pub violation: Option<Violation>,
}

impl ProbeTrace {
    pub fn is_violation(&self) -> bool {
        self.violation.is_some()
    }
}

/// For each `ℓ` in `ell_range`, computes `λ = γ h^ℓ γ⁻¹` and stops at the
/// first `λ ∉ Δ((h))`, tagging it by comparing `v(εh^ℓ)` with `v(λε)` where
/// `γ = δ + ε` splits the support on and off `⟨h⟩`.
pub fn self_invariance_probe(
    gamma: &Series,
    h: &Word,
    ell_range: (i64, i64),
    depth: usize,
) -> Result<ProbeTrace, SeriesError> {
    if compare(h, &Word::identity()) != Ordering::Greater {
        return Err(SeriesError::NotAboveOne(h.clone()));
    }
    let ring = gamma.ring().clone();
    let delta = gamma.filter_terms(|w| w.power_of(h).is_some());
    let epsilon = gamma.filter_terms(|w| w.power_of(h).is_none());
    let gamma_inv = gamma.invert(depth)?;

    let mut trace = ProbeTrace {
        gamma: gamma.clone(),
        h: h.clone(),
        ell_range,
        delta,
        epsilon: epsilon.clone(),
        case_tag: CaseTag::NoViolation,
        violation: None,
    };
    for ell in ell_range.0..=ell_range.1 {
        let h_ell = h.pow(ell);
        let lambda = gamma.mul(&ring.word(h_ell.clone())).mul(&gamma_inv);
        if let LaurentVerdict::No { witness } = laurent_membership(&lambda, h) {
            let v_eps_h_ell = epsilon.mul(&ring.word(h_ell)).valuation()?;
            let v_lambda_eps = lambda.mul(&epsilon).valuation()?;
            trace.case_tag = CaseTag::from_ordering(compare(&v_eps_h_ell, &v_lambda_eps));
            trace.violation = Some(Violation {
                ell,
                lambda,
                witness,
                v_eps_h_ell,
                v_lambda_eps,
            });
            break;
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mnseries::SeriesRing;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    fn q(n: i64) -> Coeff {
        Coeff::rational(n, 1)
    }

    #[test]
    fn laurent_examples() {
        let r = SeriesRing::untwisted_rationals(2);
        let h = w(&[1, 2]);
        let s = r.make_series(
            vec![(h.pow(-1), q(3)), (h.pow(2), q(2))],
            Precision::Exact,
        );
        assert!(laurent_membership(&s, &h).is_yes());
        let x = w(&[1]);
        let s = r.word(x.clone()).add(&r.word(w(&[2])));
        assert_eq!(
            laurent_membership(&s, &x),
            LaurentVerdict::No { witness: w(&[2]) }
        );
        assert!(laurent_membership(&r.zero(), &x).is_yes());
        let hidden = r.make_series(vec![], Precision::Above(x.clone()));
        assert_eq!(
            laurent_membership(&hidden, &x),
            LaurentVerdict::IndeterminateBeyondPrecision
        );
        // powers of h, not of its root
        let s = r.word(x.clone());
        assert!(!laurent_membership(&s, &x.pow(2)).is_yes());
    }

    #[test]
    fn cohn_already_laurent() {
        let r = SeriesRing::untwisted_rationals(2);
        let g = FreeGroup::new(2).unwrap();
        let a = r.word(w(&[1])).add(&r.word(w(&[1, 1])));
        let out = cohn_normalize(&a, 5, 6, g, 1).unwrap();
        assert!(out.report.success);
        assert!(out.report.steps.is_empty());
        assert_eq!(out.beta, r.one());
    }

    #[test]
    fn cohn_budget_zero_reports_residual() {
        let r = SeriesRing::untwisted_rationals(2);
        let g = FreeGroup::new(2).unwrap();
        let a = r.word(w(&[1])).add(&r.word(w(&[2, 1, 1, -2])));
        let out = cohn_normalize(&a, 0, 6, g, 1).unwrap();
        assert!(!out.report.success);
        assert_eq!(out.beta, r.one());
        assert_eq!(out.report.residual.unwrap().0, w(&[2, 1, 1, -2]));
    }

    #[test]
    fn cohn_rejects_small_valuation() {
        let r = SeriesRing::untwisted_rationals(2);
        let g = FreeGroup::new(2).unwrap();
        let a = r.one().add(&r.word(w(&[1])));
        assert!(matches!(
            cohn_normalize(&a, 3, 4, g, 1),
            Err(SeriesError::NotAboveOne(_))
        ));
    }

    #[test]
    fn probe_examples() {
        let r = SeriesRing::untwisted_rationals(2);
        let x = w(&[1]);
        let t = self_invariance_probe(&r.word(w(&[2])), &x, (1, 1), 4).unwrap();
        let v = t.violation.as_ref().unwrap();
        assert_eq!(v.ell, 1);
        assert_eq!(v.lambda, r.word(w(&[2, 1, -2])));

        let t = self_invariance_probe(&r.word(x.pow(3)), &x, (-3, 3), 4).unwrap();
        assert_eq!(t.case_tag, CaseTag::NoViolation);

        let gamma = r.one().add(&r.word(w(&[2])));
        let t = self_invariance_probe(&gamma, &x, (-2, 2), 4).unwrap();
        assert!(t.is_violation());
        assert_eq!(t.delta, r.one());
        assert_eq!(t.epsilon, r.word(w(&[2])));
    }
}
