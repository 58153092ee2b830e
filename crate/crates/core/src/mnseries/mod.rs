//! Truncated Mal'cev-Neumann series `Δ((G,σ))` and the probes built on them.

pub mod probe;
pub mod sample;
pub mod series;

pub use probe::{
    cohn_normalize, laurent_membership, self_invariance_probe, CaseTag, CohnOutcome,
    CohnReport, CohnStep, LaurentVerdict, ProbeTrace, Violation,
};
pub use series::{Precision, RingHandle, Series, SeriesRing, DEFAULT_DEPTH};
pub use sample::{random_series, random_series_with_lead, sample_coeffs};
