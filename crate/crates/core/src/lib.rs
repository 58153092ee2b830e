//! Exact arithmetic in twisted Mal'cev-Neumann division rings `Δ((G,σ))`
//! over free groups with the Magnus order, plus finite-dimensional cyclic
//! algebras over ℚ.
//!
//! Modules:
//! - [`freegroup`]: reduced words, the Magnus order, bounded normal closures.
//! - [`coeffield`]: ℚ and ℚ(√d), automorphisms, the twist `σ`.
//! - [`mnseries`]: precision-tracked series, valuation, inversion, probes.
//! - [`subnormal`]: the subnormal chain `N_i = v⁻¹(⟨x⟩_i)` with certificates.
//! - [`cyclicalg`]: cyclic algebras `(K/F, σ, a)`, centralizers, subfield reports.
//! - [`cli`]: expression grammar, session config, command runner.

pub mod cli;
pub mod coeffield;
pub mod cyclicalg;
pub mod error;
pub mod freegroup;
pub mod mnseries;
pub mod subnormal;
