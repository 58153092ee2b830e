//! Exact coefficient fields and the twist morphism `σ: G → Aut(Δ)`.

pub mod coeff;
pub mod twist;

pub use coeff::{field_arith, Coeff, Field, FieldOp, FieldValue, Quad};
pub use twist::{FieldAut, TwistSpec};
