//! Finite-dimensional cyclic algebras over ℚ and their subfields.

pub mod algebra;
pub mod linalg;
pub mod poly;
pub mod subfield;

pub use algebra::{
    algebra_arith, zero_divisor_search, AlgOp, AlgValue, AlgebraElement, AlgebraSummary,
    CyclicAlgebra, PRESET_NAMES,
};
pub use poly::Poly;
pub use subfield::{
    autocommutator_probe, centralizer, galois_roots, is_maximal_subfield, primitive_element,
    self_invariance_report, span_closure, AutocommOutcome, GaloisRoots, NormalizerWitness,
    PrimitiveElement, SpanClosure, Subfield, SubfieldReport,
};
