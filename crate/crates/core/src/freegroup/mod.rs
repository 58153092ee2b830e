//! Free groups: reduced words, the Magnus order, and bounded normal closures.

pub mod closure;
pub mod magnus;
pub mod word;

pub use closure::{
    normal_closure_ball, ClosureTower, ConjugateFactor, Derivation, WordBall,
    DEFAULT_NODE_BUDGET,
};
pub use magnus::{
    compare, magnus_expand, min_word, sign, try_compare, try_compare_with_cap, MagnusPoly,
    Monomial, DEFAULT_DEGREE_CAP,
};
pub use word::{FreeGroup, Syllable, Word};
