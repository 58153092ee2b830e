//! Undoing a hidden conjugation: alpha = beta x beta^-1 is pushed back into
//! the Laurent series in x by successive conjugations.

use malcev::freegroup::{FreeGroup, Word};
use malcev::mnseries::{cohn_normalize, laurent_membership, RingHandle, Series, SeriesRing};

fn main() {
    let ring = SeriesRing::untwisted_rationals(2);
    let hidden = ring.one().add(&ring.word(Word::generator(2)));
    let alpha = Series::conjugate(&hidden, &ring.word(Word::generator(1)), 6).unwrap();
    println!("alpha = {alpha}");
    let out = cohn_normalize(&alpha, 8, 6, FreeGroup::new(2).unwrap(), 1).unwrap();
    for s in &out.report.steps {
        println!("  conjugate by 1 + ({})*{}  cancels {}", s.coefficient, s.conjugator_word, s.cancelled);
    }
    println!("success: {}", out.report.success);
    println!("beta alpha beta^-1 = {}", out.conjugated);
    println!("Laurent in x: {:?}", laurent_membership(&out.conjugated, &Word::generator(1)));
}
