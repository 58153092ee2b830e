//! Sorting words by the Magnus order and reading off leading monomials.

use malcev::freegroup::{compare, magnus::leading_term, magnus_expand, FreeGroup, Word};

fn main() {
    let mut ball = FreeGroup::new(2).unwrap().ball(2);
    ball.sort_by(compare);
    let line: Vec<String> = ball.iter().map(Word::to_string).collect();
    println!("rank 2, length <= 2, ascending:\n  {}", line.join(" < "));

    let commutator = Word::from_letters([1, 2, -1, -2]);
    let (m, c) = leading_term(&commutator, 64).unwrap().unwrap();
    println!("[x, y] = {commutator}: leading monomial {m} with coefficient {c}");
    println!("expansion to degree 3:");
    for (m, c) in magnus_expand(&commutator, 3).terms() {
        println!("  {c:>3}  {m}");
    }
}
