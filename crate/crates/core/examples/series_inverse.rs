//! Inverting a series with a precision marker and checking the product.

use malcev::freegroup::Word;
use malcev::mnseries::{RingHandle, SeriesRing};

fn main() {
    let ring = SeriesRing::untwisted_rationals(2);
    let x = ring.word(Word::generator(1));
    let y = ring.word(Word::generator(2));
    let alpha = ring.one().sub(&x).add(&y.mul(&x).scale(&malcev::coeffield::Coeff::rational(1, 2)));
    for depth in [2, 4] {
        let inv = alpha.invert(depth).unwrap();
        println!("depth {depth}: ({alpha})^-1 = {inv}");
        let check = alpha.mul(&inv);
        println!("  product: {check}  agrees with 1: {}", check.agrees_with(&ring.one()));
    }
}
