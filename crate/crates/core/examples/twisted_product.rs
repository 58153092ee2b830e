//! Twisted multiplication over Q(sqrt 2) where x acts by conjugation.

use malcev::coeffield::{Field, FieldAut, TwistSpec};
use malcev::freegroup::Word;
use malcev::mnseries::{RingHandle, SeriesRing};

fn main() {
    let f = Field::quadratic(2).unwrap();
    let twist = TwistSpec::new(f, vec![FieldAut::Conjugation, FieldAut::Identity]).unwrap();
    let ring = SeriesRing::new(f, twist);
    let r = ring.constant(f.sqrt_d().unwrap());
    let x = ring.word(Word::generator(1));
    let y = ring.word(Word::generator(2));
    println!("x * r = {}", x.mul(&r));
    println!("y * r = {}", y.mul(&r));
    let a = ring.one().add(&r.mul(&x));
    println!("({a})^2 = {}", a.mul(&a));
    let inv = a.invert(3).unwrap();
    println!("({a})^-1 = {inv}");
    println!("check: {}", a.mul(&inv));
}
