//! Hamilton's quaternions as the cyclic algebra (Q(i)/Q, i -> -i, -1).

use malcev::cyclicalg::{span_closure, zero_divisor_search, CyclicAlgebra, Subfield};

fn main() {
    let h = CyclicAlgebra::preset("quaternion").unwrap();
    let (v, u) = (h.v(), h.u());
    println!("vu = {}, uv = {}", h.display(&h.mul(&v, &u)), h.display(&h.mul(&u, &v)));
    let q = h.add(&h.one(), &h.add(&v, &u));
    println!("({})^-1 = {}", h.display(&q), h.display(&h.inv(&q).unwrap()));

    let k = Subfield::generated_by(&h, &v);
    let span = span_closure(&h, &k.basis, &u, 50, 1).unwrap();
    println!(
        "K = Q(v), K[u]: dim_F {}, closed {}, inverses inside {}/{}",
        span.dim_f, span.closed_under_mul, span.inverses_inside, span.inversion_samples
    );
    match zero_divisor_search(&h, 2, 4) {
        Some((a, b)) => println!("zero divisor pair: {} * {} = 0", h.display(&a), h.display(&b)),
        None => println!("no zero divisors with entries in [-2, 2]"),
    }
}
