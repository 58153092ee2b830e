//! The 9-dimensional cyclic division algebra with u^3 = 2 and its two
//! distinguished maximal subfields.

use malcev::cyclicalg::{autocommutator_probe, self_invariance_report, AutocommOutcome, CyclicAlgebra};

fn main() {
    let d = CyclicAlgebra::preset("lam-14-16").unwrap();
    let s = d.summary();
    println!("{}: f = {}, sigma(v) = {}, u^3 = {}, dim {}", s.name, s.minpoly, s.sigma_image, s.a, s.dim_f);
    let w = d.aliases()[0].1.clone();
    for (name, g) in [("v", d.v()), ("w", w)] {
        let r = self_invariance_report(&d, &g).unwrap();
        println!(
            "Q({name}): min poly {}, maximal {}, Galois roots {}, self-invariant {}",
            r.min_poly_over_f,
            r.is_maximal,
            r.galois.roots.len(),
            r.self_invariant
        );
        for nw in &r.normalizer_witnesses {
            println!("  t -> {} realized by {}", nw.root, nw.witness.as_deref().unwrap_or("-"));
            if let AutocommOutcome::Witness { x, quotient, .. } =
                autocommutator_probe(&d, &g, &nw.root_poly, 3).unwrap()
            {
                println!("  x = {x}: x^-1 tau(x) = {quotient}");
            }
        }
    }
}
