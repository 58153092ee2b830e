//! Searching for an exponent l with gamma h^l gamma^-1 outside the Laurent
//! series in h.

use malcev::cli::series_from_str;
use malcev::freegroup::Word;
use malcev::mnseries::{self_invariance_probe, SeriesRing};

fn main() {
    let ring = SeriesRing::untwisted_rationals(2);
    let h = Word::generator(1);
    for text in ["1 + y", "x + xx", "y - 1/2*xy + yyX"] {
        let gamma = series_from_str(text, &ring, 6).unwrap();
        let t = self_invariance_probe(&gamma, &h, (-3, 3), 6).unwrap();
        println!("gamma = {gamma}");
        println!("  delta = {}, epsilon = {}", t.delta, t.epsilon);
        match &t.violation {
            Some(v) => println!(
                "  l = {}: witness {} outside <{h}>, {:?} ({} vs {})",
                v.ell, v.witness, t.case_tag, v.v_eps_h_ell, v.v_lambda_eps
            ),
            None => println!("  no violation in [-3, 3] (inconclusive)"),
        }
    }
}
