//! The shared expression grammar: parsing, evaluation, and printing back.

use malcev::cli::{algebra_from_str, parse, series_from_str, SessionConfig};
use malcev::cyclicalg::CyclicAlgebra;

fn main() {
    for text in ["x*y^-1", "(1 - x)^-1", "conj(1 + y; x)", "x**"] {
        match parse(text) {
            Ok(e) => println!("{text:<16} parses as {e}"),
            Err(err) => println!("{text:<16} {err}"),
        }
    }
    let cfg = SessionConfig::from_toml("d = 2\ntwist = { x = \"conj\" }").unwrap();
    let ring = cfg.ring().unwrap();
    let s = series_from_str("(1 + r*x)^-1", &ring, 3).unwrap();
    println!("(1 + r*x)^-1 = {s}");
    let back = series_from_str(&s.to_string(), &ring, 3).unwrap();
    println!("round trip equal: {}", back == s);

    let h = CyclicAlgebra::preset("quaternion").unwrap();
    let e = algebra_from_str("conj(1 + u; v)", &h).unwrap();
    println!("conj(1 + u; v) in H = {}", h.display(&e));
}
