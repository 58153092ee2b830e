//! The chain N_i = v^-1(<x>_i) on bounded balls, with sampled normality checks.

use malcev::freegroup::{FreeGroup, Word};
use malcev::subnormal::{chain_report, ChainParams};

fn main() {
    let mut p = ChainParams::new(FreeGroup::new(2).unwrap(), Word::generator(1), 3, 5);
    p.samples = 100;
    let rep = chain_report(&p).unwrap();
    println!("ball sizes by level: {:?}", rep.level_sizes);
    for l in &rep.levels {
        println!(
            "level {}: inclusion {}, {} samples, {} counterexamples",
            l.depth,
            l.inclusion.holds,
            l.samples,
            l.counterexamples.len()
        );
    }
    for n in &rep.not_checked {
        println!("not checked: {n}");
    }
    println!("passed: {}", rep.passed);
}
