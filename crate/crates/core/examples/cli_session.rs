//! Driving the command runner in-process, as the binary does.

use malcev::cli::run;

fn main() {
    let calls: [&[&str]; 4] = [
        &["order", "y", "x"],
        &["eval", "conj(1+y; x)"],
        &["cyclic", "--preset", "quaternion", "selfinv", "v"],
        &["--format", "structured", "order", "xyXY", "1"],
    ];
    for args in calls {
        let mut argv = vec!["malcev"];
        argv.extend_from_slice(args);
        let out = run(argv, std::env::vars());
        println!("$ malcev {}  [exit {}]", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
