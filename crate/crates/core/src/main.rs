use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = malcev::cli::run(std::env::args_os(), std::env::vars());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
