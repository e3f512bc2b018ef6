use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = maxcone_cli::run(std::env::args_os());
    println!("{}", outcome.output.trim_end());
    ExitCode::from(outcome.code as u8)
}
