use std::process::ExitCode;

fn main() -> ExitCode {
    pole_recovery::cli::run(std::env::args_os())
}
