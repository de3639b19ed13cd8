use std::process::ExitCode;

fn main() -> ExitCode {
    twomode_cli::run(std::env::args_os())
}
