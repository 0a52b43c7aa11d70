use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(berge_cli::main_with(std::env::args()))
}
