use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(elastica::cli::main_with(std::env::args_os()))
}
