use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tdg_core::cli::run(std::env::args_os()) as u8)
}
