use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(spectral_cli::run(std::env::args_os()))
}
