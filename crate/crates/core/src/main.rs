use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lattice_minsum::cli::run(std::env::args()) as u8)
}
