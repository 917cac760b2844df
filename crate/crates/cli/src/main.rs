use std::process::ExitCode;

fn main() -> ExitCode {
    minorgrowth_cli::run(std::env::args().skip(1).collect())
}
