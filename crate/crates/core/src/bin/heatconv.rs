use std::process::ExitCode;

fn main() -> ExitCode {
    heatconv::cli::main_with_args(std::env::args_os())
}
