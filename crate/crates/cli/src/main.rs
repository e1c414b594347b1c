use std::process::ExitCode;

fn main() -> ExitCode {
    cyclotrace_cli::cli::main_with(std::env::args_os())
}
