use std::process::ExitCode;

fn main() -> ExitCode {
    kdfc::cli::main()
}
