use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (code, text) = proxima::cli::run_command(&argv);
    print!("{text}");
    ExitCode::from(code as u8)
}
