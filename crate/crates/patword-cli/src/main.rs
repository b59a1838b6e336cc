use std::process::ExitCode;

fn main() -> ExitCode {
    let out = patword_cli::run(std::env::args_os());
    if !out.stdout.is_empty() {
        println!("{}", out.stdout);
    }
    ExitCode::from(out.exit_code as u8)
}
