use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, code) = torusq_cli::run(std::env::args_os());
    if code == 0 {
        print!("{output}");
    } else {
        eprint!("{output}");
    }
    ExitCode::from(code as u8)
}
