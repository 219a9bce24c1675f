use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = dgres_cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = dgres_cli::run(std::env::args_os());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
