use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let precision = std::env::var(zrl::cli::PRECISION_ENV).ok();
    let code = zrl::cli::run(std::env::args_os(), precision.as_deref(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
