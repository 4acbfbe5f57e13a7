use std::io::Write;
use std::process::ExitCode;

use yoneda_cli::{run_command, GUARD_ENV};

fn main() -> ExitCode {
    let outcome = run_command(std::env::args_os(), std::env::var(GUARD_ENV).ok());
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.report.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
