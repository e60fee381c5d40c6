use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = cascade_cli::run(std::env::args_os());
    let result = if outcome.status == 2 {
        std::io::stderr().write_all(outcome.report.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.report.as_bytes())
    };
    if result.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.status)
}
