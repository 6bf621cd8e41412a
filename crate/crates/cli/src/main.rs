use std::io::{self, IsTerminal};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input: Box<dyn io::Read> = if stdin.is_terminal() {
        Box::new(io::empty())
    } else {
        Box::new(stdin.lock())
    };
    let code = twistlab_cli::run(
        std::env::args_os(),
        std::env::var(twistlab_cli::MAX_STEPS_ENV).ok(),
        &mut input,
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
