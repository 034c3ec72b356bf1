use std::io::{self, IsTerminal};
use std::process::ExitCode;

use granule_core::cli::{run, Io};

fn main() -> ExitCode {
    let stdout = io::stdout();
    let tty = stdout.is_terminal();
    let mut io = Io {
        stdin: &mut io::stdin().lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut io::stderr().lock(),
        tty,
    };
    let code = run(std::env::args_os(), &mut io);
    ExitCode::from(u8::try_from(code).unwrap_or(2))
}
