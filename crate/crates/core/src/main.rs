use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut err = io::stderr().lock();
    let mut code = rnass::cli::run(std::env::args_os(), &mut stdin, &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        code = 1;
    }
    ExitCode::from(code as u8)
}
