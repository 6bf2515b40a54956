use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, code) = torsion_sieve_cli::run(std::env::args_os());
    let mut sink: Box<dyn Write> = if code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = sink.write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
