use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = gcyclic::cli::run_command(std::env::args().skip(1));
    let stream: &mut dyn Write = if stream_is_stdout(result.exit_code) {
        &mut std::io::stdout()
    } else {
        &mut std::io::stderr()
    };
    let text = if stream_is_stdout(result.exit_code) { result.stdout() } else { &result.rendered };
    if !text.is_empty() {
        let _ = stream.write_all(text.as_bytes());
    }
    ExitCode::from(result.exit_code as u8)
}

fn stream_is_stdout(code: i32) -> bool {
    code == 0 || code == 1
}
