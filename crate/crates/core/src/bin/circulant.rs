use std::io::Write;

fn main() {
    let (out, err, code) = circulant_core::cli::run_args(std::env::args_os());
    if !out.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes());
        let _ = stdout.flush();
    }
    if !err.is_empty() {
        let _ = std::io::stderr().write_all(err.as_bytes());
    }
    std::process::exit(code);
}
