use std::io::Write;
use std::process::ExitCode;

fn configure_threads() {
    let Ok(raw) = std::env::var("TRUNC_BOSE_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(k) if k > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
        _ => eprintln!("ignoring TRUNC_BOSE_THREADS={raw:?}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let outcome = trunc_bose_cli::run_args(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
