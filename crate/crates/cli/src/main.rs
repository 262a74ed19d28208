use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let res = simplex_paths_cli::app::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
