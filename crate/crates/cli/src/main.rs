use std::io::Write;
use std::process::ExitCode;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("DMXYZ_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("DMXYZ_THREADS must be a nonnegative integer, got `{raw}`"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(dmxyz_cli::EXIT_USAGE);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    let code = dmxyz_cli::run(std::env::args_os().collect(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}
