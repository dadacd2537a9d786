use std::process::ExitCode;

use clap::Parser;
use holofrft_cli::{exit_code_for, run, Cli};

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("HOLOFRFT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("HOLOFRFT_THREADS must be a count, got {v:?}"))?;
    // 0 leaves the choice to rayon
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
