use clap::Parser;
use wavedof_cli::commands::{run, Cli};
use wavedof_cli::exit_code;

fn main() {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("WAVEDOF_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // A second initialization only fails if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
