use clap::Parser;
use kloss3::cli::{run, JobConfig};

fn main() {
    // Usage errors exit 2 via clap's error handling.
    let config = JobConfig::parse();
    match run(&config) {
        Ok(text) => {
            print!("{text}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
