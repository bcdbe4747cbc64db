use clap::Parser;
use ffsieve::cli::{dispatch, RunConfig, EXIT_CONFIG, EXIT_OK};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK });
        }
    };
    std::process::exit(dispatch(&config).emit(&config));
}
