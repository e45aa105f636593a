use clap::Parser;

use sttilt_cli::{error_json, run, JobConfig};

fn main() {
    let cfg = JobConfig::parse();
    match run(&cfg) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(if out.verdict { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            std::process::exit(2);
        }
    }
}
