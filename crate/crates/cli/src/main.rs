use clap::Parser;
use pseudocontact_cli::{execute, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are validation failures; 2 is reserved for hypothesis failures
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    std::process::exit(execute(&cli.command));
}
