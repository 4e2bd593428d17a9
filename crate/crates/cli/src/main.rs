use clap::error::ErrorKind;
use clap::Parser;
use turing_cli::{exit, Failure, RunConfig};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            std::process::exit(exit::OK);
        }
        Err(e) => {
            let f = Failure::validation(e.render().to_string().trim_end());
            eprintln!("{}", f.to_json());
            std::process::exit(f.exit_code);
        }
    };
    std::process::exit(turing_cli::run(&config));
}
