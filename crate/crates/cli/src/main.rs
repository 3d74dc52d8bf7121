use std::process::exit;

use clap::Parser;

use su11_cli::args::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits 2 for usage problems and 0 for --help/--version;
            // this tool reserves 2 for domain failures, so remap usage to 1.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            exit(code);
        }
    };
    if let Err(err) = su11_cli::run(cli) {
        eprintln!("error: {err}");
        exit(err.exit_code());
    }
}
