use clap::Parser;

fn main() {
    let cli = comrade_cli::Cli::parse();
    if let Err(e) = comrade_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
