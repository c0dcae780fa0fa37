use clap::Parser;

fn main() {
    let cli = qprlab::cli::Cli::parse();
    std::process::exit(qprlab::cli::run(cli));
}
