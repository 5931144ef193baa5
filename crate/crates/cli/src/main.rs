use clap::Parser;

fn main() {
    let cli = cxdim_cli::Cli::parse();
    std::process::exit(cxdim_cli::main_with(&cli));
}
