use clap::Parser;

fn main() {
    let outcome = matgrow::cli::run(matgrow::cli::Cli::parse());
    print!("{}", outcome.stdout);
    std::process::exit(outcome.status);
}
