fn main() {
    std::process::exit(factored_bandits::harness::cli::cli_main(std::env::args_os()));
}
