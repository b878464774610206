fn main() {
    std::process::exit(dpp_cli::run_cli(std::env::args_os()));
}
