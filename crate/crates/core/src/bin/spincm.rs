fn main() {
    std::process::exit(spincm::cli::run_command(std::env::args_os()));
}
