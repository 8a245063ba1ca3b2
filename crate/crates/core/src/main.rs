fn main() {
    std::process::exit(titchweyl::cli::run(std::env::args_os()));
}
