fn main() {
    std::process::exit(homcount::cli::run(std::env::args_os()));
}
