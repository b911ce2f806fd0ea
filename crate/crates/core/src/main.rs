fn main() {
    std::process::exit(tomostar::cli::run(std::env::args_os()));
}
