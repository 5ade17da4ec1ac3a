fn main() {
    std::process::exit(liebasis::cli::run(std::env::args_os()));
}
