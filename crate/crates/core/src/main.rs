fn main() {
    std::process::exit(bidiophantine::cli::run(std::env::args_os()));
}
