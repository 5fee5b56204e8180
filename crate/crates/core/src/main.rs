fn main() {
    std::process::exit(hypermono::cli::run(std::env::args_os()));
}
