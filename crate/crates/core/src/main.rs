fn main() {
    std::process::exit(subwords::cli::run(std::env::args_os()));
}
