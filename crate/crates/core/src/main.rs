fn main() {
    std::process::exit(yagi::cli::run(std::env::args_os()));
}
