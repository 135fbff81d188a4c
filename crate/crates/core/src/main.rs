fn main() {
    std::process::exit(copnum::cli::run(std::env::args_os()));
}
