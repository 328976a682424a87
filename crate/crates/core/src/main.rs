fn main() {
    std::process::exit(babbage_core::cli::run(std::env::args_os()));
}
