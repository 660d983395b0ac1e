fn main() {
    std::process::exit(skeleta::cli::main_from_args(std::env::args_os()));
}
