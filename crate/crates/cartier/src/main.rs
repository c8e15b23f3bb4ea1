fn main() {
    std::process::exit(cartier::cli::main_with_args(std::env::args_os()));
}
