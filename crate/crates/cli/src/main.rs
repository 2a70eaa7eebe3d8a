fn main() {
    std::process::exit(hypflute_cli::main_with_args(std::env::args_os()));
}
