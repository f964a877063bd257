fn main() {
    std::process::exit(laminations::cli::main_with_args(std::env::args_os()));
}
