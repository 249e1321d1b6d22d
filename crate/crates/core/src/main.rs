fn main() {
    std::process::exit(ladderlab::cli::main_with_args(std::env::args_os()));
}
