fn main() {
    std::process::exit(gtcode::cli::main_with_args(std::env::args_os()));
}
