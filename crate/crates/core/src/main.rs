fn main() {
    std::process::exit(cralg::cli::main_with_args(std::env::args_os()));
}
