fn main() {
    std::process::exit(qps::cli::main_with_args(std::env::args_os()));
}
