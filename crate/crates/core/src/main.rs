fn main() {
    std::process::exit(scholnet::cli::main_with_args(std::env::args_os()));
}
