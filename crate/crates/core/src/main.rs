fn main() {
    std::process::exit(sumrule::cli::main_with_args(std::env::args_os()));
}
