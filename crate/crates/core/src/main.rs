fn main() {
    std::process::exit(kgraph::textio::cli::main_with_args(std::env::args_os()));
}
