fn main() {
    let code = graph_bootstrap::cli::run(std::env::args_os());
    std::process::exit(code);
}
