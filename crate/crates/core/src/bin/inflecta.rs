fn main() {
    std::process::exit(inflecta::cli::main_from_env());
}
