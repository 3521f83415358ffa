fn main() {
    std::process::exit(nilcone::cli::main_from_env());
}
