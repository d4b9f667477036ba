fn main() {
    std::process::exit(invariant_series::cli::main_entry());
}
