fn main() {
    std::process::exit(spl::cli::main_impl());
}
