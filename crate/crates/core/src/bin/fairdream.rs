fn main() {
    std::process::exit(fairdream::cli::main());
}
