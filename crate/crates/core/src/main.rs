fn main() {
    std::process::exit(binmach::cli::main());
}
