fn main() {
    std::process::exit(upsolve::cli::main());
}
