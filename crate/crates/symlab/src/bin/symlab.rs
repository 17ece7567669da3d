fn main() {
    std::process::exit(symlab::cli::run());
}
