fn main() {
    std::process::exit(zforge::cli::run());
}
