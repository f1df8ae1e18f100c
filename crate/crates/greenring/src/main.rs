fn main() {
    std::process::exit(greenring::cli::run());
}
