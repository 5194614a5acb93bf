fn main() {
    std::process::exit(poincare_core::cli::run());
}
