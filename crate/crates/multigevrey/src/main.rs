fn main() {
    std::process::exit(multigevrey::cli::run());
}
