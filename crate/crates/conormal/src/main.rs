fn main() {
    std::process::exit(conormal::cli::run());
}
