fn main() {
    std::process::exit(treelcl::cli::run());
}
