fn main() {
    std::process::exit(reltime::cli::run());
}
