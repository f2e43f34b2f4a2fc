fn main() {
    std::process::exit(level_lab_cli::run(std::env::args()));
}
