fn main() {
    std::process::exit(scalewave::harness::cli::run(std::env::args_os()));
}
