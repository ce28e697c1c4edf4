fn main() {
    std::process::exit(rootlocus_cli::run(std::env::args_os()));
}
