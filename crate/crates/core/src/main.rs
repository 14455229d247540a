fn main() {
    std::process::exit(eawg::cli::run(std::env::args_os()));
}
