fn main() {
    std::process::exit(ym_exact::cli::run(std::env::args_os()));
}
