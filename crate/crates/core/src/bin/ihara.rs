fn main() {
    std::process::exit(ihara_zeta::cli::run(std::env::args_os()));
}
