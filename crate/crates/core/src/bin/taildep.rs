fn main() {
    std::process::exit(taildep::cli::run(std::env::args_os()));
}
