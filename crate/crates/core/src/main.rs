fn main() {
    std::process::exit(qharm::cli::run(std::env::args_os()));
}
