fn main() {
    std::process::exit(divapprox::cli::run(std::env::args_os()));
}
