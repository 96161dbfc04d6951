fn main() {
    std::process::exit(ndh::cli::run(std::env::args_os()));
}
