fn main() {
    std::process::exit(sqsieve::cli::run(std::env::args_os()));
}
