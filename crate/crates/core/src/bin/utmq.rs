fn main() {
    std::process::exit(utmq::cli::main_from_args(std::env::args_os()));
}
