fn main() {
    std::process::exit(sl2q_cli::run(std::env::args_os()));
}
