fn main() {
    std::process::exit(bigcycle_cli::run(std::env::args_os()));
}
