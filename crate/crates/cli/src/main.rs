fn main() {
    std::process::exit(constwidth_cli::run(std::env::args_os()));
}
