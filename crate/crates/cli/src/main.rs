fn main() {
    std::process::exit(tpslab_cli::run(std::env::args_os()));
}
