fn main() {
    std::process::exit(saw_forge_cli::run(std::env::args_os()));
}
