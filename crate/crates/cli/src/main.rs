fn main() {
    std::process::exit(seip_cli::run(std::env::args_os()));
}
