fn main() {
    std::process::exit(isac_channel::cli::main_with(std::env::args_os()));
}
