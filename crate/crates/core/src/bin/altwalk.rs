fn main() {
    std::process::exit(altwalk::cli_io::main_with_args(std::env::args_os()));
}
