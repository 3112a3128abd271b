fn main() {
    std::process::exit(wklrw::cli::run(std::env::args_os()));
}
