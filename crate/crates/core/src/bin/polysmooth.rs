fn main() {
    std::process::exit(polysmooth::cli::run(std::env::args()));
}
