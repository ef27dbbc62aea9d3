fn main() {
    std::process::exit(fence_patrol::cli::run());
}
