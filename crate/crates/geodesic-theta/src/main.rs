fn main() {
    std::process::exit(geodesic_theta::cli::run());
}
