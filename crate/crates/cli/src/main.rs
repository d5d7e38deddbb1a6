fn main() {
    std::process::exit(umbralqm::run());
}
