fn main() {
    std::process::exit(qtmac::run_cli());
}
