fn main() {
    auter::cli::main_entry();
}
