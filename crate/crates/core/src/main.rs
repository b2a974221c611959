fn main() {
    hyperphase::cli::main();
}
