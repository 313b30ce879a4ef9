fn main() {
    std::process::exit(tailalign::cli::main_entry());
}
