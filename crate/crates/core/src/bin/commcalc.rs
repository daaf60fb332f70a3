fn main() {
    std::process::exit(commutator_calculus::cli::run(std::env::args_os()));
}
