fn main() {
    let code = rational_functions::cli::run(std::env::args().skip(1), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
