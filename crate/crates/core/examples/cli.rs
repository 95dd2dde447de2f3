//! Drives the command line in-process on the shipped fixtures.
//!
//! ```text
//! cargo run --example cli -- eval fixtures/f_ends.nft abaa
//! ```

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        let f = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/f_even.nft");
        args = vec!["decide-fo".into(), f.into()];
    }
    let code = rational_functions::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit {code}");
}
