//! Prints a seeded random universe document. Optional arguments:
//! seed, names, max-versions.
//!
//!     cargo run -p upsolve --example generate_universe -- 42 12 3

use upsolve::generator::{generate, GeneratorConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let mut config = GeneratorConfig::default();
    if let Some(seed) = args.next() {
        config.seed = seed.parse().expect("seed is an integer");
    }
    if let Some(names) = args.next() {
        config.names = names.parse().expect("names is an integer");
    }
    if let Some(max_versions) = args.next() {
        config.max_versions = max_versions.parse().expect("max-versions is an integer");
    }
    print!("{}", generate(&config).expect("parameters are valid"));
}
