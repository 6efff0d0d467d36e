//! Runs the built-in self-check suites, as `expbouquet verify` does.
use expbouquet::verify::{run_suite, seed_from_env, Suite};

fn main() {
    let seed = seed_from_env();
    for suite in Suite::ALL {
        if suite == Suite::Figures && std::env::args().all(|a| a != "--figures") {
            continue;
        }
        for check in run_suite(suite, seed).unwrap() {
            println!("{}/{check}", suite.name());
        }
    }
}
