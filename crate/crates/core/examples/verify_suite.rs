//! Runs the full cross-route verification report, as `segre verify` does.

use segre::verify::{run, VerifyConfig};

fn main() {
    let config = VerifyConfig {
        max_k: 5,
        max_order: 6,
        ..VerifyConfig::default()
    };
    let report = run(&config);
    print!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
