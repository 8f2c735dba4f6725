//! Run verification suites and write their cell reports.
//!
//! Writes one CSV per suite into a temporary directory and prints the
//! summary lines.
//!
//!     cargo run --release --example verify_report

use carleman::verify::{reports_to_csv, run_suite, Suite, SuiteConfig};
use carleman::weights::WeightSequence;

fn main() -> carleman::Result<()> {
    let dir = std::env::temp_dir().join("carleman-report");
    std::fs::create_dir_all(&dir)?;
    let mut cfg = SuiteConfig::new(WeightSequence::factorial());
    cfg.jmax = Some(20);
    for suite in [Suite::Block, Suite::Sdistance, Suite::Cj, Suite::Divergence] {
        let outcome = run_suite(suite, &cfg)?;
        let path = dir.join(format!("{}.csv", suite.name()));
        std::fs::write(&path, reports_to_csv(&outcome.reports)?)?;
        for c in &outcome.checks {
            println!("{:<11} {:<15} {}: {}", suite.name(), c.status.as_str(), c.name, c.detail);
        }
    }
    println!("reports in {}", dir.display());
    Ok(())
}
