//! The single-pole building block and its three bounds.
//!
//! Checks, in certified arithmetic, `|c_j(x)| <= M_j`, the pole-distance
//! bound `|c_j(x)| <= |x|^-(j+1)` away from the origin, and the lower bound
//! `|c_j(0)| >= 2^-j M_j`.
//!
//!     cargo run --release --example block_bounds

use carleman::verify::{run_suite, Suite, SuiteConfig};
use carleman::weights::WeightSequence;

fn main() -> carleman::Result<()> {
    let mut cfg = SuiteConfig::new(WeightSequence::factorial());
    cfg.jmax = Some(30);
    let outcome = run_suite(Suite::Block, &cfg)?;
    for report in &outcome.reports {
        println!("{}", report.title);
        for p in &report.points {
            let cells: Vec<_> = report.cells.iter().filter(|c| &c.point == p).collect();
            let worst = cells.iter().map(|c| c.margin_log2).fold(f64::INFINITY, f64::min);
            let passed = cells.iter().filter(|c| c.passed()).count();
            println!("  x = {p:<6} {passed:>2}/{} orders certified, smallest margin {worst:.3} bits", cells.len());
        }
    }
    println!("overall: {}", outcome.status().as_str());
    Ok(())
}
