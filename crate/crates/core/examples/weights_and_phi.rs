//! Weight sequences and their associated function.
//!
//! Prints the first terms of a few sequences, the dyadic sequence `b_n`,
//! and checks `M_n phi(m_n) = m_n^(n+1)` exactly for `M_n = n!`.
//!
//!     cargo run --example weights_and_phi

use carleman::numerics::Enclosure;
use carleman::weights::{phi, phi_identity_check, WeightSequence, DEFAULT_SCAN_LIMIT};

fn main() -> carleman::Result<()> {
    for spec in ["gevrey:1", "gevrey:3/2", "qfamily"] {
        let m = WeightSequence::parse(spec)?;
        let ratios: Vec<String> = (0..6).map(|n| m.ratio(n).map(|r| r.mid_string(6))).collect::<Result<_, _>>()?;
        println!("{spec:<11} m_0..m_5 = [{}]", ratios.join(", "));
        println!("{:<11} b_1..b_10 = {:?}", "", m.b_prefix(10)?);
    }

    let m = WeightSequence::factorial();
    for alpha in [1, 2, 5, 10] {
        let r = phi(&m, &Enclosure::from_int(alpha), DEFAULT_SCAN_LIMIT)?;
        println!(
            "phi({alpha:>2}) = {:<22} attained at l = {}{}",
            r.value.mid_string(12),
            r.argmax,
            if r.is_tie { " (tie)" } else { "" }
        );
    }

    let exact = (1..=50).map(|n| phi_identity_check(&m, n)).collect::<Result<Vec<_>, _>>()?;
    println!(
        "M_n phi(m_n) = m_n^(n+1) for n <= 50: {}",
        if exact.iter().all(|r| r.ok && r.exact) { "exact" } else { "FAILED" }
    );
    Ok(())
}
