//! Composition of the radial assembly with polynomial curves.
//!
//! Builds the Taylor jet of `f(gamma(t))` to order 20 and classifies the
//! growth of `rho_j = (|c_j| / M_j)^(1/j)`.
//!
//!     cargo run --release --example curve_probe

use carleman::assemblies::{AssemblyOptions, AssemblyPD};
use carleman::multivar::{compose_curve, PolyCurve};
use carleman::numerics::ComplexEnclosure;
use carleman::verify::growth_classifier;
use carleman::weights::WeightSequence;
use rug::Rational;

fn main() -> carleman::Result<()> {
    let m = WeightSequence::factorial();
    let asm = AssemblyPD::new(&m, 2, AssemblyOptions::default())?;
    let curves = [
        (r#"{"components": [["0", "1"], ["0", "0", "1"]]}"#, Rational::from((1, 10))),
        (r#"{"components": [["0"], ["0", "1"]]}"#, Rational::from(0)),
        (r#"{"components": [["1/5", "1"], ["1/5", "0", "-1"]]}"#, Rational::from((1, 20))),
    ];
    for (json, t0) in curves {
        let gamma = PolyCurve::from_json(json)?;
        let jet = compose_curve(&asm, &gamma, &t0, 20, 1e-12)?;
        let seq: Vec<(usize, ComplexEnclosure)> = (1..=20).map(|j| (j, jet.jet.coeffs[j].clone())).collect();
        let g = growth_classifier(&seq, &m, 256)?;
        println!(
            "{json} at t0 = {t0}: {:?}, sup rho {:.4}, slope {:+.2e}, {} blocks",
            g.trend, g.sup_rho, g.slope_hi, jet.blocks_used
        );
    }
    Ok(())
}
