//! Shifted blocks on the line: constants, witnesses and divergence.
//!
//! Chooses the constants `c_n`, evaluates the assembled function at the
//! witness points `a_n` and shows `|c_n(a_n)| >= n^n M_n`, while the
//! coefficients at the origin stay below `2 e^j M_j`.
//!
//!     cargo run --release --example line_divergence

use carleman::assemblies::{Assembly1D, AssemblyOptions, AssemblyPoint};
use carleman::numerics::Enclosure;
use carleman::weights::WeightSequence;

fn main() -> carleman::Result<()> {
    let m = WeightSequence::factorial();
    let asm = Assembly1D::new(&m, AssemblyOptions::default())?;
    let tol = 1e-12;

    println!("{:>2}  {:>10}  {:>14}  {:>14}  {:>14}", "n", "a_n", "c_n", "log2 |c_n(a_n)|", "log2 n^n M_n");
    for n in 1..=6 {
        let choice = asm.constant(n)?;
        let a = asm.witness(n)?;
        let (v, _) = asm.coeffs(&AssemblyPoint::Witness(n), n, tol)?.pop().unwrap();
        let target = &Enclosure::from_int((n as i64).pow(n as u32)) * &m.weight(n)?;
        println!(
            "{n:>2}  {:>10}  {:>14.6e}  {:>14.3}  {:>14.3}",
            a.mid_string(6),
            choice.c.to_f64(),
            v.abs_lower(256).to_f64().log2(),
            target.to_f64().log2()
        );
    }

    let at0 = asm.coeffs(&AssemblyPoint::Real(Enclosure::zero()), 12, tol)?;
    for (j, (c, _)) in at0.iter().enumerate().step_by(3) {
        let bound = 2.0 * (j as f64).exp() * m.weight(j)?.to_f64();
        println!("|c_{j}(0)| <= {:.4e}  vs  2 e^j M_j = {bound:.4e}", c.abs_upper(256).to_f64());
    }
    Ok(())
}
