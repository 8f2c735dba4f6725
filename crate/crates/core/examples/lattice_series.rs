//! The pole series over the dyadic lattice.
//!
//! Evaluates normalized Taylor coefficients `f^(j)(x)/j!` with their
//! truncation certificates, shows that exact rational evaluation at a
//! dyadic point sits inside the ball result, and reports which of the real
//! and imaginary parts dominates.
//!
//!     cargo run --release --example lattice_series

use carleman::numerics::Enclosure;
use carleman::poleseries::{build_thm1, one_part_dominates, EvalOptions, ExactPolicy, Truncation};
use carleman::weights::WeightSequence;
use rug::Rational;

fn main() -> carleman::Result<()> {
    let m = WeightSequence::factorial();
    let series = build_thm1(&m);
    let x = Enclosure::Exact(Rational::from((1, 2)));

    let opts = EvalOptions::default().with_truncation(Truncation::Tol(1e-20));
    let coeffs = series.taylor_coeffs(&x, 16, &opts)?;
    println!("{:>3}  {:>26}  {:>26}  {:>10}  {:>4}  dominant", "j", "Re c_j / M_j", "Im c_j / M_j", "tail", "K");
    for (j, (c, cert)) in coeffs.iter().enumerate() {
        let mj = m.weight(j)?;
        let dominant = match one_part_dominates(c, 256) {
            Some(true) => "one part",
            Some(false) => "neither",
            None => "undecided",
        };
        println!(
            "{j:>3}  {:>26}  {:>26}  {:>10.3e}  {:>4}  {dominant}",
            (&c.re / &mj).mid_string(15),
            (&c.im / &mj).mid_string(15),
            cert.tail_bound.to_f64(),
            cert.groups_used
        );
    }

    // the same partial sum, exactly and in balls
    let exact = series.partial_sums(&x, 8, 3, true, 256)?;
    let ball = series.partial_sums(&x, 8, 3, false, 256)?;
    let contained = exact.iter().zip(&ball).all(|(e, b)| e.is_exact() && b.contains(e));
    println!("exact partial sums (K = 3, j <= 8) inside their balls: {contained}");

    let never = EvalOptions::default().with_exact(ExactPolicy::Never).with_truncation(Truncation::Groups(40));
    let (c, cert) = series.taylor_coeffs(&Enclosure::Exact(Rational::from((1, 3))), 5, &never)?.pop().unwrap();
    println!("c_5(1/3) with 40 groups: ({}, {}), tail <= {:.3e}", c.re.mid_string(12), c.im.mid_string(12), cert.tail_bound.to_f64());
    Ok(())
}
