//! Radial blocks in the plane and the multivariate chain rule.
//!
//! Computes partial derivatives `D^alpha f(x) / |alpha|!` of the radial
//! assembly at a few points, and checks the chain rule for `g(|x|^2)`
//! against a hand-expanded polynomial.
//!
//!     cargo run --release --example radial_derivatives

use carleman::assemblies::{AssemblyOptions, AssemblyPD, PointPD};
use carleman::multivar::{fdb_derivative, fdb_tuples, MultiIndex};
use carleman::numerics::{ComplexEnclosure, Enclosure};
use carleman::weights::WeightSequence;
use rug::Rational;

fn main() -> carleman::Result<()> {
    // g(s) = s^2 at x = (1, 2): g(|x|^2) = (x^2 + y^2)^2, d^2/dx dy = 8 x y = 16
    let outer: Vec<ComplexEnclosure> = [25, 10, 2]
        .iter()
        .map(|&v| ComplexEnclosure::real(Enclosure::from_int(v)))
        .collect();
    let x = [Enclosure::from_int(1), Enclosure::from_int(2)];
    let alpha = MultiIndex::new(vec![1, 1]);
    let d = fdb_derivative(&outer, &x, &alpha)?;
    println!("D^(1,1) (x^2+y^2)^2 at (1,2) = {} ({} chain-rule terms)", d.re.mid_string(4), fdb_tuples(&alpha).len());

    let m = WeightSequence::factorial();
    let asm = AssemblyPD::new(&m, 2, AssemblyOptions::default())?;
    println!("blocks start at n0 = {}", asm.start_index());
    let points = [(Rational::from((1, 10)), Rational::from((1, 5))), (Rational::from((-1, 2)), Rational::from((1, 4)))];
    let alphas = MultiIndex::all_up_to(2, 3);
    for (x1, x2) in points {
        let pt = PointPD::Real(vec![Enclosure::Exact(x1.clone()), Enclosure::Exact(x2.clone())]);
        let d = asm.derivatives(&pt, &alphas, 1e-12)?;
        println!("x = ({x1}, {x2})");
        for (a, (v, cert)) in alphas.iter().zip(&d) {
            println!("  alpha {a:<7} {:>22} {:>+22} i   tail <= {:.1e}", v.re.mid_string(12), v.im.mid_string(12), cert.tail_bound.to_f64());
        }
    }
    Ok(())
}
