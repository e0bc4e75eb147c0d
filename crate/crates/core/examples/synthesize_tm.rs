//! Builds a model from its extremal coefficients and evaluates its law.

use taildep::coeffs::{Kind, SubsetFn};
use taildep::rational::{format, int};
use taildep::{tm, Subset};

fn main() -> taildep::Result<()> {
    let p = 3;
    // Weight 1 on {1,2} and weight 1 on {3}.
    let theta = SubsetFn::from_values(
        p,
        Kind::Theta,
        [1, 1, 1, 1, 2, 2, 2].map(int).to_vec(),
    )?;
    let model = tm::synthesize(&theta)?;
    println!("atoms:");
    for (s, w) in model.atoms() {
        println!("  {s}: {}", format(&w));
    }
    println!("marginals: {:?}", model.marginals().iter().map(format).collect::<Vec<_>>());

    let x = [int(1), int(2), int(4)];
    let exponent = tm::cdf_exponent(&model, &x)?;
    println!("-log F(1, 2, 4) = {}", format(&exponent));
    println!("F(1, 2, 4) = {:.6}", tm::cdf(&model, &[1.0, 2.0, 4.0])?);

    for u in [10.0, 100.0, 1000.0] {
        let joint = tm::exact_joint_exceedance(&model, Subset::from_indices([0, 1]), u)?;
        println!("u = {u:>6}: u P[X1 > u, X2 > u] = {:.5}", u * joint);
    }
    println!("lambda({{1,2}}) = {}", format(model.lambda().get(Subset::from_indices([0, 1]))));
    Ok(())
}
