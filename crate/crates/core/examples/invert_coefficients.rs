//! Moves one set of weights between the three coefficient families and back.

use taildep::coeffs::{self, Kind, SubsetFn};
use taildep::rational::{format, ratio};
use taildep::Subset;

fn main() -> taildep::Result<()> {
    let p = 3;
    let beta = SubsetFn::from_entries(
        p,
        Kind::Beta,
        [
            (Subset::from_indices([0]), ratio(1, 2)),
            (Subset::from_indices([0, 1]), ratio(1, 3)),
            (Subset::from_indices([1, 2]), ratio(1, 4)),
            (Subset::full(p), ratio(1, 6)),
        ],
    )?;
    let lambda = coeffs::lambda_from_beta(&beta)?;
    let theta = coeffs::theta_from_beta(&beta)?;

    println!("{:<10} {:>8} {:>8} {:>8}", "set", "beta", "lambda", "theta");
    for (s, b) in beta.iter() {
        println!(
            "{:<10} {:>8} {:>8} {:>8}",
            s.to_string(),
            format(b),
            format(lambda.get(s)),
            format(theta.get(s))
        );
    }

    assert_eq!(coeffs::beta_from_lambda(&lambda)?, beta);
    assert_eq!(coeffs::beta_from_theta(&theta)?, beta);
    assert_eq!(coeffs::lambda_from_theta(&theta)?, lambda);
    println!("round trips are exact");

    // An arbitrary lambda need not come from nonnegative weights.
    let mut bad = lambda.clone();
    bad.set(Subset::full(p), ratio(1, 2))?;
    let back = coeffs::beta_from_lambda(&bad)?;
    for atom in back.negative_entries() {
        println!("negative weight {} on {}", format(&atom.value), atom.set);
    }
    Ok(())
}
