//! The limiting law of which components exceed a high threshold.

use taildep::rational::{format, int};
use taildep::{tm, Subset, TmModel};

fn main() -> taildep::Result<()> {
    let model = TmModel::from_entries(
        3,
        [
            (Subset::from_indices([0]), int(2)),
            (Subset::from_indices([0, 1]), int(1)),
            (Subset::from_indices([0, 1, 2]), int(1)),
        ],
    )?;
    let dist = tm::exceedance_set_dist(&model)?;
    println!("normalizer theta([p]) = {}", format(dist.normalizer()));
    for (j, q) in dist.pmf() {
        println!("  P[set = {j}] = {}", format(q));
    }
    let k = Subset::from_indices([1, 2]);
    println!("P[set meets {k}] = {}", format(&dist.hitting(k)));
    println!("P[set contains {k}] = {}", format(&dist.inclusion(k)));

    let (theta_n, lambda_n) = tm::normalized_functionals(&model)?;
    println!(
        "normalized theta({k}) = {}, lambda({k}) = {}",
        format(theta_n.get(k)),
        format(lambda_n.get(k))
    );
    Ok(())
}
