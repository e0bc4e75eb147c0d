//! Tail-dependence tensors as moments of a random 0/1 vector.

use std::collections::BTreeMap;

use taildep::rational::{format, ratio};
use taildep::{tm, Subset};

fn main() -> taildep::Result<()> {
    let p = 3;
    let masses = BTreeMap::from([
        (Subset::from_indices([0, 1]), ratio(1, 2)),
        (Subset::from_indices([2]), ratio(1, 4)),
        (Subset::full(p), ratio(1, 4)),
    ]);
    let pmf = tm::BernoulliPmf::new(p, masses)?;
    let bridge = tm::model_from_bernoulli(&pmf)?;
    let model = bridge.model;

    let c = model.total_mass();
    let tensor = tm::tensor_from_model(&model, 2, &c)?;
    println!("order-2 tensor at c = {}", format(tensor.scale()));
    for i in 0..p {
        let row: Vec<String> = (0..p)
            .map(|j| tensor.get(&[i, j]).map(|v| format(&v)))
            .collect::<taildep::Result<_>>()?;
        println!("  {}", row.join("  "));
    }
    let l = Subset::from_indices([0, 2]);
    println!(
        "E[xi1 xi3] = {}, tensor entry = {}",
        format(&pmf.product_moment(l)),
        format(&tensor.get(&[0, 2])?)
    );

    match tm::tensor_from_model(&model, 2, &ratio(1, 2)) {
        Ok(_) => println!("unexpected: scale below theta([p]) accepted"),
        Err(e) => println!("c = 1/2 rejected: {e}"),
    }
    Ok(())
}
