//! Decides whether a bivariate matrix comes from some model.

use taildep::rational::ratio;
use taildep::realize::{self, Instance};
use taildep::{FeasibilityOutcome, TdMatrix};

fn matrix(off: (i64, i64)) -> taildep::Result<TdMatrix> {
    let v = ratio(off.0, off.1);
    let mut rows = vec![vec![v; 3]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = ratio(1, 1);
    }
    TdMatrix::new(rows)
}

fn main() -> taildep::Result<()> {
    for off in [(1, 2), (1, 4), (0, 1)] {
        let td = matrix(off)?;
        let outcome = realize::decide_tdr(&td)?;
        realize::verify_certificate(&outcome, Instance::Td(&td))?;
        match &outcome {
            FeasibilityOutcome::Feasible { witness, .. } => {
                println!("off-diagonal {}/{}: realizable by {} atoms", off.0, off.1, witness.atoms().len())
            }
            FeasibilityOutcome::Infeasible { farkas } => {
                println!("off-diagonal {}/{}: infeasible, certificate {:?}", off.0, off.1, farkas)
            }
        }
    }
    Ok(())
}
