//! Checks that normalized block maxima keep the law of the model.

use taildep::rational::int;
use taildep::simulate;
use taildep::{Subset, TmModel};

fn main() -> taildep::Result<()> {
    let model = TmModel::from_entries(
        2,
        [
            (Subset::from_indices([0]), int(1)),
            (Subset::from_indices([0, 1]), int(2)),
        ],
    )?;
    let grid = vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.0, 10.0]];
    let report = simulate::max_stability_check(&model, 5, &grid, 50_000, 3)?;
    for row in &report.rows {
        println!(
            "x = {:?}: empirical {:.4}, exact {:.4}, se {:.4}{}",
            row.point,
            row.empirical,
            row.exact,
            row.std_error,
            if row.flagged { "  FLAG" } else { "" }
        );
    }
    println!("{} of {} points flagged", report.flags(), report.rows.len());
    Ok(())
}
