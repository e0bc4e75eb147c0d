//! Samples a model and compares tail estimates with exact values.

use taildep::rational::{int, to_f64};
use taildep::simulate::{self, Target};
use taildep::{tm, Subset, TmModel};

fn main() -> taildep::Result<()> {
    let model = TmModel::from_entries(
        3,
        [
            (Subset::from_indices([0]), int(1)),
            (Subset::from_indices([0, 1]), int(1)),
            (Subset::from_indices([1, 2]), int(1)),
        ],
    )?;
    let n = 200_000;
    let u = 50.0;
    let samples = simulate::sample(&model, n, 7)?;
    let targets = [
        Target::Lambda(Subset::from_indices([0, 1])),
        Target::Lambda(Subset::from_indices([1, 2])),
        Target::Theta(Subset::full(3)),
    ];
    let report = simulate::estimate(&model, &samples, &targets, u)?;
    println!("{:<16} {:>9} {:>9} {:>9} {:>6}", "target", "estimate", "exact", "limit", "z");
    for row in &report.rows {
        println!(
            "{:<16} {:>9.4} {:>9.4} {:>9.4} {:>6.2}",
            row.target.to_string(),
            row.empirical,
            row.exact_finite,
            row.asymptotic,
            row.z_score()
        );
    }

    let hist = simulate::exceedance_set_histogram(&samples, u)?;
    let limit = tm::exceedance_set_dist(&model)?;
    let exact = simulate::finite_threshold_pmf(&model, u)?;
    println!(
        "exceedance sets: TV to limit {:.4}, to exact law at u {:.4}",
        hist.tv_distance(&limit),
        hist.tv_distance_to(&exact)
    );
    for i in 0..3 {
        let scale = to_f64(&model.marginals()[i]);
        println!("KS, component {}: {:.4}", i + 1, simulate::ks_frechet(&samples, i, scale));
    }
    Ok(())
}
