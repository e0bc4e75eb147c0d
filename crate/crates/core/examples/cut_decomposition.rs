//! Spectral distance of a model as a nonnegative combination of cuts.

use taildep::rational::{format, int};
use taildep::{spectral, Subset, TmModel};

fn main() -> taildep::Result<()> {
    let model = TmModel::from_entries(
        4,
        [
            (Subset::from_indices([0, 1]), int(2)),
            (Subset::from_indices([1, 2, 3]), int(1)),
            (Subset::from_indices([3]), int(1)),
        ],
    )?;
    let d = model.spectral_distance();
    println!("spectral distance:");
    for row in d.rows() {
        println!("  {}", row.iter().map(format).collect::<Vec<_>>().join(" "));
    }
    let report = d.validate();
    println!("validation: {report:?}");

    let cuts = spectral::cut_decomposition(&model);
    for (s, w) in cuts.cuts() {
        println!("  cut {s}: {}", format(w));
    }
    assert_eq!(cuts.reconstruct(), d);

    // Any cut decomposition also yields an equal-margin model.
    let c = int(4);
    let equal = cuts.equal_margin_model(&c)?;
    assert_eq!(equal.spectral_distance(), d);
    println!("equal-margin model at c = 4 has marginals {:?}", equal.marginals().iter().map(format).collect::<Vec<_>>());
    Ok(())
}
