//! Decides spectral-distance realizability; K_{2,3} is the classic negative.

use taildep::rational::int;
use taildep::realize::{self, Instance};
use taildep::{SdrScale, SemiMetric};

fn report(name: &str, d: &SemiMetric) -> taildep::Result<()> {
    let scale = SdrScale::Auto;
    let outcome = realize::decide_sdr(d, &scale)?;
    realize::verify_certificate(&outcome, Instance::Sdr { d, scale: &scale })?;
    if let Some(model) = outcome.witness() {
        println!("{name}: realizable, witness with {} atoms", model.atoms().len());
    } else {
        let y = outcome.farkas().unwrap_or_default();
        println!("{name}: not realizable, certificate of length {}", y.len());
    }
    Ok(())
}

fn main() -> taildep::Result<()> {
    report("K23 path metric", &realize::k23_metric())?;

    // Shortest-path metric of a 4-cycle embeds in l1.
    let c4 = SemiMetric::from_upper(4, &[1, 2, 1, 1, 2, 1].map(int))?;
    report("4-cycle", &c4)?;

    let via_td = realize::decide_sdr_via_tdr(&c4)?;
    println!("via a bivariate matrix: feasible = {}", via_td.is_feasible());
    Ok(())
}
