//! Detects a line metric and builds the unique model it admits.

use taildep::rational::{format, int};
use taildep::spectral::{self, LineDetection};
use taildep::{SemiMetric, Subset};

fn main() -> taildep::Result<()> {
    // Points 2, 0, 3, 1 on a line at positions 0, 1, 3, 6.
    let pos: [i64; 4] = [1, 6, 0, 3];
    let d: Vec<Vec<_>> = (0..4)
        .map(|i| (0..4).map(|j| int((pos[i] - pos[j]).abs())).collect())
        .collect();
    let d = SemiMetric::new(d)?;

    let cert = match spectral::detect_line_metric(&d) {
        LineDetection::Line(cert) => cert,
        LineDetection::NotLine { pair } => {
            println!("not a line: pair {pair:?}");
            return Ok(());
        }
    };
    println!("order {:?}, gaps {:?}", cert.perm, cert.weights.iter().map(format).collect::<Vec<_>>());

    let marginals = vec![int(5); 4];
    let line = spectral::line_tm_model(&cert, &marginals)?;
    for (s, w) in line.model.atoms() {
        println!("  beta({s}) = {}", format(&w));
    }
    let j = Subset::from_indices([0, 1, 3]);
    println!("lambda({j}) = {}", format(&spectral::higher_order_from_line(&line, j)?));

    let report = spectral::rigidity_probe(&d, 10)?;
    println!(
        "rigidity probe over {} objectives: rigid-consistent = {}",
        report.objectives,
        report.rigid_consistent()
    );
    Ok(())
}
