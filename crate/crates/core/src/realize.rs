//! Exact deciders for tail-dependence-matrix realizability (TDR) and
//! spectral-distance realizability (SDR).
//!
//! Both reduce to feasibility of `A x = b, x >= 0` over the `beta` cone and
//! are solved by the exact simplex in [`crate::lp`]. Every answer carries a
//! certificate that [`verify_certificate`] rechecks from first principles:
//! a nonnegative witness model, or a Farkas vector `y` with `yᵀA_J <= 0` for
//! every column `J` and `yᵀb > 0`.
//!
//! Row orders, which the Farkas vectors follow:
//! * TD systems: pairs `(i, j)` with `i <= j`, lexicographic.
//! * Cut-cone systems: pairs `(i, j)` with `i < j`, lexicographic.

use num_traits::{One, Signed, Zero};

use crate::coeffs::{self, TdMatrix};
use crate::error::{Error, Result};
use crate::lp::{self, Feasibility, LinearSystem};
use crate::rational::{self, Rational};
use crate::spectral::{CutDecomposition, SemiMetric};
use crate::subset::{self, nonempty_subsets, Subset};
use crate::tm::{self, TmModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    Feasible {
        witness: TmModel,
        /// Cut weights found by the SDR decider.
        cuts: Option<CutDecomposition>,
        /// Common marginal scale of an SDR witness.
        scale: Option<Rational>,
    },
    Infeasible {
        farkas: Vec<Rational>,
    },
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&TmModel> {
        match self {
            FeasibilityOutcome::Feasible { witness, .. } => Some(witness),
            FeasibilityOutcome::Infeasible { .. } => None,
        }
    }

    pub fn farkas(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityOutcome::Infeasible { farkas } => Some(farkas),
            FeasibilityOutcome::Feasible { .. } => None,
        }
    }
}

/// Marginal scale an SDR witness is materialized at.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SdrScale {
    /// `c = (2^p - 2) max d`, always sufficient when `d` is realizable.
    #[default]
    Auto,
    Fixed(Rational),
}

/// A problem a certificate is checked against.
#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    /// Bivariate matrix whose diagonal gives the marginal scales.
    Td(&'a TdMatrix),
    Sdr {
        d: &'a SemiMetric,
        scale: &'a SdrScale,
    },
}

/// Labels of the TD-system rows, 0-based.
pub fn td_rows(p: usize) -> Vec<(usize, usize)> {
    (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect()
}

/// Labels of the cut-cone rows, 0-based.
pub fn cut_rows(p: usize) -> Vec<(usize, usize)> {
    (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect()
}

/// Canonical proper cuts of `[p]` (containing component 1), mask order.
pub fn canonical_cuts(p: usize) -> Vec<Subset> {
    let full = Subset::full(p);
    nonempty_subsets(p)
        .filter(|j| j.contains(0) && *j != full)
        .collect()
}

fn td_system_from(p: usize, target: impl Fn(usize, usize) -> Rational) -> LinearSystem {
    let cols: Vec<Subset> = nonempty_subsets(p).collect();
    let labels = td_rows(p);
    let rows = labels
        .iter()
        .map(|&(i, j)| {
            let pair = Subset::pair(i, j);
            cols.iter()
                .map(|c| if pair.is_subset_of(*c) { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let rhs = labels.iter().map(|&(i, j)| target(i, j)).collect();
    LinearSystem::new(rows, rhs, cols.len())
}

/// `sum_{J ⊇ {i,j}} beta(J) = L_ij` for `i <= j`, one column per nonempty `J`.
pub fn td_system(td: &TdMatrix) -> LinearSystem {
    td_system_from(td.p(), |i, j| td.get(i, j).clone())
}

/// `sum_J w(J) |1_J(i) - 1_J(j)| = d(i,j)` for `i < j` over canonical cuts.
pub fn cut_cone_system(d: &SemiMetric) -> Result<(LinearSystem, Vec<Subset>)> {
    let p = d.p();
    subset::check_dimension(p, subset::realize_max_p())?;
    let cuts = canonical_cuts(p);
    let labels = cut_rows(p);
    let rows = labels
        .iter()
        .map(|&(i, j)| {
            cuts.iter()
                .map(|c| {
                    if c.contains(i) != c.contains(j) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let rhs = labels.iter().map(|&(i, j)| d.get(i, j).clone()).collect();
    Ok((LinearSystem::new(rows, rhs, cuts.len()), cuts))
}

fn model_from_columns(p: usize, x: Vec<Rational>) -> Result<TmModel> {
    TmModel::from_entries(p, nonempty_subsets(p).zip(x))
}

/// Decides whether a TD matrix with arbitrary diagonal is the bivariate
/// matrix of some model.
pub fn decide_td_system(td: &TdMatrix) -> Result<FeasibilityOutcome> {
    subset::check_dimension(td.p(), subset::realize_max_p())?;
    Ok(match lp::solve_feasibility(&td_system(td)) {
        Feasibility::Feasible(x) => {
            let witness = model_from_columns(td.p(), x)?;
            let back = tm::synthesize(&witness.lambda())?;
            assert_eq!(back, witness, "witness failed the synthesis round-trip");
            FeasibilityOutcome::Feasible {
                witness,
                cuts: None,
                scale: None,
            }
        }
        Feasibility::Infeasible(farkas) => FeasibilityOutcome::Infeasible { farkas },
    })
}

/// TDR: is a unit-diagonal matrix the bivariate tail-dependence matrix of a
/// max-stable vector with standard 1-Fréchet margins?
pub fn decide_tdr(td: &TdMatrix) -> Result<FeasibilityOutcome> {
    if !td.has_unit_diagonal() {
        return Err(Error::MalformedInput(
            "TDR input must have unit diagonal".into(),
        ));
    }
    decide_td_system(td)
}

/// `(2^p - 2) max d`.
pub fn sdr_auto_scale(d: &SemiMetric) -> Rational {
    (rational::pow2(d.p()) - rational::int(2)) * d.max_entry()
}

/// SDR: is `d` the spectral distance of a max-stable vector with identical
/// margins? Equivalently, is `d` in the cut cone.
pub fn decide_sdr(d: &SemiMetric, scale: &SdrScale) -> Result<FeasibilityOutcome> {
    let p = d.p();
    subset::check_dimension(p, subset::realize_max_p())?;
    match scale {
        SdrScale::Auto => {
            let (sys, cuts) = cut_cone_system(d)?;
            Ok(match lp::solve_feasibility(&sys) {
                Feasibility::Feasible(x) => {
                    let decomposition = CutDecomposition::new(
                        p,
                        cuts.into_iter().zip(x).collect(),
                        Rational::zero(),
                    )?;
                    let c = sdr_auto_scale(d);
                    let witness = decomposition.equal_margin_model(&c)?;
                    FeasibilityOutcome::Feasible {
                        witness,
                        cuts: Some(decomposition),
                        scale: Some(c),
                    }
                }
                Feasibility::Infeasible(farkas) => FeasibilityOutcome::Infeasible { farkas },
            })
        }
        SdrScale::Fixed(c) => {
            if c.is_negative() {
                return Err(Error::Domain("SDR scale must be nonnegative".into()));
            }
            let sys = sdr_fixed_system(d, c);
            Ok(match lp::solve_feasibility(&sys) {
                Feasibility::Feasible(x) => {
                    let witness = model_from_columns(p, x)?;
                    FeasibilityOutcome::Feasible {
                        cuts: Some(crate::spectral::cut_decomposition(&witness)),
                        witness,
                        scale: Some(c.clone()),
                    }
                }
                Feasibility::Infeasible(farkas) => FeasibilityOutcome::Infeasible { farkas },
            })
        }
    }
}

/// TD system with every marginal `c` and `lambda(i,j) = c - d(i,j)/2`.
fn sdr_fixed_system(d: &SemiMetric, c: &Rational) -> LinearSystem {
    let half = rational::ratio(1, 2);
    td_system_from(d.p(), |i, j| c - d.get(i, j) * &half)
}

/// `lambda(i,j) = 1 - d(i,j) / (2 (2^p - 2) max d)`, a unit-diagonal matrix
/// that is TDR-feasible iff `d` is SDR-feasible.
pub fn normalize_sdr_to_tdr(d: &SemiMetric) -> Result<TdMatrix> {
    if d.is_zero() {
        return Err(Error::DegenerateReduction);
    }
    let denom = rational::int(2) * sdr_auto_scale(d);
    let p = d.p();
    let rows = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| rational::one() - d.get(i, j) / &denom)
                .collect()
        })
        .collect();
    TdMatrix::new(rows)
}

/// SDR answer through the TDR decider; `d ≡ 0` is feasible outright.
pub fn decide_sdr_via_tdr(d: &SemiMetric) -> Result<FeasibilityOutcome> {
    match normalize_sdr_to_tdr(d) {
        Ok(td) => decide_tdr(&td),
        Err(Error::DegenerateReduction) => Ok(FeasibilityOutcome::Feasible {
            witness: TmModel::comonotone(d.p(), rational::one())?,
            cuts: None,
            scale: Some(rational::one()),
        }),
        Err(e) => Err(e),
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::CertificateRejected(msg.into())
}

fn check_farkas(
    y: &[Rational],
    rows: &[(usize, usize)],
    rhs: impl Fn(usize, usize) -> Rational,
    columns: impl Iterator<Item = Subset>,
    coefficient: impl Fn(Subset, usize, usize) -> bool,
) -> Result<()> {
    if y.len() != rows.len() {
        return Err(reject(format!(
            "Farkas vector has {} entries for {} rows",
            y.len(),
            rows.len()
        )));
    }
    for col in columns {
        let s: Rational = rows
            .iter()
            .zip(y)
            .filter(|(&(i, j), _)| coefficient(col, i, j))
            .map(|(_, v)| v)
            .sum();
        if s.is_positive() {
            return Err(reject(format!("yᵀA is positive on column {col}")));
        }
    }
    let yb: Rational = rows.iter().zip(y).map(|(&(i, j), v)| v * rhs(i, j)).sum();
    if !yb.is_positive() {
        return Err(reject("yᵀb is not positive"));
    }
    Ok(())
}

fn check_distances(model: &TmModel, d: &SemiMetric) -> Result<()> {
    let p = d.p();
    for (i, j) in cut_rows(p) {
        let s: Rational = model
            .beta()
            .support()
            .filter(|(s, _)| s.contains(i) != s.contains(j))
            .map(|(_, v)| v)
            .sum();
        if s != *d.get(i, j) {
            return Err(reject(format!(
                "witness distance at ({}, {}) is {s}, expected {}",
                i + 1,
                j + 1,
                d.get(i, j)
            )));
        }
    }
    Ok(())
}

/// Rechecks an outcome against its instance in exact arithmetic, without
/// reference to the solver.
pub fn verify_certificate(outcome: &FeasibilityOutcome, instance: Instance<'_>) -> Result<()> {
    match (outcome, instance) {
        (FeasibilityOutcome::Feasible { witness, .. }, Instance::Td(td)) => {
            if witness.p() != td.p() {
                return Err(reject("witness dimension mismatch"));
            }
            if witness.beta().values().iter().any(Signed::is_negative) {
                return Err(reject("witness has a negative weight"));
            }
            let lam = coeffs::lambda_from_beta(witness.beta())?;
            for (i, j) in td_rows(td.p()) {
                if lam.get(Subset::pair(i, j)) != td.get(i, j) {
                    return Err(reject(format!(
                        "witness misses lambda({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
            Ok(())
        }
        (FeasibilityOutcome::Infeasible { farkas }, Instance::Td(td)) => check_farkas(
            farkas,
            &td_rows(td.p()),
            |i, j| td.get(i, j).clone(),
            nonempty_subsets(td.p()),
            |col, i, j| col.is_subset_of(Subset::full(td.p())) && col.contains(i) && col.contains(j),
        ),
        (FeasibilityOutcome::Feasible { witness, scale: c, .. }, Instance::Sdr { d, scale }) => {
            if witness.p() != d.p() {
                return Err(reject("witness dimension mismatch"));
            }
            if witness.beta().values().iter().any(Signed::is_negative) {
                return Err(reject("witness has a negative weight"));
            }
            check_distances(witness, d)?;
            let expected = match scale {
                SdrScale::Auto => sdr_auto_scale(d),
                SdrScale::Fixed(c) => c.clone(),
            };
            if c.as_ref().is_some_and(|c| *c != expected) {
                return Err(reject("reported scale differs from the instance scale"));
            }
            if let Some(i) = witness.marginals().iter().position(|m| *m != expected) {
                return Err(reject(format!(
                    "marginal of component {} differs from {expected}",
                    i + 1
                )));
            }
            Ok(())
        }
        (FeasibilityOutcome::Infeasible { farkas }, Instance::Sdr { d, scale }) => match scale {
            SdrScale::Auto => {
                let p = d.p();
                check_farkas(
                    farkas,
                    &cut_rows(p),
                    |i, j| d.get(i, j).clone(),
                    canonical_cuts(p).into_iter(),
                    |col, i, j| col.contains(i) != col.contains(j),
                )
            }
            SdrScale::Fixed(c) => {
                let half = rational::ratio(1, 2);
                check_farkas(
                    farkas,
                    &td_rows(d.p()),
                    |i, j| c - d.get(i, j) * &half,
                    nonempty_subsets(d.p()),
                    |col, i, j| col.contains(i) && col.contains(j),
                )
            }
        },
    }
}

/// Shortest-path metric of the complete bipartite graph `K_{2,3}`; parts
/// `{1,2}` and `{3,4,5}`. Not `ℓ1`-embeddable.
pub fn k23_metric() -> SemiMetric {
    let p = 5;
    let side = |i: usize| i < 2;
    let d = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    rational::int(if i == j {
                        0
                    } else if side(i) == side(j) {
                        2
                    } else {
                        1
                    })
                })
                .collect()
        })
        .collect();
    SemiMetric::new(d).expect("K23 metric is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::tm::{model_from_bernoulli, BernoulliPmf};
    use std::collections::BTreeMap;

    fn td(rows: &[&[Rational]]) -> TdMatrix {
        TdMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tdr_examples() {
        let half = td(&[&[int(1), ratio(1, 2)], &[ratio(1, 2), int(1)]]);
        let out = decide_tdr(&half).unwrap();
        let w = out.witness().unwrap();
        assert!(w.beta().values().iter().all(|v| *v == ratio(1, 2)));
        verify_certificate(&out, Instance::Td(&half)).unwrap();

        let bad = td(&[
            &[int(1), int(1), int(1)],
            &[int(1), int(1), int(0)],
            &[int(1), int(0), int(1)],
        ]);
        let out = decide_tdr(&bad).unwrap();
        assert!(!out.is_feasible());
        verify_certificate(&out, Instance::Td(&bad)).unwrap();

        let not_unit = td(&[&[int(2), int(1)], &[int(1), int(2)]]);
        assert!(matches!(decide_tdr(&not_unit), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn tdr_accepts_bernoulli_matrices() {
        // pmf with every component present with probability 1/2; rescale the
        // tail weights so each margin equals one.
        let masses: BTreeMap<Subset, Rational> = [
            (Subset(0b000), ratio(1, 4)),
            (Subset(0b011), ratio(1, 4)),
            (Subset(0b110), ratio(1, 4)),
            (Subset(0b101), ratio(1, 4)),
        ]
        .into();
        let pmf = BernoulliPmf::new(3, masses).unwrap();
        let model = model_from_bernoulli(&pmf).unwrap().model;
        let scaled = TmModel::new(model.beta().scaled(&int(2)).unwrap()).unwrap();
        let l = scaled.td_matrix();
        assert!(l.has_unit_diagonal());
        let out = decide_tdr(&l).unwrap();
        verify_certificate(&out, Instance::Td(&l)).unwrap();
        assert_eq!(out.witness().unwrap().td_matrix(), l);
    }

    #[test]
    fn sdr_examples() {
        let line = SemiMetric::from_upper(3, &[int(1), int(3), int(2)]).unwrap();
        let out = decide_sdr(&line, &SdrScale::Auto).unwrap();
        assert!(out.is_feasible());
        verify_certificate(&out, Instance::Sdr { d: &line, scale: &SdrScale::Auto }).unwrap();

        let k23 = k23_metric();
        let out = decide_sdr(&k23, &SdrScale::Auto).unwrap();
        assert!(!out.is_feasible());
        verify_certificate(&out, Instance::Sdr { d: &k23, scale: &SdrScale::Auto }).unwrap();

        let zero = SemiMetric::from_upper(3, &[int(0), int(0), int(0)]).unwrap();
        let out = decide_sdr(&zero, &SdrScale::Auto).unwrap();
        assert!(out.witness().unwrap().is_degenerate());
        verify_certificate(&out, Instance::Sdr { d: &zero, scale: &SdrScale::Auto }).unwrap();
    }

    #[test]
    fn sdr_at_fixed_scale() {
        let line = SemiMetric::from_upper(3, &[int(1), int(3), int(2)]).unwrap();
        let scale = SdrScale::Fixed(int(2));
        let out = decide_sdr(&line, &scale).unwrap();
        verify_certificate(&out, Instance::Sdr { d: &line, scale: &scale }).unwrap();
        assert!(out.witness().unwrap().marginals().iter().all(|m| *m == int(2)));

        // lambda(1,3) = 1 - 3/2 < 0: no model at unit scale
        let scale = SdrScale::Fixed(int(1));
        let out = decide_sdr(&line, &scale).unwrap();
        assert!(!out.is_feasible());
        verify_certificate(&out, Instance::Sdr { d: &line, scale: &scale }).unwrap();
    }

    #[test]
    fn normalization_examples() {
        let d = SemiMetric::from_upper(2, &[int(1)]).unwrap();
        let l = normalize_sdr_to_tdr(&d).unwrap();
        assert_eq!(*l.get(0, 1), ratio(3, 4));
        let zero = SemiMetric::from_upper(2, &[int(0)]).unwrap();
        assert!(matches!(normalize_sdr_to_tdr(&zero), Err(Error::DegenerateReduction)));
        assert!(decide_sdr_via_tdr(&zero).unwrap().is_feasible());

        let k23 = k23_metric();
        assert!(!decide_sdr_via_tdr(&k23).unwrap().is_feasible());
        let line = SemiMetric::from_upper(3, &[int(1), int(3), int(2)]).unwrap();
        assert!(decide_sdr_via_tdr(&line).unwrap().is_feasible());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let half = td(&[&[int(1), ratio(1, 2)], &[ratio(1, 2), int(1)]]);
        let out = decide_tdr(&half).unwrap();
        let mut beta = out.witness().unwrap().beta().clone();
        beta.set(Subset(0b11), ratio(3, 4)).unwrap();
        let tampered = FeasibilityOutcome::Feasible {
            witness: TmModel::new(beta).unwrap(),
            cuts: None,
            scale: None,
        };
        assert!(matches!(
            verify_certificate(&tampered, Instance::Td(&half)),
            Err(Error::CertificateRejected(_))
        ));

        let k23 = k23_metric();
        let out = decide_sdr(&k23, &SdrScale::Auto).unwrap();
        let mut y = out.farkas().unwrap().to_vec();
        y[0] += int(1000);
        let bogus = FeasibilityOutcome::Infeasible { farkas: y };
        assert!(verify_certificate(&bogus, Instance::Sdr { d: &k23, scale: &SdrScale::Auto }).is_err());
        let short = FeasibilityOutcome::Infeasible { farkas: vec![int(1)] };
        assert!(verify_certificate(&short, Instance::Sdr { d: &k23, scale: &SdrScale::Auto }).is_err());
    }
}
