//! Spectral-distance geometry: semimetrics, cut decompositions, line
//! metrics and the rigid Tawn-Molchanov model they determine.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::TdMatrix;
use crate::error::{Error, NegativeAtom, Result};
use crate::lp::{Optimum, Simplex};
use crate::rational::{self, Rational};
use crate::realize;
use crate::subset::Subset;
use crate::tm::TmModel;

/// Symmetric nonnegative matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiMetric {
    d: Vec<Vec<Rational>>,
}

/// Outcome of [`SemiMetric::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub is_semimetric: bool,
    pub is_metric: bool,
    /// Triples `(i, j, k)`, 0-based, with `i < j`, `k ∉ {i, j}` and
    /// `d(i,j) > d(i,k) + d(k,j)`.
    pub violations: Vec<(usize, usize, usize)>,
}

impl SemiMetric {
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self> {
        let p = d.len();
        if p == 0 {
            return Err(Error::EmptyDimension);
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != p {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has length {}, expected {p}",
                    i + 1,
                    row.len()
                )));
            }
            if !row[i].is_zero() {
                return Err(Error::MalformedMatrix(format!(
                    "nonzero diagonal at {}",
                    i + 1
                )));
            }
        }
        for i in 0..p {
            for j in 0..p {
                if d[i][j].is_negative() {
                    return Err(Error::MalformedMatrix(format!(
                        "negative entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if d[i][j] != d[j][i] {
                    return Err(Error::MalformedMatrix(format!(
                        "asymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SemiMetric { d })
    }

    pub(crate) fn from_validated_rows(d: Vec<Vec<Rational>>) -> Self {
        debug_assert!(SemiMetric::new(d.clone()).is_ok());
        SemiMetric { d }
    }

    /// Builds from upper-triangular entries `d(i,j)`, `i < j`, in row order.
    pub fn from_upper(p: usize, upper: &[Rational]) -> Result<Self> {
        if upper.len() != p * (p - 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: p * (p - 1) / 2,
                found: upper.len(),
            });
        }
        let mut d = vec![vec![Rational::zero(); p]; p];
        let mut k = 0;
        for i in 0..p {
            for j in i + 1..p {
                d[i][j] = upper[k].clone();
                d[j][i] = upper[k].clone();
                k += 1;
            }
        }
        SemiMetric::new(d)
    }

    pub fn p(&self) -> usize {
        self.d.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn max_entry(&self) -> Rational {
        self.d
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().flatten().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &Rational) -> SemiMetric {
        SemiMetric::from_validated_rows(
            self.d
                .iter()
                .map(|r| r.iter().map(|v| v * factor).collect())
                .collect(),
        )
    }

    pub fn validate(&self) -> MetricReport {
        let p = self.p();
        let mut violations = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                for k in (0..p).filter(|&k| k != i && k != j) {
                    if self.d[i][j] > &self.d[i][k] + &self.d[k][j] {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        let positive = (0..p).all(|i| (0..p).all(|j| i == j || self.d[i][j].is_positive()));
        let is_semimetric = violations.is_empty();
        MetricReport {
            is_semimetric,
            is_metric: is_semimetric && positive,
            violations,
        }
    }
}

/// Validates the matrix and returns its spectral distance.
pub fn distance_from_td(td: &TdMatrix) -> SemiMetric {
    crate::coeffs::spectral_distance(td)
}

/// Nonnegative weights on canonical cuts (those containing component 1),
/// plus the weight on `[p]`, which does not affect distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutDecomposition {
    p: usize,
    cuts: BTreeMap<Subset, Rational>,
    slack_full: Rational,
}

impl CutDecomposition {
    pub fn new(p: usize, cuts: BTreeMap<Subset, Rational>, slack_full: Rational) -> Result<Self> {
        let full = Subset::full(p);
        for (j, w) in &cuts {
            if !j.contains(0) || *j == full || !j.is_subset_of(full) {
                return Err(Error::MalformedInput(format!(
                    "{j} is not a canonical proper cut of [{p}]"
                )));
            }
            if w.is_negative() {
                return Err(Error::MalformedInput(format!("negative weight on cut {j}")));
            }
        }
        if slack_full.is_negative() {
            return Err(Error::MalformedInput("negative slack on [p]".into()));
        }
        let cuts = cuts.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Ok(CutDecomposition {
            p,
            cuts,
            slack_full,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn cuts(&self) -> &BTreeMap<Subset, Rational> {
        &self.cuts
    }

    pub fn weight(&self, cut: Subset) -> Rational {
        self.cuts
            .get(&cut.canonical_cut(self.p))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn slack_full(&self) -> &Rational {
        &self.slack_full
    }

    /// `d(i,j) = sum_J weight(J) |1_J(i) - 1_J(j)|`.
    pub fn reconstruct(&self) -> SemiMetric {
        let p = self.p;
        let mut d = vec![vec![Rational::zero(); p]; p];
        for (j, w) in &self.cuts {
            for a in j.iter() {
                for b in j.complement(p).iter() {
                    d[a][b] += w;
                    d[b][a] += w;
                }
            }
        }
        SemiMetric::from_validated_rows(d)
    }

    /// Materializes a model with equal marginals `c` by splitting every cut
    /// weight evenly between `J` and `J^c`, which puts mass `W/2` on every
    /// component, and topping up `[p]` with `c - W/2`.
    pub fn equal_margin_model(&self, c: &Rational) -> Result<TmModel> {
        let half = rational::ratio(1, 2);
        let total: Rational = self.cuts.values().sum();
        let top = c - &total * &half;
        if top.is_negative() {
            return Err(Error::ScaleTooSmall {
                scale: Box::new(c.clone()),
                theta: Box::new(total * half),
            });
        }
        let mut entries = Vec::new();
        for (j, w) in &self.cuts {
            let h = w * &half;
            entries.push((*j, h.clone()));
            entries.push((j.complement(self.p), h));
        }
        entries.push((Subset::full(self.p), top));
        TmModel::from_entries(self.p, entries)
    }
}

/// Merges `beta(J) + beta(J^c)` onto canonical representatives.
pub fn cut_decomposition(model: &TmModel) -> CutDecomposition {
    let p = model.p();
    let full = Subset::full(p);
    let mut cuts: BTreeMap<Subset, Rational> = BTreeMap::new();
    let mut slack = Rational::zero();
    for (j, b) in model.beta().support() {
        if j == full {
            slack += b;
        } else {
            *cuts.entry(j.canonical_cut(p)).or_insert_with(Rational::zero) += b;
        }
    }
    CutDecomposition::new(p, cuts, slack).expect("model weights are nonnegative")
}

/// A line embedding: `d(perm[a], perm[b]) = weights[a] + … + weights[b-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMetricCert {
    /// `perm[pos]` is the 0-based component at line position `pos`.
    pub perm: Vec<usize>,
    pub weights: Vec<Rational>,
}

impl LineMetricCert {
    pub fn p(&self) -> usize {
        self.perm.len()
    }

    /// Distance between line positions `a <= b`.
    pub fn span(&self, a: usize, b: usize) -> Rational {
        self.weights[a..b].iter().sum()
    }

    /// The metric this certificate describes.
    pub fn metric(&self) -> SemiMetric {
        let p = self.p();
        let mut d = vec![vec![Rational::zero(); p]; p];
        for a in 0..p {
            for b in a + 1..p {
                let v = self.span(a, b);
                d[self.perm[a]][self.perm[b]] = v.clone();
                d[self.perm[b]][self.perm[a]] = v;
            }
        }
        SemiMetric::from_validated_rows(d)
    }

    /// Subset of components at line positions `lo..=hi`.
    pub fn positions(&self, lo: usize, hi: usize) -> Subset {
        Subset::from_indices(self.perm[lo..=hi].iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineDetection {
    Line(LineMetricCert),
    /// First pair of components (0-based) whose distance the candidate
    /// ordering fails to reproduce.
    NotLine { pair: (usize, usize) },
}

/// Orders points by distance from one end of a diametral pair and verifies
/// every pairwise distance exactly.
pub fn detect_line_metric(d: &SemiMetric) -> LineDetection {
    let p = d.p();
    let mut anchor = 0;
    let mut best = Rational::zero();
    for i in 0..p {
        for j in i + 1..p {
            if *d.get(i, j) > best {
                best = d.get(i, j).clone();
                anchor = i;
            }
        }
    }
    let mut perm: Vec<usize> = (0..p).collect();
    perm.sort_by(|&a, &b| d.get(anchor, a).cmp(d.get(anchor, b)).then(a.cmp(&b)));
    let weights: Vec<Rational> = perm.windows(2).map(|w| d.get(w[0], w[1]).clone()).collect();
    let cert = LineMetricCert { perm, weights };
    for a in 0..p {
        for b in a + 1..p {
            if *d.get(cert.perm[a], cert.perm[b]) != cert.span(a, b) {
                return LineDetection::NotLine {
                    pair: (cert.perm[a], cert.perm[b]),
                };
            }
        }
    }
    LineDetection::Line(cert)
}

/// The unique model compatible with a line metric and given marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineTmModel {
    pub model: TmModel,
    pub cert: LineMetricCert,
    /// Marginal scales in original component order.
    pub marginals: Vec<Rational>,
}

impl LineTmModel {
    /// Bivariate coefficient between line positions `a` and `b`.
    fn pair_at_positions(&self, a: usize, b: usize) -> Rational {
        let (a, b) = (a.min(b), a.max(b));
        let ma = &self.marginals[self.cert.perm[a]];
        let mb = &self.marginals[self.cert.perm[b]];
        (ma + mb - self.cert.span(a, b)) / rational::int(2)
    }

    /// Line positions of each component.
    fn position_of(&self) -> Vec<usize> {
        let mut pos = vec![0; self.cert.p()];
        for (k, &i) in self.cert.perm.iter().enumerate() {
            pos[i] = k;
        }
        pos
    }
}

/// `beta([1:k]) = lambda(k) - lambda(k,k+1)`, `beta([k+1:p]) = lambda(k+1) -
/// lambda(k,k+1)`, `beta([p]) = lambda(1,p)`, in line order, where
/// `lambda(k,k+1) = (lambda(k) + lambda(k+1) - w_k) / 2`.
pub fn line_tm_model(cert: &LineMetricCert, marginals: &[Rational]) -> Result<LineTmModel> {
    let p = cert.p();
    if marginals.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: marginals.len(),
        });
    }
    let two = rational::int(2);
    let m: Vec<&Rational> = cert.perm.iter().map(|&i| &marginals[i]).collect();
    let mut beta: BTreeMap<Subset, Rational> = BTreeMap::new();
    let mut add = |s: Subset, v: Rational| {
        *beta.entry(s).or_insert_with(Rational::zero) += v;
    };
    for k in 0..p.saturating_sub(1) {
        let adjacent = (m[k] + m[k + 1] - &cert.weights[k]) / &two;
        add(cert.positions(0, k), m[k] - &adjacent);
        add(cert.positions(k + 1, p - 1), m[k + 1] - &adjacent);
    }
    let ends = if p == 1 {
        m[0].clone()
    } else {
        (m[0] + m[p - 1] - cert.span(0, p - 1)) / &two
    };
    add(Subset::full(p), ends);

    let negative: Vec<NegativeAtom> = beta
        .iter()
        .filter(|(_, v)| v.is_negative())
        .map(|(s, v)| NegativeAtom {
            set: *s,
            value: v.clone(),
        })
        .collect();
    if !negative.is_empty() {
        return Err(Error::NotRealizableAtTheseMarginals(negative));
    }
    let model = TmModel::from_entries(p, beta)?;
    assert_eq!(model.marginals(), marginals, "line model marginals");
    assert_eq!(model.spectral_distance(), cert.metric(), "line model distances");
    Ok(LineTmModel {
        model,
        cert: cert.clone(),
        marginals: marginals.to_vec(),
    })
}

/// `lambda(J) = lambda(i, j)` with `i`, `j` the extreme line positions of `J`.
pub fn higher_order_from_line(line: &LineTmModel, j: Subset) -> Result<Rational> {
    if j.is_empty() || !j.is_subset_of(Subset::full(line.cert.p())) {
        return Err(Error::Domain(format!("{j} is not a nonempty subset")));
    }
    let pos = line.position_of();
    let lo = j.iter().map(|i| pos[i]).min().expect("nonempty");
    let hi = j.iter().map(|i| pos[i]).max().expect("nonempty");
    Ok(line.pair_at_positions(lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutRange {
    pub cut: Subset,
    pub min: Rational,
    pub max: Rational,
}

impl CutRange {
    pub fn is_degenerate(&self) -> bool {
        self.min == self.max
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub ranges: Vec<CutRange>,
    pub objectives: usize,
    /// Two decompositions differing on some cut; present iff non-rigidity
    /// was witnessed.
    pub witness: Option<(CutDecomposition, CutDecomposition)>,
}

impl RigidityReport {
    /// True if every probed range is a single point. This is evidence of
    /// rigidity, not a proof.
    pub fn rigid_consistent(&self) -> bool {
        self.witness.is_none()
    }

    pub fn range(&self, cut: Subset) -> Option<&CutRange> {
        self.ranges.iter().find(|r| r.cut == cut)
    }
}

const PROBE_SEED: u64 = 0x7a11_de9e;

/// Re-solves the cut-cone system under `trials` objectives: per-cut min and
/// max of `e_J`, interleaved with min and max of random integer costs.
/// Any nondegenerate range refutes rigidity.
pub fn rigidity_probe(d: &SemiMetric, trials: usize) -> Result<RigidityReport> {
    let p = d.p();
    let (sys, cuts) = realize::cut_cone_system(d)?;
    let mut simplex = Simplex::feasible_basis(&sys).map_err(|_| Error::NotInCutCone)?;
    let n = cuts.len();
    let to_decomposition = |x: &[Rational]| {
        let map = cuts.iter().copied().zip(x.iter().cloned()).collect();
        CutDecomposition::new(p, map, Rational::zero()).expect("LP solutions are nonnegative")
    };

    let start = simplex.solution();
    let mut lo: Vec<(Rational, Vec<Rational>)> = start.iter().map(|v| (v.clone(), start.clone())).collect();
    let mut hi = lo.clone();
    let record = |x: Vec<Rational>, lo: &mut Vec<(Rational, Vec<Rational>)>, hi: &mut Vec<(Rational, Vec<Rational>)>| {
        for k in 0..n {
            if x[k] < lo[k].0 {
                lo[k] = (x[k].clone(), x.clone());
            }
            if x[k] > hi[k].0 {
                hi[k] = (x[k].clone(), x.clone());
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for t in 0..trials {
        let mut cost = vec![Rational::zero(); n];
        match t % 4 {
            0 | 1 => {
                let k = (t / 4) % n.max(1);
                if n > 0 {
                    cost[k] = rational::int(if t % 4 == 0 { 1 } else { -1 });
                }
            }
            _ => {
                let sign = if t % 4 == 2 { 1 } else { -1 };
                for c in cost.iter_mut() {
                    *c = rational::int(sign * rng.gen_range(-10..=10));
                }
            }
        }
        match simplex.minimize(&cost) {
            Optimum::Optimal { x, .. } => record(x, &mut lo, &mut hi),
            Optimum::Unbounded => unreachable!("cut weights are bounded by max d"),
        }
    }

    let ranges: Vec<CutRange> = (0..n)
        .map(|k| CutRange {
            cut: cuts[k],
            min: lo[k].0.clone(),
            max: hi[k].0.clone(),
        })
        .collect();
    let witness = ranges
        .iter()
        .position(|r| !r.is_degenerate())
        .map(|k| (to_decomposition(&lo[k].1), to_decomposition(&hi[k].1)));
    Ok(RigidityReport {
        ranges,
        objectives: trials,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::tm::TmModel;

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().map(|i| i - 1))
    }

    fn metric(p: usize, upper: &[i64]) -> SemiMetric {
        SemiMetric::from_upper(p, &upper.iter().map(|&v| int(v)).collect::<Vec<_>>()).unwrap()
    }

    fn line_model() -> TmModel {
        TmModel::from_entries(
            3,
            [
                (set(&[1]), ratio(1, 2)),
                (set(&[1, 2]), int(1)),
                (set(&[1, 2, 3]), ratio(1, 2)),
                (set(&[2, 3]), ratio(1, 2)),
                (set(&[3]), int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let como = metric(2, &[0]);
        let r = como.validate();
        assert!(r.is_semimetric && !r.is_metric);

        let line = metric(3, &[1, 3, 2]);
        let r = line.validate();
        assert!(r.is_metric);
        assert!(r.violations.is_empty());

        let bad = metric(3, &[0, 0, 2]);
        let r = bad.validate();
        assert!(!r.is_semimetric);
        assert_eq!(r.violations, vec![(1, 2, 0)]);
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        let asym = vec![vec![int(0), int(1)], vec![int(2), int(0)]];
        assert!(matches!(SemiMetric::new(asym), Err(Error::MalformedMatrix(_))));
        let neg = vec![vec![int(0), int(-1)], vec![int(-1), int(0)]];
        assert!(SemiMetric::new(neg).is_err());
        let diag = vec![vec![int(1), int(1)], vec![int(1), int(0)]];
        assert!(SemiMetric::new(diag).is_err());
    }

    #[test]
    fn cut_decomposition_examples() {
        let c = cut_decomposition(&TmModel::from_entries(2, [(set(&[1]), int(1)), (set(&[2]), int(1))]).unwrap());
        assert_eq!(c.weight(set(&[1])), int(2));
        assert_eq!(*c.reconstruct().get(0, 1), int(2));

        let c = cut_decomposition(&TmModel::comonotone(2, int(1)).unwrap());
        assert!(c.cuts().is_empty());
        assert_eq!(*c.slack_full(), int(1));
        assert!(c.reconstruct().is_zero());

        let m = line_model();
        let c = cut_decomposition(&m);
        assert_eq!(c.weight(set(&[1])), int(1));
        assert_eq!(c.weight(set(&[1, 2])), int(2));
        assert_eq!(c.weight(set(&[1, 3])), int(0));
        assert_eq!(*c.slack_full(), ratio(1, 2));
        assert_eq!(c.reconstruct(), m.spectral_distance());
    }

    #[test]
    fn equal_margin_materialization() {
        let c = cut_decomposition(&line_model());
        let model = c.equal_margin_model(&int(4)).unwrap();
        assert!(model.marginals().iter().all(|m| *m == int(4)));
        assert_eq!(model.spectral_distance(), c.reconstruct());
        assert!(c.equal_margin_model(&int(1)).is_err());
    }

    #[test]
    fn detect_line_examples() {
        match detect_line_metric(&metric(3, &[1, 3, 2])) {
            LineDetection::Line(cert) => {
                assert_eq!(cert.perm, vec![0, 1, 2]);
                assert_eq!(cert.weights, vec![int(1), int(2)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            detect_line_metric(&metric(3, &[1, 1, 1])),
            LineDetection::NotLine { .. }
        ));
        match detect_line_metric(&metric(2, &[5])) {
            LineDetection::Line(cert) => assert_eq!(cert.weights, vec![int(5)]),
            other => panic!("{other:?}"),
        }
        // shuffled order with co-located points
        let cert = LineMetricCert {
            perm: vec![3, 0, 4, 2, 1],
            weights: vec![int(2), int(0), int(1), int(0)],
        };
        match detect_line_metric(&cert.metric()) {
            LineDetection::Line(found) => assert_eq!(found.metric(), cert.metric()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn line_model_examples() {
        let cert = LineMetricCert {
            perm: vec![0, 1, 2],
            weights: vec![int(1), int(2)],
        };
        let line = line_tm_model(&cert, &[int(2), int(2), int(2)]).unwrap();
        assert_eq!(line.model, line_model());

        match line_tm_model(&cert, &[int(1), int(1), int(1)]) {
            Err(Error::NotRealizableAtTheseMarginals(w)) => {
                assert_eq!(w, vec![NegativeAtom { set: Subset::full(3), value: ratio(-1, 2) }]);
            }
            other => panic!("{other:?}"),
        }

        let zero = LineMetricCert {
            perm: vec![0, 1, 2, 3],
            weights: vec![int(0); 3],
        };
        let como = line_tm_model(&zero, &vec![int(3); 4]).unwrap();
        assert_eq!(como.model, TmModel::comonotone(4, int(3)).unwrap());
    }

    #[test]
    fn higher_order_examples() {
        let cert = LineMetricCert {
            perm: vec![0, 1, 2],
            weights: vec![int(1), int(2)],
        };
        let line = line_tm_model(&cert, &[int(2), int(2), int(2)]).unwrap();
        let lam = line.model.lambda();
        assert_eq!(higher_order_from_line(&line, set(&[1, 2, 3])).unwrap(), ratio(1, 2));
        assert_eq!(higher_order_from_line(&line, set(&[2])).unwrap(), int(2));
        assert_eq!(
            higher_order_from_line(&line, set(&[1, 3])).unwrap(),
            higher_order_from_line(&line, set(&[1, 2, 3])).unwrap()
        );
        for (s, v) in lam.iter() {
            assert_eq!(higher_order_from_line(&line, s).unwrap(), *v);
        }
    }

    #[test]
    fn rigidity_probe_examples() {
        let line = metric(3, &[1, 3, 2]);
        let r = rigidity_probe(&line, 12).unwrap();
        assert!(r.rigid_consistent());
        assert_eq!(r.range(set(&[1])).unwrap().min, int(1));
        assert_eq!(r.range(set(&[1, 2])).unwrap().max, int(2));
        assert_eq!(r.range(set(&[1, 3])).unwrap().max, int(0));

        let equilateral = metric(4, &[1, 1, 1, 1, 1, 1]);
        let r = rigidity_probe(&equilateral, 20).unwrap();
        assert!(!r.rigid_consistent());
        let (a, b) = r.witness.clone().unwrap();
        assert_ne!(a, b);
        assert_eq!(a.reconstruct(), equilateral);
        assert_eq!(b.reconstruct(), equilateral);

        let r = rigidity_probe(&metric(2, &[3]), 4).unwrap();
        assert!(r.rigid_consistent());
        assert_eq!(r.ranges.len(), 1);

        let k23 = crate::realize::k23_metric();
        assert!(matches!(rigidity_probe(&k23, 4), Err(Error::NotInCutCone)));
    }
}
