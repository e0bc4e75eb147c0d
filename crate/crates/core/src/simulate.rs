//! Monte-Carlo sampling of Tawn-Molchanov vectors and estimators checked
//! against the exact finite-threshold law.
//!
//! Each atom `J` contributes `beta(J) Z_J` with `Z_J = 1/E_J`, `E_J` unit
//! exponential; `X_i` is the maximum over atoms containing `i`. Rows are
//! generated in fixed-size blocks, block `b` drawing from ChaCha8 stream `b`
//! keyed by the seed, so output is bit-identical for any thread count.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational;
use crate::subset::{nonempty_subsets, Subset};
use crate::tm::{self, ExceedanceSetDist, TmModel};

const BLOCK_ROWS: usize = 1 << 14;

/// Magic bytes of the binary sample stream.
pub const SAMPLE_MAGIC: &[u8; 6] = b"TDSIM1";

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n_samples: usize,
    pub threshold: f64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(n_samples: usize, threshold: f64, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::Domain("n_samples must be at least 1".into()));
        }
        if !(threshold > 0.0 && threshold.is_finite()) {
            return Err(Error::Domain(format!("threshold must be positive, got {threshold}")));
        }
        Ok(SimConfig {
            n_samples,
            threshold,
            seed,
        })
    }

    /// `u = 100 * max marginal scale`.
    pub fn default_threshold(model: &TmModel) -> f64 {
        100.0
            * model
                .marginals()
                .iter()
                .map(rational::to_f64)
                .fold(0.0, f64::max)
    }
}

/// SplitMix64 finalizer; derives independent seeds for replicate `r`.
pub fn replicate_seed(seed: u64, replicate: u64) -> u64 {
    let mut z = seed ^ replicate.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Row-major `n x p` sample matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    p: usize,
    data: Vec<f64>,
}

impl Samples {
    pub fn from_rows(p: usize, data: Vec<f64>) -> Result<Self> {
        if p == 0 || !data.len().is_multiple_of(p) {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: data.len(),
            });
        }
        Ok(Samples { p, data })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.p
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.data[t * self.p..(t + 1) * self.p]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.p)
    }

    pub fn column(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows().map(move |r| r[i])
    }

    /// Exceedance set `{i : x_i > u}` of each row.
    pub fn exceedance_sets(&self, u: f64) -> impl Iterator<Item = Subset> + '_ {
        self.rows().map(move |r| {
            Subset(
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > u)
                    .fold(0, |m, (i, _)| m | (1 << i)),
            )
        })
    }

    /// Writes the `TDSIM1` stream: magic, `p` as u16, `n` as u64, then
    /// row-major f64 values, all little-endian.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(SAMPLE_MAGIC)?;
        w.write_all(&(self.p as u16).to_le_bytes())?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        for v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header)?;
        if &header[..6] != SAMPLE_MAGIC {
            return Err(Error::Parse("not a TDSIM1 sample stream".into()));
        }
        let p = u16::from_le_bytes([header[6], header[7]]) as usize;
        let n = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes")) as usize;
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() != n * p * 8 {
            return Err(Error::Parse(format!(
                "expected {} payload bytes, found {}",
                n * p * 8,
                bytes.len()
            )));
        }
        let data = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        Samples::from_rows(p, data)
    }
}

struct Atom {
    members: Vec<usize>,
    weight: f64,
}

fn atoms_of(model: &TmModel) -> Result<Vec<Atom>> {
    if model.is_degenerate() {
        return Err(Error::DegenerateModel);
    }
    Ok(model
        .atoms()
        .into_iter()
        .map(|(s, b)| Atom {
            members: s.iter().collect(),
            weight: rational::to_f64(&b),
        })
        .collect())
}

/// Draws `n` iid vectors from the model.
pub fn sample(model: &TmModel, n: usize, seed: u64) -> Result<Samples> {
    let atoms = atoms_of(model)?;
    let p = model.p();
    let mut data = vec![0.0; n * p];
    data.par_chunks_mut(BLOCK_ROWS * p)
        .enumerate()
        .for_each(|(block, chunk)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            for row in chunk.chunks_exact_mut(p) {
                for atom in &atoms {
                    let e: f64 = rng.sample(Exp1);
                    let v = atom.weight / e;
                    for &i in &atom.members {
                        if v > row[i] {
                            row[i] = v;
                        }
                    }
                }
            }
        });
    Samples::from_rows(p, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    /// Joint exceedance of all components in `L`.
    Lambda(Subset),
    /// Exceedance of some component in `K`.
    Theta(Subset),
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Lambda(s) => write!(f, "lambda{s}"),
            Target::Theta(s) => write!(f, "theta{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub target: Target,
    /// `u * (count / n)`.
    pub empirical: f64,
    /// `u * P_exact` at the same threshold.
    pub exact_finite: f64,
    /// The limiting coefficient.
    pub asymptotic: f64,
    /// `u * sqrt(p_hat (1 - p_hat) / n)`.
    pub std_error: f64,
    pub count: u64,
}

impl EstimateRow {
    /// `|empirical - exact_finite|` in standard errors.
    pub fn z_score(&self) -> f64 {
        let diff = (self.empirical - self.exact_finite).abs();
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationReport {
    pub threshold: f64,
    pub n_samples: usize,
    pub rows: Vec<EstimateRow>,
}

fn check_target(model: &TmModel, samples: &Samples, s: Subset, u: f64) -> Result<()> {
    if samples.p() != model.p() {
        return Err(Error::DimensionMismatch {
            expected: model.p(),
            found: samples.p(),
        });
    }
    if s.is_empty() || !s.is_subset_of(Subset::full(model.p())) {
        return Err(Error::Domain(format!("{s} is not a nonempty subset")));
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("threshold must be positive, got {u}")));
    }
    if samples.is_empty() {
        return Err(Error::Domain("no samples".into()));
    }
    Ok(())
}

fn row_for(target: Target, count: u64, n: usize, u: f64, exact: f64, asymptotic: f64) -> EstimateRow {
    let phat = count as f64 / n as f64;
    EstimateRow {
        target,
        empirical: u * phat,
        exact_finite: u * exact,
        asymptotic,
        std_error: u * (phat * (1.0 - phat) / n as f64).sqrt(),
        count,
    }
}

/// `lambda_hat(L) = u #{t : min_{i in L} X_i > u} / n`.
pub fn estimate_lambda(model: &TmModel, samples: &Samples, l: Subset, u: f64) -> Result<EstimateRow> {
    check_target(model, samples, l, u)?;
    let members: Vec<usize> = l.iter().collect();
    let count = samples
        .rows()
        .filter(|r| members.iter().all(|&i| r[i] > u))
        .count() as u64;
    let exact = tm::exact_joint_exceedance(model, l, u)?;
    let asymptotic = rational::to_f64(model.lambda().get(l));
    Ok(row_for(Target::Lambda(l), count, samples.len(), u, exact, asymptotic))
}

/// `theta_hat(K) = u #{t : max_{i in K} X_i > u} / n`.
pub fn estimate_theta(model: &TmModel, samples: &Samples, k: Subset, u: f64) -> Result<EstimateRow> {
    check_target(model, samples, k, u)?;
    let members: Vec<usize> = k.iter().collect();
    let count = samples
        .rows()
        .filter(|r| members.iter().any(|&i| r[i] > u))
        .count() as u64;
    let exact = tm::exact_union_exceedance(model, k, u)?;
    let asymptotic = rational::to_f64(model.theta().get(k));
    Ok(row_for(Target::Theta(k), count, samples.len(), u, exact, asymptotic))
}

pub fn estimate(model: &TmModel, samples: &Samples, targets: &[Target], u: f64) -> Result<EstimationReport> {
    let rows = targets
        .iter()
        .map(|t| match *t {
            Target::Lambda(l) => estimate_lambda(model, samples, l, u),
            Target::Theta(k) => estimate_theta(model, samples, k, u),
        })
        .collect::<Result<_>>()?;
    Ok(EstimationReport {
        threshold: u,
        n_samples: samples.len(),
        rows,
    })
}

/// Empirical law of the exceedance set, conditioned on being nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceedanceHistogram {
    pub threshold: f64,
    pub counts: BTreeMap<Subset, u64>,
    /// Rows with at least one exceedance.
    pub nonempty: u64,
}

impl ExceedanceHistogram {
    pub fn pmf(&self) -> BTreeMap<Subset, f64> {
        self.counts
            .iter()
            .map(|(s, c)| (*s, *c as f64 / self.nonempty as f64))
            .collect()
    }

    /// Total-variation distance to the limiting exceedance-set law.
    pub fn tv_distance(&self, limit: &ExceedanceSetDist) -> f64 {
        let reference = limit
            .pmf()
            .iter()
            .map(|(s, v)| (*s, rational::to_f64(v)))
            .collect();
        tv(&self.pmf(), &reference)
    }

    /// Total-variation distance to an arbitrary pmf over nonempty subsets.
    pub fn tv_distance_to(&self, reference: &BTreeMap<Subset, f64>) -> f64 {
        tv(&self.pmf(), reference)
    }
}

fn tv(a: &BTreeMap<Subset, f64>, b: &BTreeMap<Subset, f64>) -> f64 {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

pub fn exceedance_set_histogram(samples: &Samples, u: f64) -> Result<ExceedanceHistogram> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("threshold must be positive, got {u}")));
    }
    let mut counts = BTreeMap::new();
    let mut nonempty = 0;
    for s in samples.exceedance_sets(u).filter(|s| !s.is_empty()) {
        *counts.entry(s).or_insert(0u64) += 1;
        nonempty += 1;
    }
    Ok(ExceedanceHistogram {
        threshold: u,
        counts,
        nonempty,
    })
}

/// Exact law of `{i : X_i > u}` given it is nonempty, from
/// `P[set ⊆ S] = exp(-theta(S^c)/u)` and Möbius inversion over `S`.
pub fn finite_threshold_pmf(model: &TmModel, u: f64) -> Result<BTreeMap<Subset, f64>> {
    if model.is_degenerate() {
        return Err(Error::DegenerateModel);
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("threshold must be positive, got {u}")));
    }
    let p = model.p();
    let theta = model.theta();
    let full = Subset::full(p);
    let n = 1usize << p;
    let mut g: Vec<f64> = (0..n)
        .map(|s| {
            let c = Subset(s as u32).complement(p);
            if c.is_empty() {
                1.0
            } else {
                (-rational::to_f64(theta.get(c)) / u).exp()
            }
        })
        .collect();
    let mut bit = 1;
    while bit < n {
        for m in 0..n {
            if m & bit != 0 {
                g[m] -= g[m ^ bit];
            }
        }
        bit <<= 1;
    }
    let nonempty = -(-rational::to_f64(theta.get(full)) / u).exp_m1();
    Ok(nonempty_subsets(p)
        .map(|s| (s, (g[s.0 as usize] / nonempty).max(0.0)))
        .filter(|(_, v)| *v > 0.0)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRow {
    pub point: Vec<f64>,
    pub empirical: f64,
    pub exact: f64,
    pub std_error: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxStabilityReport {
    pub n_fold: usize,
    pub n_samples: usize,
    pub rows: Vec<StabilityRow>,
}

impl MaxStabilityReport {
    pub fn flags(&self) -> usize {
        self.rows.iter().filter(|r| r.flagged).count()
    }
}

/// Compares the empirical CDF of `max(X^(1), …, X^(n_fold)) / n_fold`
/// against the exact CDF of `X` on `grid`, flagging deviations beyond 4 SE.
pub fn max_stability_check(
    model: &TmModel,
    n_fold: usize,
    grid: &[Vec<f64>],
    n_samples: usize,
    seed: u64,
) -> Result<MaxStabilityReport> {
    if n_fold < 2 {
        return Err(Error::Domain("n_fold must be at least 2".into()));
    }
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be at least 1".into()));
    }
    let p = model.p();
    let raw = sample(model, n_samples * n_fold, seed)?;
    let scale = n_fold as f64;
    let maxima: Vec<f64> = raw
        .data
        .chunks_exact(p * n_fold)
        .flat_map(|group| {
            (0..p).map(move |i| {
                group
                    .chunks_exact(p)
                    .map(|r| r[i])
                    .fold(f64::NEG_INFINITY, f64::max)
                    / scale
            })
        })
        .collect();
    let maxima = Samples::from_rows(p, maxima)?;
    let rows = grid
        .iter()
        .map(|x| {
            let exact = tm::cdf(model, x)?;
            let below = maxima
                .rows()
                .filter(|r| r.iter().zip(x).all(|(v, b)| v <= b))
                .count();
            let empirical = below as f64 / n_samples as f64;
            let std_error = (exact * (1.0 - exact) / n_samples as f64).sqrt();
            Ok(StabilityRow {
                point: x.clone(),
                empirical,
                exact,
                std_error,
                flagged: (empirical - exact).abs() > 4.0 * std_error,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MaxStabilityReport {
        n_fold,
        n_samples,
        rows,
    })
}

/// Kolmogorov-Smirnov statistic of one component against the Fréchet law
/// `exp(-scale / x)`.
pub fn ks_frechet(samples: &Samples, component: usize, scale: f64) -> f64 {
    let mut xs: Vec<f64> = samples.column(component).collect();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = (-scale / x).exp();
            let hi = (k + 1) as f64 / n - f;
            let lo = f - k as f64 / n;
            hi.max(lo)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().map(|i| i - 1))
    }

    #[test]
    fn deterministic_and_block_independent() {
        let m = TmModel::independent(3).unwrap();
        let a = sample(&m, BLOCK_ROWS + 17, 5).unwrap();
        let b = sample(&m, BLOCK_ROWS + 17, 5).unwrap();
        assert_eq!(a, b);
        let c = sample(&m, BLOCK_ROWS + 17, 6).unwrap();
        assert_ne!(a, c);
        // prefix of a longer run is the same stream
        let short = sample(&m, 100, 5).unwrap();
        assert_eq!(short.row(99), a.row(99));
        assert!(a.rows().flatten().all(|&x| x > 0.0));
    }

    #[test]
    fn comonotone_components_coincide() {
        let m = TmModel::comonotone(2, int(1)).unwrap();
        let s = sample(&m, 1000, 1).unwrap();
        assert!(s.rows().all(|r| r[0] == r[1]));
        for u in [0.5, 3.0, 40.0] {
            let l = estimate_lambda(&m, &s, set(&[1, 2]), u).unwrap();
            let t = estimate_theta(&m, &s, set(&[1, 2]), u).unwrap();
            assert_eq!(l.count, t.count);
            let h = exceedance_set_histogram(&s, u).unwrap();
            assert!(h.counts.keys().all(|k| *k == Subset::full(2)));
        }
    }

    #[test]
    fn degenerate_model_cannot_be_sampled() {
        let m = TmModel::new(crate::coeffs::SubsetFn::zeros(2, crate::coeffs::Kind::Beta).unwrap()).unwrap();
        assert!(matches!(sample(&m, 10, 0), Err(Error::DegenerateModel)));
    }

    #[test]
    fn singleton_theta_targets_the_marginal() {
        let m = TmModel::from_entries(2, [(set(&[1]), ratio(3, 2)), (set(&[1, 2]), ratio(1, 2))]).unwrap();
        let s = sample(&m, 200_000, 11).unwrap();
        let r = estimate_theta(&m, &s, set(&[1]), 10.0).unwrap();
        assert!((r.exact_finite - 10.0 * (1.0 - (-0.2f64).exp())).abs() < 1e-12);
        assert_eq!(r.asymptotic, 2.0);
        assert!(r.z_score() < 4.0, "{r:?}");
    }

    #[test]
    fn independent_exceedances_are_uncorrelated() {
        let m = TmModel::independent(2).unwrap();
        let s = sample(&m, 1_000_000, 3).unwrap();
        let u = 10.0;
        let n = s.len() as f64;
        let (mut a, mut b, mut ab) = (0.0, 0.0, 0.0);
        for r in s.rows() {
            let (x, y) = ((r[0] > u) as u8 as f64, (r[1] > u) as u8 as f64);
            a += x;
            b += y;
            ab += x * y;
        }
        let (pa, pb) = (a / n, b / n);
        let cov = ab / n - pa * pb;
        let corr = cov / (pa * (1.0 - pa) * pb * (1.0 - pb)).sqrt();
        // correlation estimate has standard error about 1/sqrt(n)
        assert!(corr.abs() < 3.0 / n.sqrt(), "{corr}");
    }

    #[test]
    fn finite_threshold_pmf_matches_brute_force() {
        // brute force over which atoms exceed, atoms independent
        let m = TmModel::from_entries(
            3,
            [
                (set(&[1]), ratio(1, 2)),
                (set(&[1, 2]), int(1)),
                (set(&[1, 2, 3]), ratio(1, 2)),
                (set(&[2, 3]), ratio(1, 2)),
                (set(&[3]), int(1)),
            ],
        )
        .unwrap();
        let u = 2.0;
        let atoms = m.atoms();
        let mut brute: BTreeMap<Subset, f64> = BTreeMap::new();
        for mask in 0u32..(1 << atoms.len()) {
            let mut pr = 1.0;
            let mut s = Subset::EMPTY;
            for (k, (j, b)) in atoms.iter().enumerate() {
                let q = -(-rational::to_f64(b) / u).exp_m1();
                if mask >> k & 1 == 1 {
                    pr *= q;
                    s = s.union(*j);
                } else {
                    pr *= 1.0 - q;
                }
            }
            *brute.entry(s).or_insert(0.0) += pr;
        }
        let z = 1.0 - brute.remove(&Subset::EMPTY).unwrap();
        let exact = finite_threshold_pmf(&m, u).unwrap();
        for (s, v) in &brute {
            assert!((v / z - exact.get(s).copied().unwrap_or(0.0)).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn binary_stream_round_trip() {
        let m = TmModel::independent(3).unwrap();
        let s = sample(&m, 50, 9).unwrap();
        let mut buf = Vec::new();
        s.write_binary(&mut buf).unwrap();
        assert_eq!(&buf[..6], b"TDSIM1");
        assert_eq!(buf.len(), 16 + 50 * 3 * 8);
        assert_eq!(Samples::read_binary(&buf[..]).unwrap(), s);
        assert!(Samples::read_binary(&buf[..20]).is_err());
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(Samples::read_binary(&bad[..]).is_err());
    }

    #[test]
    fn config_and_seed_derivation() {
        assert!(SimConfig::new(0, 1.0, 0).is_err());
        assert!(SimConfig::new(1, -1.0, 0).is_err());
        let m = TmModel::from_entries(2, [(set(&[1]), int(3)), (set(&[2]), int(1))]).unwrap();
        assert_eq!(SimConfig::default_threshold(&m), 300.0);
        assert_ne!(replicate_seed(1, 0), replicate_seed(1, 1));
        assert_ne!(replicate_seed(1, 0), replicate_seed(2, 0));
    }

    #[test]
    fn max_stability_rejects_bad_fold() {
        let m = TmModel::independent(2).unwrap();
        assert!(max_stability_check(&m, 1, &[vec![1.0, 1.0]], 10, 0).is_err());
    }
}
