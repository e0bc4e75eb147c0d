//! Generators and brute-force oracles shared by the integration tests.
//! The oracles work straight from the definitions and never call the
//! transforms they check.

#![allow(dead_code)]

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taildep::rational::{int, ratio};
use taildep::subset::nonempty_subsets;
use taildep::{Kind, Rational, SemiMetric, Subset, SubsetFn, TdMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[0, max_num]` with denominator up to `max_den`.
pub fn rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(0..=max_num), rng.gen_range(1..=max_den))
}

pub fn positive_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Random nonnegative weights; each subset is nonzero with probability
/// `density`. At least one weight is positive.
pub fn random_beta(rng: &mut ChaCha8Rng, p: usize, density: f64) -> SubsetFn {
    let mut entries: Vec<(Subset, Rational)> = Vec::new();
    for s in nonempty_subsets(p) {
        if rng.gen_bool(density) {
            entries.push((s, positive_rational(rng, 12, 7)));
        }
    }
    if entries.is_empty() {
        let s = Subset(rng.gen_range(1..(1u32 << p)));
        entries.push((s, positive_rational(rng, 12, 7)));
    }
    SubsetFn::from_entries(p, Kind::Beta, entries).unwrap()
}

pub fn subsets_of(s: Subset) -> Vec<Subset> {
    (0..=s.bits())
        .filter(|&m| m & !s.bits() == 0)
        .map(Subset)
        .collect()
}

/// `lambda(L) = sum of beta(J) over J containing L`.
pub fn oracle_lambda(beta: &SubsetFn) -> Vec<Rational> {
    let p = beta.p();
    nonempty_subsets(p)
        .map(|l| {
            nonempty_subsets(p)
                .filter(|j| l.is_subset_of(*j))
                .fold(Rational::zero(), |acc, j| acc + beta.get(j))
        })
        .collect()
}

/// `theta(K) = sum of beta(J) over J meeting K`.
pub fn oracle_theta(beta: &SubsetFn) -> Vec<Rational> {
    let p = beta.p();
    nonempty_subsets(p)
        .map(|k| {
            nonempty_subsets(p)
                .filter(|j| j.intersects(k))
                .fold(Rational::zero(), |acc, j| acc + beta.get(j))
        })
        .collect()
}

pub fn oracle_pairs(beta: &SubsetFn) -> Vec<Vec<Rational>> {
    let p = beta.p();
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let pair = Subset::pair(i, j);
                    nonempty_subsets(p)
                        .filter(|s| pair.is_subset_of(*s))
                        .fold(Rational::zero(), |acc, s| acc + beta.get(s))
                })
                .collect()
        })
        .collect()
}

/// Weights topped up on singletons so that every marginal equals the
/// largest one, then divided by it: a model with unit marginals.
pub fn unit_marginal_beta(beta: &SubsetFn) -> SubsetFn {
    let p = beta.p();
    let pairs = oracle_pairs(beta);
    let top = (0..p).map(|i| pairs[i][i].clone()).max().unwrap();
    let mut out = beta.clone();
    for i in 0..p {
        let s = Subset::singleton(i);
        let v = out.get(s) + &top - &pairs[i][i];
        out.set(s, v).unwrap();
    }
    let scale = Rational::from_integer(1.into()) / top;
    out.scaled(&scale).unwrap()
}

pub fn td(rows: Vec<Vec<Rational>>) -> TdMatrix {
    TdMatrix::new(rows).unwrap()
}

/// Independent check of a TDR Farkas vector `y` over rows `(i <= j)` in
/// lexicographic order: `y . A_J <= 0` for every column and `y . b > 0`.
pub fn tdr_farkas_holds(m: &TdMatrix, y: &[Rational]) -> bool {
    let p = m.p();
    let rows: Vec<(usize, usize)> = (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect();
    if y.len() != rows.len() {
        return false;
    }
    let columns_ok = nonempty_subsets(p).all(|s| {
        let sum = rows
            .iter()
            .zip(y)
            .filter(|((i, j), _)| s.contains(*i) && s.contains(*j))
            .fold(Rational::zero(), |acc, (_, v)| acc + v);
        !sum.is_positive()
    });
    let yb = rows
        .iter()
        .zip(y)
        .fold(Rational::zero(), |acc, ((i, j), v)| acc + v * m.get(*i, *j));
    columns_ok && yb.is_positive()
}

/// Independent check of a cut-cone Farkas vector over rows `(i < j)`:
/// `y . delta_S <= 0` for every cut and `y . d > 0`.
pub fn cut_farkas_holds(d: &SemiMetric, y: &[Rational]) -> bool {
    let p = d.p();
    let rows: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    if y.len() != rows.len() {
        return false;
    }
    let columns_ok = nonempty_subsets(p).all(|s| {
        let sum = rows
            .iter()
            .zip(y)
            .filter(|((i, j), _)| s.contains(*i) != s.contains(*j))
            .fold(Rational::zero(), |acc, (_, v)| acc + v);
        !sum.is_positive()
    });
    let yd = rows
        .iter()
        .zip(y)
        .fold(Rational::zero(), |acc, ((i, j), v)| acc + v * d.get(*i, *j));
    columns_ok && yd.is_positive()
}

pub fn metric_from_fn(p: usize, f: impl Fn(usize, usize) -> Rational) -> SemiMetric {
    SemiMetric::new(
        (0..p)
            .map(|i| (0..p).map(|j| if i == j { int(0) } else { f(i.min(j), i.max(j)) }).collect())
            .collect(),
    )
    .unwrap()
}

/// `sum_S w_S delta_S` for random cuts.
pub fn random_cut_metric(rng: &mut ChaCha8Rng, p: usize) -> SemiMetric {
    let n_cuts = rng.gen_range(1..=p + 2);
    let cuts: Vec<(Subset, Rational)> = (0..n_cuts)
        .map(|_| {
            let s = Subset(rng.gen_range(1..(1u32 << p) - 1));
            (s, positive_rational(rng, 9, 4))
        })
        .collect();
    metric_from_fn(p, |i, j| {
        cuts.iter()
            .filter(|(s, _)| s.contains(i) != s.contains(j))
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    })
}

/// Shortest-path metric of a random connected weighted graph.
pub fn random_graph_metric(rng: &mut ChaCha8Rng, p: usize) -> SemiMetric {
    let big = int(1_000_000);
    let mut d: Vec<Vec<Rational>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { int(0) } else { big.clone() }).collect())
        .collect();
    for i in 1..p {
        let j = rng.gen_range(0..i);
        let w = int(rng.gen_range(1..=4));
        d[i][j] = w.clone();
        d[j][i] = w;
    }
    for i in 0..p {
        for j in i + 1..p {
            if rng.gen_bool(0.4) {
                let w = int(rng.gen_range(1..=4));
                if w < d[i][j] {
                    d[i][j] = w.clone();
                    d[j][i] = w;
                }
            }
        }
    }
    for k in 0..p {
        for i in 0..p {
            for j in 0..p {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    SemiMetric::new(d).unwrap()
}

/// Symmetric random matrix with zero diagonal; typically violates the
/// triangle inequality.
pub fn random_dissimilarity(rng: &mut ChaCha8Rng, p: usize) -> SemiMetric {
    let upper: Vec<Rational> = (0..p * (p - 1) / 2).map(|_| positive_rational(rng, 10, 1)).collect();
    SemiMetric::from_upper(p, &upper).unwrap()
}

pub fn triangle_violated(d: &SemiMetric) -> bool {
    let p = d.p();
    (0..p).any(|i| (0..p).any(|j| (0..p).any(|k| d.get(i, j) > &(d.get(i, k) + d.get(k, j)))))
}

pub fn random_permutation(rng: &mut ChaCha8Rng, p: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..p).collect();
    perm.shuffle(rng);
    perm
}

/// Line metric with points `perm[0], …, perm[p-1]` in order and gaps `w`.
pub fn line_metric(perm: &[usize], w: &[Rational]) -> SemiMetric {
    let p = perm.len();
    let mut pos = vec![0; p];
    for (k, &i) in perm.iter().enumerate() {
        pos[i] = k;
    }
    metric_from_fn(p, |i, j| {
        let (a, b) = (pos[i].min(pos[j]), pos[i].max(pos[j]));
        w[a..b].iter().fold(Rational::zero(), |acc, v| acc + v)
    })
}
