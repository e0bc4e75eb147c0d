//! Subset-indexed coefficient systems and the exact transforms between them.
//!
//! A [`SubsetFn`] stores one rational per nonempty subset of `[p]`. The three
//! systems of interest are the extremal coefficients `theta(K)`, the
//! tail-dependence coefficients `lambda(L)` and the Tawn-Molchanov weights
//! `beta(J)`:
//!
//! ```text
//! lambda(L) = sum_{J ⊇ L} beta(J)
//! theta(K)  = sum_{J ∩ K ≠ ∅} beta(J)
//! ```
//!
//! Every conversion is a zeta or Möbius transform over the subset lattice,
//! computed in `O(p 2^p)` exact operations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, NegativeAtom, Result};
use crate::rational::{self, Rational};
use crate::spectral::SemiMetric;
use crate::subset::{self, nonempty_subsets, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Theta,
    Lambda,
    Beta,
    /// Output of an inversion that produced negative weights.
    Raw,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Theta => "theta",
            Kind::Lambda => "lambda",
            Kind::Beta => "beta",
            Kind::Raw => "raw",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "theta" => Ok(Kind::Theta),
            "lambda" => Ok(Kind::Lambda),
            "beta" => Ok(Kind::Beta),
            "raw" => Ok(Kind::Raw),
            other => Err(Error::Parse(format!("unknown coefficient kind {other:?}"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rational-valued function on the nonempty subsets of `[p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFn {
    p: usize,
    kind: Kind,
    // values[mask - 1] = f(mask)
    values: Vec<Rational>,
}

impl SubsetFn {
    pub fn zeros(p: usize, kind: Kind) -> Result<Self> {
        subset::check_dimension(p, subset::max_p())?;
        Ok(SubsetFn {
            p,
            kind,
            values: vec![Rational::zero(); (1usize << p) - 1],
        })
    }

    /// Builds from a dense array indexed by `mask - 1`.
    pub fn from_values(p: usize, kind: Kind, values: Vec<Rational>) -> Result<Self> {
        subset::check_dimension(p, subset::max_p())?;
        let expected = (1usize << p) - 1;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        let f = SubsetFn { p, kind, values };
        if kind == Kind::Beta {
            f.check_beta()?;
        }
        Ok(f)
    }

    /// Builds from sparse `(subset, value)` pairs; omitted subsets are 0.
    pub fn from_entries<I>(p: usize, kind: Kind, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Rational)>,
    {
        let mut f = SubsetFn::zeros(p, kind)?;
        for (s, v) in entries {
            if s.is_empty() || !s.is_subset_of(Subset::full(p)) {
                return Err(Error::MalformedInput(format!(
                    "subset {s} is not a nonempty subset of [{p}]"
                )));
            }
            f.values[s.0 as usize - 1] = v;
        }
        if kind == Kind::Beta {
            f.check_beta()?;
        }
        Ok(f)
    }

    fn check_beta(&self) -> Result<()> {
        match self.negative_entries().into_iter().next() {
            Some(NegativeAtom { set, value }) => Err(Error::InvalidBeta { set, value: Box::new(value) }),
            None => Ok(()),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// `false` only for inversion outputs with negative weights.
    pub fn is_valid(&self) -> bool {
        self.kind != Kind::Raw
    }

    pub fn get(&self, s: Subset) -> &Rational {
        assert!(!s.is_empty(), "subset functions are undefined on the empty set");
        &self.values[s.0 as usize - 1]
    }

    pub fn set(&mut self, s: Subset, value: Rational) -> Result<()> {
        if s.is_empty() || !s.is_subset_of(Subset::full(self.p)) {
            return Err(Error::MalformedInput(format!("subset {s} out of range")));
        }
        if self.kind == Kind::Beta && value.is_negative() {
            return Err(Error::InvalidBeta { set: s, value: Box::new(value) });
        }
        self.values[s.0 as usize - 1] = value;
        Ok(())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(subset, value)` over every nonempty subset in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        nonempty_subsets(self.p).zip(self.values.iter())
    }

    /// Entries with a nonzero value.
    pub fn support(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.iter().filter(|(_, v)| !v.is_zero())
    }

    /// Floating view for simulation and display.
    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational::to_f64).collect()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn negative_entries(&self) -> Vec<NegativeAtom> {
        self.iter()
            .filter(|(_, v)| v.is_negative())
            .map(|(set, v)| NegativeAtom {
                set,
                value: v.clone(),
            })
            .collect()
    }

    /// Reinterprets the values under another kind, rechecking beta positivity.
    pub fn with_kind(self, kind: Kind) -> Result<Self> {
        let f = SubsetFn { kind, ..self };
        if kind == Kind::Beta {
            f.check_beta()?;
        }
        Ok(f)
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        let values = self.values.iter().map(|v| v * factor).collect();
        SubsetFn::from_values(self.p, self.kind, values)
    }

    pub fn plus(&self, other: &SubsetFn) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        if self.kind != other.kind {
            return Err(Error::WrongKind {
                expected: self.kind.name(),
                found: other.kind.name(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        SubsetFn::from_values(self.p, self.kind, values)
    }

    /// Pairs `(L, L ∪ {i})` where a lambda system fails to be nonincreasing.
    pub fn lambda_monotonicity_violations(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for l in nonempty_subsets(self.p) {
            for i in l.complement(self.p).iter() {
                let bigger = l.union(Subset::singleton(i));
                if self.get(l) < self.get(bigger) {
                    out.push((l, bigger));
                }
            }
        }
        out
    }

    /// Pairs `(K, K ∪ {i})` where theta decreases, and sets `K` where
    /// `theta(K)` exceeds the sum of its singleton values (reported as `(K, K)`).
    pub fn theta_violations(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for k in nonempty_subsets(self.p) {
            for i in k.complement(self.p).iter() {
                let bigger = k.union(Subset::singleton(i));
                if self.get(k) > self.get(bigger) {
                    out.push((k, bigger));
                }
            }
            let singles: Rational = k.iter().map(|i| self.get(Subset::singleton(i))).sum();
            if *self.get(k) > singles {
                out.push((k, k));
            }
        }
        out
    }

    fn require(&self, kind: Kind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    /// Dense array over all `2^p` masks with `f(∅) = 0`.
    fn padded(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.values.len() + 1);
        v.push(Rational::zero());
        v.extend(self.values.iter().cloned());
        v
    }

    fn from_padded(p: usize, kind: Kind, mut padded: Vec<Rational>) -> Self {
        padded.remove(0);
        SubsetFn {
            p,
            kind,
            values: padded,
        }
    }
}

// Lattice transforms over a dense array of length 2^p, run on integer
// numerators over a common denominator. Values whose magnitudes stay below
// 2^126 through every pass use i128; anything larger falls back to BigInt.

#[derive(Debug, Clone, Copy)]
enum Step {
    SupersetSums,
    SupersetMobius,
    SubsetSums,
    SubsetMobius,
    /// `x(S) <- x([p]) - x(S^c)` with `x(∅) <- 0`.
    ComplementFromTop,
    /// Negates every entry with an even number of elements.
    NegateEven,
}

trait Numerator: Clone + for<'a> std::ops::AddAssign<&'a Self> + for<'a> std::ops::SubAssign<&'a Self> {
    fn zero() -> Self;
    fn negate(&mut self);
}

impl Numerator for i128 {
    fn zero() -> Self {
        0
    }
    fn negate(&mut self) {
        *self = -*self;
    }
}

impl Numerator for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn negate(&mut self) {
        *self = -std::mem::take(self);
    }
}

fn lattice_pass<T>(xs: &mut [T], op: impl Fn(&mut T, &mut T)) {
    let n = xs.len();
    let mut bit = 1;
    while bit < n {
        for block in xs.chunks_mut(2 * bit) {
            let (lo, hi) = block.split_at_mut(bit);
            for (l, h) in lo.iter_mut().zip(hi) {
                op(l, h);
            }
        }
        bit <<= 1;
    }
}

fn run_steps<N: Numerator>(xs: &mut Vec<N>, steps: &[Step]) {
    for step in steps {
        match step {
            Step::SupersetSums => lattice_pass(xs, |l, h| *l += &*h),
            Step::SupersetMobius => lattice_pass(xs, |l, h| *l -= &*h),
            Step::SubsetSums => lattice_pass(xs, |l, h| *h += &*l),
            Step::SubsetMobius => lattice_pass(xs, |l, h| *h -= &*l),
            Step::ComplementFromTop => {
                let full = xs.len() - 1;
                let top = xs[full].clone();
                let mut out: Vec<N> = (0..xs.len())
                    .map(|s| {
                        let mut v = top.clone();
                        v -= &xs[full ^ s];
                        v
                    })
                    .collect();
                out[0] = N::zero();
                *xs = out;
            }
            Step::NegateEven => {
                for (m, x) in xs.iter_mut().enumerate() {
                    if m.count_ones() % 2 == 0 {
                        x.negate();
                    }
                }
            }
        }
    }
}

/// Every step at most doubles the largest magnitude.
fn small_numerators(xs: &[Rational], steps: usize) -> Option<(Vec<i128>, i128)> {
    let headroom = 126usize.checked_sub(steps + 1)?;
    let limit = 1i128 << headroom.min(126);
    let mut den: i128 = 1;
    for x in xs {
        let d = i128::try_from(x.denom()).ok()?;
        den = den.checked_mul(d / den.gcd(&d))?;
    }
    let nums = xs
        .iter()
        .map(|x| {
            let n = i128::try_from(x.numer()).ok()?;
            let d = i128::try_from(x.denom()).ok()?;
            let v = n.checked_mul(den / d)?;
            (v.checked_abs()? < limit).then_some(v)
        })
        .collect::<Option<Vec<_>>>()?;
    Some((nums, den))
}

fn transform(xs: &[Rational], steps: &[Step]) -> Vec<Rational> {
    let passes = steps
        .iter()
        .map(|s| match s {
            Step::NegateEven => 0,
            Step::ComplementFromTop => 1,
            _ => xs.len().trailing_zeros() as usize,
        })
        .sum();
    if let Some((mut nums, den)) = small_numerators(xs, passes) {
        run_steps(&mut nums, steps);
        return nums
            .into_iter()
            .map(|n| {
                let g = n.gcd(&den);
                let (n, d) = if g == 0 { (0, 1) } else { (n / g, den / g) };
                Rational::new_raw(BigInt::from(n), BigInt::from(d))
            })
            .collect();
    }
    let den = xs
        .iter()
        .fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let mut nums: Vec<BigInt> = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    run_steps(&mut nums, steps);
    nums.into_iter().map(|n| Rational::new(n, den.clone())).collect()
}

fn beta_or_raw(p: usize, padded: Vec<Rational>) -> SubsetFn {
    let kind = if padded[1..].iter().any(Signed::is_negative) {
        Kind::Raw
    } else {
        Kind::Beta
    };
    SubsetFn::from_padded(p, kind, padded)
}

/// `lambda(L) = sum_{J ⊇ L} beta(J)`.
pub fn lambda_from_beta(beta: &SubsetFn) -> Result<SubsetFn> {
    beta.require(Kind::Beta)?;
    beta.check_beta()?;
    let xs = transform(&beta.padded(), &[Step::SupersetSums]);
    Ok(SubsetFn::from_padded(beta.p, Kind::Lambda, xs))
}

/// `theta(K) = sum_{J ∩ K ≠ ∅} beta(J) = total - sum_{J ⊆ K^c} beta(J)`.
pub fn theta_from_beta(beta: &SubsetFn) -> Result<SubsetFn> {
    beta.require(Kind::Beta)?;
    beta.check_beta()?;
    let xs = transform(&beta.padded(), &[Step::SubsetSums, Step::ComplementFromTop]);
    Ok(SubsetFn::from_padded(beta.p, Kind::Theta, xs))
}

/// Möbius inversion of a lambda system. Negative weights are reported via
/// [`Kind::Raw`], not as an error.
pub fn beta_from_lambda(lam: &SubsetFn) -> Result<SubsetFn> {
    lam.require(Kind::Lambda)?;
    let xs = transform(&lam.padded(), &[Step::SupersetMobius]);
    Ok(beta_or_raw(lam.p, xs))
}

/// Inversion of a theta system:
/// `beta(J) = sum_{K ⊇ J^c, K ≠ ∅} (-1)^{|J ∩ K| + 1} theta(K)`,
/// computed as the subset Möbius transform of `theta([p]) - theta(S^c)`.
pub fn beta_from_theta(theta: &SubsetFn) -> Result<SubsetFn> {
    theta.require(Kind::Theta)?;
    let xs = transform(&theta.padded(), &[Step::ComplementFromTop, Step::SubsetMobius]);
    Ok(beta_or_raw(theta.p, xs))
}

fn alternating_subset_sums(f: &SubsetFn, kind: Kind) -> SubsetFn {
    let xs = transform(&f.padded(), &[Step::NegateEven, Step::SubsetSums]);
    SubsetFn::from_padded(f.p, kind, xs)
}

/// `theta(K) = sum_{∅ ≠ L ⊆ K} (-1)^{|L|-1} lambda(L)`.
pub fn theta_from_lambda(lam: &SubsetFn) -> Result<SubsetFn> {
    lam.require(Kind::Lambda)?;
    Ok(alternating_subset_sums(lam, Kind::Theta))
}

/// `lambda(L) = sum_{∅ ≠ K ⊆ L} (-1)^{|K|-1} theta(K)`.
pub fn lambda_from_theta(theta: &SubsetFn) -> Result<SubsetFn> {
    theta.require(Kind::Theta)?;
    Ok(alternating_subset_sums(theta, Kind::Lambda))
}

/// Symmetric matrix of bivariate tail-dependence coefficients; the diagonal
/// holds the marginal scales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdMatrix {
    p: usize,
    lam: Vec<Vec<Rational>>,
}

impl TdMatrix {
    /// Validates symmetry, nonnegativity and `lambda(i,j) <= min(lambda(i), lambda(j))`.
    pub fn new(lam: Vec<Vec<Rational>>) -> Result<Self> {
        let p = lam.len();
        if p == 0 {
            return Err(Error::EmptyDimension);
        }
        if let Some(row) = lam.iter().find(|r| r.len() != p) {
            return Err(Error::InvalidTdMatrix(format!(
                "row of length {} in a {p}x{p} matrix",
                row.len()
            )));
        }
        for i in 0..p {
            for j in 0..p {
                let v = &lam[i][j];
                if v.is_negative() {
                    return Err(Error::InvalidTdMatrix(format!(
                        "negative entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if *v != lam[j][i] {
                    return Err(Error::InvalidTdMatrix(format!(
                        "asymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if *v > lam[i][i] || *v > lam[j][j] {
                    return Err(Error::InvalidTdMatrix(format!(
                        "lambda({},{}) exceeds a marginal scale",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(TdMatrix { p, lam })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.lam[i][j]
    }

    pub fn marginal(&self, i: usize) -> &Rational {
        &self.lam[i][i]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.lam
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.p).all(|i| *self.marginal(i) == rational::one())
    }
}

/// Extracts the bivariate matrix from a full lambda system.
pub fn td_matrix(lam: &SubsetFn) -> Result<TdMatrix> {
    lam.require(Kind::Lambda)?;
    let p = lam.p();
    let rows = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| lam.get(Subset::pair(i, j)).clone())
                .collect()
        })
        .collect();
    TdMatrix::new(rows)
}

/// `d(i,j) = lambda(i) + lambda(j) - 2 lambda(i,j)`.
pub fn spectral_distance(td: &TdMatrix) -> SemiMetric {
    let p = td.p();
    let two = rational::int(2);
    let d = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| td.marginal(i) + td.marginal(j) - &two * td.get(i, j))
                .collect()
        })
        .collect();
    // Symmetric with zero diagonal by construction, nonnegative by the
    // TdMatrix invariant lambda(i,j) <= min(lambda(i), lambda(j)).
    SemiMetric::from_validated_rows(d)
}
