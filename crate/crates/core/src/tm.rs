//! Tawn-Molchanov max-stable models.
//!
//! A model is a nonnegative weight `beta(J)` on each nonempty `J ⊆ [p]`, and
//! the vector `X_i = max_{J ∋ i} beta(J) Z_J` with iid standard 1-Fréchet
//! `Z_J`. Its distribution function is
//! `P[X <= x] = exp(-sum_J beta(J) / min_{i in J} x_i)`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::coeffs::{self, Kind, SubsetFn, TdMatrix};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::spectral::SemiMetric;
use crate::subset::{nonempty_subsets, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmModel {
    beta: SubsetFn,
}

impl TmModel {
    pub fn new(beta: SubsetFn) -> Result<Self> {
        if beta.kind() != Kind::Beta {
            return Err(Error::WrongKind {
                expected: "beta",
                found: beta.kind().name(),
            });
        }
        Ok(TmModel { beta })
    }

    pub fn from_entries<I>(p: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Rational)>,
    {
        TmModel::new(SubsetFn::from_entries(p, Kind::Beta, entries)?)
    }

    /// Independent unit-scale components.
    pub fn independent(p: usize) -> Result<Self> {
        TmModel::from_entries(p, (0..p).map(|i| (Subset::singleton(i), rational::one())))
    }

    /// Fully dependent components with common scale `c`.
    pub fn comonotone(p: usize, c: Rational) -> Result<Self> {
        TmModel::from_entries(p, [(Subset::full(p), c)])
    }

    pub fn p(&self) -> usize {
        self.beta.p()
    }

    pub fn beta(&self) -> &SubsetFn {
        &self.beta
    }

    pub fn into_beta(self) -> SubsetFn {
        self.beta
    }

    pub fn is_degenerate(&self) -> bool {
        self.beta.values().iter().all(Zero::is_zero)
    }

    /// Atoms with positive weight.
    pub fn atoms(&self) -> Vec<(Subset, Rational)> {
        self.beta.support().map(|(s, v)| (s, v.clone())).collect()
    }

    pub fn lambda(&self) -> SubsetFn {
        coeffs::lambda_from_beta(&self.beta).expect("model weights are nonnegative")
    }

    pub fn theta(&self) -> SubsetFn {
        coeffs::theta_from_beta(&self.beta).expect("model weights are nonnegative")
    }

    /// `theta([p])`, the total weight.
    pub fn total_mass(&self) -> Rational {
        self.beta.total()
    }

    /// Marginal scales `sum_{J ∋ i} beta(J)`.
    pub fn marginals(&self) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); self.p()];
        for (s, v) in self.beta.support() {
            for i in s.iter() {
                m[i] += v;
            }
        }
        m
    }

    pub fn td_matrix(&self) -> TdMatrix {
        coeffs::td_matrix(&self.lambda()).expect("lambda of a model is a valid TD matrix")
    }

    pub fn spectral_distance(&self) -> SemiMetric {
        coeffs::spectral_distance(&self.td_matrix())
    }
}

/// Inverts a lambda or theta system to a model, or reports every subset
/// with a negative weight.
pub fn synthesize(f: &SubsetFn) -> Result<TmModel> {
    let beta = match f.kind() {
        Kind::Lambda => coeffs::beta_from_lambda(f)?,
        Kind::Theta => coeffs::beta_from_theta(f)?,
        other => {
            return Err(Error::WrongKind {
                expected: "lambda or theta",
                found: other.name(),
            })
        }
    };
    if !beta.is_valid() {
        return Err(Error::NotRealizable(beta.negative_entries()));
    }
    let model = TmModel::new(beta)?;
    let forward = if f.kind() == Kind::Lambda {
        model.lambda()
    } else {
        model.theta()
    };
    assert_eq!(forward.values(), f.values(), "inversion round-trip failed");
    Ok(model)
}

fn check_point<T: PartialOrd + Zero>(model: &TmModel, x: &[T]) -> Result<()> {
    if x.len() != model.p() {
        return Err(Error::DimensionMismatch {
            expected: model.p(),
            found: x.len(),
        });
    }
    if x.iter().any(|v| v.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Domain("cdf arguments must be positive".into()));
    }
    Ok(())
}

/// Exact exponent `sum_J beta(J) / min_{i in J} x_i` of the distribution
/// function at a rational point.
pub fn cdf_exponent(model: &TmModel, x: &[Rational]) -> Result<Rational> {
    check_point(model, x)?;
    Ok(model
        .beta
        .support()
        .map(|(s, b)| {
            let m = s.iter().map(|i| &x[i]).min().expect("nonempty atom");
            b / m
        })
        .sum())
}

/// `P[X <= x]`.
pub fn cdf(model: &TmModel, x: &[f64]) -> Result<f64> {
    check_point(model, x)?;
    let exponent: f64 = model
        .beta
        .support()
        .map(|(s, b)| {
            let m = s.iter().map(|i| x[i]).fold(f64::INFINITY, f64::min);
            rational::to_f64(b) / m
        })
        .sum();
    Ok((-exponent).exp())
}

fn check_threshold(u: f64) -> Result<()> {
    if u > 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("threshold must be positive, got {u}")))
    }
}

/// `P[min_{i in L} X_i > u] = sum_{S ⊆ L} (-1)^{|S|} exp(-theta(S)/u)`.
///
/// The leading `+1` cancels against the signed count of subsets, so the sum
/// runs over `expm1` terms, which keeps full relative accuracy for large `u`.
pub fn exact_joint_exceedance(model: &TmModel, l: Subset, u: f64) -> Result<f64> {
    check_threshold(u)?;
    if l.is_empty() || !l.is_subset_of(Subset::full(model.p())) {
        return Err(Error::Domain(format!("{l} is not a nonempty subset")));
    }
    let theta = model.theta();
    Ok(l.subsets()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let term = (-rational::to_f64(theta.get(s)) / u).exp_m1();
            if s.len() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// `P[max_{i in K} X_i > u] = 1 - exp(-theta(K)/u)`.
pub fn exact_union_exceedance(model: &TmModel, k: Subset, u: f64) -> Result<f64> {
    check_threshold(u)?;
    if k.is_empty() || !k.is_subset_of(Subset::full(model.p())) {
        return Err(Error::Domain(format!("{k} is not a nonempty subset")));
    }
    let theta = rational::to_f64(model.theta().get(k));
    Ok(-(-theta / u).exp_m1())
}

/// Law of the limiting exceedance set: `P[Θ = J] = beta(J) / theta([p])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceedanceSetDist {
    p: usize,
    pmf: BTreeMap<Subset, Rational>,
    normalizer: Rational,
}

impl ExceedanceSetDist {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Sparse pmf; subsets absent from the map have probability 0.
    pub fn pmf(&self) -> &BTreeMap<Subset, Rational> {
        &self.pmf
    }

    pub fn prob(&self, j: Subset) -> Rational {
        self.pmf.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// `theta([p])`.
    pub fn normalizer(&self) -> &Rational {
        &self.normalizer
    }

    /// Hitting functional `P[Θ ∩ K ≠ ∅]`, summed from the pmf.
    pub fn hitting(&self, k: Subset) -> Rational {
        self.pmf
            .iter()
            .filter(|(j, _)| j.intersects(k))
            .map(|(_, v)| v)
            .sum()
    }

    /// Inclusion functional `P[L ⊆ Θ]`, summed from the pmf.
    pub fn inclusion(&self, l: Subset) -> Rational {
        self.pmf
            .iter()
            .filter(|(j, _)| l.is_subset_of(**j))
            .map(|(_, v)| v)
            .sum()
    }
}

pub fn exceedance_set_dist(model: &TmModel) -> Result<ExceedanceSetDist> {
    if model.is_degenerate() {
        return Err(Error::DegenerateModel);
    }
    let normalizer = model.total_mass();
    let pmf: BTreeMap<_, _> = model
        .beta
        .support()
        .map(|(s, b)| (s, b / &normalizer))
        .collect();
    debug_assert_eq!(pmf.values().sum::<Rational>(), rational::one());
    Ok(ExceedanceSetDist {
        p: model.p(),
        pmf,
        normalizer,
    })
}

/// Normalized hitting and inclusion functionals `theta/theta([p])` and
/// `lambda/theta([p])` over all nonempty subsets.
pub fn normalized_functionals(model: &TmModel) -> Result<(SubsetFn, SubsetFn)> {
    if model.is_degenerate() {
        return Err(Error::DegenerateModel);
    }
    let inv = rational::one() / model.total_mass();
    Ok((model.theta().scaled(&inv)?, model.lambda().scaled(&inv)?))
}

/// Distribution of a random subset `{i : ξ(i) = 1}` of a 0/1 vector,
/// including mass at the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPmf {
    p: usize,
    masses: BTreeMap<Subset, Rational>,
}

impl BernoulliPmf {
    pub fn new(p: usize, masses: BTreeMap<Subset, Rational>) -> Result<Self> {
        crate::subset::check_dimension(p, crate::subset::max_p())?;
        let full = Subset::full(p);
        if let Some((s, v)) = masses.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidPmf(format!("negative mass {v} at {s}")));
        }
        if let Some(s) = masses.keys().find(|s| !s.is_subset_of(full)) {
            return Err(Error::InvalidPmf(format!("{s} is not a subset of [{p}]")));
        }
        let total: Rational = masses.values().sum();
        if total != rational::one() {
            return Err(Error::InvalidPmf(format!("masses sum to {total}")));
        }
        Ok(BernoulliPmf { p, masses })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn masses(&self) -> &BTreeMap<Subset, Rational> {
        &self.masses
    }

    /// `E[prod_{i in L} ξ(i)]` by direct summation.
    pub fn product_moment(&self, l: Subset) -> Rational {
        self.masses
            .iter()
            .filter(|(j, _)| l.is_subset_of(**j))
            .map(|(_, v)| v)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliModel {
    pub model: TmModel,
    /// Mass at the empty set, which carries no tail weight.
    pub dropped_empty_mass: Rational,
}

/// `beta(J) := P[Θ = J]` for nonempty `J`; then `lambda(L) = E[prod_{i in L} ξ(i)]`.
pub fn model_from_bernoulli(pmf: &BernoulliPmf) -> Result<BernoulliModel> {
    let dropped = pmf.masses.get(&Subset::EMPTY).cloned().unwrap_or_else(Rational::zero);
    let model = TmModel::from_entries(
        pmf.p,
        pmf.masses
            .iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, v)| (*s, v.clone())),
    )?;
    Ok(BernoulliModel {
        model,
        dropped_empty_mass: dropped,
    })
}

/// A symmetric order-`k` tensor `T(i_1, …, i_k) = lambda({i_1, …, i_k}) / c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTensor {
    p: usize,
    order: usize,
    scale: Rational,
    // keyed by the set of distinct indices, |L| <= order
    values: BTreeMap<Subset, Rational>,
    mechanism: BernoulliPmf,
}

impl BernoulliTensor {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Entry at 0-based indices; repeated indices collapse to their set.
    pub fn get(&self, indices: &[usize]) -> Result<Rational> {
        if indices.len() != self.order {
            return Err(Error::Domain(format!(
                "tensor of order {} indexed with {} indices",
                self.order,
                indices.len()
            )));
        }
        if let Some(i) = indices.iter().find(|&&i| i >= self.p) {
            return Err(Error::Domain(format!("index {i} out of range")));
        }
        Ok(self.values[&Subset::from_indices(indices.iter().copied())].clone())
    }

    /// Value on a set of distinct indices with at most `order` elements.
    pub fn on_set(&self, l: Subset) -> Option<&Rational> {
        self.values.get(&l)
    }

    /// Law of the Bernoulli vector `ξ = B 1_Θ` realizing the tensor, with
    /// `P[B = 1] = theta([p]) / c` independent of `Θ`.
    pub fn mechanism(&self) -> &BernoulliPmf {
        &self.mechanism
    }
}

pub fn tensor_from_model(model: &TmModel, order: usize, scale: &Rational) -> Result<BernoulliTensor> {
    if order == 0 {
        return Err(Error::Domain("tensor order must be at least 1".into()));
    }
    let theta = model.total_mass();
    if *scale < theta {
        return Err(Error::ScaleTooSmall {
            scale: Box::new(scale.clone()),
            theta: Box::new(theta),
        });
    }
    if !scale.is_positive() {
        return Err(Error::Domain("tensor scale must be positive".into()));
    }
    let lambda = model.lambda();
    let values = nonempty_subsets(model.p())
        .filter(|s| s.len() <= order)
        .map(|s| (s, lambda.get(s) / scale))
        .collect();
    let mut masses: BTreeMap<Subset, Rational> = model
        .beta
        .support()
        .map(|(s, b)| (s, b / scale))
        .collect();
    let empty = rational::one() - &theta / scale;
    if !empty.is_zero() {
        masses.insert(Subset::EMPTY, empty);
    }
    Ok(BernoulliTensor {
        p: model.p(),
        order,
        scale: scale.clone(),
        values,
        mechanism: BernoulliPmf::new(model.p(), masses)?,
    })
}
