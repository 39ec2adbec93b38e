//! Weighted generalized (power) means, the weighted geometric mean and
//! quasi-arithmetic f-means over a closed catalog of generators.
//!
//! All evaluators skip coordinates whose weight is exactly zero, so a
//! zero reserve paired with a zero weight never poisons the result.

use crate::error::{Error, Result};

/// Weight sums farther than this from one are rejected.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Below this |p| the power mean is evaluated in the log domain.
pub const SMALL_P: f64 = 1e-3;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights(Vec<f64>);

impl Weights {
    /// Validates and renormalizes by the exact sum.
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least 2 weights, got {}",
                w.len()
            )));
        }
        for (index, &value) in w.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite("weight"));
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry {
                    what: "weight",
                    index,
                    value,
                });
            }
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum:.17}, expected 1 within {WEIGHT_SUM_TOL:e}"
            )));
        }
        Ok(Weights(w.into_iter().map(|v| v / sum).collect()))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Pairs `(w_i, x_i)` over coordinates with positive weight.
    pub(crate) fn support<'a>(&'a self, x: &'a [f64]) -> impl Iterator<Item = (f64, f64)> + 'a {
        self.0
            .iter()
            .zip(x)
            .filter(|(w, _)| **w > 0.0)
            .map(|(&w, &x)| (w, x))
    }
}

/// Generator of a quasi-arithmetic mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FKind {
    /// `f(x) = x^p`, `p != 0`.
    Power(f64),
    /// `f(x) = ln x`.
    Log,
}

impl FKind {
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            FKind::Power(p) => x.powf(p),
            FKind::Log => x.ln(),
        }
    }

    pub fn inverse(&self, y: f64) -> Result<f64> {
        match *self {
            FKind::Power(p) => {
                // range of x^p on the domain is [0, inf) or (0, inf)
                if y.is_nan() || y < 0.0 || (p < 0.0 && y == 0.0) {
                    return Err(Error::OutsideDomain {
                        value: y,
                        domain: "range of x^p",
                    });
                }
                Ok(y.powf(1.0 / p))
            }
            FKind::Log => {
                if y.is_nan() {
                    return Err(Error::OutsideDomain {
                        value: y,
                        domain: "range of ln",
                    });
                }
                Ok(y.exp())
            }
        }
    }

    /// Generator used for evaluation. An f-mean is unchanged under
    /// `f -> a f + b`, so for small `p` the rescaled `(x^p - 1) / p` is used,
    /// which keeps full precision as `p -> 0`. Elsewhere `x^p` itself is
    /// better, since `x^p - 1` cancels when `x^p` is far from 1.
    pub(crate) fn normalized(&self, x: f64) -> f64 {
        match *self {
            FKind::Power(p) if p.abs() < SMALL_P => pow_m1(x, p) / p,
            FKind::Power(_) | FKind::Log => self.apply(x),
        }
    }

    pub(crate) fn normalized_inverse(&self, y: f64) -> Result<f64> {
        match *self {
            FKind::Power(p) if p.abs() < SMALL_P => {
                let u = p * y;
                // 1 + u must stay in the range of x^p
                if y.is_nan() || u < -1.0 || (p < 0.0 && u == -1.0) {
                    return Err(Error::OutsideDomain {
                        value: y,
                        domain: "range of (x^p - 1) / p",
                    });
                }
                Ok(root_1p(u, p))
            }
            FKind::Power(_) | FKind::Log => self.inverse(y),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            FKind::Power(p) => p * x.powf(p - 1.0),
            FKind::Log => 1.0 / x,
        }
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        let (ok, domain) = match *self {
            FKind::Power(p) if p > 0.0 => (x >= 0.0, "[0, inf)"),
            FKind::Power(_) => (x > 0.0, "(0, inf)"),
            FKind::Log => (x > 0.0, "(0, inf)"),
        };
        if ok && x.is_finite() {
            Ok(())
        } else {
            Err(Error::OutsideDomain { value: x, domain })
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FKind::Power(0.0) => Err(Error::ZeroExponent),
            FKind::Power(p) if !p.is_finite() => Err(Error::NonFinite("f exponent")),
            _ => Ok(()),
        }
    }
}

/// Which mean defines a trading function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanSpec {
    Power(f64),
    Geometric,
    FMean(FKind),
}

impl MeanSpec {
    /// The closed-form mean equal to this one: an f-mean over `x^p` is the
    /// power mean of order `p`, and over `ln x` it is the geometric mean.
    /// Evaluating both through one formula keeps them bit-identical.
    pub fn canonical(&self) -> MeanSpec {
        match *self {
            MeanSpec::FMean(FKind::Power(p)) => MeanSpec::Power(p),
            MeanSpec::FMean(FKind::Log) => MeanSpec::Geometric,
            other => other,
        }
    }

    pub fn eval(&self, x: &[f64], w: &Weights) -> Result<f64> {
        if let MeanSpec::FMean(f) = *self {
            f.validate()?;
        }
        match self.canonical() {
            MeanSpec::Power(p) => generalized_mean(x, w, p),
            MeanSpec::Geometric => geometric_mean(x, w),
            MeanSpec::FMean(f) => f_mean(x, w, f),
        }
    }

    /// Concave, nondecreasing and homogeneous on the nonnegative orthant.
    pub fn is_pool_valid(&self) -> bool {
        match *self {
            MeanSpec::Power(p) | MeanSpec::FMean(FKind::Power(p)) => p > 0.0 && p <= 1.0,
            MeanSpec::Geometric | MeanSpec::FMean(FKind::Log) => true,
        }
    }

    pub fn validate_pool(&self) -> Result<()> {
        if self.is_pool_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "{self:?} requires 0 < p <= 1 to define a pool"
            )))
        }
    }

    /// Power exponent of the spec, `None` for the log/geometric family.
    pub fn power_exponent(&self) -> Option<f64> {
        match *self {
            MeanSpec::Power(p) | MeanSpec::FMean(FKind::Power(p)) => Some(p),
            MeanSpec::Geometric | MeanSpec::FMean(FKind::Log) => None,
        }
    }
}

/// Same as [`MeanSpec::eval`].
pub fn mean(x: &[f64], w: &Weights, spec: MeanSpec) -> Result<f64> {
    spec.eval(x, w)
}

/// `x^p - 1`, accurate when `p ln x` is small.
#[inline]
pub(crate) fn pow_m1(x: f64, p: f64) -> f64 {
    (p * x.ln()).exp_m1()
}

/// `(1 + u)^(1/p)`, accurate when `p` is small.
#[inline]
pub(crate) fn root_1p(u: f64, p: f64) -> f64 {
    (u.ln_1p() / p).exp()
}

fn check_inputs(x: &[f64], w: &Weights) -> Result<()> {
    if x.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: x.len(),
        });
    }
    for (index, &value) in x.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite("mean argument"));
        }
        if value < 0.0 {
            return Err(Error::NegativeEntry {
                what: "mean argument",
                index,
                value,
            });
        }
    }
    Ok(())
}

fn clamp_to_support(value: f64, x: &[f64], w: &Weights) -> f64 {
    let (lo, hi) = w
        .support(x)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, v)| {
            (lo.min(v), hi.max(v))
        });
    value.clamp(lo, hi)
}

/// `(sum w_i x_i^p)^(1/p)` for `p != 0`.
pub fn generalized_mean(x: &[f64], w: &Weights, p: f64) -> Result<f64> {
    check_inputs(x, w)?;
    if p == 0.0 {
        return Err(Error::ZeroExponent);
    }
    if !p.is_finite() {
        return Err(Error::NonFinite("exponent"));
    }
    if p < 0.0 {
        if let Some((index, _)) = x
            .iter()
            .enumerate()
            .find(|&(i, &v)| v == 0.0 && w.get(i) > 0.0)
        {
            return Err(Error::NonPositiveEntry {
                what: "mean argument (p < 0)",
                index,
                value: 0.0,
            });
        }
    }
    let has_zero = w.support(x).any(|(_, xi)| xi == 0.0);
    let value = if has_zero {
        // only reachable for p > 0; scale by the largest entry
        let top = w.support(x).map(|(_, xi)| xi).fold(0.0, f64::max);
        if top == 0.0 {
            return Ok(0.0);
        }
        let s: f64 = w.support(x).map(|(wi, xi)| wi * (xi / top).powf(p)).sum();
        top * s.powf(1.0 / p)
    } else {
        // Relative to the geometric mean g, sum w (x/g)^p >= 1 for every p,
        // so the expm1 / log1p form is accurate from p -> 0 upwards.
        let g = w.support(x).map(|(wi, xi)| wi * xi.ln()).sum::<f64>().exp();
        let u: f64 = w.support(x).map(|(wi, xi)| wi * pow_m1(xi / g, p)).sum();
        g * root_1p(u, p)
    };
    Ok(clamp_to_support(value, x, w))
}

/// `prod x_i^w_i`, evaluated as `exp(sum w_i ln x_i)`.
pub fn geometric_mean(x: &[f64], w: &Weights) -> Result<f64> {
    check_inputs(x, w)?;
    let mut log_sum = 0.0;
    for (index, (&wi, &xi)) in w.as_slice().iter().zip(x).enumerate() {
        if wi == 0.0 {
            continue;
        }
        if xi <= 0.0 {
            return Err(Error::NonPositiveEntry {
                what: "geometric mean argument",
                index,
                value: xi,
            });
        }
        log_sum += wi * xi.ln();
    }
    Ok(clamp_to_support(log_sum.exp(), x, w))
}

/// `f^{-1}(sum w_i f(x_i))`.
pub fn f_mean(x: &[f64], w: &Weights, f: FKind) -> Result<f64> {
    if x.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: x.len(),
        });
    }
    f.validate()?;
    let mut acc = 0.0;
    for (wi, xi) in w.support(x) {
        f.check_domain(xi)?;
        acc += wi * f.normalized(xi);
    }
    let value = f.normalized_inverse(acc)?;
    Ok(clamp_to_support(value, x, w))
}
