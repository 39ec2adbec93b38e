//! Gap functions for the shape properties a trading-function mean must
//! satisfy. Each returns a signed gap; concave, superadditive and
//! homogeneous means give gaps that are nonnegative (or zero) up to
//! rounding.

use crate::error::{Error, Result};
use crate::means::{MeanSpec, Weights};

/// `mu((1-t)x + t y) - [(1-t) mu(x) + t mu(y)]`.
pub fn concavity_probe(spec: MeanSpec, w: &Weights, x: &[f64], y: &[f64], t: f64) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Constraint(format!("t = {t} must lie in [0, 1]")));
    }
    let mix: Vec<f64> = x.iter().zip(y).map(|(a, b)| (1.0 - t) * a + t * b).collect();
    let mx = spec.eval(x, w)?;
    let my = spec.eval(y, w)?;
    Ok(spec.eval(&mix, w)? - ((1.0 - t) * mx + t * my))
}

/// Unweighted `(sum x_i^p)^(1/p)`.
pub fn unweighted_power_sum(x: &[f64], p: f64) -> f64 {
    x.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
}

/// `mu_bar(x + y) - mu_bar(x) - mu_bar(y)` for the unweighted power sum.
pub fn superadditivity_gap(p: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Constraint(format!("p = {p} must lie in (0, 1]")));
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if let Some((index, &value)) = x
        .iter()
        .chain(y)
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(Error::NegativeEntry {
            what: "superadditivity argument",
            index: index % x.len(),
            value,
        });
    }
    let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    Ok(unweighted_power_sum(&sum, p) - unweighted_power_sum(x, p) - unweighted_power_sum(y, p))
}

/// `mu(t x) - t mu(x)`.
pub fn homogeneity_gap(spec: MeanSpec, w: &Weights, x: &[f64], t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Constraint(format!("t = {t} must be a positive real")));
    }
    let scaled: Vec<f64> = x.iter().map(|v| t * v).collect();
    Ok(spec.eval(&scaled, w)? - t * spec.eval(x, w)?)
}
