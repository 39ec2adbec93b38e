//! Spot rates, slippage, the two-asset trade family parametrized by the
//! remaining output reserve `eps`, and the exponent schedule that trades
//! slippage growth against admissible trade size.
//!
//! Logarithms are natural throughout; every quantity below that involves a
//! logarithm is a ratio of logarithms and therefore base-invariant.

use crate::error::{Error, Result};
use crate::means::{pow_m1, root_1p, MeanSpec};
use crate::pool::Pool;

/// Spot exchange rate `(d tau / d R_j) / (d tau / d R_i)` at the current reserves.
pub fn spot_rate(pool: &Pool, i: usize, j: usize) -> Result<f64> {
    pool.check_index(i)?;
    pool.check_index(j)?;
    if i == j {
        return Err(Error::InvalidTrade("spot rate needs two distinct assets".into()));
    }
    let w = pool.weights();
    let (wi, wj) = (w.get(i), w.get(j));
    if wi == 0.0 || wj == 0.0 {
        return Err(Error::InvalidTrade(format!(
            "asset pair ({i}, {j}) includes a zero-weight asset"
        )));
    }
    let (ri, rj) = (pool.reserves()[i], pool.reserves()[j]);
    let rate = match pool.spec() {
        MeanSpec::Power(p) => (wj / wi) * (rj / ri).powf(p - 1.0),
        MeanSpec::Geometric => (wj * ri) / (wi * rj),
        MeanSpec::FMean(f) => (wj * f.derivative(rj)) / (wi * f.derivative(ri)),
    };
    Ok(rate)
}

/// `(amount_in / amount_out) / E - 1` for input asset `i` and output asset `j`.
pub fn slippage(pool: &Pool, amount_in: f64, amount_out: f64, i: usize, j: usize) -> Result<f64> {
    if !(amount_out > 0.0) {
        return Err(Error::InvalidTrade(format!(
            "slippage needs a positive output amount (got {amount_out})"
        )));
    }
    let rate = spot_rate(pool, i, j)?;
    if !(rate.is_finite() && rate != 0.0) {
        return Err(Error::InvalidTrade(format!("spot rate {rate} is zero or not finite")));
    }
    Ok(amount_in / amount_out / rate - 1.0)
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Constraint(format!("p = {p} must lie in (0, 1]")))
    }
}

fn check_eps(eps: f64, r2: f64) -> Result<()> {
    if eps > 0.0 && eps < r2 {
        Ok(())
    } else {
        Err(Error::Constraint(format!("eps = {eps} must lie in (0, R2 = {r2})")))
    }
}

/// `(2 C^p - eps^p)^(1/p)` in the form `C (1 + (1 - (eps/C)^p))^(1/p)`.
fn top_up_level(p: f64, c: f64, eps: f64) -> Result<f64> {
    let u = -pow_m1(eps / c, p);
    if u <= -1.0 {
        return Err(Error::Infeasible(format!(
            "2 C^p - eps^p <= 0 for p = {p}, C = {c}, eps = {eps}"
        )));
    }
    Ok(c * root_1p(u, p))
}

/// Input `Delta_1(eps) = (2 C^p - eps^p)^(1/p) - R_1` of the uniform two-asset
/// pool that leaves `eps` of the output reserve.
pub fn delta1_of_eps(p: f64, c: f64, r1: f64, eps: f64) -> Result<f64> {
    check_p(p)?;
    if !(eps > 0.0) {
        return Err(Error::Constraint(format!("eps = {eps} must be > 0")));
    }
    Ok(top_up_level(p, c, eps)? - r1)
}

/// Closed-form slippage of the uniform two-asset power pool at remaining reserve `eps`.
pub fn slippage_closed_p(p: f64, c: f64, r1: f64, r2: f64, eps: f64) -> Result<f64> {
    check_eps(eps, r2)?;
    let delta = delta1_of_eps(p, c, r1, eps)?;
    Ok((r1 / r2).powf(p - 1.0) * delta / (r2 - eps) - 1.0)
}

/// Closed-form slippage of the uniform two-asset geometric pool.
pub fn slippage_closed_0(c: f64, r1: f64, r2: f64, eps: f64) -> Result<f64> {
    check_eps(eps, r2)?;
    Ok((c * c / eps - r1) / (r2 - eps) * (r2 / r1) - 1.0)
}

/// Invariant level `C` and shape parameter `s` of the exponent schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleParams {
    c: f64,
    s: f64,
}

impl ScheduleParams {
    pub fn new(c: f64, s: f64) -> Result<Self> {
        if !(c.is_finite() && c > 2.0) {
            return Err(Error::Constraint(format!("requires 2 < C < inf (got C = {c})")));
        }
        if !(s > 1.0 && s < c / 2.0) {
            return Err(Error::Constraint(format!(
                "requires 1 < s < C/2 (got s = {s}, C/2 = {})",
                c / 2.0
            )));
        }
        Ok(ScheduleParams { c, s })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Larger root `s + sqrt(s^2 - s)` of `x^2 - 2 s x + s = 0`.
fn schedule_root(s: f64) -> f64 {
    s + (s * (s - 1.0)).sqrt()
}

fn check_unit_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::Constraint(format!("requires 0 < eps < 1 (got eps = {eps})")))
    }
}

/// `p_s(eps) = ln(s + sqrt(s^2 - s)) / ln(C / eps)`.
pub fn schedule_p(params: ScheduleParams, eps: f64) -> Result<f64> {
    check_unit_eps(eps)?;
    Ok(schedule_root(params.s).ln() / (params.c / eps).ln())
}

/// `c(s) = 1 - ln s / ln(s + sqrt(s^2 - s))`.
pub fn exponent_c(s: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Constraint(format!("requires s > 1 (got s = {s})")));
    }
    Ok(1.0 - s.ln() / schedule_root(s).ln())
}

/// Relative gap between `(2 C^p - eps^p)^(1/p)` and `C^2 / (s^(1/p) eps)` at
/// `p = p_s(eps)`, with both sides compared in the log domain.
pub fn theorem_identity_residual(params: ScheduleParams, eps: f64) -> Result<f64> {
    let p = schedule_p(params, eps)?;
    let (c, s) = (params.c, params.s);
    let u = -pow_m1(eps / c, p);
    let lhs = c.ln() + u.ln_1p() / p;
    let rhs = 2.0 * c.ln() - s.ln() / p - eps.ln();
    Ok((lhs - rhs).exp_m1())
}
