//! Scaling experiment: sweeps the remaining output reserve `eps` over a
//! dyadic grid, evaluates the scheduled-exponent pool and the geometric
//! pool at each point, and fits log-log slopes on the small-`eps` tail.

use rayon::prelude::*;

use crate::analytics::{
    delta1_of_eps, exponent_c, schedule_p, slippage_closed_0, slippage_closed_p,
    theorem_identity_residual, ScheduleParams,
};
use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 8;
pub const IDENTITY_TOL: f64 = 1e-9;

/// Allowed distance of the fitted `S_p` and `Delta_1` slopes from `-c(s)`.
pub const SLOPE_TOL_C: f64 = 0.05;
/// Allowed distance of the fitted `S_0` slope from `-1`.
pub const SLOPE_TOL_S0: f64 = 0.02;

/// `eps_k = 2^-e_k` with exponents evenly spaced from `start_exp` to `end_exp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsGrid {
    pub start_exp: f64,
    pub end_exp: f64,
    pub count: usize,
}

impl EpsGrid {
    /// Integer exponents `kmin..=kmax`.
    pub fn dyadic(kmin: u32, kmax: u32) -> Self {
        EpsGrid {
            start_exp: kmin as f64,
            end_exp: kmax as f64,
            count: (kmax.saturating_sub(kmin) + 1) as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < MIN_GRID_POINTS {
            return Err(Error::Constraint(format!(
                "grid needs at least {MIN_GRID_POINTS} points (got {})",
                self.count
            )));
        }
        if !(self.start_exp > 0.0 && self.end_exp > self.start_exp && self.end_exp.is_finite()) {
            return Err(Error::Constraint(format!(
                "grid exponents must satisfy 0 < start < end (got {} .. {})",
                self.start_exp, self.end_exp
            )));
        }
        Ok(())
    }

    /// Grid values, strictly decreasing.
    pub fn values(&self) -> Vec<f64> {
        let step = (self.end_exp - self.start_exp) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| (-(self.start_exp + step * k as f64)).exp2())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingConfig {
    pub params: ScheduleParams,
    pub grid: EpsGrid,
    /// Share of the smallest-`eps` points used in the fits.
    pub tail_fraction: f64,
}

impl ScalingConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(Error::Constraint(format!(
                "tail fraction must lie in (0, 1] (got {})",
                self.tail_fraction
            )));
        }
        Ok(())
    }
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            params: ScheduleParams::new(4.0, 4.0 / 3.0).expect("default parameters are valid"),
            grid: EpsGrid::dyadic(4, 40),
            tail_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub eps: f64,
    pub p: f64,
    pub delta1: f64,
    pub slippage_p: f64,
    pub slippage_0: f64,
    pub identity_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub slope_s: f64,
    pub slope_d: f64,
    pub slope_s0: f64,
    pub c_target: f64,
}

impl ScalingReport {
    pub fn slope_s_ok(&self) -> bool {
        (self.slope_s + self.c_target).abs() <= SLOPE_TOL_C
    }

    pub fn slope_d_ok(&self) -> bool {
        (self.slope_d + self.c_target).abs() <= SLOPE_TOL_C
    }

    pub fn slope_s0_ok(&self) -> bool {
        (self.slope_s0 + 1.0).abs() <= SLOPE_TOL_S0
    }

    pub fn within_bands(&self) -> bool {
        self.slope_s_ok() && self.slope_d_ok() && self.slope_s0_ok()
    }
}

/// One grid point. Reserves are `R_1 = R_2 = C`, so every exponent shares
/// the same pool.
pub fn scaling_row(params: ScheduleParams, eps: f64) -> Result<ScalingRow> {
    let c = params.c();
    let row_err = |reason: String| Error::RowInvariant { eps, reason };
    let p = schedule_p(params, eps)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(row_err(format!("p = {p} outside (0, 1]")));
    }
    let delta1 = delta1_of_eps(p, c, c, eps)?;
    if !(delta1 > 0.0) {
        return Err(row_err(format!("delta1 = {delta1} is not positive")));
    }
    let slippage_p = slippage_closed_p(p, c, c, c, eps)?;
    let slippage_0 = slippage_closed_0(c, c, c, eps)?;
    let identity_residual = theorem_identity_residual(params, eps)?;
    if !(identity_residual.abs() <= IDENTITY_TOL) {
        return Err(row_err(format!(
            "identity residual {identity_residual:e} exceeds {IDENTITY_TOL:e}"
        )));
    }
    Ok(ScalingRow {
        eps,
        p,
        delta1,
        slippage_p,
        slippage_0,
        identity_residual,
    })
}

pub fn run_scaling(config: &ScalingConfig) -> Result<ScalingReport> {
    config.validate()?;
    let rows = config
        .grid
        .values()
        .into_par_iter()
        .map(|eps| scaling_row(config.params, eps))
        .collect::<Result<Vec<_>>>()?;

    let fit = |value: fn(&ScalingRow) -> f64| {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.eps, value(r))).collect();
        fit_loglog_slope(&points, config.tail_fraction)
    };
    let slope_s = fit(|r| r.slippage_p.abs())?;
    let slope_d = fit(|r| r.delta1)?;
    let slope_s0 = fit(|r| r.slippage_0.abs())?;
    Ok(ScalingReport {
        slope_s,
        slope_d,
        slope_s0,
        c_target: exponent_c(config.params.s())?,
        rows,
    })
}

/// Least-squares slope of `ln value` against `ln eps` over the
/// `ceil(tail_fraction * n)` points with the smallest `eps`.
pub fn fit_loglog_slope(points: &[(f64, f64)], tail_fraction: f64) -> Result<f64> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Fit(format!(
            "tail fraction must lie in (0, 1] (got {tail_fraction})"
        )));
    }
    if let Some(&(eps, value)) = points.iter().find(|(e, v)| !(*e > 0.0 && *v > 0.0)) {
        return Err(Error::Fit(format!(
            "log-log fit needs positive coordinates (got eps = {eps}, value = {value})"
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let take = ((tail_fraction * sorted.len() as f64).ceil() as usize).min(sorted.len());
    if take < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 tail points to fit a slope (got {take})"
        )));
    }
    let logs: Vec<(f64, f64)> = sorted[..take]
        .iter()
        .map(|(e, v)| (e.ln(), v.ln()))
        .collect();
    let n = take as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        let dx = x - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    if sxx == 0.0 {
        return Err(Error::Fit("all tail points share the same eps".into()));
    }
    Ok(sxy / sxx)
}
