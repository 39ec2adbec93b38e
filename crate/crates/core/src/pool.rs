//! Pool state, trading-function evaluation, trade validation and the
//! closed-form swap solvers.
//!
//! A pool is an immutable value. The invariant level `C` is computed once
//! at construction and carried unchanged through every executed trade, so
//! the constant-level rule is checked against the original level rather
//! than a recomputed mean that drifts with rounding.

use crate::analytics;
use crate::error::{Error, Result};
use crate::means::{pow_m1, root_1p, FKind, MeanSpec, Weights};

/// Default relative tolerance for `|tau - C| <= tol * C`.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Solved amounts smaller than this (relative to the reserve) in the wrong
/// direction are rounding noise and are clamped to zero.
const NEGATIVE_CLAMP: f64 = 1e-12;

/// A proposed trade: amounts tendered (`input`) and received (`output`).
#[derive(Debug, Clone, PartialEq)]
pub struct Trade {
    pub input: Vec<f64>,
    pub output: Vec<f64>,
}

impl Trade {
    pub fn new(input: Vec<f64>, output: Vec<f64>) -> Result<Self> {
        if input.len() != output.len() {
            return Err(Error::DimensionMismatch {
                expected: input.len(),
                got: output.len(),
            });
        }
        for (what, v) in [("trade input", &input), ("trade output", &output)] {
            for (index, &value) in v.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFinite(what));
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { what, index, value });
                }
            }
        }
        Ok(Trade { input, output })
    }

    pub fn zero(n: usize) -> Self {
        Trade {
            input: vec![0.0; n],
            output: vec![0.0; n],
        }
    }

    /// Single-pair trade: `amount_in` of asset `i` for `amount_out` of asset `j`.
    pub fn pair(n: usize, i: usize, amount_in: f64, j: usize, amount_out: f64) -> Result<Self> {
        let mut input = vec![0.0; n];
        let mut output = vec![0.0; n];
        input[i] = amount_in;
        output[j] = amount_out;
        Self::new(input, output)
    }

    pub fn len(&self) -> usize {
        self.input.len()
    }

    pub fn is_empty(&self) -> bool {
        self.input.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeQuote {
    pub trade: Trade,
    pub post_reserves: Vec<f64>,
    /// `tau(R, input, output) - C`.
    pub invariant_residual: f64,
    /// Spot rate of the traded pair, when the quote is single-pair.
    pub spot_rate: Option<f64>,
    pub slippage: Option<f64>,
}

/// Largest admissible input for a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuyLimit {
    /// Supremum of feasible inputs; reaching it would drain the output reserve.
    Bounded(f64),
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pool {
    reserves: Vec<f64>,
    weights: Weights,
    spec: MeanSpec,
    invariant: f64,
}

impl Pool {
    pub fn new(reserves: Vec<f64>, weights: Weights, spec: MeanSpec) -> Result<Self> {
        spec.validate_pool()?;
        if reserves.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                got: reserves.len(),
            });
        }
        for (index, &value) in reserves.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite("reserve"));
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveEntry {
                    what: "reserve",
                    index,
                    value,
                });
            }
        }
        let invariant = spec.eval(&reserves, &weights)?;
        Ok(Pool {
            reserves,
            weights,
            spec,
            invariant,
        })
    }

    pub fn reserves(&self) -> &[f64] {
        &self.reserves
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn spec(&self) -> MeanSpec {
        self.spec
    }

    /// Cached invariant level `C`.
    pub fn invariant(&self) -> f64 {
        self.invariant
    }

    pub fn len(&self) -> usize {
        self.reserves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reserves.is_empty()
    }

    /// Mean of the current reserves, recomputed from scratch.
    pub fn recomputed_invariant(&self) -> Result<f64> {
        self.spec.eval(&self.reserves, &self.weights)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                n: self.len(),
            })
        }
    }

    fn check_trade_dims(&self, trade: &Trade) -> Result<()> {
        if trade.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: trade.len(),
            });
        }
        Ok(())
    }

    fn post_reserves(&self, trade: &Trade) -> Result<Vec<f64>> {
        self.check_trade_dims(trade)?;
        let post: Vec<f64> = self
            .reserves
            .iter()
            .zip(&trade.input)
            .zip(&trade.output)
            .map(|((r, d), l)| r + d - l)
            .collect();
        if let Some((index, &value)) = post.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeEntry {
                what: "post-trade reserve",
                index,
                value,
            });
        }
        Ok(post)
    }

    /// `tau(R, input, output)`: the pool mean evaluated at `R + input - output`.
    pub fn trading_value(&self, trade: &Trade) -> Result<f64> {
        let post = self.post_reserves(trade)?;
        self.spec.eval(&post, &self.weights)
    }

    pub fn is_valid_trade(&self, trade: &Trade, rel_tol: f64) -> Result<bool> {
        if !(rel_tol > 0.0) {
            return Err(Error::Constraint(format!("rel_tol = {rel_tol} must be > 0")));
        }
        let value = self.trading_value(trade)?;
        Ok((value - self.invariant).abs() <= rel_tol * self.invariant)
    }

    /// Applies a valid trade. The returned pool keeps this pool's `C`.
    pub fn execute_trade(&self, trade: &Trade, rel_tol: f64) -> Result<Pool> {
        let post = self.post_reserves(trade)?;
        if let Some((index, &value)) = post.iter().enumerate().find(|(_, v)| **v <= 0.0) {
            return Err(Error::NonPositiveEntry {
                what: "post-trade reserve",
                index,
                value,
            });
        }
        if !self.is_valid_trade(trade, rel_tol)? {
            let value = self.spec.eval(&post, &self.weights)?;
            return Err(Error::Rejected {
                residual: (value - self.invariant).abs(),
                tol: rel_tol,
                invariant: self.invariant,
            });
        }
        Ok(Pool {
            reserves: post,
            weights: self.weights.clone(),
            spec: self.spec,
            invariant: self.invariant,
        })
    }

    /// Value coordinate `idx` must take so that the mean of `post` (with
    /// `post[idx]` replaced) equals `C`. Returns `None` when no admissible
    /// value exists.
    fn solve_coordinate(&self, post: &[f64], idx: usize) -> Result<Option<f64>> {
        let c = self.invariant;
        let w = self.weights.as_slice();
        let wi = w[idx];
        let others = || {
            w.iter()
                .zip(post)
                .enumerate()
                .filter(move |&(k, (wk, _))| k != idx && *wk > 0.0)
                .map(move |(_, (&wk, &xk))| (wk / wi, xk))
        };
        let value = match self.spec.canonical() {
            MeanSpec::Power(1.0) => {
                let changes: Vec<f64> = post.iter().zip(&self.reserves).map(|(x, r)| x - r).collect();
                self.reserves[idx] + self.linear_increment(&changes, idx)?
            }
            MeanSpec::Power(p) => {
                let u: f64 = -others().map(|(ratio, x)| ratio * pow_m1(x / c, p)).sum::<f64>();
                if u <= -1.0 {
                    return Ok(None);
                }
                let v = c * root_1p(u, p);
                if v.is_finite() {
                    v
                } else {
                    // the factor alone may overflow while the product fits
                    (c.ln() + u.ln_1p() / p).exp()
                }
            }
            MeanSpec::Geometric => {
                let mut log_sum = 0.0;
                for (ratio, x) in others() {
                    if x <= 0.0 {
                        return Ok(None);
                    }
                    log_sum += ratio * (x / c).ln();
                }
                c * (-log_sum).exp()
            }
            MeanSpec::FMean(f) => {
                let fc = f.normalized(c);
                let mut y = fc;
                for (ratio, x) in others() {
                    if f.check_domain(x).is_err() {
                        return Ok(None);
                    }
                    y += ratio * (fc - f.normalized(x));
                }
                match f.normalized_inverse(y) {
                    Ok(v) => v,
                    Err(_) => return Ok(None),
                }
            }
        };
        Ok(if value.is_finite() && value > 0.0 {
            Some(value)
        } else {
            None
        })
    }

    /// Constant-sum pools: change of coordinate `idx` that offsets `changes`
    /// on the other coordinates. Working in increments keeps the solution
    /// exact whenever `C` equals the reserve mean.
    fn linear_increment(&self, changes: &[f64], idx: usize) -> Result<f64> {
        let w = self.weights.as_slice();
        let drift = self.invariant - self.recomputed_invariant()?;
        let moved: f64 = w
            .iter()
            .zip(changes)
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, (wk, dk))| wk * dk)
            .sum();
        Ok((drift - moved) / w[idx])
    }

    fn is_linear(&self) -> bool {
        matches!(self.spec.canonical(), MeanSpec::Power(p) if p == 1.0)
    }

    fn check_amounts(what: &'static str, v: &[f64], n: usize) -> Result<()> {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        for (index, &value) in v.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite(what));
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { what, index, value });
            }
        }
        Ok(())
    }

    fn require_weight(&self, index: usize) -> Result<()> {
        if self.weights.get(index) > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidTrade(format!(
                "asset {index} has zero weight and cannot be solved for"
            )))
        }
    }

    fn quote(&self, trade: Trade, pair: Option<(usize, usize)>) -> Result<TradeQuote> {
        let post_reserves = self.post_reserves(&trade)?;
        let value = self.spec.eval(&post_reserves, &self.weights)?;
        let invariant_residual = value - self.invariant;
        if invariant_residual.abs() > DEFAULT_REL_TOL * self.invariant {
            return Err(Error::Rejected {
                residual: invariant_residual.abs(),
                tol: DEFAULT_REL_TOL,
                invariant: self.invariant,
            });
        }
        let (spot_rate, slippage) = match pair {
            Some((i, j)) => {
                let spot = analytics::spot_rate(self, i, j).ok();
                let slip = analytics::slippage(self, trade.input[i], trade.output[j], i, j).ok();
                (spot, slip)
            }
            None => (None, None),
        };
        Ok(TradeQuote {
            trade,
            post_reserves,
            invariant_residual,
            spot_rate,
            slippage,
        })
    }

    /// Output of asset `j` received for tendering `input`.
    pub fn solve_output(&self, input: &[f64], j: usize) -> Result<TradeQuote> {
        self.check_index(j)?;
        Self::check_amounts("trade input", input, self.len())?;
        if input[j] != 0.0 {
            return Err(Error::InvalidTrade(format!(
                "input on the output asset {j} must be zero"
            )));
        }
        self.require_weight(j)?;
        if input.iter().all(|&d| d == 0.0) {
            return self.quote(Trade::zero(self.len()), None);
        }
        let post: Vec<f64> = self.reserves.iter().zip(input).map(|(r, d)| r + d).collect();
        let rj = self.reserves[j];
        let exhausted = || {
            Error::Infeasible(format!(
                "input exceeds the pool's bounded liquidity: no positive reserve of asset {j} \
                 keeps the trading function at C = {}",
                self.invariant
            ))
        };
        let mut amount = if self.is_linear() {
            -self.linear_increment(input, j)?
        } else {
            rj - self.solve_coordinate(&post, j)?.ok_or_else(exhausted)?
        };
        if self.is_linear() && amount > rj {
            return Err(exhausted());
        }
        if amount < 0.0 {
            if amount >= -NEGATIVE_CLAMP * rj {
                amount = 0.0;
            } else {
                return Err(Error::InvalidTrade(format!(
                    "solved output {amount} is negative; the input lowers the mean"
                )));
            }
        }
        if amount >= rj {
            return Err(Error::Infeasible(format!(
                "output {amount} would drain reserve {j} ({rj})"
            )));
        }
        let mut output = vec![0.0; self.len()];
        output[j] = amount;
        let trade = Trade {
            input: input.to_vec(),
            output,
        };
        let pair = single_nonzero(input).map(|i| (i, j));
        self.quote(trade, pair)
    }

    /// Input of asset `i` required to receive `output`.
    pub fn solve_input(&self, output: &[f64], i: usize) -> Result<TradeQuote> {
        self.check_index(i)?;
        Self::check_amounts("trade output", output, self.len())?;
        if output[i] != 0.0 {
            return Err(Error::InvalidTrade(format!(
                "output on the input asset {i} must be zero"
            )));
        }
        self.require_weight(i)?;
        if let Some((k, _)) = output
            .iter()
            .zip(&self.reserves)
            .enumerate()
            .find(|(_, (l, r))| **l >= **r)
        {
            return Err(Error::InvalidTrade(format!(
                "output {} of asset {k} must be below its reserve {}",
                output[k], self.reserves[k]
            )));
        }
        if output.iter().all(|&l| l == 0.0) {
            return self.quote(Trade::zero(self.len()), None);
        }
        let post: Vec<f64> = self.reserves.iter().zip(output).map(|(r, l)| r - l).collect();
        let ri = self.reserves[i];
        let mut amount = if self.is_linear() {
            let changes: Vec<f64> = output.iter().map(|l| -l).collect();
            self.linear_increment(&changes, i)?
        } else {
            let target = self.solve_coordinate(&post, i)?.ok_or_else(|| {
                Error::Infeasible(format!(
                    "no input of asset {i} restores the trading function to C = {}",
                    self.invariant
                ))
            })?;
            target - ri
        };
        if amount < 0.0 {
            if amount >= -NEGATIVE_CLAMP * ri {
                amount = 0.0;
            } else {
                return Err(Error::InvalidTrade(format!(
                    "solved input {amount} is negative; the output raises the mean"
                )));
            }
        }
        let mut input = vec![0.0; self.len()];
        input[i] = amount;
        let trade = Trade {
            input,
            output: output.to_vec(),
        };
        let pair = single_nonzero(output).map(|j| (i, j));
        self.quote(trade, pair)
    }

    /// Supremum of inputs of asset `i` that can be paid out in asset `j`.
    pub fn max_buy_size(&self, i: usize, j: usize) -> Result<BuyLimit> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidTrade("input and output asset must differ".into()));
        }
        self.require_weight(i)?;
        self.require_weight(j)?;
        match self.spec {
            MeanSpec::Geometric | MeanSpec::FMean(FKind::Log) => Ok(BuyLimit::Unbounded),
            MeanSpec::Power(_) | MeanSpec::FMean(FKind::Power(_)) => {
                let mut post = self.reserves.clone();
                post[j] = 0.0;
                // At small p the bound can exceed the f64 range; no
                // representable input reaches it then.
                Ok(match self.solve_coordinate(&post, i)? {
                    Some(target) => BuyLimit::Bounded(target - self.reserves[i]),
                    None => BuyLimit::Unbounded,
                })
            }
        }
    }
}

fn single_nonzero(v: &[f64]) -> Option<usize> {
    let mut nonzero = v.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(k, _)| k);
    match (nonzero.next(), nonzero.next()) {
        (Some(k), None) => Some(k),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool(r: &[f64], spec: MeanSpec) -> Pool {
        Pool::new(r.to_vec(), Weights::uniform(r.len()).unwrap(), spec).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn new_pool_examples() {
        assert!(close(pool(&[4.0, 4.0], MeanSpec::Power(0.5)).invariant(), 4.0, 1e-15));
        assert!(close(pool(&[4.0, 9.0], MeanSpec::Geometric).invariant(), 6.0, 1e-15));
        assert!(close(pool(&[1.0, 9.0], MeanSpec::Power(0.5)).invariant(), 4.0, 1e-15));
    }

    #[test]
    fn new_pool_errors() {
        let w = Weights::uniform(2).unwrap();
        assert!(matches!(
            Pool::new(vec![4.0, 4.0], w.clone(), MeanSpec::Power(1.5)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            Pool::new(vec![4.0, 0.0], w.clone(), MeanSpec::Power(0.5)),
            Err(Error::NonPositiveEntry { .. })
        ));
        assert!(matches!(
            Pool::new(vec![4.0, 4.0, 4.0], w, MeanSpec::Geometric),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trading_value_examples() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        assert_eq!(p.trading_value(&Trade::zero(2)).unwrap(), p.invariant());
        let t = Trade::pair(2, 0, 5.0, 1, 3.0).unwrap();
        assert!(close(p.trading_value(&t).unwrap(), 4.0, 1e-15));
        let g = pool(&[4.0, 4.0], MeanSpec::Geometric);
        let t = Trade::pair(2, 0, 4.0, 1, 2.0).unwrap();
        assert!(close(g.trading_value(&t).unwrap(), 4.0, 1e-15));
        let t = Trade::pair(2, 0, 0.0, 1, 5.0).unwrap();
        assert!(matches!(p.trading_value(&t), Err(Error::NegativeEntry { .. })));
    }

    #[test]
    fn validity_examples() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        assert!(p.is_valid_trade(&Trade::zero(2), DEFAULT_REL_TOL).unwrap());
        let t = Trade::pair(2, 0, 5.0, 1, 3.0).unwrap();
        assert!(p.is_valid_trade(&t, DEFAULT_REL_TOL).unwrap());
        let t = Trade::pair(2, 0, 5.0, 1, 3.5).unwrap();
        assert!(!p.is_valid_trade(&t, DEFAULT_REL_TOL).unwrap());
        assert!(p.is_valid_trade(&t, 0.0).is_err());
    }

    #[test]
    fn solve_output_examples() {
        let g = pool(&[4.0, 4.0], MeanSpec::Geometric);
        let q = g.solve_output(&[4.0, 0.0], 1).unwrap();
        assert!(close(q.trade.output[1], 2.0, 1e-14));
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        let q = p.solve_output(&[5.0, 0.0], 1).unwrap();
        assert!(close(q.trade.output[1], 3.0, 1e-14));
        let s = pool(&[4.0, 4.0], MeanSpec::Power(1.0));
        let q = s.solve_output(&[1.5, 0.0], 1).unwrap();
        assert_eq!(q.trade.output[1], 1.5);
        assert_eq!(q.slippage, Some(0.0));
    }

    #[test]
    fn solve_output_errors() {
        let s = pool(&[4.0, 4.0], MeanSpec::Power(1.0));
        assert!(matches!(s.solve_output(&[13.0, 0.0], 1), Err(Error::Infeasible(_))));
        // exactly draining the output reserve is rejected
        assert!(matches!(s.solve_output(&[4.0, 0.0], 1), Err(Error::Infeasible(_))));
        assert!(matches!(s.solve_output(&[1.0, 1.0], 1), Err(Error::InvalidTrade(_))));
        assert!(matches!(s.solve_output(&[1.0, 0.0], 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.solve_output(&[-1.0, 0.0], 1), Err(Error::NegativeEntry { .. })));
        let w = Weights::new(vec![1.0, 0.0]).unwrap();
        let z = Pool::new(vec![1.0, 1.0], w, MeanSpec::Geometric).unwrap();
        assert!(matches!(z.solve_output(&[1.0, 0.0], 1), Err(Error::InvalidTrade(_))));
    }

    #[test]
    fn solve_input_examples() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        let q = p.solve_input(&[0.0, 3.0], 0).unwrap();
        assert!(close(q.trade.input[0], 5.0, 1e-14));
        let g = pool(&[4.0, 4.0], MeanSpec::Geometric);
        let q = g.solve_input(&[0.0, 2.0], 0).unwrap();
        assert!(close(q.trade.input[0], 4.0, 1e-14));
        let s = pool(&[4.0, 4.0], MeanSpec::Power(1.0));
        let q = s.solve_input(&[0.0, 3.0], 0).unwrap();
        assert_eq!(q.trade.input[0], 3.0);
        assert!(matches!(s.solve_input(&[0.0, 4.0], 0), Err(Error::InvalidTrade(_))));
    }

    #[test]
    fn zero_trade_quotes_nothing() {
        let p = pool(&[3.0, 5.0, 2.0], MeanSpec::Power(0.3));
        let q = p.solve_output(&[0.0; 3], 1).unwrap();
        assert_eq!(q.trade.output, vec![0.0; 3]);
        assert_eq!(q.slippage, None);
    }

    #[test]
    fn execute_trade_examples() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        assert_eq!(p.execute_trade(&Trade::zero(2), DEFAULT_REL_TOL).unwrap(), p);
        let t = Trade::pair(2, 0, 5.0, 1, 3.0).unwrap();
        let next = p.execute_trade(&t, DEFAULT_REL_TOL).unwrap();
        assert!(close(next.reserves()[0], 9.0, 1e-15));
        assert!(close(next.reserves()[1], 1.0, 1e-15));
        assert_eq!(next.invariant(), p.invariant());
        let g = pool(&[4.0, 4.0], MeanSpec::Geometric);
        let t = Trade::pair(2, 0, 4.0, 1, 2.0).unwrap();
        let next = g.execute_trade(&t, DEFAULT_REL_TOL).unwrap();
        assert_eq!(next.reserves(), &[8.0, 2.0]);
        assert_eq!(next.invariant(), g.invariant());
    }

    #[test]
    fn execute_trade_errors() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        let t = Trade::pair(2, 0, 5.0, 1, 3.5).unwrap();
        assert!(matches!(p.execute_trade(&t, DEFAULT_REL_TOL), Err(Error::Rejected { .. })));
        let t = Trade::pair(2, 0, 12.0, 1, 4.0).unwrap();
        assert!(matches!(
            p.execute_trade(&t, DEFAULT_REL_TOL),
            Err(Error::NonPositiveEntry { .. })
        ));
    }

    #[test]
    fn max_buy_size_examples() {
        let p = pool(&[4.0, 4.0], MeanSpec::Power(0.5));
        match p.max_buy_size(0, 1).unwrap() {
            BuyLimit::Bounded(v) => assert!(close(v, 12.0, 1e-14)),
            BuyLimit::Unbounded => panic!("power pools are bounded"),
        }
        let s = pool(&[4.0, 4.0], MeanSpec::Power(1.0));
        assert_eq!(s.max_buy_size(0, 1).unwrap(), BuyLimit::Bounded(4.0));
        let g = pool(&[4.0, 4.0], MeanSpec::Geometric);
        assert_eq!(g.max_buy_size(0, 1).unwrap(), BuyLimit::Unbounded);
        assert!(g.max_buy_size(0, 0).is_err());
    }

    #[test]
    fn multi_output_trades_validate_but_are_not_solved() {
        let p = pool(&[4.0, 4.0, 4.0], MeanSpec::Power(1.0));
        let t = Trade::new(vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 1.0]).unwrap();
        assert!(p.is_valid_trade(&t, DEFAULT_REL_TOL).unwrap());
        let q = p.solve_output(&[2.0, 0.0, 0.0], 1).unwrap();
        assert_eq!(q.trade.output, vec![0.0, 2.0, 0.0]);
    }
}
