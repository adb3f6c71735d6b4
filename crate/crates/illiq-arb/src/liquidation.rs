//! Liquidation values, solvency classification and cone geometry.
//!
//! A position is a pair (cash, units). Closing it in one trade is worth
//!
//! * `units >= 0`: `cash + max(b(units), 0)` — the seller may decline to sell
//!   when proceeds would not cover the fixed fee;
//! * `units < 0`: `cash - a(-units)` — short positions must be bought back.
//!
//! The solvent set is where this value is nonnegative. Under the limiting
//! proportional prices (`bid_limit`, `ask_limit`) the solvent set becomes a
//! closed convex cone; [`delta_gap`] measures the cost of curvature relative
//! to that cone, and the scaling operations below quantify how the gap decays
//! when positions are amplified.

use serde::{Deserialize, Serialize};

use crate::curves::{m_eps_search, CostCurve, SEARCH_CAP_EXP};
use crate::error::{Error, Result};

/// A (cash, units) account pair. Units may be negative (short).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub cash: f64,
    pub units: f64,
}

impl Position {
    pub const ZERO: Position = Position { cash: 0.0, units: 0.0 };
    /// The cash coordinate direction; liquidation values are credited here.
    pub const CASH_UNIT: Position = Position { cash: 1.0, units: 0.0 };

    pub fn new(cash: f64, units: f64) -> Self {
        Position { cash, units }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Position {
            cash: self.cash * factor,
            units: self.units * factor,
        }
    }

    pub fn is_zero(self) -> bool {
        self.cash == 0.0 && self.units == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.cash.is_finite() && self.units.is_finite()
    }

    /// `|cash| + |units|`, the bound used for bounded-strategy verdicts.
    pub fn l1_norm(self) -> f64 {
        self.cash.abs() + self.units.abs()
    }
}

impl std::ops::Add for Position {
    type Output = Position;
    fn add(self, rhs: Position) -> Position {
        Position {
            cash: self.cash + rhs.cash,
            units: self.units + rhs.units,
        }
    }
}

impl std::ops::Sub for Position {
    type Output = Position;
    fn sub(self, rhs: Position) -> Position {
        Position {
            cash: self.cash - rhs.cash,
            units: self.units - rhs.units,
        }
    }
}

impl std::ops::Neg for Position {
    type Output = Position;
    fn neg(self) -> Position {
        Position {
            cash: -self.cash,
            units: -self.units,
        }
    }
}

/// Proportional-market parameters: the limiting bid/ask prices and an
/// optional proportional penalty level applied on top of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeParams {
    pub bid_limit: f64,
    pub ask_limit: f64,
    pub alpha_level: f64,
}

impl ConeParams {
    pub fn new(bid_limit: f64, ask_limit: f64, alpha_level: f64) -> Result<Self> {
        if !(bid_limit.is_finite() && ask_limit.is_finite() && alpha_level.is_finite()) {
            return Err(Error::Domain("cone parameters must be finite".into()));
        }
        if bid_limit <= 0.0 || bid_limit >= ask_limit {
            return Err(Error::Domain(format!(
                "cone needs 0 < bid_limit < ask_limit, got {bid_limit} and {ask_limit}"
            )));
        }
        if alpha_level < 0.0 || (1.0 - alpha_level) * bid_limit <= 0.0 {
            return Err(Error::Domain(format!(
                "alpha level must satisfy 0 <= alpha < 1, got {alpha_level}"
            )));
        }
        Ok(ConeParams {
            bid_limit,
            ask_limit,
            alpha_level,
        })
    }

    /// Derives cone parameters from a curve's price limits, enforcing the
    /// level cap `alpha <= min(ask_zero/ask_limit - 1, 1 - bid_zero/bid_limit)`
    /// that keeps the shifted prices inside the curve's price range.
    pub fn from_curve(curve: &CostCurve, alpha_level: f64) -> Result<Self> {
        let cap = curve.alpha_cap();
        if alpha_level > cap + 1e-12 {
            return Err(Error::Domain(format!(
                "alpha level {alpha_level} exceeds the curve's cap {cap}"
            )));
        }
        ConeParams::new(curve.bid_limit(), curve.ask_limit(), alpha_level)
    }
}

/// Where a position sits relative to a solvent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solvency {
    Interior,
    Boundary,
    Insolvent,
}

/// Classification outcome: the tag plus the liquidation value it was
/// derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolvencyClass {
    pub class: Solvency,
    pub value: f64,
}

fn classify_value(value: f64, tol: f64) -> SolvencyClass {
    let class = if value > tol {
        Solvency::Interior
    } else if value < -tol {
        Solvency::Insolvent
    } else {
        Solvency::Boundary
    };
    SolvencyClass { class, value }
}

/// Default comparison tolerance for solvency decisions at position `p`:
/// `1e-9 * (1 + |cash| + |units| * ask_zero)`.
pub fn default_tolerance(curve: &CostCurve, p: Position) -> f64 {
    1e-9 * (1.0 + p.cash.abs() + p.units.abs() * curve.ask_zero())
}

/// Cash obtained by closing `p` in one trade at the curve's prices.
pub fn liquidate(curve: &CostCurve, p: Position) -> f64 {
    p.cash + liquidate_units(curve, p.units)
}

fn liquidate_units(curve: &CostCurve, units: f64) -> f64 {
    if units >= 0.0 {
        curve.bid_proceeds_raw(units).max(0.0)
    } else {
        -curve.ask_cost_raw(-units)
    }
}

/// Liquidation value under the limiting proportional prices (the closed cone
/// market); the cone's `alpha_level` is ignored.
pub fn liquidate_limit(cone: &ConeParams, p: Position) -> f64 {
    if p.units >= 0.0 {
        p.cash + p.units * cone.bid_limit
    } else {
        p.cash + p.units * cone.ask_limit
    }
}

/// Liquidation value under the penalized proportional prices
/// `(1 - alpha) * bid_limit` and `(1 + alpha) * ask_limit`. Always at most
/// [`liquidate_limit`].
pub fn liquidate_alpha(cone: &ConeParams, p: Position) -> f64 {
    let a = cone.alpha_level;
    if p.units >= 0.0 {
        p.cash + p.units * (1.0 - a) * cone.bid_limit
    } else {
        p.cash + p.units * (1.0 + a) * cone.ask_limit
    }
}

/// The gap between the cone liquidation value and the curve liquidation
/// value, via its explicit piecewise form. Independent of cash, and
/// nonnegative for every valid curve:
///
/// * `units < 0`: `buy_fee + |units| * (ask(|units|) - ask_limit)`;
/// * `units >= 0` with `b(units) <= 0`: `units * bid_limit` (sale declined);
/// * `units >= 0` with `b(units) > 0`: `-sell_fee + units * (bid_limit - bid(units))`.
pub fn delta_gap(curve: &CostCurve, p: Position) -> f64 {
    let y = p.units;
    if y < 0.0 {
        curve.fees.buy - y * (curve.ask_price_raw(-y) - curve.ask_limit())
    } else if curve.bid_proceeds_raw(y) <= 0.0 {
        y * curve.bid_limit()
    } else {
        -curve.fees.sell + y * (curve.bid_limit() - curve.bid_price_raw(y))
    }
}

/// `delta_gap` of the scaled cash-free position `(0, lambda * y)`, divided by
/// `lambda`. Nonincreasing in `lambda` for fixed `y` and vanishing as
/// `lambda -> infinity`.
pub fn delta_rate(curve: &CostCurve, y: f64, lambda: f64) -> Result<f64> {
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!("lambda must be >= 1, got {lambda}")));
    }
    Ok(delta_gap(curve, Position::new(0.0, lambda * y)) / lambda)
}

/// Classifies `p` against the curve's solvent set using tolerance `tol`.
///
/// Positions with zero units and cash in `(0, buy_fee]` classify interior:
/// their liquidation value equals the cash even though no nearby short
/// position is solvent.
pub fn classify_position(curve: &CostCurve, p: Position, tol: f64) -> SolvencyClass {
    classify_value(liquidate(curve, p), tol)
}

/// Classifies `p` against the cone market (the penalized one when
/// `alpha_level > 0`).
pub fn cone_membership(cone: &ConeParams, p: Position, tol: f64) -> SolvencyClass {
    let value = if cone.alpha_level > 0.0 {
        liquidate_alpha(cone, p)
    } else {
        liquidate_limit(cone, p)
    };
    classify_value(value, tol)
}

/// Raises the unit component of `p` to a floor chosen so that positions
/// strictly inside the cone converge to themselves as `eps -> 0`:
///
/// * `cash <= 0`: floor `= -cash / (bid_limit - min(bid_limit/2, eps))`,
/// * `cash >= 0`: floor `= -cash / (bid_limit + eps)`.
///
/// For `cash <= 0` the output lies strictly inside the solvency cone. Cash
/// is never changed.
pub fn project_into_cone(cone: &ConeParams, p: Position, eps: f64) -> Position {
    assert!(eps > 0.0, "projection needs eps > 0");
    let floor = if p.cash <= 0.0 {
        -p.cash / (cone.bid_limit - (cone.bid_limit / 2.0).min(eps))
    } else {
        -p.cash / (cone.bid_limit + eps)
    };
    Position::new(p.cash, p.units.max(floor))
}

/// Volume thresholds past which the penalized cone's boundary rays lie
/// inside the curve's solvent set.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScalingThreshold {
    /// Volume past which the curve's prices stay within `eps` of their limits.
    pub m_eps: f64,
    /// Short positions on the penalized ask ray with `units <= y_buy` are solvent.
    pub y_buy: f64,
    /// Long positions on the penalized bid ray with `units >= y_sell` are solvent.
    pub y_sell: f64,
}

/// Computes [`ScalingThreshold`] for one curve at penalty `alpha_level` and
/// modulus target `eps in (0, alpha_level * ask_limit)`.
///
/// The fee terms use the side's own price limit with the modulus target
/// subtracted (`a0 / (alpha*ask_limit - eps_a)` and
/// `-b0 / (alpha*bid_limit - eps_b)`, with each side's target clamped to half
/// its penalty margin) so that the thresholds are sufficient for solvency on
/// both rays, not merely necessary.
pub fn scaling_threshold(
    curve: &CostCurve,
    alpha_level: f64,
    eps: f64,
) -> Result<ScalingThreshold> {
    if alpha_level <= 0.0 {
        return Err(Error::Domain(format!(
            "alpha level must be positive, got {alpha_level}"
        )));
    }
    let ask_bound = curve.ask_limit();
    if !(eps > 0.0 && eps < alpha_level * ask_bound) {
        return Err(Error::Domain(format!(
            "eps must lie in (0, alpha * ask_limit) = (0, {}), got {eps}",
            alpha_level * ask_bound
        )));
    }
    let family = std::slice::from_ref(curve);
    let m_eps = m_eps_search(family, eps)
        .ok_or_else(|| Error::Domain("price modulus never reaches eps".into()))?;

    let eps_ask = eps.min(alpha_level * curve.ask_limit() / 2.0);
    let eps_bid = eps.min(alpha_level * curve.bid_limit() / 2.0);
    let m_ask = m_eps_search(family, eps_ask)
        .ok_or_else(|| Error::Domain("price modulus never reaches eps".into()))?;
    let m_bid = m_eps_search(family, eps_bid)
        .ok_or_else(|| Error::Domain("price modulus never reaches eps".into()))?;

    let y_buy = (-m_ask).min(-curve.fees.buy / (alpha_level * curve.ask_limit() - eps_ask));
    let y_sell = m_bid.max(-curve.fees.sell / (alpha_level * curve.bid_limit() - eps_bid));
    Ok(ScalingThreshold { m_eps, y_buy, y_sell })
}

/// Outcome of a minimal-scale search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MinScale {
    /// Smallest scale `>= 1` that makes the scaled position solvent.
    Finite(f64),
    /// No scale up to 2^60 works (in particular whenever the limit-price
    /// value of the position is nonpositive with nonzero units).
    NoFiniteScale,
}

impl MinScale {
    pub fn finite(self) -> Option<f64> {
        match self {
            MinScale::Finite(s) => Some(s),
            MinScale::NoFiniteScale => None,
        }
    }
}

/// Smallest `lambda >= 1` (smallest integer when `integer_only`) with
/// `lambda * p` solvent under the curve. Solvency of scalings is monotone in
/// the scale, so doubling followed by bisection is exact.
pub fn min_scale_into_solvency(curve: &CostCurve, p: Position, integer_only: bool) -> MinScale {
    min_scale_with(curve, p, integer_only, false)
}

/// As [`min_scale_into_solvency`], but when `strictly_interior` the scaled
/// position must have strictly positive liquidation value.
pub(crate) fn min_scale_with(
    curve: &CostCurve,
    p: Position,
    integer_only: bool,
    strictly_interior: bool,
) -> MinScale {
    let accepts = |scale: f64| {
        let q = p.scaled(scale);
        let v = liquidate(curve, q);
        let tol = default_tolerance(curve, q);
        if strictly_interior {
            v > tol
        } else {
            v >= -tol
        }
    };
    if accepts(1.0) {
        return MinScale::Finite(1.0);
    }
    // The hull value bounds L from above, so a nonpositive hull value with
    // nonzero units can never be scaled into solvency.
    let limit_value = if p.units >= 0.0 {
        p.cash + p.units * curve.bid_limit()
    } else {
        p.cash + p.units * curve.ask_limit()
    };
    if p.units != 0.0 && limit_value <= 0.0 {
        return MinScale::NoFiniteScale;
    }
    let cap = 2f64.powi(SEARCH_CAP_EXP as i32);
    let mut lo = 1.0;
    let mut hi = 2.0;
    while !accepts(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > cap {
            return MinScale::NoFiniteScale;
        }
    }
    if integer_only {
        let mut lo = lo as u64;
        let mut hi = hi as u64;
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if accepts(mid as f64) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        MinScale::Finite(hi as f64)
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if accepts(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-12 * hi {
                break;
            }
        }
        MinScale::Finite(hi)
    }
}

// --- gap-decay condition checks ----------------------------------------------

/// Supremum of the scaled gap over unbounded unit counts, per scale.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailSup {
    /// Finite bound `(max(buy_fee + A, -sell_fee + B)) / lambda` where `A`,
    /// `B` are the curves' weighted gap suprema.
    Bounded { value: f64 },
    /// The weighted gap grows without bound; `value` samples the rate at a
    /// large probe volume.
    Diverging { probe_units: f64, value: f64 },
}

/// Report of the gap-decay conditions for a curve family.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionsReport {
    pub lambda_grid: Vec<f64>,
    /// Per scale: max of `delta_rate` over a unit grid with `|y| <= y_bound`.
    pub bounded_sup: Vec<f64>,
    /// Per scale: supremum of `delta_rate` over all unit counts.
    pub tail_sup: Vec<TailSup>,
    /// Uniform decay over all unit counts (holds iff no curve's weighted gap
    /// diverges).
    pub gl0_pass: bool,
    /// Decay uniformly on the bounded band: the sampled sup is nonincreasing
    /// and falls overall.
    pub l0_pass: bool,
    /// The gap is strictly positive at every nonzero sampled unit count.
    pub l1_pass: bool,
    pub l1_min_delta: f64,
}

/// Estimates the gap-decay conditions on a scale grid:
///
/// * the bounded-band supremum of `delta_rate` (40 geometric unit magnitudes
///   per sign up to `y_bound`) per scale, and whether it decays;
/// * the unbounded supremum in closed form per curve variant, flagging
///   divergence (power-law curves with genuine volume effects diverge);
/// * strict positivity of the unscaled gap off zero units.
pub fn check_l_conditions(
    curves: &[CostCurve],
    y_bound: f64,
    lambda_grid: &[f64],
) -> Result<ConditionsReport> {
    if curves.is_empty() {
        return Err(Error::Domain("condition check needs at least one curve".into()));
    }
    if lambda_grid.len() < 2 {
        return Err(Error::Domain("lambda grid needs at least 2 points".into()));
    }
    for w in lambda_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Domain("lambda grid must be strictly increasing".into()));
        }
    }
    if lambda_grid[0] < 1.0 {
        return Err(Error::Domain("lambda grid must start at or above 1".into()));
    }
    if !(y_bound > 0.0) {
        return Err(Error::Domain(format!("y bound must be positive, got {y_bound}")));
    }

    // 40 geometric unit magnitudes per sign, from y_bound/1000 up to y_bound.
    let y_grid: Vec<f64> = (0..40)
        .map(|i| y_bound * 10f64.powf(-3.0 + 3.0 * i as f64 / 39.0))
        .flat_map(|m| [m, -m])
        .collect();

    let bounded_sup: Vec<f64> = lambda_grid
        .iter()
        .map(|&lam| {
            y_grid
                .iter()
                .flat_map(|&y| curves.iter().map(move |c| delta_rate(c, y, lam).unwrap()))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();

    let diverges = curves
        .iter()
        .any(|c| c.bid_gap_sup().is_none() || c.ask_gap_sup().is_none());
    let tail_sup: Vec<TailSup> = lambda_grid
        .iter()
        .map(|&lam| {
            if diverges {
                let probe = 1e6;
                let value = curves
                    .iter()
                    .flat_map(|c| {
                        [
                            delta_rate(c, probe, lam).unwrap(),
                            delta_rate(c, -probe, lam).unwrap(),
                        ]
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                TailSup::Diverging {
                    probe_units: probe,
                    value,
                }
            } else {
                let value = curves
                    .iter()
                    .map(|c| {
                        let buy = c.fees.buy + c.ask_gap_sup().unwrap();
                        let sell = -c.fees.sell + c.bid_gap_sup().unwrap();
                        buy.max(sell) / lam
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                TailSup::Bounded { value }
            }
        })
        .collect();

    let monotone = bounded_sup
        .windows(2)
        .all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0));
    let first = bounded_sup[0];
    let last = bounded_sup[bounded_sup.len() - 1];
    let l0_pass = monotone && (last <= 1e-12 || last < first);

    let l1_min_delta = y_grid
        .iter()
        .flat_map(|&y| {
            curves
                .iter()
                .map(move |c| delta_gap(c, Position::new(0.0, y)))
        })
        .fold(f64::INFINITY, f64::min);
    let l1_pass = l1_min_delta > 0.0;

    Ok(ConditionsReport {
        lambda_grid: lambda_grid.to_vec(),
        bounded_sup,
        tail_sup,
        gl0_pass: !diverges,
        l0_pass,
        l1_pass,
        l1_min_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{CostCurve, CurveKind, FixedFees};
    use crate::fixtures;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn liquidate_reference_values() {
        let c = fixtures::curve_a();
        assert_eq!(liquidate(&c, Position::new(10.0, 0.0)), 10.0);
        assert!(close(liquidate(&c, Position::new(0.0, 3.0)), 275.75, 1e-12));
        assert!(close(liquidate(&c, Position::new(0.0, -3.0)), -315.5, 1e-12));
        // cash-translation identity
        let p = Position::new(17.5, -2.0);
        assert_eq!(
            liquidate(&c, p),
            17.5 + liquidate(&c, Position::new(0.0, -2.0))
        );
    }

    #[test]
    fn limit_and_alpha_liquidation() {
        let cone = ConeParams::new(94.5, 99.0, 0.0).unwrap();
        assert!(close(liquidate_limit(&cone, Position::new(0.0, 3.0)), 283.5, 1e-12));
        assert_eq!(liquidate_limit(&cone, Position::new(5.0, 0.0)), 5.0);
        assert_eq!(liquidate_limit(&cone, Position::new(99.0, -1.0)), 0.0);

        let pen = ConeParams::new(94.5, 99.0, 0.04).unwrap();
        assert!(close(
            liquidate_alpha(&pen, Position::new(0.0, -1.0)),
            -102.96,
            1e-12
        ));
        assert!(close(
            liquidate_alpha(&pen, Position::new(102.96, -1.0)),
            0.0,
            1e-9
        ));
        let zero = ConeParams::new(94.5, 99.0, 0.0).unwrap();
        let p = Position::new(7.0, 2.5);
        assert_eq!(liquidate_alpha(&zero, p), liquidate_limit(&zero, p));
    }

    #[test]
    fn alpha_cap_enforced_from_curve() {
        let c = fixtures::curve_a();
        assert!(ConeParams::from_curve(&c, 0.04).is_ok());
        assert!(ConeParams::from_curve(&c, 0.05).is_err());
    }

    #[test]
    fn delta_gap_piecewise_values() {
        let c = fixtures::curve_a();
        let d3 = delta_gap(&c, Position::new(0.0, 3.0));
        assert!(close(d3, 7.75, 1e-12));
        assert!(close(d3, 283.5 - 275.75, 1e-12));
        assert!(close(delta_gap(&c, Position::new(0.0, -3.0)), 18.5, 1e-12));
        assert_eq!(delta_gap(&c, Position::new(123.0, 0.0)), 0.0);
        // independent of cash
        assert_eq!(
            delta_gap(&c, Position::new(-55.0, 3.0)),
            delta_gap(&c, Position::new(55.0, 3.0))
        );
    }

    #[test]
    fn delta_rate_decay() {
        let c = fixtures::curve_a();
        assert!(close(delta_rate(&c, 3.0, 1.0).unwrap(), 7.75, 1e-12));
        assert!(delta_rate(&c, 3.0, 1e8).unwrap() <= 1e-2);
        assert_eq!(delta_rate(&c, 0.0, 17.0).unwrap(), 0.0);
        assert!(delta_rate(&c, 3.0, 0.5).is_err());
    }

    #[test]
    fn classification_reference_values() {
        let c = fixtures::curve_a();
        let tol = 1e-9;
        assert_eq!(
            classify_position(&c, Position::new(1.0, 0.0), tol).class,
            Solvency::Interior
        );
        assert_eq!(
            classify_position(&c, Position::new(315.5, -3.0), 1e-9 * 320.0).class,
            Solvency::Boundary
        );
        assert_eq!(
            classify_position(&c, Position::new(0.0, -3.0), tol).class,
            Solvency::Insolvent
        );
    }

    #[test]
    fn cone_membership_reference_values() {
        let cone = ConeParams::new(94.5, 99.0, 0.0).unwrap();
        assert_eq!(
            cone_membership(&cone, Position::new(99.0, -1.0), 1e-9).class,
            Solvency::Boundary
        );
        assert_eq!(
            cone_membership(&cone, Position::new(1.0, 1.0), 1e-9).class,
            Solvency::Interior
        );
        assert_eq!(
            cone_membership(&cone, Position::new(-1.0, 0.0), 1e-9).class,
            Solvency::Insolvent
        );
    }

    #[test]
    fn projection_cases() {
        let cone = ConeParams::new(94.5, 99.0, 0.0).unwrap();
        let kept = project_into_cone(&cone, Position::new(1.0, 0.0), 0.1);
        assert_eq!(kept, Position::new(1.0, 0.0));

        // boundary-ray formula converges as eps -> 0
        let mut eps = 1.0;
        let mut prev_gap = f64::INFINITY;
        for _ in 0..6 {
            let q = project_into_cone(&cone, Position::new(94.5, -1.0), eps);
            let gap = (q.units - (-1.0)).abs();
            assert!(gap <= prev_gap);
            prev_gap = gap;
            eps /= 10.0;
        }
        assert!(prev_gap < 1e-5);

        let raised = project_into_cone(&cone, Position::new(-94.5, 1.0), 1.0);
        assert!(close(raised.units, 94.5 / 93.5, 1e-12));
        assert_eq!(raised.cash, -94.5);
        // the x <= 0 branch lands strictly inside the cone
        let lifted = project_into_cone(&cone, Position::new(-50.0, -3.0), 0.25);
        assert!(liquidate_limit(&cone, lifted) > 0.0);
    }

    #[test]
    fn threshold_fee_term_and_trivial_case() {
        let c = fixtures::curve_a();
        let th = scaling_threshold(&c, 0.05, 0.11).unwrap();
        // modulus target dominates for the reference curve
        assert!(close(th.m_eps, 9999.0, 1e-4));
        assert_eq!(th.y_sell, th.m_eps.max(1.0 / (0.05 * 94.5 - 0.11)));
        assert!(th.y_buy <= -th.m_eps);

        let no_fees = CostCurve::new(
            CurveKind::PowerLaw {
                bid_zero: 90.0,
                bid_limit: 94.5,
                ask_zero: 110.0,
                ask_limit: 99.0,
                shape: 0.5,
            },
            FixedFees::NONE,
        )
        .unwrap();
        let th = scaling_threshold(&no_fees, 0.05, 0.11).unwrap();
        assert_eq!(th.y_buy, -th.m_eps);
        assert_eq!(th.y_sell, th.m_eps);

        assert!(scaling_threshold(&c, 0.05, 10.0).is_err());
    }

    #[test]
    fn min_scale_reference_point() {
        let c = fixtures::curve_a();
        let p = Position::new(1.05 * 99.0, -1.0);
        assert_eq!(min_scale_into_solvency(&c, p, true), MinScale::Finite(5.0));
        assert_eq!(
            min_scale_into_solvency(&c, Position::new(1.0, 0.0), true),
            MinScale::Finite(1.0)
        );
        // the unpenalized boundary ray never scales in for a strictly
        // concave curve
        assert_eq!(
            min_scale_into_solvency(&c, Position::new(94.5, -1.0), true),
            MinScale::NoFiniteScale
        );
    }

    #[test]
    fn min_scale_real_mode_brackets_integer_mode() {
        let c = fixtures::curve_a();
        let p = Position::new(1.05 * 99.0, -1.0);
        let real = min_scale_into_solvency(&c, p, false).finite().unwrap();
        assert!(real > 4.0 && real <= 5.0);
        // the real search converges onto the solvency root, up to the
        // position-scaled comparison tolerance
        let v = liquidate(&c, p.scaled(real));
        assert!(v.abs() <= 1e-5, "boundary scale should sit on the root, got {v}");
    }

    #[test]
    fn conditions_reference_behaviour() {
        let lambda_grid: Vec<f64> = (0..=8).map(|k| 10f64.powi(k)).collect();

        let prop_with_fees = CostCurve::new(
            CurveKind::FixedProportional { bid: 94.5, ask: 99.0 },
            FixedFees { buy: 2.0, sell: -1.0 },
        )
        .unwrap();
        let rep = check_l_conditions(&[prop_with_fees], 10.0, &lambda_grid).unwrap();
        assert!(rep.gl0_pass);
        match rep.tail_sup[0] {
            TailSup::Bounded { value } => assert!(close(value, 2.0, 1e-12)),
            _ => panic!("expected bounded tail"),
        }

        let rep = check_l_conditions(&[fixtures::curve_a()], 10.0, &lambda_grid).unwrap();
        assert!(!rep.gl0_pass);
        assert!(rep.l0_pass);
        assert!(rep.l1_pass && rep.l1_min_delta > 0.0);
        match rep.tail_sup[3] {
            TailSup::Diverging { value, .. } => assert!(value > 1.0),
            _ => panic!("expected diverging tail at lambda = 1e3"),
        }
    }
}
