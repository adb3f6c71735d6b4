//! Bid/ask cost curves with fixed fees.
//!
//! A one-period market quotes a bid curve `m -> bid_price(m)` (per-unit price
//! received when selling `m` units, nondecreasing in volume for a small
//! investor) and an ask curve `l -> ask_price(l)` (per-unit price paid when
//! buying `l` units, nonincreasing). Total trade values carry fixed fees:
//!
//! * proceeds of selling `m` units: `b(m) = sell_fee + m * bid_price(m)`,
//! * cost of buying `l` units: `a(l) = buy_fee + l * ask_price(l)`,
//!
//! with `sell_fee <= 0 <= buy_fee`. A valid curve has convex nondecreasing
//! proceeds, concave nondecreasing cost, and a strictly positive spread
//! between the large-volume limits (`bid_limit < ask_limit`). Those
//! properties are not enforced at construction time; [`validate_axioms`]
//! checks them on a grid and reports every violation, so that deliberately
//! broken curves can be built and diagnosed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used by the axiom and inequality checks.
pub const AXIOM_REL_TOL: f64 = 1e-9;

/// Scale cap for monotone searches (doubling stops at 2^60).
pub(crate) const SEARCH_CAP_EXP: u32 = 60;

/// Volume-independent fees. `buy` is added to every purchase cost
/// (`buy >= 0`) and `sell` to every sale's proceeds (`sell <= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedFees {
    pub buy: f64,
    pub sell: f64,
}

impl FixedFees {
    pub const NONE: FixedFees = FixedFees { buy: 0.0, sell: 0.0 };

    pub fn new(buy: f64, sell: f64) -> Result<Self> {
        if !buy.is_finite() || !sell.is_finite() {
            return Err(Error::Domain("fees must be finite".into()));
        }
        if buy < 0.0 {
            return Err(Error::Domain(format!("buy fee must be >= 0, got {buy}")));
        }
        if sell > 0.0 {
            return Err(Error::Domain(format!("sell fee must be <= 0, got {sell}")));
        }
        Ok(FixedFees { buy, sell })
    }
}

/// A price-curve family. Prices are per unit; volumes are nonnegative reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveKind {
    /// Power-law relaxation between the spot price and the large-volume
    /// limit: the bid rises as `bid_limit - (bid_limit - bid_zero)/(m+1)^shape`
    /// and the ask falls as `ask_limit + (ask_zero - ask_limit)/(l+1)^shape`,
    /// with `shape` in (0, 1).
    PowerLaw {
        bid_zero: f64,
        bid_limit: f64,
        ask_zero: f64,
        ask_limit: f64,
        shape: f64,
    },
    /// Volume-independent prices (proportional costs).
    FixedProportional { bid: f64, ask: f64 },
    /// Piecewise-linear interpolation between `[volume, price]` knots,
    /// held constant at the terminal limit beyond the last knot.
    Tabulated {
        bid_knots: Vec<[f64; 2]>,
        bid_limit: f64,
        ask_knots: Vec<[f64; 2]>,
        ask_limit: f64,
    },
}

/// One time-step's market: a curve family plus fixed fees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostCurve {
    #[serde(flatten)]
    pub kind: CurveKind,
    #[serde(default = "default_fees")]
    pub fees: FixedFees,
}

fn default_fees() -> FixedFees {
    FixedFees::NONE
}

impl CostCurve {
    /// Builds a curve after structural validation: finite positive prices,
    /// correctly signed fees, power-law monotonicity direction and shape in
    /// (0, 1), sorted tabulated knots starting at volume 0 and ending at the
    /// terminal limit. Market-consistency axioms (monotonicity of the knot
    /// prices, convexity/concavity, the limit spread) are deliberately left
    /// to [`validate_axioms`].
    pub fn new(kind: CurveKind, fees: FixedFees) -> Result<Self> {
        FixedFees::new(fees.buy, fees.sell)?;
        match &kind {
            CurveKind::PowerLaw {
                bid_zero,
                bid_limit,
                ask_zero,
                ask_limit,
                shape,
            } => {
                for (name, v) in [
                    ("bid_zero", bid_zero),
                    ("bid_limit", bid_limit),
                    ("ask_zero", ask_zero),
                    ("ask_limit", ask_limit),
                ] {
                    if !v.is_finite() || *v <= 0.0 {
                        return Err(Error::Domain(format!(
                            "{name} must be a finite positive price, got {v}"
                        )));
                    }
                }
                if !(*shape > 0.0 && *shape < 1.0) {
                    return Err(Error::Domain(format!("shape must lie in (0, 1), got {shape}")));
                }
                if bid_zero > bid_limit {
                    return Err(Error::Domain(format!(
                        "power-law bid must rise with volume: bid_zero {bid_zero} > bid_limit {bid_limit}"
                    )));
                }
                if ask_zero < ask_limit {
                    return Err(Error::Domain(format!(
                        "power-law ask must fall with volume: ask_zero {ask_zero} < ask_limit {ask_limit}"
                    )));
                }
            }
            CurveKind::FixedProportional { bid, ask } => {
                for (name, v) in [("bid", bid), ("ask", ask)] {
                    if !v.is_finite() || *v <= 0.0 {
                        return Err(Error::Domain(format!(
                            "{name} must be a finite positive price, got {v}"
                        )));
                    }
                }
            }
            CurveKind::Tabulated {
                bid_knots,
                bid_limit,
                ask_knots,
                ask_limit,
            } => {
                validate_knots("bid", bid_knots, *bid_limit)?;
                validate_knots("ask", ask_knots, *ask_limit)?;
            }
        }
        Ok(CostCurve { kind, fees })
    }

    /// Per-unit price received when selling `m` units.
    pub fn bid_price(&self, m: f64) -> Result<f64> {
        check_volume(m)?;
        Ok(self.bid_price_raw(m))
    }

    /// Per-unit price paid when buying `l` units.
    pub fn ask_price(&self, l: f64) -> Result<f64> {
        check_volume(l)?;
        Ok(self.ask_price_raw(l))
    }

    /// Total proceeds of selling `m` units, `b(m) = sell_fee + m * bid_price(m)`.
    pub fn bid_proceeds(&self, m: f64) -> Result<f64> {
        check_volume(m)?;
        Ok(self.bid_proceeds_raw(m))
    }

    /// Total cost of buying `l` units, `a(l) = buy_fee + l * ask_price(l)`.
    pub fn ask_cost(&self, l: f64) -> Result<f64> {
        check_volume(l)?;
        Ok(self.ask_cost_raw(l))
    }

    pub(crate) fn bid_price_raw(&self, m: f64) -> f64 {
        match &self.kind {
            CurveKind::PowerLaw {
                bid_zero,
                bid_limit,
                shape,
                ..
            } => bid_limit - (bid_limit - bid_zero) / (m + 1.0).powf(*shape),
            CurveKind::FixedProportional { bid, .. } => *bid,
            CurveKind::Tabulated {
                bid_knots,
                bid_limit,
                ..
            } => interpolate(bid_knots, *bid_limit, m),
        }
    }

    pub(crate) fn ask_price_raw(&self, l: f64) -> f64 {
        match &self.kind {
            CurveKind::PowerLaw {
                ask_zero,
                ask_limit,
                shape,
                ..
            } => ask_limit + (ask_zero - ask_limit) / (l + 1.0).powf(*shape),
            CurveKind::FixedProportional { ask, .. } => *ask,
            CurveKind::Tabulated {
                ask_knots,
                ask_limit,
                ..
            } => interpolate(ask_knots, *ask_limit, l),
        }
    }

    pub(crate) fn bid_proceeds_raw(&self, m: f64) -> f64 {
        self.fees.sell + m * self.bid_price_raw(m)
    }

    pub(crate) fn ask_cost_raw(&self, l: f64) -> f64 {
        self.fees.buy + l * self.ask_price_raw(l)
    }

    /// Large-volume bid price limit.
    pub fn bid_limit(&self) -> f64 {
        match &self.kind {
            CurveKind::PowerLaw { bid_limit, .. } => *bid_limit,
            CurveKind::FixedProportional { bid, .. } => *bid,
            CurveKind::Tabulated { bid_limit, .. } => *bid_limit,
        }
    }

    /// Large-volume ask price limit.
    pub fn ask_limit(&self) -> f64 {
        match &self.kind {
            CurveKind::PowerLaw { ask_limit, .. } => *ask_limit,
            CurveKind::FixedProportional { ask, .. } => *ask,
            CurveKind::Tabulated { ask_limit, .. } => *ask_limit,
        }
    }

    /// Zero-volume (spot) bid price.
    pub fn bid_zero(&self) -> f64 {
        self.bid_price_raw(0.0)
    }

    /// Zero-volume (spot) ask price.
    pub fn ask_zero(&self) -> f64 {
        self.ask_price_raw(0.0)
    }

    /// Largest proportional level that keeps the shifted limit prices inside
    /// the curve's price range: `min(ask_zero/ask_limit - 1, 1 - bid_zero/bid_limit)`.
    pub fn alpha_cap(&self) -> f64 {
        let ask_side = self.ask_zero() / self.ask_limit() - 1.0;
        let bid_side = 1.0 - self.bid_zero() / self.bid_limit();
        ask_side.min(bid_side)
    }

    /// Smallest `y >= 0` with `b(y) >= 0`: the volume past which selling
    /// covers the fixed fee. Closed form for proportional curves, bisection
    /// to 1e-12 relative otherwise.
    pub fn break_even_units(&self) -> f64 {
        if self.fees.sell == 0.0 {
            return 0.0;
        }
        if let CurveKind::FixedProportional { bid, .. } = &self.kind {
            return -self.fees.sell / bid;
        }
        // b(0) = sell_fee < 0 and b is unbounded above, so a root exists.
        let mut hi = 1.0;
        let mut lo = 0.0;
        while self.bid_proceeds_raw(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > 2f64.powi(SEARCH_CAP_EXP as i32) {
                return hi; // unreachable for positive prices
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.bid_proceeds_raw(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1e-300) {
                break;
            }
        }
        hi
    }

    /// Distance of the prices at volume `z` from their limits:
    /// `max(bid_limit - bid(z), ask(z) - ask_limit)`.
    pub fn beta_gap(&self, z: f64) -> f64 {
        let bid = self.bid_limit() - self.bid_price_raw(z);
        let ask = self.ask_price_raw(z) - self.ask_limit();
        bid.max(ask)
    }

    /// `sup_u u * (bid_limit - bid(u))`, or `None` when the supremum is
    /// infinite (power-law curves with a genuine volume effect).
    pub fn bid_gap_sup(&self) -> Option<f64> {
        match &self.kind {
            CurveKind::PowerLaw {
                bid_zero, bid_limit, ..
            } => {
                if bid_limit - bid_zero > 0.0 {
                    None
                } else {
                    Some(0.0)
                }
            }
            CurveKind::FixedProportional { .. } => Some(0.0),
            CurveKind::Tabulated {
                bid_knots,
                bid_limit,
                ..
            } => Some(weighted_gap_sup(bid_knots, |u| {
                u * (bid_limit - interpolate(bid_knots, *bid_limit, u))
            })),
        }
    }

    /// `sup_u u * (ask(u) - ask_limit)`, or `None` when infinite.
    pub fn ask_gap_sup(&self) -> Option<f64> {
        match &self.kind {
            CurveKind::PowerLaw {
                ask_zero, ask_limit, ..
            } => {
                if ask_zero - ask_limit > 0.0 {
                    None
                } else {
                    Some(0.0)
                }
            }
            CurveKind::FixedProportional { .. } => Some(0.0),
            CurveKind::Tabulated {
                ask_knots,
                ask_limit,
                ..
            } => Some(weighted_gap_sup(ask_knots, |u| {
                u * (interpolate(ask_knots, *ask_limit, u) - ask_limit)
            })),
        }
    }
}

fn check_volume(v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "volume must be finite and nonnegative, got {v}"
        )));
    }
    Ok(())
}

fn validate_knots(side: &str, knots: &[[f64; 2]], limit: f64) -> Result<()> {
    if knots.is_empty() {
        return Err(Error::Domain(format!("{side} knot list must be nonempty")));
    }
    if !limit.is_finite() || limit <= 0.0 {
        return Err(Error::Domain(format!(
            "{side} limit must be a finite positive price, got {limit}"
        )));
    }
    if knots[0][0] != 0.0 {
        return Err(Error::Domain(format!(
            "{side} knots must start at volume 0, got {}",
            knots[0][0]
        )));
    }
    for pair in knots.windows(2) {
        if pair[1][0] <= pair[0][0] {
            return Err(Error::Domain(format!(
                "{side} knot volumes must be strictly increasing at {}",
                pair[1][0]
            )));
        }
    }
    for k in knots {
        if !k[0].is_finite() || !k[1].is_finite() || k[1] <= 0.0 {
            return Err(Error::Domain(format!(
                "{side} knots must have finite volumes and positive prices, got [{}, {}]",
                k[0], k[1]
            )));
        }
    }
    let last = knots[knots.len() - 1][1];
    if (last - limit).abs() > 1e-9 * limit.abs().max(1.0) {
        return Err(Error::Domain(format!(
            "{side} curve must attain its limit at the last knot: knot price {last}, limit {limit}"
        )));
    }
    Ok(())
}

fn interpolate(knots: &[[f64; 2]], limit: f64, v: f64) -> f64 {
    let last = knots[knots.len() - 1];
    if v >= last[0] {
        let _ = last;
        return limit;
    }
    // v < last volume, and knots[0].volume == 0 <= v
    let idx = knots.partition_point(|k| k[0] <= v);
    let (lo, hi) = (knots[idx - 1], knots[idx]);
    let w = (v - lo[0]) / (hi[0] - lo[0]);
    lo[1] + w * (hi[1] - lo[1])
}

fn weighted_gap_sup(knots: &[[f64; 2]], f: impl Fn(f64) -> f64) -> f64 {
    let mut best = 0.0f64;
    for pair in knots.windows(2) {
        let (a, b) = (pair[0][0], pair[1][0]);
        for i in 0..=16 {
            let u = a + (b - a) * (i as f64) / 16.0;
            best = best.max(f(u));
        }
    }
    best
}

// --- axiom validation -------------------------------------------------------

/// One axiom or inequality check: its worst observed slack and, when the
/// check fails, where the violation happened.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Most negative slack seen (positive slack means satisfied with margin).
    pub worst_slack: f64,
    /// Human-readable location of the worst violation, if any.
    pub violation: Option<String>,
}

/// Result of [`validate_axioms`]: one entry per checked property.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct CheckAccum {
    name: &'static str,
    worst_slack: f64,
    worst_at: Option<String>,
    tolerated: bool,
}

impl CheckAccum {
    fn new(name: &'static str) -> Self {
        CheckAccum {
            name,
            worst_slack: f64::INFINITY,
            worst_at: None,
            tolerated: true,
        }
    }

    /// Records `slack`; the check fails when slack < -tol * scale.
    fn record(&mut self, slack: f64, scale: f64, at: impl Fn() -> String) {
        let tol = AXIOM_REL_TOL * scale.abs().max(1.0);
        let bad = slack < -tol;
        if slack < self.worst_slack {
            self.worst_slack = slack;
            if bad {
                self.worst_at = Some(at());
            }
        }
        if bad {
            self.tolerated = false;
        }
    }

    /// Records a strict requirement: fails when slack <= 0.
    fn record_strict(&mut self, slack: f64, at: impl Fn() -> String) {
        if slack < self.worst_slack {
            self.worst_slack = slack;
            if slack <= 0.0 {
                self.worst_at = Some(at());
            }
        }
        if slack <= 0.0 {
            self.tolerated = false;
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name,
            pass: self.tolerated,
            worst_slack: if self.worst_slack.is_finite() {
                self.worst_slack
            } else {
                0.0
            },
            violation: self.worst_at,
        }
    }
}

/// Checks the market-consistency axioms and the derived trade inequalities on
/// a volume grid:
///
/// * bid nondecreasing, ask nonincreasing (for tabulated curves the knots are
///   checked as well, so a bad knot is reported even off-grid);
/// * proceeds `b` convex nondecreasing, cost `a` concave nondecreasing
///   (discrete chord-slope test, valid for non-uniform grids);
/// * strict limit spread `bid_limit < ask_limit`;
/// * for every grid pair `0 < v2 < v1`:
///   - splitting a purchase never helps: `a(v1) - a(v1-v2) <= a(v2)`,
///   - splitting a sale never helps: `b(v1) - b(v1-v2) >= b(v2)`,
///   - purchase chords lie between the spot ask and the limit ask,
///   - sale chords lie between the spot bid and the limit bid,
///   - buying `v1` then selling back `v2` is strictly worse than buying
///     `v1 - v2`, and symmetrically for sales.
///
/// The grid must be strictly increasing, nonnegative, with at least 3 points.
pub fn validate_axioms(curve: &CostCurve, grid: &[f64]) -> Result<AxiomReport> {
    if grid.len() < 3 {
        return Err(Error::Domain(format!(
            "validation grid needs at least 3 points, got {}",
            grid.len()
        )));
    }
    if grid[0] < 0.0 || grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("validation grid must be finite and nonnegative".into()));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Domain(format!(
                "validation grid must be strictly increasing at {}",
                w[1]
            )));
        }
    }

    let bid: Vec<f64> = grid.iter().map(|&v| curve.bid_price_raw(v)).collect();
    let ask: Vec<f64> = grid.iter().map(|&v| curve.ask_price_raw(v)).collect();
    let proceeds: Vec<f64> = grid.iter().map(|&v| curve.bid_proceeds_raw(v)).collect();
    let cost: Vec<f64> = grid.iter().map(|&v| curve.ask_cost_raw(v)).collect();

    let mut a1 = CheckAccum::new("a1_bid_monotone");
    let mut a3 = CheckAccum::new("a3_ask_monotone");
    for i in 1..grid.len() {
        a1.record(bid[i] - bid[i - 1], bid[i].abs(), || {
            format!("grid volumes {}..{}", grid[i - 1], grid[i])
        });
        a3.record(ask[i - 1] - ask[i], ask[i].abs(), || {
            format!("grid volumes {}..{}", grid[i - 1], grid[i])
        });
    }
    // Knot-level checks catch violations the grid may straddle.
    if let CurveKind::Tabulated {
        bid_knots,
        ask_knots,
        ..
    } = &curve.kind
    {
        for pair in bid_knots.windows(2) {
            a1.record(pair[1][1] - pair[0][1], pair[1][1].abs(), || {
                format!("bid knot at volume {}", pair[1][0])
            });
        }
        for pair in ask_knots.windows(2) {
            a3.record(pair[0][1] - pair[1][1], pair[1][1].abs(), || {
                format!("ask knot at volume {}", pair[1][0])
            });
        }
    }

    let mut a2 = CheckAccum::new("a2_proceeds_convex_increasing");
    let mut a4 = CheckAccum::new("a4_cost_concave_increasing");
    for i in 1..grid.len() {
        let dv = grid[i] - grid[i - 1];
        a2.record(proceeds[i] - proceeds[i - 1], proceeds[i].abs(), || {
            format!("proceeds not increasing over {}..{}", grid[i - 1], grid[i])
        });
        a4.record(cost[i] - cost[i - 1], cost[i].abs(), || {
            format!("cost not increasing over {}..{}", grid[i - 1], grid[i])
        });
        if i >= 2 {
            let dv0 = grid[i - 1] - grid[i - 2];
            let slope_prev = (proceeds[i - 1] - proceeds[i - 2]) / dv0;
            let slope_next = (proceeds[i] - proceeds[i - 1]) / dv;
            a2.record(slope_next - slope_prev, slope_next.abs(), || {
                format!("proceeds chord slopes fall over {}..{}", grid[i - 2], grid[i])
            });
            let cslope_prev = (cost[i - 1] - cost[i - 2]) / dv0;
            let cslope_next = (cost[i] - cost[i - 1]) / dv;
            a4.record(cslope_prev - cslope_next, cslope_prev.abs(), || {
                format!("cost chord slopes rise over {}..{}", grid[i - 2], grid[i])
            });
        }
    }

    let mut a5 = CheckAccum::new("a5_limit_spread");
    a5.record_strict(curve.ask_limit() - curve.bid_limit(), || {
        format!(
            "bid_limit {} >= ask_limit {}",
            curve.bid_limit(),
            curve.ask_limit()
        )
    });

    let mut ineq1 = CheckAccum::new("ineq1_cost_subadditive");
    let mut ineq2 = CheckAccum::new("ineq2_proceeds_superadditive");
    let mut ineq3 = CheckAccum::new("ineq3_cost_chord_bounds");
    let mut ineq4 = CheckAccum::new("ineq4_proceeds_chord_bounds");
    let mut ineq5 = CheckAccum::new("ineq5_buy_beats_roundtrip");
    let mut ineq6 = CheckAccum::new("ineq6_sell_beats_roundtrip");

    let ask_zero = curve.ask_zero();
    let bid_zero = curve.bid_zero();
    let ask_limit = curve.ask_limit();
    let bid_limit = curve.bid_limit();

    for (i, &v1) in grid.iter().enumerate() {
        if v1 <= 0.0 {
            continue;
        }
        for &v2 in &grid[..i] {
            if v2 <= 0.0 {
                continue;
            }
            let at = || format!("v1={v1}, v2={v2}");
            let rem = v1 - v2;
            let a_v1 = curve.ask_cost_raw(v1);
            let a_v2 = curve.ask_cost_raw(v2);
            let a_rem = curve.ask_cost_raw(rem);
            let b_v1 = curve.bid_proceeds_raw(v1);
            let b_v2 = curve.bid_proceeds_raw(v2);
            let b_rem = curve.bid_proceeds_raw(rem);

            ineq1.record(a_v2 - (a_v1 - a_rem), a_v1.abs(), at);
            ineq2.record((b_v1 - b_rem) - b_v2, b_v1.abs(), at);

            let cost_chord = (a_v1 - a_rem) / v2;
            ineq3.record(ask_zero - cost_chord, ask_zero.abs(), at);
            ineq3.record(cost_chord - ask_limit, ask_limit.abs(), at);

            let proc_chord = (b_v1 - b_rem) / v2;
            ineq4.record(proc_chord - bid_zero, bid_zero.abs(), at);
            ineq4.record(bid_limit - proc_chord, bid_limit.abs(), at);

            ineq5.record_strict((a_v1 - b_v2) - a_rem, at);
            ineq6.record_strict(b_rem - (b_v1 - a_v2), at);
        }
    }

    Ok(AxiomReport {
        checks: vec![
            a1.finish(),
            a2.finish(),
            a3.finish(),
            a4.finish(),
            a5.finish(),
            ineq1.finish(),
            ineq2.finish(),
            ineq3.finish(),
            ineq4.finish(),
            ineq5.finish(),
            ineq6.finish(),
        ],
    })
}

/// Default validation grid: integer volumes 0..=100.
pub fn default_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64).collect()
}

// --- price-limit modulus ----------------------------------------------------

/// Worst-case distance of a curve family's prices from their limits, sampled
/// on a volume grid.
#[derive(Debug, Clone, Serialize)]
pub struct BetaModulus {
    pub z_grid: Vec<f64>,
    /// `beta[i] = max over curves of beta_gap(z_grid[i])`.
    pub beta: Vec<f64>,
    /// Largest ask limit across the family.
    pub b1_bound: f64,
    /// Whether `beta` is nonincreasing along the grid.
    pub b2_pass: bool,
}

impl BetaModulus {
    /// Smallest grid volume with `beta <= eps`, if any.
    pub fn m_eps(&self, eps: f64) -> Option<f64> {
        self.z_grid
            .iter()
            .zip(&self.beta)
            .find(|(_, &b)| b <= eps)
            .map(|(&z, _)| z)
    }
}

/// Evaluates the family modulus `beta(z)` on a grid, the family's ask-limit
/// bound, and whether the modulus decays monotonically.
pub fn beta_modulus(curves: &[CostCurve], z_grid: &[f64]) -> Result<BetaModulus> {
    if curves.is_empty() {
        return Err(Error::Domain("beta modulus needs at least one curve".into()));
    }
    if z_grid.is_empty() {
        return Err(Error::Domain("beta modulus needs a nonempty volume grid".into()));
    }
    for w in z_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Domain("z grid must be strictly increasing".into()));
        }
    }
    for &z in z_grid {
        check_volume(z)?;
    }
    let beta: Vec<f64> = z_grid
        .iter()
        .map(|&z| {
            curves
                .iter()
                .map(|c| c.beta_gap(z))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let b1_bound = curves
        .iter()
        .map(|c| c.ask_limit())
        .fold(f64::NEG_INFINITY, f64::max);
    let b2_pass = beta.windows(2).all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0));
    Ok(BetaModulus {
        z_grid: z_grid.to_vec(),
        beta,
        b1_bound,
        b2_pass,
    })
}

/// Smallest volume past which every curve in the family stays within `eps`
/// of its price limits, found by doubling and bisection. Returns `None` when
/// the modulus never drops to `eps` within the search cap.
pub fn m_eps_search(curves: &[CostCurve], eps: f64) -> Option<f64> {
    if eps <= 0.0 {
        return None;
    }
    let beta = |z: f64| {
        curves
            .iter()
            .map(|c| c.beta_gap(z))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    if beta(0.0) <= eps {
        return Some(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while beta(hi) > eps {
        lo = hi;
        hi *= 2.0;
        if hi > 2f64.powi(SEARCH_CAP_EXP as i32) {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if beta(mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 * hi.max(1e-300) {
            break;
        }
    }
    Some(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn power_law_bid_price_values() {
        let c = fixtures::curve_a();
        assert_eq!(c.bid_price(0.0).unwrap(), 90.0);
        assert!(close(c.bid_price(3.0).unwrap(), 92.25, 1e-12));
    }

    #[test]
    fn proportional_bid_is_constant() {
        let c = CostCurve::new(
            CurveKind::FixedProportional { bid: 94.5, ask: 99.0 },
            FixedFees::NONE,
        )
        .unwrap();
        assert_eq!(c.bid_price(7.0).unwrap(), 94.5);
    }

    #[test]
    fn power_law_ask_price_values_and_limit() {
        let c = fixtures::curve_a();
        assert_eq!(c.ask_price(0.0).unwrap(), 110.0);
        assert!(close(c.ask_price(3.0).unwrap(), 104.5, 1e-12));
        assert!((c.ask_price(1e9).unwrap() - 99.0).abs() < 1e-3);
    }

    #[test]
    fn negative_volume_is_rejected() {
        let c = fixtures::curve_a();
        assert!(c.bid_price(-1.0).is_err());
        assert!(c.ask_price(f64::NAN).is_err());
    }

    #[test]
    fn proceeds_and_cost_values() {
        let c = fixtures::curve_a();
        assert!(close(c.bid_proceeds(3.0).unwrap(), 275.75, 1e-12));
        assert_eq!(c.bid_proceeds(0.0).unwrap(), -1.0);
        assert!(close(c.ask_cost(3.0).unwrap(), 315.5, 1e-12));
        assert_eq!(c.ask_cost(0.0).unwrap(), 2.0);
        // instances of the split inequalities
        let b = |m: f64| c.bid_proceeds(m).unwrap();
        let a = |l: f64| c.ask_cost(l).unwrap();
        assert!(b(5.0) - b(3.0) >= b(2.0));
        assert!(a(5.0) - a(3.0) <= a(2.0));
    }

    #[test]
    fn break_even_units_cases() {
        let c = fixtures::curve_a();
        let y = c.break_even_units();
        // root of -1 + y*bid(y) = 0, about 1/90 to leading order
        assert!(close(c.bid_proceeds(y).unwrap(), 0.0, 1e-9));
        assert!((y - 1.0 / 90.0).abs() < 1e-4);

        let zero_fee = CostCurve::new(
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
        assert_eq!(zero_fee.break_even_units(), 0.0);

        let prop = CostCurve::new(
            CurveKind::FixedProportional { bid: 100.0, ask: 105.0 },
            FixedFees { buy: 0.0, sell: -1.0 },
        )
        .unwrap();
        assert_eq!(prop.break_even_units(), 0.01);
    }

    #[test]
    fn axioms_pass_on_reference_curve() {
        let report = validate_axioms(&fixtures::curve_a(), &default_grid()).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn limit_spread_violation_is_reported() {
        let c = CostCurve::new(
            CurveKind::PowerLaw {
                bid_zero: 95.0,
                bid_limit: 100.0,
                ask_zero: 110.0,
                ask_limit: 99.0,
                shape: 0.5,
            },
            FixedFees::NONE,
        )
        .unwrap();
        let report = validate_axioms(&c, &default_grid()).unwrap();
        assert!(!report.pass());
        assert!(!report.check("a5_limit_spread").unwrap().pass);
    }

    #[test]
    fn decreasing_bid_knot_is_reported() {
        let c = CostCurve::new(
            CurveKind::Tabulated {
                bid_knots: vec![[0.0, 90.0], [5.0, 88.0], [10.0, 94.5]],
                bid_limit: 94.5,
                ask_knots: vec![[0.0, 110.0], [10.0, 99.0]],
                ask_limit: 99.0,
            },
            FixedFees::NONE,
        )
        .unwrap();
        let report = validate_axioms(&c, &default_grid()).unwrap();
        let a1 = report.check("a1_bid_monotone").unwrap();
        assert!(!a1.pass);
        assert!(a1.violation.as_deref().unwrap().contains("5"));
    }

    #[test]
    fn beta_modulus_reference_values() {
        let curves = [fixtures::curve_a()];
        let bm = beta_modulus(&curves, &[0.0, 3.0, 99.0]).unwrap();
        assert!(close(bm.beta[0], 11.0, 1e-12));
        assert!(close(bm.beta[1], 5.5, 1e-12));
        assert!(close(bm.beta[2], 1.1, 1e-12));
        assert_eq!(bm.b1_bound, 99.0);
        assert!(bm.b2_pass);

        // proportional curves have zero modulus everywhere
        let prop = CostCurve::new(
            CurveKind::FixedProportional { bid: 94.5, ask: 99.0 },
            FixedFees::NONE,
        )
        .unwrap();
        let bm = beta_modulus(&[prop], &[0.0, 1.0, 10.0]).unwrap();
        assert!(bm.beta.iter().all(|&b| b == 0.0));

        // closed-form inversion of the reference ask gap: 11/sqrt(z+1) <= 0.11
        let m = m_eps_search(&curves, 0.11).unwrap();
        assert!((m - 9999.0).abs() < 1e-4 * 9999.0, "m = {m}");
    }

    #[test]
    fn beta_modulus_rejects_empty_family() {
        assert!(beta_modulus(&[], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn tabulated_interpolation_and_tail() {
        let c = CostCurve::new(
            CurveKind::Tabulated {
                bid_knots: vec![[0.0, 90.0], [10.0, 94.5]],
                bid_limit: 94.5,
                ask_knots: vec![[0.0, 110.0], [10.0, 99.0]],
                ask_limit: 99.0,
            },
            FixedFees::NONE,
        )
        .unwrap();
        assert!(close(c.bid_price(5.0).unwrap(), 92.25, 1e-12));
        assert_eq!(c.bid_price(50.0).unwrap(), 94.5);
        assert!(c.bid_gap_sup().is_some());
        assert!(fixtures::curve_a().bid_gap_sup().is_none());
    }
}
