//! Constructive transfer of arbitrage between market kinds.
//!
//! Arbitrage in a cone market does not directly survive concave costs: cone
//! boundary trades are typically insolvent at curve prices. The pipelines
//! here repair that constructively, on finite trees, by exploiting two
//! facts — the solvent set absorbs upward scaling, and the per-unit gap to
//! the cone vanishes as positions grow:
//!
//! * [`repair_to_g`] scales a cone strategy by an integer `k` and settles
//!   each transfer's curve liquidation value into cash, making every
//!   transfer exactly curve-solvent; a large enough `k` turns a positive
//!   cone profit into a positive curve profit.
//! * [`amplify_alpha_to_g`] turns an arbitrage in the penalized cone market
//!   into a curve-market arbitrage by pure integer scaling (per-node scales,
//!   then a terminal scale into the solvent interior).
//! * [`amplify_kbar_to_g`] handles the unpenalized cone: transfers are first
//!   tilted strictly inside the cone (trading a vanishing slice of units),
//!   re-read as penalized-cone transfers, then amplified; the recorded trace
//!   exhibits the resulting probability sequences along a tilt grid.
//! * [`amplify_integer`] runs the same pipelines under integer unit counts,
//!   tilting the cash component instead so units stay integral.
//!
//! [`brute_force_search`] enumerates grid strategies directly and serves as
//! an oracle independent of all of the above.

use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::liquidation::{
    default_tolerance, liquidate, min_scale_with, Position,
};
use crate::market::{
    arbitrage_verdict, evolve, restrict_integer, self_financing_check, MarketKind, ScenarioTree,
    Strategy, Verdict, VerdictTag,
};

/// One amplification step: the scale used and the three probabilities of the
/// weak-asymptotic-arbitrage pattern for the scaled strategy under the curve
/// market (self-financing everywhere on the path, nonnegative terminal
/// value, strictly positive terminal value).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceStep {
    pub index: u64,
    pub scale: u64,
    pub p_self_financing: f64,
    pub p_nonneg: f64,
    pub p_positive: f64,
}

impl TraceStep {
    pub fn exact(&self) -> bool {
        self.p_self_financing >= 1.0 - 1e-12
            && self.p_nonneg >= 1.0 - 1e-12
            && self.p_positive > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceVerdict {
    /// Every step is an exact curve-market arbitrage.
    ExactArbitrage,
    /// The trailing step is exact but earlier steps are not: the sequence
    /// reaches the arbitrage pattern along the grid.
    AsymptoticTrend,
    Failed,
}

/// Record of an amplification run.
#[derive(Debug, Clone, Serialize)]
pub struct AmplificationTrace {
    pub steps: Vec<TraceStep>,
    pub verdict: TraceVerdict,
    /// Probability of a strictly positive terminal value for the input
    /// strategy under its own market kind.
    pub input_positive_prob: f64,
}

impl AmplificationTrace {
    fn classify(steps: Vec<TraceStep>, input_positive_prob: f64) -> Self {
        let verdict = if !steps.is_empty() && steps.iter().all(TraceStep::exact) {
            TraceVerdict::ExactArbitrage
        } else if steps.last().is_some_and(TraceStep::exact) {
            TraceVerdict::AsymptoticTrend
        } else {
            TraceVerdict::Failed
        };
        AmplificationTrace {
            steps,
            verdict,
            input_positive_prob,
        }
    }

    /// CSV rendering with columns `n,N_n,p_sf,p_nonneg,p_pos`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,N_n,p_sf,p_nonneg,p_pos\n");
        for s in &self.steps {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.index, s.scale, s.p_self_financing, s.p_nonneg, s.p_positive
            ));
        }
        out
    }
}

/// Evaluates the three pattern probabilities for `strategy` scaled by
/// `scale`, under the concave-cost market.
fn trace_probs(tree: &ScenarioTree, strategy: &Strategy, scale: f64) -> (f64, f64, f64) {
    let scaled = strategy.scaled(scale);
    let portfolios = evolve(tree, &scaled, Position::ZERO).expect("strategy covers the tree");
    let node_ok: Vec<bool> = tree
        .nodes()
        .iter()
        .map(|n| {
            let xi = scaled.transfer(n.id);
            let value = liquidate(&n.curve, -xi);
            value >= -default_tolerance(&n.curve, xi)
        })
        .collect();
    let mut p_sf = 0.0;
    let mut p_nonneg = 0.0;
    let mut p_pos = 0.0;
    for leaf in tree.leaves() {
        let prob = tree.path_prob(leaf.id);
        if tree.path(leaf.id).iter().all(|&id| node_ok[id]) {
            p_sf += prob;
        }
        let value = liquidate(&leaf.curve, portfolios[leaf.id]);
        let tol = default_tolerance(&leaf.curve, portfolios[leaf.id]);
        if value >= -tol {
            p_nonneg += prob;
        }
        if value > tol {
            p_pos += prob;
        }
    }
    (p_sf, p_nonneg, p_pos)
}

fn make_step(tree: &ScenarioTree, strategy: &Strategy, index: u64, scale: u64) -> TraceStep {
    let (p_self_financing, p_nonneg, p_positive) = trace_probs(tree, strategy, scale as f64);
    TraceStep {
        index,
        scale,
        p_self_financing,
        p_nonneg,
        p_positive,
    }
}

/// Replaces each leaf's transfer so that the terminal portfolio becomes pure
/// cash equal to its liquidation value under `kind`. The subtracted residual
/// has zero liquidation value, so the adjusted final transfer stays solvent
/// for `kind`; terminal values and the arbitrage pattern are unchanged.
///
/// Fails when the strategy is not self-financing for `kind` or some terminal
/// value is negative.
pub fn normalize_terminal(
    tree: &ScenarioTree,
    strategy: &Strategy,
    kind: MarketKind,
) -> Result<Strategy> {
    let sf = self_financing_check(tree, strategy, kind)?;
    if !sf.pass {
        return Err(Error::Precondition(format!(
            "strategy is not self-financing for {}",
            kind.label()
        )));
    }
    let portfolios = evolve(tree, strategy, Position::ZERO)?;
    let mut out = strategy.clone();
    for leaf in tree.leaves() {
        let terminal = portfolios[leaf.id];
        let value = kind.liquidation(&leaf.curve, terminal);
        if value < -default_tolerance(&leaf.curve, terminal) {
            return Err(Error::Domain(format!(
                "terminal value {value} at leaf {} is negative; nothing to normalize",
                leaf.id
            )));
        }
        let residual = terminal - Position::CASH_UNIT.scaled(value);
        out.transfers[leaf.id] = out.transfers[leaf.id] - residual;
    }
    Ok(out)
}

/// Result of [`repair_to_g`].
#[derive(Debug, Clone, Serialize)]
pub struct RepairOutcome {
    pub strategy: Strategy,
    pub k_used: u64,
    /// Worst active-leaf curve value at the scale that was kept.
    pub min_leaf_value: f64,
    /// `(k, worst active-leaf value)` for every scale probed by the search.
    pub scan: Vec<(u64, f64)>,
}

/// Converts a cone-market strategy with normalized terminal and positive
/// active-leaf values into an exactly curve-solvent strategy: each transfer
/// becomes `k * xi + L(-k * xi) * e1`, whose negation has curve liquidation
/// value exactly zero. With `k = None` the smallest integer `k` making every
/// active leaf's curve value strictly positive is found by doubling and
/// bisection (the leaf value per unit scale is nondecreasing in `k`, so the
/// acceptance set is upward closed).
pub fn repair_to_g(
    tree: &ScenarioTree,
    strategy: &Strategy,
    k: Option<u64>,
) -> Result<RepairOutcome> {
    let sf = self_financing_check(tree, strategy, MarketKind::Kbar)?;
    if !sf.pass {
        return Err(Error::Precondition(
            "repair needs a cone-market self-financing strategy".into(),
        ));
    }
    let portfolios = evolve(tree, strategy, Position::ZERO)?;
    for leaf in tree.leaves() {
        let terminal = portfolios[leaf.id];
        if terminal.units.abs() > 1e-9 * (1.0 + terminal.cash.abs()) {
            return Err(Error::Precondition(format!(
                "terminal at leaf {} still holds {} units; apply normalize_terminal first",
                leaf.id, terminal.units
            )));
        }
    }
    let active: Vec<usize> = tree
        .leaves()
        .filter(|leaf| {
            tree.path(leaf.id)
                .iter()
                .any(|&id| !strategy.transfer(id).is_zero())
        })
        .map(|leaf| leaf.id)
        .collect();
    if active.is_empty() {
        return Ok(RepairOutcome {
            strategy: strategy.clone(),
            k_used: 1,
            min_leaf_value: 0.0,
            scan: vec![(1, 0.0)],
        });
    }
    let input_floor = active
        .iter()
        .map(|&id| portfolios[id].cash)
        .fold(f64::INFINITY, f64::min);
    if input_floor <= 0.0 {
        return Err(Error::Precondition(format!(
            "repair needs strictly positive cone values on the active event, worst is {input_floor}"
        )));
    }

    let build = |k: u64| -> Strategy {
        let kf = k as f64;
        let mut out = strategy.clone();
        for n in tree.nodes() {
            let scaled = strategy.transfer(n.id).scaled(kf);
            let settle = liquidate(&n.curve, -scaled);
            out.transfers[n.id] = scaled + Position::CASH_UNIT.scaled(settle);
        }
        out
    };
    let min_active_value = |s: &Strategy| -> f64 {
        let values = evolve(tree, s, Position::ZERO).expect("strategy covers the tree");
        active
            .iter()
            .map(|&id| liquidate(&tree.node(id).curve, values[id]))
            .fold(f64::INFINITY, f64::min)
    };

    let mut scan = Vec::new();
    let k_used = match k {
        Some(k) => {
            if k == 0 {
                return Err(Error::Domain("repair scale must be at least 1".into()));
            }
            scan.push((k, min_active_value(&build(k))));
            k
        }
        None => {
            let probe = |k: u64, scan: &mut Vec<(u64, f64)>| -> f64 {
                let v = min_active_value(&build(k));
                scan.push((k, v));
                v
            };
            let mut lo = 1u64;
            let mut hi = 1u64;
            let mut hi_value = probe(1, &mut scan);
            while hi_value <= 0.0 {
                lo = hi;
                hi = hi.saturating_mul(2);
                if hi > 1u64 << 60 {
                    return Err(Error::Precondition(format!(
                        "no finite repair scale up to 2^60; worst active-leaf value stuck at {hi_value} \
                         (the gap to the cone does not decay fast enough on this tree)"
                    )));
                }
                hi_value = probe(hi, &mut scan);
            }
            while lo + 1 < hi {
                let mid = lo + (hi - lo) / 2;
                if probe(mid, &mut scan) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
    };
    scan.sort_by_key(|&(k, _)| k);
    scan.dedup_by_key(|&mut (k, _)| k);
    let strategy_out = build(k_used);
    let min_leaf_value = min_active_value(&strategy_out);
    Ok(RepairOutcome {
        strategy: strategy_out,
        k_used,
        min_leaf_value,
        scan,
    })
}

/// Per-time minimal integer scales making every transfer curve-solvent;
/// `Err` carries the first node whose transfer can never be scaled in.
fn node_scales(tree: &ScenarioTree, strategy: &Strategy) -> std::result::Result<u64, usize> {
    let mut per_time = vec![1u64; tree.horizon() + 1];
    for n in tree.nodes() {
        let xi = strategy.transfer(n.id);
        if xi.is_zero() {
            continue;
        }
        match min_scale_with(&n.curve, -xi, true, false) {
            crate::liquidation::MinScale::Finite(s) => {
                per_time[n.time] = per_time[n.time].max(s as u64);
            }
            crate::liquidation::MinScale::NoFiniteScale => return Err(n.id),
        }
    }
    Ok(per_time.iter().sum())
}

/// Minimal integer scale pushing every already-`n`-scaled terminal with
/// nonzero units strictly inside the curve solvent set; `Err` carries the
/// offending leaf.
fn terminal_scale(
    tree: &ScenarioTree,
    strategy: &Strategy,
    n: u64,
) -> std::result::Result<u64, usize> {
    let portfolios = evolve(tree, strategy, Position::ZERO).expect("strategy covers the tree");
    let mut best = 1u64;
    for leaf in tree.leaves() {
        let terminal = portfolios[leaf.id].scaled(n as f64);
        if terminal.units.abs() <= 1e-12 * (1.0 + terminal.cash.abs()) {
            continue;
        }
        match min_scale_with(&tree.node(leaf.id).curve, terminal, true, true) {
            crate::liquidation::MinScale::Finite(s) => best = best.max(s as u64),
            crate::liquidation::MinScale::NoFiniteScale => return Err(leaf.id),
        }
    }
    Ok(best)
}

fn ensure_alpha_within_cap(tree: &ScenarioTree, alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "penalty level must lie in (0, 1), got {alpha}"
        )));
    }
    for n in tree.nodes() {
        let cap = n.curve.alpha_cap();
        if alpha > cap + 1e-12 {
            return Err(Error::Domain(format!(
                "penalty level {alpha} exceeds the cap {cap} of node {}",
                n.id
            )));
        }
    }
    Ok(())
}

fn require_arbitrage(
    tree: &ScenarioTree,
    strategy: &Strategy,
    kind: MarketKind,
) -> Result<Verdict> {
    let verdict = arbitrage_verdict(tree, strategy, kind, None)?;
    if verdict.tag == VerdictTag::NoArbitrageWitnessed {
        return Err(Error::Precondition(format!(
            "input strategy is not an arbitrage under {}",
            kind.label()
        )));
    }
    Ok(verdict)
}

fn trivial_trace(tree: &ScenarioTree, strategy: &Strategy) -> AmplificationTrace {
    AmplificationTrace {
        steps: vec![make_step(tree, strategy, 0, 1)],
        verdict: TraceVerdict::Failed,
        input_positive_prob: 0.0,
    }
}

/// Shared scaling pipeline: per-time node scales, their sum `n`, then a
/// terminal scale `n_d` into the solvent interior. Returns the final scale
/// `N = n * n_d` together with the intermediate `n` for tracing.
fn amplify_scales(tree: &ScenarioTree, strategy: &Strategy) -> Result<(u64, u64)> {
    let n = node_scales(tree, strategy).map_err(|node| {
        Error::Precondition(format!(
            "transfer at node {node} cannot be scaled into curve solvency \
             (it sits on the unpenalized cone boundary)"
        ))
    })?;
    let n_d = terminal_scale(tree, strategy, n).map_err(|leaf| {
        Error::Precondition(format!(
            "terminal at leaf {leaf} cannot be scaled into the solvent interior"
        ))
    })?;
    Ok((n, n.saturating_mul(n_d)))
}

/// Converts an arbitrage in the penalized cone market (`level > 0`) into an
/// exact curve-market arbitrage by integer scaling, and records the trace.
///
/// Every transfer with nonzero units sits strictly inside the unpenalized
/// cone (by the penalty margin), so a finite per-node scale exists; summing
/// the per-time scales keeps every node solvent at once, and one further
/// terminal scale pushes each traded leaf strictly inside the solvent set.
/// On a finite tree the output is an exact arbitrage: terminal value is
/// positive wherever the input's terminal was nonzero, hence
/// `P{positive} >= P{input positive}`.
pub fn amplify_alpha_to_g(
    tree: &ScenarioTree,
    strategy: &Strategy,
    alpha_level: f64,
) -> Result<(Strategy, AmplificationTrace)> {
    ensure_alpha_within_cap(tree, alpha_level)?;
    let kind_in = MarketKind::Kalpha(alpha_level);
    let sf = self_financing_check(tree, strategy, kind_in)?;
    if !sf.pass {
        let bad: Vec<usize> = sf.rows.iter().filter(|r| !r.pass).map(|r| r.node).collect();
        return Err(Error::Precondition(format!(
            "strategy is not self-financing for {} at nodes {bad:?}",
            kind_in.label()
        )));
    }
    if strategy.is_zero() {
        return Ok((strategy.clone(), trivial_trace(tree, strategy)));
    }
    let verdict = require_arbitrage(tree, strategy, kind_in)?;
    let (n, total) = amplify_scales(tree, strategy)?;
    let out = strategy.scaled(total as f64);
    let mut steps = vec![make_step(tree, strategy, 0, n)];
    if total != n {
        steps.push(make_step(tree, strategy, 1, total));
    }
    Ok((
        out,
        AmplificationTrace::classify(steps, verdict.positive_prob),
    ))
}

/// Result of [`tilt_kbar_to_k`].
#[derive(Debug, Clone, Serialize)]
pub struct TiltOutcome {
    pub strategy: Strategy,
    /// Bound on the terminal cone-value perturbation:
    /// `(horizon + 1) * max ask limit / n`.
    pub perturbation_bound: f64,
}

/// Shifts the unit component of every transfer with opposite-sign cash and
/// units by `-1/n`. Boundary transfers move strictly inside the cone (into
/// the convex hull of the solvent set) at a terminal cost of order `1/n`.
pub fn tilt_kbar_to_k(tree: &ScenarioTree, strategy: &Strategy, n: u64) -> Result<TiltOutcome> {
    if n == 0 {
        return Err(Error::Domain("tilt denominator must be positive".into()));
    }
    let mut out = strategy.clone();
    out.integer = false;
    for p in &mut out.transfers {
        if p.cash * p.units < 0.0 {
            p.units -= 1.0 / n as f64;
        }
    }
    let max_ask = tree
        .nodes()
        .iter()
        .map(|node| node.curve.ask_limit())
        .fold(f64::NEG_INFINITY, f64::max);
    let perturbation_bound = (tree.horizon() + 1) as f64 * max_ask / n as f64;
    Ok(TiltOutcome {
        strategy: out,
        perturbation_bound,
    })
}

/// Divides opposite-sign unit components by `1 - 1/n` (sales) or `1 + 1/n`
/// (purchases): the exact preimage of cone-boundary transfers under the
/// penalized cone with level `1/n`.
fn divisive_tilt(strategy: &Strategy, n: u64) -> Strategy {
    let nf = n as f64;
    let mut out = strategy.clone();
    out.integer = false;
    for p in &mut out.transfers {
        if p.cash * p.units < 0.0 {
            if p.units < 0.0 {
                p.units /= 1.0 - 1.0 / nf;
            } else {
                p.units /= 1.0 + 1.0 / nf;
            }
        }
    }
    out
}

/// Scales opposite-sign cash components by `1 - alpha` (sales) or
/// `1 + alpha` (purchases), keeping units integral: the integer-market
/// counterpart of the divisive unit tilt.
fn cash_tilt(strategy: &Strategy, alpha: f64) -> Strategy {
    let mut out = strategy.clone();
    for p in &mut out.transfers {
        if p.cash * p.units < 0.0 {
            if p.units < 0.0 {
                p.cash *= 1.0 - alpha;
            } else {
                p.cash *= 1.0 + alpha;
            }
        }
    }
    out
}

/// Amplifies a cone-market arbitrage towards the curve market along a grid
/// of tilt denominators. For each `n` the strategy is tilted strictly inside
/// the cone, treated as a penalized-cone strategy at level `1/n`, and run
/// through the scaling pipeline; the step records the three pattern
/// probabilities at the scale reached (the per-node stage when the terminal
/// cannot be recovered). Scales are kept strictly increasing across steps,
/// which is harmless since solvency and positivity survive upward scaling.
pub fn amplify_kbar_to_g(
    tree: &ScenarioTree,
    strategy: &Strategy,
    n_grid: &[u64],
) -> Result<AmplificationTrace> {
    if n_grid.is_empty() {
        return Err(Error::Domain("tilt grid must be nonempty".into()));
    }
    for w in n_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Domain("tilt grid must be strictly increasing".into()));
        }
    }
    if n_grid[0] < 2 {
        return Err(Error::Domain("tilt denominators must be at least 2".into()));
    }
    let verdict = require_arbitrage(tree, strategy, MarketKind::Kbar)?;

    let mut steps = Vec::with_capacity(n_grid.len());
    let mut prev_scale = 0u64;
    for &n in n_grid {
        let tilted = divisive_tilt(strategy, n);
        let candidate = match node_scales(tree, &tilted) {
            Err(_) => 1,
            Ok(scale_sum) => match terminal_scale(tree, &tilted, scale_sum) {
                Ok(n_d) => scale_sum.saturating_mul(n_d),
                Err(_) => scale_sum,
            },
        };
        let scale = candidate.max(prev_scale + 1);
        prev_scale = scale;
        steps.push(make_step(tree, &tilted, n, scale));
    }
    Ok(AmplificationTrace::classify(steps, verdict.positive_prob))
}

/// Integer-market amplification. Under `MalphaN(level)` this is the
/// penalized-cone pipeline with integer unit counts (scales are integers, so
/// integrality is preserved); under `KbarN` the strategy's cash components
/// are first tilted by `alpha_level`, turning cone-boundary transfers into
/// penalized-cone transfers without touching the integral units.
pub fn amplify_integer(
    tree: &ScenarioTree,
    strategy: &Strategy,
    alpha_level: f64,
    kind: MarketKind,
) -> Result<(Strategy, AmplificationTrace)> {
    let strategy = restrict_integer(strategy)?;
    match kind {
        MarketKind::MalphaN(level) => {
            if (level - alpha_level).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "penalty level mismatch: kind carries {level}, argument is {alpha_level}"
                )));
            }
            ensure_alpha_within_cap(tree, level)?;
            let sf = self_financing_check(tree, &strategy, kind)?;
            if !sf.pass {
                return Err(Error::Precondition(format!(
                    "strategy is not self-financing for {}",
                    kind.label()
                )));
            }
            if strategy.is_zero() {
                return Ok((strategy.clone(), trivial_trace(tree, &strategy)));
            }
            let verdict = require_arbitrage(tree, &strategy, kind)?;
            let (n, total) = amplify_scales(tree, &strategy)?;
            let out = strategy.scaled(total as f64);
            debug_assert!(out.integer);
            let mut steps = vec![make_step(tree, &strategy, 0, n)];
            if total != n {
                steps.push(make_step(tree, &strategy, 1, total));
            }
            Ok((out, AmplificationTrace::classify(steps, verdict.positive_prob)))
        }
        MarketKind::KbarN => {
            ensure_alpha_within_cap(tree, alpha_level)?;
            let verdict = require_arbitrage(tree, &strategy, MarketKind::KbarN)?;
            let tilted = restrict_integer(&cash_tilt(&strategy, alpha_level))?;
            let pen = MarketKind::MalphaN(alpha_level);
            let pen_verdict = arbitrage_verdict(tree, &tilted, pen, None)?;
            if pen_verdict.tag == VerdictTag::NoArbitrageWitnessed {
                // The cash tilt ate the profit at this level; report honestly.
                let step = make_step(tree, &tilted, 0, 1);
                return Ok((
                    tilted,
                    AmplificationTrace {
                        steps: vec![step],
                        verdict: TraceVerdict::Failed,
                        input_positive_prob: verdict.positive_prob,
                    },
                ));
            }
            let (n, total) = amplify_scales(tree, &tilted)?;
            let out = tilted.scaled(total as f64);
            let mut steps = vec![make_step(tree, &tilted, 0, n)];
            if total != n {
                steps.push(make_step(tree, &tilted, 1, total));
            }
            Ok((out, AmplificationTrace::classify(steps, verdict.positive_prob)))
        }
        other => Err(Error::Domain(format!(
            "integer amplification needs an integer market kind, got {}",
            other.label()
        ))),
    }
}

// --- two-period growth example ------------------------------------------------

/// Parameters of the two-period growth market: spot bid/ask prices at time 1,
/// per-time proportional offsets `p` (bid rise) and `q` (ask fall), the
/// power-law shape, a growth floor for the favorable branch, its
/// probability, and optionally the traded volume.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExampleParams {
    pub bid_spot: f64,
    pub ask_spot: f64,
    /// Relative growth of spot prices on the favorable branch between
    /// times 1 and 2.
    pub growth_floor: f64,
    /// Bid offsets for times 1 and 2: the bid limit is `(1+p) * spot bid`.
    pub p: [f64; 2],
    /// Ask offsets for times 1 and 2: the ask limit is `(1-q) * spot ask`.
    pub q: [f64; 2],
    pub shape: f64,
    pub up_prob: f64,
    pub volume: Option<f64>,
}

/// A built instance of the growth market with its buy-then-sell strategy.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleMarket {
    pub tree: ScenarioTree,
    pub strategy: Strategy,
    pub volume: f64,
    /// Guaranteed per-unit profit on the favorable branch.
    pub m1: f64,
}

/// Result of [`example_strong_arbitrage`].
#[derive(Debug, Clone, Serialize)]
pub struct ExampleOutcome {
    /// Per-unit profit at every probed volume.
    pub m1_by_volume: Vec<(f64, f64)>,
    /// Whether the offsets keep each period's limit prices ordered
    /// (`(1+p) * bid_spot <= (1-q) * ask_spot`); when false, the built
    /// curves fail the limit-spread axiom and the market is arbitrageable
    /// within a single period as well.
    pub consistent: bool,
    pub built: Option<ExampleMarket>,
}

fn normalized_bid_factor(volume: f64, p: f64, shape: f64) -> f64 {
    let w = (volume + 1.0).powf(shape);
    ((1.0 + p) * w - p) / w
}

fn normalized_ask_factor(volume: f64, q: f64, shape: f64) -> f64 {
    let w = (volume + 1.0).powf(shape);
    ((1.0 - q) * w + q) / w
}

/// Builds the two-period strategy "buy `l` on the favorable branch at time 1,
/// sell at time 2" and evaluates its guaranteed per-unit profit
/// `m1 = (1 + growth) * bid_spot * d_bid(l) - ask_spot * d_ask(l)`,
/// where the normalized factors are the time-2 bid and time-1 ask curves
/// relative to their spots. When `volume` is absent the grid point
/// maximizing `m1` is taken. A strategy is emitted only when `m1 > 0`;
/// its verdict under the concave-cost market is then a strong arbitrage
/// localized on the favorable branch with floor `l * m1`.
pub fn example_strong_arbitrage(
    params: &ExampleParams,
    l_grid: &[f64],
) -> Result<ExampleOutcome> {
    for (name, v) in [("bid_spot", params.bid_spot), ("ask_spot", params.ask_spot)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!("{name} must be a positive price, got {v}")));
        }
    }
    for t in 0..2 {
        if !(params.q[t] >= 0.0 && params.q[t] < 1.0) {
            return Err(Error::Domain(format!(
                "ask offset must lie in [0, 1), got {}",
                params.q[t]
            )));
        }
        if params.p[t] < 0.0 {
            return Err(Error::Domain(format!(
                "bid offset must be nonnegative, got {}",
                params.p[t]
            )));
        }
    }
    if !(params.shape > 0.0 && params.shape < 1.0) {
        return Err(Error::Domain(format!("shape must lie in (0, 1), got {}", params.shape)));
    }
    if !(params.up_prob > 0.0 && params.up_prob <= 1.0) {
        return Err(Error::Domain(format!(
            "branch probability must lie in (0, 1], got {}",
            params.up_prob
        )));
    }
    if params.growth_floor <= -1.0 {
        return Err(Error::Domain(format!(
            "growth floor must exceed -1, got {}",
            params.growth_floor
        )));
    }

    let m1_of = |l: f64| {
        (1.0 + params.growth_floor)
            * params.bid_spot
            * normalized_bid_factor(l, params.p[1], params.shape)
            - params.ask_spot * normalized_ask_factor(l, params.q[0], params.shape)
    };
    let probe_grid: Vec<f64> = l_grid.iter().copied().filter(|&l| l > 0.0).collect();
    let m1_by_volume: Vec<(f64, f64)> = probe_grid.iter().map(|&l| (l, m1_of(l))).collect();

    let consistent = (0..2).all(|t| {
        (1.0 + params.p[t]) * params.bid_spot <= (1.0 - params.q[t]) * params.ask_spot
    });

    let volume = match params.volume {
        Some(l) => {
            if !(l > 0.0) {
                return Err(Error::Domain(format!("volume must be positive, got {l}")));
            }
            l
        }
        None => {
            let best = m1_by_volume
                .iter()
                .copied()
                .max_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((l, _)) => l,
                None => {
                    return Err(Error::Domain(
                        "volume search needs a grid with positive entries".into(),
                    ))
                }
            }
        }
    };
    let m1 = m1_of(volume);
    if m1 <= 0.0 {
        return Ok(ExampleOutcome {
            m1_by_volume,
            consistent,
            built: None,
        });
    }

    use crate::curves::{CostCurve, CurveKind, FixedFees};
    use crate::market::TreeNode;
    let curve = |scale: f64, t: usize| {
        CostCurve::new(
            CurveKind::PowerLaw {
                bid_zero: scale * params.bid_spot,
                bid_limit: scale * (1.0 + params.p[t]) * params.bid_spot,
                ask_zero: scale * params.ask_spot,
                ask_limit: scale * (1.0 - params.q[t]) * params.ask_spot,
                shape: params.shape,
            },
            FixedFees::NONE,
        )
        .expect("growth-market curves are structurally valid")
    };
    let up = 1.0 + params.growth_floor;
    let tree = ScenarioTree::from_nodes(vec![
        TreeNode { id: 0, time: 0, parent: None, prob: 1.0, curve: curve(1.0, 0) },
        TreeNode { id: 1, time: 1, parent: Some(0), prob: params.up_prob, curve: curve(1.0, 0) },
        TreeNode { id: 2, time: 1, parent: Some(0), prob: 1.0 - params.up_prob, curve: curve(1.0, 0) },
        TreeNode { id: 3, time: 2, parent: Some(1), prob: 1.0, curve: curve(up, 1) },
        TreeNode { id: 4, time: 2, parent: Some(2), prob: 1.0, curve: curve(1.0, 1) },
    ])?;
    let buy_cost = tree.node(1).curve.ask_cost(volume)?;
    let sell_proceeds = tree.node(3).curve.bid_proceeds(volume)?;
    let strategy = Strategy::with_transfers(
        &tree,
        &[
            (1, Position::new(-buy_cost, volume)),
            (3, Position::new(sell_proceeds, -volume)),
        ],
    )?;
    Ok(ExampleOutcome {
        m1_by_volume,
        consistent,
        built: Some(ExampleMarket {
            tree,
            strategy,
            volume,
            m1,
        }),
    })
}

// --- brute-force oracle --------------------------------------------------------

/// Result of a brute-force strategy search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    /// First arbitrage found, if any.
    pub arbitrage: Option<Verdict>,
    /// Largest worst-leaf value over all evaluated strategies.
    pub best_min_leaf: f64,
    pub evaluated: u64,
    /// Whether the whole assignment space was covered; when false the search
    /// stopped at the evaluation budget and the verdict is only partial.
    pub exhaustive: bool,
}

impl SearchOutcome {
    pub fn tag(&self) -> VerdictTag {
        self.arbitrage
            .as_ref()
            .map(|v| v.tag)
            .unwrap_or(VerdictTag::NoArbitrageWitnessed)
    }
}

/// Enumerates per-node "sell `m`, then buy `l`" transfers with `m`, `l`
/// drawn from the grid's nonnegative values, mapped to `kind`-boundary
/// transfer vectors, and evaluates each assignment. Exhaustive when the
/// space fits in `budget` evaluations, otherwise a seeded uniform sample of
/// `budget` assignments (flagged non-exhaustive). Returns the first
/// arbitrage found, or the best worst-leaf value seen.
pub fn brute_force_search(
    tree: &ScenarioTree,
    kind: MarketKind,
    unit_grid: &[f64],
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::Domain("search budget must be positive".into()));
    }
    let mut vols: Vec<f64> = unit_grid
        .iter()
        .map(|v| v.abs())
        .filter(|v| v.is_finite())
        .filter(|v| !kind.integer_constrained() || (v - v.round()).abs() < 1e-9)
        .collect();
    vols.sort_by(f64::total_cmp);
    vols.dedup();
    if vols.is_empty() {
        return Err(Error::Domain("unit grid has no usable volumes".into()));
    }

    // Transfer realized by selling m then buying l at the node's prices.
    let transfer = |node: usize, m: f64, l: f64| -> Position {
        let curve = &tree.node(node).curve;
        let cash = match kind {
            MarketKind::G | MarketKind::Gn => {
                let sell = if m > 0.0 { curve.bid_proceeds_raw(m) } else { 0.0 };
                let buy = if l > 0.0 { curve.ask_cost_raw(l) } else { 0.0 };
                sell - buy
            }
            MarketKind::Kbar | MarketKind::KbarN => m * curve.bid_limit() - l * curve.ask_limit(),
            MarketKind::Kalpha(a) | MarketKind::MalphaN(a) => {
                m * (1.0 - a) * curve.bid_limit() - l * (1.0 + a) * curve.ask_limit()
            }
        };
        Position::new(cash, l - m)
    };

    let choices: Vec<(f64, f64)> = vols
        .iter()
        .flat_map(|&m| vols.iter().map(move |&l| (m, l)))
        .collect();
    let node_count = tree.len();
    let space: Option<u128> = (choices.len() as u128).checked_pow(node_count as u32);
    let exhaustive = space.is_some_and(|s| s <= budget as u128);

    let mut best_min_leaf = f64::NEG_INFINITY;
    let mut evaluated = 0u64;
    let mut assignment = vec![0usize; node_count];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    loop {
        if evaluated >= budget {
            break;
        }
        if !exhaustive {
            for slot in assignment.iter_mut() {
                *slot = rng.gen_range(0..choices.len());
            }
        }
        evaluated += 1;

        let mut strategy = Strategy::zeros(tree);
        strategy.integer = kind.integer_constrained();
        for (node, &choice) in assignment.iter().enumerate() {
            let (m, l) = choices[choice];
            strategy.transfers[node] = transfer(node, m, l);
        }
        if let Ok(verdict) = arbitrage_verdict(tree, &strategy, kind, None) {
            let min_leaf = verdict
                .leaves
                .iter()
                .map(|lv| lv.value)
                .fold(f64::INFINITY, f64::min);
            best_min_leaf = best_min_leaf.max(min_leaf);
            if verdict.tag != VerdictTag::NoArbitrageWitnessed {
                return Ok(SearchOutcome {
                    arbitrage: Some(verdict),
                    best_min_leaf,
                    evaluated,
                    exhaustive,
                });
            }
        }

        if exhaustive {
            // odometer step
            let mut i = 0;
            loop {
                if i == node_count {
                    return Ok(SearchOutcome {
                        arbitrage: None,
                        best_min_leaf,
                        evaluated,
                        exhaustive,
                    });
                }
                assignment[i] += 1;
                if assignment[i] < choices.len() {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }
    Ok(SearchOutcome {
        arbitrage: None,
        best_min_leaf,
        evaluated,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::liquidation::{liquidate_limit, ConeParams};

    #[test]
    fn normalize_residual_algebra() {
        // the residual of a unit position under the reference cone prices
        let cone = ConeParams::new(94.5, 99.0, 0.0).unwrap();
        let terminal = Position::new(0.0, 1.0);
        let value = liquidate_limit(&cone, terminal);
        assert_eq!(value, 94.5);
        let residual = terminal - Position::CASH_UNIT.scaled(value);
        assert_eq!(residual, Position::new(-94.5, 1.0));
        assert_eq!(liquidate_limit(&cone, residual), 0.0);
    }

    #[test]
    fn normalize_buy_and_hold_recovers_chain() {
        let tree = fixtures::tree_d();
        let hold = Strategy::with_transfers(&tree, &[(1, Position::new(-99.0, 1.0))]).unwrap();
        let normalized = normalize_terminal(&tree, &hold, MarketKind::Kbar).unwrap();
        assert_eq!(normalized, fixtures::chain_strategy(&tree));
        // already-normalized strategies are returned unchanged
        let chain = fixtures::chain_strategy(&tree);
        assert_eq!(normalize_terminal(&tree, &chain, MarketKind::Kbar).unwrap(), chain);
    }

    #[test]
    fn normalize_rejects_negative_terminal() {
        let tree = fixtures::tree_d();
        let lossy = Strategy::with_transfers(&tree, &[(1, Position::new(-99.0, 0.5))]).unwrap();
        // paying the full unit price for half a unit is solvent node-wise but
        // ends under water
        assert!(normalize_terminal(&tree, &lossy, MarketKind::Kbar).is_err());
    }

    #[test]
    fn repair_reference_scale_and_exactness() {
        let tree = fixtures::tree_d();
        let chain = fixtures::chain_strategy(&tree);
        let repair = repair_to_g(&tree, &chain, None).unwrap();
        assert_eq!(repair.k_used, 3);
        assert!((repair.min_leaf_value - 4.5).abs() <= 1e-9);
        let sf = self_financing_check(&tree, &repair.strategy, MarketKind::G).unwrap();
        assert!(sf.pass);
        assert!(sf.worst.abs() <= 1e-9);

        // scan values follow the closed form 11k - 3 - 17k/sqrt(k+1)
        for &(k, v) in &repair.scan {
            let kf = k as f64;
            let expected = 11.0 * kf - 3.0 - 17.0 * kf / (kf + 1.0).sqrt();
            assert!((v - expected).abs() <= 1e-9 * (1.0 + expected.abs()), "k={k}");
        }
        assert!(repair.scan.iter().any(|&(k, v)| k == 2 && v < 0.0));
    }

    #[test]
    fn repair_zero_and_fixed_scale() {
        let tree = fixtures::tree_d();
        let zero = Strategy::zeros(&tree);
        let repair = repair_to_g(&tree, &zero, None).unwrap();
        assert_eq!(repair.k_used, 1);
        assert_eq!(repair.strategy, zero);

        let chain = fixtures::chain_strategy(&tree);
        let forced = repair_to_g(&tree, &chain, Some(5)).unwrap();
        assert_eq!(forced.k_used, 5);
        assert!(forced.min_leaf_value > 0.0);
    }

    #[test]
    fn repair_requires_normalized_terminal() {
        let tree = fixtures::tree_d();
        let hold = Strategy::with_transfers(&tree, &[(1, Position::new(-99.0, 1.0))]).unwrap();
        assert!(repair_to_g(&tree, &hold, None).is_err());
    }

    #[test]
    fn repair_identity_on_zero_fee_proportional_boundaries() {
        let tree = fixtures::proportional_one_period(
            95.0,
            100.0,
            [103.0, 101.0],
            [104.0, 105.0],
            [0.5, 0.5],
        );
        // buy one unit at the root ask, hold; normalize to cash at the leaves
        let buy = Strategy::with_transfers(&tree, &[(0, Position::new(-100.0, 1.0))]).unwrap();
        let normalized = normalize_terminal(&tree, &buy, MarketKind::Kbar).unwrap();
        let repair = repair_to_g(&tree, &normalized, None).unwrap();
        assert_eq!(repair.k_used, 1);
        assert_eq!(repair.strategy, normalized);
    }

    #[test]
    fn alpha_amplifier_reference_scales() {
        let tree = fixtures::tree_d();
        let strategy = fixtures::alpha_chain_strategy(&tree, 0.04);
        let (out, trace) = amplify_alpha_to_g(&tree, &strategy, 0.04).unwrap();

        // independent linear-scan oracle for the two per-node scales
        let scan = |value: &dyn Fn(f64) -> f64| -> u64 {
            let mut s = 1u64;
            while value(s as f64) < 0.0 {
                s += 1;
                assert!(s < 1000);
            }
            s
        };
        let c_a = fixtures::curve_a();
        let c_b = fixtures::curve_b();
        let buy = strategy.transfer(1);
        let sell = strategy.transfer(2);
        let n1 = scan(&|s| liquidate(&c_a, (-buy).scaled(s)));
        let n2 = scan(&|s| liquidate(&c_b, (-sell).scaled(s)));
        assert_eq!((n1, n2), (8, 2));
        let expected_scale = 1 + n1 + n2; // one per trading-free time level
        assert_eq!(out.transfers[1].units, expected_scale as f64);

        assert_eq!(trace.verdict, TraceVerdict::ExactArbitrage);
        let last = trace.steps.last().unwrap();
        assert_eq!(last.scale, expected_scale);
        assert_eq!(last.p_nonneg, 1.0);
        assert_eq!(last.p_positive, 1.0);
        assert!(self_financing_check(&tree, &out, MarketKind::G).unwrap().pass);
    }

    #[test]
    fn alpha_amplifier_precondition_and_trivial_cases() {
        let tree = fixtures::tree_d();
        // reversed trade loses money: self-financing but no arbitrage
        let bad = Strategy::with_transfers(
            &tree,
            &[
                (1, Position::new(-103.0, 1.0)),
                (2, Position::new(105.0, -1.0)),
            ],
        )
        .unwrap();
        // value 105 - 103 > 0 is still an arbitrage; make it lossy instead
        let lossy = Strategy::with_transfers(
            &tree,
            &[
                (1, Position::new(-106.0, 1.0)),
                (2, Position::new(105.0, -1.0)),
            ],
        )
        .unwrap();
        assert!(amplify_alpha_to_g(&tree, &lossy, 0.04).is_err());
        let _ = bad;

        let zero = Strategy::zeros(&tree);
        let (out, trace) = amplify_alpha_to_g(&tree, &zero, 0.04).unwrap();
        assert!(out.is_zero());
        assert_eq!(trace.verdict, TraceVerdict::Failed);
    }

    #[test]
    fn tilt_reference_cases() {
        let tree = fixtures::tree_d();
        let s = Strategy::with_transfers(
            &tree,
            &[(1, Position::new(-99.0, 1.0)), (2, Position::new(1.0, 1.0))],
        )
        .unwrap();
        let tilt = tilt_kbar_to_k(&tree, &s, 10).unwrap();
        assert_eq!(tilt.strategy.transfer(1), Position::new(-99.0, 0.9));
        assert_eq!(tilt.strategy.transfer(2), Position::new(1.0, 1.0));
        assert!((tilt_kbar_to_k(&tree, &s, 100).unwrap().perturbation_bound
            - 3.0 * 115.0 / 100.0)
            .abs()
            < 1e-12);
        assert!(tilt_kbar_to_k(&tree, &s, 0).is_err());

        // tilted boundary transfers sit strictly inside the cone
        let chain = fixtures::chain_strategy(&tree);
        let tilted = tilt_kbar_to_k(&tree, &chain, 10).unwrap().strategy;
        for n in tree.nodes() {
            let xi = tilted.transfer(n.id);
            if !xi.is_zero() {
                assert!(MarketKind::Kbar.liquidation(&n.curve, -xi) > 0.0);
            }
        }
    }

    #[test]
    fn kbar_amplifier_trend_on_chain() {
        let tree = fixtures::tree_d();
        let chain = fixtures::chain_strategy(&tree);

        // The tilt costs roughly 230/(n-1) of the 11-unit profit, so small
        // denominators fail and large ones amplify exactly.
        let trace = amplify_kbar_to_g(&tree, &chain, &[4, 16, 64]).unwrap();
        assert_eq!(trace.steps.len(), 3);
        assert!(!trace.steps[0].exact());
        assert!(!trace.steps[1].exact());
        assert!(trace.steps[2].exact());
        assert_eq!(trace.verdict, TraceVerdict::AsymptoticTrend);
        assert_eq!(trace.steps[0].p_self_financing, 1.0);
        assert_eq!(trace.steps[0].p_nonneg, 0.0);
        for w in trace.steps.windows(2) {
            assert!(w[1].scale > w[0].scale);
        }

        let trace = amplify_kbar_to_g(&tree, &chain, &[32, 64]).unwrap();
        assert_eq!(trace.verdict, TraceVerdict::ExactArbitrage);

        assert!(amplify_kbar_to_g(&tree, &chain, &[]).is_err());
        assert!(amplify_kbar_to_g(&tree, &Strategy::zeros(&tree), &[4, 8]).is_err());
    }

    #[test]
    fn integer_amplifier_matches_real_on_unit_trades() {
        let tree = fixtures::tree_d();
        let strategy = fixtures::alpha_chain_strategy(&tree, 0.04);
        let (real_out, _) = amplify_alpha_to_g(&tree, &strategy, 0.04).unwrap();
        let (int_out, trace) =
            amplify_integer(&tree, &strategy, 0.04, MarketKind::MalphaN(0.04)).unwrap();
        assert!(int_out.integer);
        assert_eq!(trace.verdict, TraceVerdict::ExactArbitrage);
        assert!(self_financing_check(&tree, &int_out, MarketKind::Gn).unwrap().pass);
        // unit components already integral: the real pipeline returns the
        // same integral units
        for (a, b) in real_out.transfers.iter().zip(&int_out.transfers) {
            assert_eq!(a.units, b.units);
            assert_eq!(a.units, a.units.round());
        }

        let mut frac = strategy.clone();
        frac.transfers[1].units = 0.5;
        assert!(amplify_integer(&tree, &frac, 0.04, MarketKind::MalphaN(0.04)).is_err());

        // pure-cash strategies cannot witness an integer arbitrage
        let zero = Strategy::zeros(&tree);
        let (out, trace) =
            amplify_integer(&tree, &zero, 0.04, MarketKind::MalphaN(0.04)).unwrap();
        assert!(out.is_zero());
        assert_eq!(trace.verdict, TraceVerdict::Failed);
    }

    #[test]
    fn example_reference_profit() {
        let params = ExampleParams {
            bid_spot: 100.0,
            ask_spot: 101.0,
            growth_floor: 0.10,
            p: [0.05, 0.05],
            q: [0.05, 0.05],
            shape: 0.5,
            up_prob: 0.6,
            volume: Some(99.0),
        };
        let outcome = example_strong_arbitrage(&params, &[99.0]).unwrap();
        let built = outcome.built.unwrap();
        assert!((built.m1 - 18.495).abs() < 1e-12);
        // the emitted strategy is a strong arbitrage with floor l * m1
        let verdict =
            arbitrage_verdict(&built.tree, &built.strategy, MarketKind::G, None).unwrap();
        assert_eq!(verdict.tag, VerdictTag::StrongArbitrage);
        let strong = verdict.strong.unwrap();
        assert_eq!(strong.t_star, 1);
        assert!((strong.floor - 99.0 * 18.495).abs() < 1e-6);
        assert!((strong.event_prob - 0.6).abs() < 1e-12);
        // these spot prices cannot keep the limit prices ordered
        assert!(!outcome.consistent);
    }

    #[test]
    fn example_degenerate_and_crash_cases() {
        let flat = ExampleParams {
            bid_spot: 100.0,
            ask_spot: 101.0,
            growth_floor: 0.10,
            p: [0.0, 0.0],
            q: [0.0, 0.0],
            shape: 0.5,
            up_prob: 0.5,
            volume: None,
        };
        let outcome = example_strong_arbitrage(&flat, &[1.0, 10.0, 99.0]).unwrap();
        for &(_, m1) in &outcome.m1_by_volume {
            assert!((m1 - 9.0).abs() < 1e-9);
        }
        assert!(outcome.consistent);

        let crash = ExampleParams {
            growth_floor: -0.5,
            volume: None,
            ..flat
        };
        let outcome = example_strong_arbitrage(&crash, &[1.0, 10.0, 99.0]).unwrap();
        assert!(outcome.built.is_none());
        assert!(outcome.m1_by_volume.iter().all(|&(_, m1)| m1 < 0.0));
    }

    #[test]
    fn brute_force_reference_markets() {
        // ask at the root below both leaf bids: buy one unit at the root
        let tree = fixtures::proportional_one_period(
            95.0,
            100.0,
            [103.0, 101.0],
            [104.0, 105.0],
            [0.5, 0.5],
        );
        let found = brute_force_search(&tree, MarketKind::G, &[0.0, 1.0], 10_000, 7).unwrap();
        assert!(found.exhaustive);
        let verdict = found.arbitrage.expect("arbitrage exists");
        let min_leaf = verdict
            .leaves
            .iter()
            .map(|lv| lv.value)
            .fold(f64::INFINITY, f64::min);
        assert!((min_leaf - 1.0).abs() < 1e-9);

        // neither closed-form condition holds
        let tree = fixtures::proportional_one_period(
            100.0,
            100.0,
            [103.0, 99.0],
            [104.0, 100.0],
            [0.5, 0.5],
        );
        let none = brute_force_search(&tree, MarketKind::G, &[0.0, 1.0], 10_000, 7).unwrap();
        assert!(none.arbitrage.is_none());
        assert!(none.exhaustive);

        // zero-width grid
        let only_zero = brute_force_search(&tree, MarketKind::G, &[0.0], 100, 7).unwrap();
        assert!(only_zero.arbitrage.is_none());
        assert_eq!(only_zero.best_min_leaf, 0.0);
    }
}
