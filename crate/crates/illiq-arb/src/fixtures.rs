//! Ready-made curves, trees and strategies used across the test suites, the
//! guide and the property runner. They double as worked examples of the API.

use crate::curves::{CostCurve, CurveKind, FixedFees};
use crate::liquidation::Position;
use crate::market::{ScenarioTree, Strategy, TreeNode};

/// Power-law curve with bid 90 -> 94.5, ask 110 -> 99, shape 1/2, buy fee 2
/// and sell fee -1.
pub fn curve_a() -> CostCurve {
    CostCurve::new(
        CurveKind::PowerLaw {
            bid_zero: 90.0,
            bid_limit: 94.5,
            ask_zero: 110.0,
            ask_limit: 99.0,
            shape: 0.5,
        },
        FixedFees { buy: 2.0, sell: -1.0 },
    )
    .expect("reference curve A is structurally valid")
}

/// Power-law curve with bid 104 -> 110, ask 120 -> 115, shape 1/2 and the
/// same fees as [`curve_a`]. Prices sit above curve A's, so holding one unit
/// from A-prices to B-prices is profitable.
pub fn curve_b() -> CostCurve {
    CostCurve::new(
        CurveKind::PowerLaw {
            bid_zero: 104.0,
            bid_limit: 110.0,
            ask_zero: 120.0,
            ask_limit: 115.0,
            shape: 0.5,
        },
        FixedFees { buy: 2.0, sell: -1.0 },
    )
    .expect("reference curve B is structurally valid")
}

/// Deterministic two-period chain: root and time-1 node quote [`curve_a`],
/// the leaf quotes [`curve_b`].
pub fn tree_d() -> ScenarioTree {
    ScenarioTree::from_nodes(vec![
        TreeNode {
            id: 0,
            time: 0,
            parent: None,
            prob: 1.0,
            curve: curve_a(),
        },
        TreeNode {
            id: 1,
            time: 1,
            parent: Some(0),
            prob: 1.0,
            curve: curve_a(),
        },
        TreeNode {
            id: 2,
            time: 2,
            parent: Some(1),
            prob: 1.0,
            curve: curve_b(),
        },
    ])
    .expect("chain fixture is structurally valid")
}

/// Buy one unit at time 1 at curve A's limiting ask (99), sell it at time 2
/// at curve B's limiting bid (110): a boundary strategy for the cone market
/// with terminal portfolio (11, 0).
pub fn chain_strategy(tree: &ScenarioTree) -> Strategy {
    Strategy::with_transfers(
        tree,
        &[
            (1, Position::new(-99.0, 1.0)),
            (2, Position::new(110.0, -1.0)),
        ],
    )
    .expect("chain strategy fits the chain fixture")
}

/// The same trade routed through the penalized cone market: buy at
/// `(1 + alpha) * 99`, sell at `(1 - alpha) * 110`. An arbitrage there
/// whenever the penalized spread stays positive (per-unit profit
/// `(1 - alpha) * 110 - (1 + alpha) * 99`).
pub fn alpha_chain_strategy(tree: &ScenarioTree, alpha: f64) -> Strategy {
    let buy_price = (1.0 + alpha) * curve_a().ask_limit();
    let sell_price = (1.0 - alpha) * curve_b().bid_limit();
    Strategy::with_transfers(
        tree,
        &[
            (1, Position::new(-buy_price, 1.0)),
            (2, Position::new(sell_price, -1.0)),
        ],
    )
    .expect("alpha chain strategy fits the chain fixture")
}

/// Nodes for a one-period tree with two leaves carrying the given branch
/// probabilities. All nodes quote [`curve_a`].
pub fn two_leaf_nodes(up: f64, down: f64) -> Vec<TreeNode> {
    vec![
        TreeNode {
            id: 0,
            time: 0,
            parent: None,
            prob: 1.0,
            curve: curve_a(),
        },
        TreeNode {
            id: 1,
            time: 1,
            parent: Some(0),
            prob: up,
            curve: curve_a(),
        },
        TreeNode {
            id: 2,
            time: 1,
            parent: Some(0),
            prob: down,
            curve: curve_a(),
        },
    ]
}

/// One-period two-leaf proportional market: the root quotes `(bid0, ask0)`,
/// the leaves quote `(bids[i], asks[i])` with probabilities `probs[i]`.
/// Fees are zero, so the cone and concave markets coincide.
pub fn proportional_one_period(
    bid0: f64,
    ask0: f64,
    bids: [f64; 2],
    asks: [f64; 2],
    probs: [f64; 2],
) -> ScenarioTree {
    let prop = |bid: f64, ask: f64| {
        CostCurve::new(CurveKind::FixedProportional { bid, ask }, FixedFees::NONE)
            .expect("proportional curve is structurally valid")
    };
    ScenarioTree::from_nodes(vec![
        TreeNode {
            id: 0,
            time: 0,
            parent: None,
            prob: 1.0,
            curve: prop(bid0, ask0),
        },
        TreeNode {
            id: 1,
            time: 1,
            parent: Some(0),
            prob: probs[0],
            curve: prop(bids[0], asks[0]),
        },
        TreeNode {
            id: 2,
            time: 1,
            parent: Some(0),
            prob: probs[1],
            curve: prop(bids[1], asks[1]),
        },
    ])
    .expect("one-period proportional tree is structurally valid")
}
