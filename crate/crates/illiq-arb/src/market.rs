//! Finite scenario trees, adapted strategies and arbitrage verdicts.
//!
//! A [`ScenarioTree`] is a finite event tree: every node carries the
//! cost curve revealed at that node and the probability of the branch leading
//! to it. A [`Strategy`] assigns one transfer (a [`Position`] delta) to each
//! node; adaptedness is structural, since a node is exactly one resolved
//! history. A strategy is self-financing for a market kind when the negation
//! of every transfer is solvent for that kind's liquidation function — no
//! external capital enters.

use serde::{Deserialize, Serialize};

use crate::curves::{default_grid, validate_axioms, CostCurve};
use crate::error::{Error, Result};
use crate::liquidation::{default_tolerance, liquidate, Position};

/// Which solvent set governs transfers and terminal valuation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "alpha", rename_all = "snake_case")]
pub enum MarketKind {
    /// The volume-dependent (concave-cost) market itself.
    G,
    /// The limiting proportional market (closed solvency cone).
    Kbar,
    /// The penalized proportional market with level `alpha`.
    Kalpha(f64),
    /// The concave-cost market restricted to integer unit counts.
    Gn,
    /// The cone market restricted to integer unit counts.
    KbarN,
    /// The penalized cone market restricted to integer unit counts.
    MalphaN(f64),
}

impl MarketKind {
    /// Whether unit counts must be integers under this kind.
    pub fn integer_constrained(self) -> bool {
        matches!(self, MarketKind::Gn | MarketKind::KbarN | MarketKind::MalphaN(_))
    }

    /// Liquidation value of `p` at a node quoting `curve`.
    pub fn liquidation(self, curve: &CostCurve, p: Position) -> f64 {
        match self {
            MarketKind::G | MarketKind::Gn => liquidate(curve, p),
            MarketKind::Kbar | MarketKind::KbarN => {
                if p.units >= 0.0 {
                    p.cash + p.units * curve.bid_limit()
                } else {
                    p.cash + p.units * curve.ask_limit()
                }
            }
            MarketKind::Kalpha(a) | MarketKind::MalphaN(a) => {
                if p.units >= 0.0 {
                    p.cash + p.units * (1.0 - a) * curve.bid_limit()
                } else {
                    p.cash + p.units * (1.0 + a) * curve.ask_limit()
                }
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            MarketKind::G => "G".into(),
            MarketKind::Kbar => "Kbar".into(),
            MarketKind::Kalpha(a) => format!("Kalpha({a})"),
            MarketKind::Gn => "GN".into(),
            MarketKind::KbarN => "KbarN".into(),
            MarketKind::MalphaN(a) => format!("MalphaN({a})"),
        }
    }
}

/// One event-tree node. `prob` is the conditional probability of the branch
/// from the parent (1.0 at the root).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: usize,
    pub time: usize,
    pub parent: Option<usize>,
    pub prob: f64,
    pub curve: CostCurve,
}

/// A finite event tree with per-node curves.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioTree {
    nodes: Vec<TreeNode>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
    horizon: usize,
}

impl ScenarioTree {
    /// Builds a tree from nodes listed parent-first (`nodes[i].id == i`, the
    /// root first with no parent). Structural rules are enforced here:
    /// exactly one root at time 0, each child one step after its parent, and
    /// every leaf at the common horizon. Probability and curve-quality rules
    /// are checked by [`ScenarioTree::validate`], which reports violations
    /// instead of failing, so defective markets can still be inspected.
    pub fn from_nodes(nodes: Vec<TreeNode>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Tree("tree needs at least one node".into()));
        }
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::Tree(format!(
                    "node ids must be consecutive and in order: position {i} has id {}",
                    n.id
                )));
            }
        }
        if nodes[0].parent.is_some() || nodes[0].time != 0 {
            return Err(Error::Tree("node 0 must be the root at time 0".into()));
        }
        let mut children = vec![Vec::new(); nodes.len()];
        for n in &nodes[1..] {
            let p = n.parent.ok_or_else(|| {
                Error::Tree(format!("node {} has no parent", n.id))
            })?;
            if p >= n.id {
                return Err(Error::Tree(format!(
                    "node {} must come after its parent {p}",
                    n.id
                )));
            }
            if nodes[p].time + 1 != n.time {
                return Err(Error::Tree(format!(
                    "node {} at time {} is not one step after parent {} at time {}",
                    n.id, n.time, p, nodes[p].time
                )));
            }
            children[p].push(n.id);
        }
        let horizon = nodes.iter().map(|n| n.time).max().unwrap();
        for n in &nodes {
            if n.time < horizon && children[n.id].is_empty() {
                return Err(Error::Tree(format!(
                    "node {} at time {} has no children before the horizon {horizon}",
                    n.id, n.time
                )));
            }
        }
        Ok(ScenarioTree {
            nodes,
            children,
            horizon,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.time == self.horizon)
    }

    /// Node ids from the root to `id`, inclusive.
    pub fn path(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Product of branch probabilities from the root to `id`.
    pub fn path_prob(&self, id: usize) -> f64 {
        let mut prob = self.nodes[id].prob;
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            prob *= self.nodes[p].prob;
            cur = p;
        }
        prob
    }

    /// Whether `descendant` lies in the subtree rooted at `ancestor`.
    pub fn descends_from(&self, descendant: usize, ancestor: usize) -> bool {
        let mut cur = descendant;
        loop {
            if cur == ancestor {
                return true;
            }
            match self.nodes[cur].parent {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Checks the probability and curve-quality invariants and lists every
    /// violation: the root branch probability must be 1, sibling
    /// probabilities must be nonnegative and sum to 1, and every node's
    /// curve must pass the axiom checks on `grid` (the default volume grid
    /// when `None`).
    pub fn validate(&self, grid: Option<&[f64]>) -> TreeReport {
        let default = default_grid();
        let grid = grid.unwrap_or(&default);
        let mut violations = Vec::new();
        if (self.nodes[0].prob - 1.0).abs() > 1e-12 {
            violations.push(TreeViolation {
                node: 0,
                what: format!("root branch probability must be 1, got {}", self.nodes[0].prob),
            });
        }
        for n in &self.nodes {
            if n.prob < 0.0 || n.prob > 1.0 + 1e-12 {
                violations.push(TreeViolation {
                    node: n.id,
                    what: format!("branch probability {} outside [0, 1]", n.prob),
                });
            }
            if !self.children[n.id].is_empty() {
                let total: f64 = self.children[n.id].iter().map(|&c| self.nodes[c].prob).sum();
                if (total - 1.0).abs() > 1e-12 {
                    violations.push(TreeViolation {
                        node: n.id,
                        what: format!("children probabilities sum to {total}, expected 1"),
                    });
                }
            }
            match validate_axioms(&n.curve, grid) {
                Ok(report) => {
                    for failure in report.failures() {
                        violations.push(TreeViolation {
                            node: n.id,
                            what: format!(
                                "curve fails {}{}",
                                failure.name,
                                failure
                                    .violation
                                    .as_deref()
                                    .map(|v| format!(" ({v})"))
                                    .unwrap_or_default()
                            ),
                        });
                    }
                }
                Err(e) => violations.push(TreeViolation {
                    node: n.id,
                    what: format!("curve validation failed: {e}"),
                }),
            }
        }
        TreeReport { violations }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeViolation {
    pub node: usize,
    pub what: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeReport {
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-node transfers. `integer` tags strategies whose unit components are
/// all whole numbers (required by the integer market kinds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub transfers: Vec<Position>,
    #[serde(default)]
    pub integer: bool,
}

impl Strategy {
    pub fn zeros(tree: &ScenarioTree) -> Self {
        Strategy {
            transfers: vec![Position::ZERO; tree.len()],
            integer: false,
        }
    }

    pub fn with_transfers(tree: &ScenarioTree, entries: &[(usize, Position)]) -> Result<Self> {
        let mut s = Strategy::zeros(tree);
        for &(node, xi) in entries {
            if node >= tree.len() {
                return Err(Error::Strategy(format!("transfer refers to unknown node {node}")));
            }
            s.transfers[node] = xi;
        }
        Ok(s)
    }

    pub fn transfer(&self, node: usize) -> Position {
        self.transfers[node]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Strategy {
            transfers: self.transfers.iter().map(|p| p.scaled(factor)).collect(),
            integer: self.integer && factor.fract() == 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.transfers.iter().all(|p| p.is_zero())
    }

    /// Largest `|cash| + |units|` over all transfers.
    pub fn sup_norm(&self) -> f64 {
        self.transfers.iter().map(|p| p.l1_norm()).fold(0.0, f64::max)
    }

    fn check_len(&self, tree: &ScenarioTree) -> Result<()> {
        if self.transfers.len() != tree.len() {
            return Err(Error::Strategy(format!(
                "strategy covers {} nodes, tree has {}",
                self.transfers.len(),
                tree.len()
            )));
        }
        Ok(())
    }
}

/// Rejects strategies with fractional unit components (within 1e-9) and tags
/// the rest as integer.
pub fn restrict_integer(strategy: &Strategy) -> Result<Strategy> {
    let offenders: Vec<usize> = strategy
        .transfers
        .iter()
        .enumerate()
        .filter(|(_, p)| (p.units - p.units.round()).abs() > 1e-9)
        .map(|(i, _)| i)
        .collect();
    if !offenders.is_empty() {
        return Err(Error::Strategy(format!(
            "non-integral unit components at nodes {offenders:?}"
        )));
    }
    Ok(Strategy {
        transfers: strategy.transfers.clone(),
        integer: true,
    })
}

/// One node's self-financing check: the kind's liquidation value of the
/// negated transfer, the tolerance it was compared against, and the result.
#[derive(Debug, Clone, Serialize)]
pub struct NodeCheck {
    pub node: usize,
    pub value: f64,
    pub tol: f64,
    pub integral: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfFinancingReport {
    pub rows: Vec<NodeCheck>,
    pub pass: bool,
    /// Most negative solvency value across nodes.
    pub worst: f64,
}

/// Checks that the negation of every transfer is solvent for `kind` at its
/// node's curve (and integral under the integer kinds).
pub fn self_financing_check(
    tree: &ScenarioTree,
    strategy: &Strategy,
    kind: MarketKind,
) -> Result<SelfFinancingReport> {
    strategy.check_len(tree)?;
    let mut rows = Vec::with_capacity(tree.len());
    let mut pass = true;
    let mut worst = f64::INFINITY;
    for n in tree.nodes() {
        let xi = strategy.transfer(n.id);
        if !xi.is_finite() {
            return Err(Error::Strategy(format!("non-finite transfer at node {}", n.id)));
        }
        let value = kind.liquidation(&n.curve, -xi);
        let tol = default_tolerance(&n.curve, xi);
        let integral = !kind.integer_constrained()
            || (xi.units - xi.units.round()).abs() <= 1e-9;
        let ok = value >= -tol && integral;
        pass &= ok;
        worst = worst.min(value);
        rows.push(NodeCheck {
            node: n.id,
            value,
            tol,
            integral,
            pass: ok,
        });
    }
    Ok(SelfFinancingReport { rows, pass, worst })
}

/// Portfolio at every node: the initial position plus the transfers along
/// the root path, including the node's own.
pub fn evolve(tree: &ScenarioTree, strategy: &Strategy, initial: Position) -> Result<Vec<Position>> {
    strategy.check_len(tree)?;
    let mut values = vec![Position::ZERO; tree.len()];
    for n in tree.nodes() {
        let inherited = match n.parent {
            Some(p) => values[p],
            None => initial,
        };
        values[n.id] = inherited + strategy.transfer(n.id);
    }
    Ok(values)
}

/// Terminal value at one leaf: the kind's liquidation of the leaf portfolio
/// and the probability of that scenario.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LeafValue {
    pub node: usize,
    pub value: f64,
    pub prob: f64,
}

/// Liquidates the terminal portfolio at every leaf under `kind`.
pub fn terminal_liquidation(
    tree: &ScenarioTree,
    strategy: &Strategy,
    kind: MarketKind,
) -> Result<Vec<LeafValue>> {
    let portfolios = evolve(tree, strategy, Position::ZERO)?;
    Ok(tree
        .leaves()
        .map(|leaf| LeafValue {
            node: leaf.id,
            value: kind.liquidation(&leaf.curve, portfolios[leaf.id]),
            prob: tree.path_prob(leaf.id),
        })
        .collect())
}

/// Probability of the leaf event `pred` (sum of scenario probabilities).
pub fn event_probability(tree: &ScenarioTree, pred: impl Fn(&TreeNode) -> bool) -> f64 {
    tree.leaves()
        .filter(|leaf| pred(leaf))
        .map(|leaf| tree.path_prob(leaf.id))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    NoArbitrageWitnessed,
    Arbitrage,
    StrongArbitrage,
    BoundedArbitrage,
}

/// The one-event localization of a strong arbitrage: all trading begins at
/// `t_star` on the nodes in `event`, and every leaf below the event ends
/// with value at least `floor > 0`.
#[derive(Debug, Clone, Serialize)]
pub struct StrongPattern {
    pub t_star: usize,
    pub event: Vec<usize>,
    pub event_prob: f64,
    pub floor: f64,
}

/// Outcome of evaluating one strategy on one tree under one market kind.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub kind: String,
    pub leaves: Vec<LeafValue>,
    /// Probability mass of strictly positive terminal value.
    pub positive_prob: f64,
    pub strong: Option<StrongPattern>,
    /// Largest `|cash| + |units|` across the strategy's transfers.
    pub realized_bound: f64,
    pub witness: Strategy,
}

/// Evaluates the arbitrage pattern: every terminal value nonnegative and a
/// positive-probability strictly positive tail. When that holds, the
/// strong pattern is attempted (first trading time, its active event, and a
/// positive floor below it), and `bound` — when supplied and respected —
/// tags the verdict as bounded arbitrage.
///
/// Fails when the strategy is not self-financing for `kind`.
pub fn arbitrage_verdict(
    tree: &ScenarioTree,
    strategy: &Strategy,
    kind: MarketKind,
    bound: Option<f64>,
) -> Result<Verdict> {
    let sf = self_financing_check(tree, strategy, kind)?;
    if !sf.pass {
        let bad: Vec<usize> = sf.rows.iter().filter(|r| !r.pass).map(|r| r.node).collect();
        return Err(Error::Precondition(format!(
            "strategy is not self-financing for {} at nodes {bad:?} (worst value {})",
            kind.label(),
            sf.worst
        )));
    }
    let leaves = terminal_liquidation(tree, strategy, kind)?;
    let leaf_tol = |lv: &LeafValue| {
        default_tolerance(&tree.node(lv.node).curve, Position::new(lv.value, 0.0))
    };
    let nonneg = leaves.iter().all(|lv| lv.value >= -leaf_tol(lv));
    let positive_prob: f64 = leaves
        .iter()
        .filter(|lv| lv.value > leaf_tol(lv))
        .map(|lv| lv.prob)
        .sum();
    let realized_bound = strategy.sup_norm();

    if !(nonneg && positive_prob > 0.0) {
        return Ok(Verdict {
            tag: VerdictTag::NoArbitrageWitnessed,
            kind: kind.label(),
            leaves,
            positive_prob,
            strong: None,
            realized_bound,
            witness: strategy.clone(),
        });
    }

    let strong = strong_pattern(tree, strategy, &leaves);
    let tag = if strong.is_some() {
        VerdictTag::StrongArbitrage
    } else if bound.is_some_and(|m| realized_bound <= m) {
        VerdictTag::BoundedArbitrage
    } else {
        VerdictTag::Arbitrage
    };
    Ok(Verdict {
        tag,
        kind: kind.label(),
        leaves,
        positive_prob,
        strong,
        realized_bound,
        witness: strategy.clone(),
    })
}

/// Locates the strong-arbitrage localization, if the strategy exhibits it:
/// `t_star` is the first time with a nonzero transfer, the event collects the
/// `t_star` nodes whose subtrees trade, and the floor is the worst leaf value
/// below the event — the pattern holds when that floor is strictly positive
/// and the event has positive probability. Off the event nothing is traded
/// and every leaf value is exactly zero by construction.
fn strong_pattern(
    tree: &ScenarioTree,
    strategy: &Strategy,
    leaves: &[LeafValue],
) -> Option<StrongPattern> {
    let t_star = tree
        .nodes()
        .iter()
        .filter(|n| !strategy.transfer(n.id).is_zero())
        .map(|n| n.time)
        .min()?;
    let event: Vec<usize> = tree
        .nodes()
        .iter()
        .filter(|n| n.time == t_star)
        .filter(|n| {
            tree.nodes()
                .iter()
                .any(|m| !strategy.transfer(m.id).is_zero() && tree.descends_from(m.id, n.id))
        })
        .map(|n| n.id)
        .collect();
    let event_prob: f64 = event.iter().map(|&id| tree.path_prob(id)).sum();
    if event_prob <= 0.0 {
        return None;
    }
    let mut floor = f64::INFINITY;
    for lv in leaves {
        if event.iter().any(|&b| tree.descends_from(lv.node, b)) {
            floor = floor.min(lv.value);
        }
    }
    let tol = 1e-9 * (1.0 + floor.abs());
    (floor.is_finite() && floor > tol).then_some(StrongPattern {
        t_star,
        event,
        event_prob,
        floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_tree_structure() {
        let tree = fixtures::tree_d();
        assert_eq!(tree.horizon(), 2);
        assert_eq!(tree.len(), 3);
        assert_eq!(tree.leaves().count(), 1);
        assert_eq!(tree.path(2), vec![0, 1, 2]);
        assert!(tree.validate(None).pass());
    }

    #[test]
    fn two_leaf_tree_probability_violation() {
        let mut nodes = fixtures::two_leaf_nodes(0.5, 0.5);
        assert!(ScenarioTree::from_nodes(nodes.clone()).unwrap().validate(None).pass());
        nodes[1].prob = 0.6;
        nodes[2].prob = 0.6;
        let tree = ScenarioTree::from_nodes(nodes).unwrap();
        let report = tree.validate(None);
        assert!(!report.pass());
        assert!(report.violations.iter().any(|v| v.what.contains("1.2")));
    }

    #[test]
    fn curve_violation_names_node() {
        let mut nodes = fixtures::two_leaf_nodes(0.5, 0.5);
        nodes[2].curve = crate::curves::CostCurve::new(
            crate::curves::CurveKind::PowerLaw {
                bid_zero: 95.0,
                bid_limit: 100.0,
                ask_zero: 110.0,
                ask_limit: 99.0,
                shape: 0.5,
            },
            crate::curves::FixedFees::NONE,
        )
        .unwrap();
        let tree = ScenarioTree::from_nodes(nodes).unwrap();
        let report = tree.validate(None);
        assert!(report
            .violations
            .iter()
            .any(|v| v.node == 2 && v.what.contains("a5")));
    }

    #[test]
    fn self_financing_reference_cases() {
        let tree = fixtures::tree_d();
        let zero = Strategy::zeros(&tree);
        for kind in [
            MarketKind::G,
            MarketKind::Kbar,
            MarketKind::Kalpha(0.04),
            MarketKind::Gn,
            MarketKind::KbarN,
            MarketKind::MalphaN(0.04),
        ] {
            assert!(self_financing_check(&tree, &zero, kind).unwrap().pass);
        }

        let chain = fixtures::chain_strategy(&tree);
        assert!(self_financing_check(&tree, &chain, MarketKind::Kbar).unwrap().pass);
        let under_g = self_financing_check(&tree, &chain, MarketKind::G).unwrap();
        assert!(!under_g.pass);
        // L(99, -1) = 99 - a(1) at the first traded node
        let row = &under_g.rows[1];
        let a_one = tree.node(1).curve.ask_cost(1.0).unwrap();
        assert!((row.value - (99.0 - a_one)).abs() < 1e-9);
        assert!(row.value < 0.0);
    }

    #[test]
    fn evolve_reference_cases() {
        let tree = fixtures::tree_d();
        let all_zero = Strategy::zeros(&tree);
        let vals = evolve(&tree, &all_zero, Position::new(1.0, 2.0)).unwrap();
        assert!(vals.iter().all(|&v| v == Position::new(1.0, 2.0)));

        let chain = fixtures::chain_strategy(&tree);
        let vals = evolve(&tree, &chain, Position::ZERO).unwrap();
        assert_eq!(vals[2], Position::new(11.0, 0.0));

        // transfers only at the root propagate to every leaf
        let two = ScenarioTree::from_nodes(fixtures::two_leaf_nodes(0.5, 0.5)).unwrap();
        let s = Strategy::with_transfers(&two, &[(0, Position::new(1.0, 1.0))]).unwrap();
        let vals = evolve(&two, &s, Position::ZERO).unwrap();
        assert_eq!(vals[1], vals[2]);
    }

    #[test]
    fn terminal_liquidation_reference_cases() {
        let tree = fixtures::tree_d();
        let zero = Strategy::zeros(&tree);
        let vals = terminal_liquidation(&tree, &zero, MarketKind::G).unwrap();
        assert!(vals.iter().all(|lv| lv.value == 0.0));

        let chain = fixtures::chain_strategy(&tree);
        let vals = terminal_liquidation(&tree, &chain, MarketKind::Kbar).unwrap();
        assert_eq!(vals.len(), 1);
        assert!((vals[0].value - 11.0).abs() < 1e-12);
        assert_eq!(vals[0].prob, 1.0);
        // zero units at the leaf, so the concave value agrees
        let vals = terminal_liquidation(&tree, &chain, MarketKind::G).unwrap();
        assert!((vals[0].value - 11.0).abs() < 1e-12);
    }

    #[test]
    fn verdict_reference_cases() {
        let tree = fixtures::tree_d();
        let zero = Strategy::zeros(&tree);
        let v = arbitrage_verdict(&tree, &zero, MarketKind::Kbar, None).unwrap();
        assert_eq!(v.tag, VerdictTag::NoArbitrageWitnessed);

        let chain = fixtures::chain_strategy(&tree);
        let v = arbitrage_verdict(&tree, &chain, MarketKind::Kbar, None).unwrap();
        assert_eq!(v.tag, VerdictTag::StrongArbitrage);
        let strong = v.strong.unwrap();
        assert_eq!(strong.t_star, 1);
        assert!((strong.floor - 11.0).abs() < 1e-12);

        // a negative leaf defeats the pattern but shows up in diagnostics
        let two = ScenarioTree::from_nodes(fixtures::two_leaf_nodes(0.5, 0.5)).unwrap();
        let spend_down = Strategy::with_transfers(&two, &[(2, Position::new(-1.0, 0.0))]).unwrap();
        let v = arbitrage_verdict(&two, &spend_down, MarketKind::Kbar, None).unwrap();
        assert_eq!(v.tag, VerdictTag::NoArbitrageWitnessed);
        assert!(v.leaves.iter().any(|lv| lv.value < 0.0));
    }

    #[test]
    fn strong_takes_precedence_over_bounded() {
        let tree = fixtures::tree_d();
        let chain = fixtures::chain_strategy(&tree);
        let v = arbitrage_verdict(&tree, &chain, MarketKind::Kbar, Some(1000.0)).unwrap();
        assert_eq!(v.tag, VerdictTag::StrongArbitrage);
        assert!(v.realized_bound <= 1000.0);
    }

    #[test]
    fn event_probability_cases() {
        let two = ScenarioTree::from_nodes(fixtures::two_leaf_nodes(0.5, 0.5)).unwrap();
        assert_eq!(event_probability(&two, |_| true), 1.0);
        assert_eq!(event_probability(&two, |_| false), 0.0);
        assert_eq!(event_probability(&two, |n| n.id == 1), 0.5);
    }

    #[test]
    fn restrict_integer_cases() {
        let tree = fixtures::tree_d();
        let chain = fixtures::chain_strategy(&tree);
        let tagged = restrict_integer(&chain).unwrap();
        assert!(tagged.integer);

        let mut frac = chain.clone();
        frac.transfers[1].units = 0.5;
        let err = restrict_integer(&frac).unwrap_err();
        assert!(err.to_string().contains("1"));

        let zero = Strategy::zeros(&tree);
        assert!(restrict_integer(&zero).unwrap().integer);
    }
}
