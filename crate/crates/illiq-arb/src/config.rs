//! JSON configuration for batch runs: a scenario tree, named strategies and
//! default command parameters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curves::CostCurve;
use crate::error::{Error, Result};
use crate::liquidation::Position;
use crate::market::{restrict_integer, MarketKind, ScenarioTree, Strategy, TreeNode};

pub const SCHEMA_VERSION: u64 = 1;

/// Top-level configuration document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub schema_version: u64,
    pub tree: TreeSpec,
    #[serde(default)]
    pub strategies: Vec<StrategySpec>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub nodes: Vec<NodeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: usize,
    pub time: usize,
    pub parent: Option<usize>,
    pub prob: f64,
    pub curve: CostCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySpec {
    pub name: String,
    #[serde(default)]
    pub integer: bool,
    pub transfers: Vec<TransferSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferSpec {
    pub node: usize,
    pub cash: f64,
    pub units: f64,
}

/// Market-kind tag as written in configs and on the command line; the
/// penalized kinds additionally need the `alpha` parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindTag {
    G,
    Kbar,
    Kalpha,
    GN,
    KbarN,
    MalphaN,
}

impl std::str::FromStr for KindTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(KindTag::G),
            "Kbar" => Ok(KindTag::Kbar),
            "Kalpha" => Ok(KindTag::Kalpha),
            "GN" => Ok(KindTag::GN),
            "KbarN" => Ok(KindTag::KbarN),
            "MalphaN" => Ok(KindTag::MalphaN),
            other => Err(Error::Config(format!(
                "unknown market kind {other:?}; expected G, Kbar, Kalpha, GN, KbarN or MalphaN"
            ))),
        }
    }
}

impl KindTag {
    /// Resolves the tag to a concrete market kind, taking `alpha` when the
    /// tag requires a penalty level.
    pub fn resolve(self, alpha: Option<f64>) -> Result<MarketKind> {
        let need_alpha = || {
            alpha.ok_or_else(|| {
                Error::Config("this market kind needs the alpha parameter".into())
            })
        };
        Ok(match self {
            KindTag::G => MarketKind::G,
            KindTag::Kbar => MarketKind::Kbar,
            KindTag::Kalpha => MarketKind::Kalpha(need_alpha()?),
            KindTag::GN => MarketKind::Gn,
            KindTag::KbarN => MarketKind::KbarN,
            KindTag::MalphaN => MarketKind::MalphaN(need_alpha()?),
        })
    }
}

/// Command parameters; every field has a sensible default so minimal
/// configs stay minimal. Command-line flags override these.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct Params {
    pub kind: Option<KindTag>,
    pub alpha: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    /// Strategy name for single-strategy commands; all strategies otherwise.
    pub strategy: Option<String>,
    /// `[cash, units]` pairs for the liquidate command.
    pub positions: Vec<[f64; 2]>,
    /// Tilt denominators for the cone amplifier.
    pub n_grid: Vec<u64>,
    /// Volumes for the brute-force search.
    pub unit_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub z_grid: Vec<f64>,
    pub y_bound: Option<f64>,
    pub budget: Option<u64>,
    /// Fixed repair scale; searched when absent.
    pub k: Option<u64>,
    /// Volume grid for axiom validation.
    pub grid: Vec<f64>,
    pub eps: Option<f64>,
}

impl Config {
    pub fn build_tree(&self) -> Result<ScenarioTree> {
        let nodes = self
            .tree
            .nodes
            .iter()
            .map(|n| TreeNode {
                id: n.id,
                time: n.time,
                parent: n.parent,
                prob: n.prob,
                curve: n.curve.clone(),
            })
            .collect();
        ScenarioTree::from_nodes(nodes)
    }

    pub fn build_strategy(&self, tree: &ScenarioTree, spec: &StrategySpec) -> Result<Strategy> {
        let entries: Vec<(usize, Position)> = spec
            .transfers
            .iter()
            .map(|t| (t.node, Position::new(t.cash, t.units)))
            .collect();
        let strategy = Strategy::with_transfers(tree, &entries)?;
        if spec.integer {
            restrict_integer(&strategy)
        } else {
            Ok(strategy)
        }
    }

    pub fn strategy_by_name(&self, name: &str) -> Result<&StrategySpec> {
        self.strategies
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Config(format!("no strategy named {name:?}")))
    }
}

/// Parses and fully validates a configuration file: schema version, tree
/// structure, probability and curve axioms (on the config's validation grid
/// when given), strategy references and parameter sanity.
pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let config: Config = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    validate_config(&config)?;
    Ok(config)
}

/// Semantic validation shared by [`load_config`] and in-memory configs.
pub fn validate_config(config: &Config) -> Result<()> {
    if config.schema_version != SCHEMA_VERSION {
        return Err(Error::Config(format!(
            "unsupported schema_version {}, expected {SCHEMA_VERSION}",
            config.schema_version
        )));
    }
    let tree = config
        .build_tree()
        .map_err(|e| Error::Config(e.to_string()))?;
    let grid = if config.params.grid.is_empty() {
        None
    } else {
        Some(config.params.grid.as_slice())
    };
    let report = tree.validate(grid);
    if !report.pass() {
        let mut lines: Vec<String> = report
            .violations
            .iter()
            .take(5)
            .map(|v| format!("node {}: {}", v.node, v.what))
            .collect();
        if report.violations.len() > 5 {
            lines.push(format!("... and {} more", report.violations.len() - 5));
        }
        return Err(Error::Config(format!("invalid tree: {}", lines.join("; "))));
    }
    let mut seen = std::collections::HashSet::new();
    for spec in &config.strategies {
        if !seen.insert(&spec.name) {
            return Err(Error::Config(format!("duplicate strategy name {:?}", spec.name)));
        }
        for t in &spec.transfers {
            if t.node >= tree.len() {
                return Err(Error::Config(format!(
                    "strategy {:?} refers to unknown node {}",
                    spec.name, t.node
                )));
            }
            if !t.cash.is_finite() || !t.units.is_finite() {
                return Err(Error::Config(format!(
                    "strategy {:?} has a non-finite transfer at node {}",
                    spec.name, t.node
                )));
            }
        }
        config.build_strategy(&tree, spec).map_err(|e| {
            Error::Config(format!("strategy {:?}: {e}", spec.name))
        })?;
    }
    if let Some(alpha) = config.params.alpha {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chain_config() -> Config {
        let tree = fixtures::tree_d();
        Config {
            schema_version: SCHEMA_VERSION,
            tree: TreeSpec {
                nodes: tree
                    .nodes()
                    .iter()
                    .map(|n| NodeSpec {
                        id: n.id,
                        time: n.time,
                        parent: n.parent,
                        prob: n.prob,
                        curve: n.curve.clone(),
                    })
                    .collect(),
            },
            strategies: vec![StrategySpec {
                name: "chain".into(),
                integer: false,
                transfers: vec![
                    TransferSpec { node: 1, cash: -99.0, units: 1.0 },
                    TransferSpec { node: 2, cash: 110.0, units: -1.0 },
                ],
            }],
            params: Params {
                kind: Some(KindTag::Kbar),
                alpha: Some(0.04),
                ..Params::default()
            },
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let config = chain_config();
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back: Config = serde_json::from_str(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn semantic_validation_catches_probability_sums() {
        let mut config = chain_config();
        // add a sibling branch so the root's children carry mass 1.2
        config.tree.nodes[1].prob = 0.6;
        config.tree.nodes.push(NodeSpec {
            id: 3,
            time: 1,
            parent: Some(0),
            prob: 0.6,
            curve: fixtures::curve_a(),
        });
        config.tree.nodes.push(NodeSpec {
            id: 4,
            time: 2,
            parent: Some(3),
            prob: 1.0,
            curve: fixtures::curve_b(),
        });
        let err = validate_config(&config).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("node 0") && msg.contains("1.2"), "{msg}");
    }

    #[test]
    fn unknown_kind_tag_is_a_parse_error() {
        let config = chain_config();
        let mut value: serde_json::Value =
            serde_json::to_value(&config).unwrap();
        value["params"]["kind"] = serde_json::json!("Qbar");
        let err = serde_json::from_value::<Config>(value).unwrap_err();
        assert!(err.to_string().contains("Qbar") || err.to_string().contains("variant"));
    }

    #[test]
    fn minimal_single_node_document() {
        let json = serde_json::json!({
            "schema_version": 1,
            "tree": { "nodes": [
                { "id": 0, "time": 0, "parent": null, "prob": 1.0,
                  "curve": { "type": "fixed_proportional", "bid": 94.5, "ask": 99.0,
                             "fees": { "buy": 0.0, "sell": 0.0 } } }
            ]}
        });
        let config: Config = serde_json::from_value(json).unwrap();
        validate_config(&config).unwrap();
        let tree = config.build_tree().unwrap();
        assert_eq!(tree.horizon(), 0);
    }

    #[test]
    fn strategy_node_references_are_checked() {
        let mut config = chain_config();
        config.strategies[0].transfers[0].node = 99;
        let err = validate_config(&config).unwrap_err();
        assert!(err.to_string().contains("unknown node"));
    }
}
