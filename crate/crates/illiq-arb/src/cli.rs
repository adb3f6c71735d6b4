//! Command dispatch and report emission.
//!
//! Commands operate on a loaded [`Config`] and write machine-readable
//! reports into an output directory: `verdict.json` for verdict-like
//! commands, `trace.csv` for amplification traces, `axioms.json` for
//! validation and `conditions.csv` for the gap-decay checks. Human-readable
//! summaries go to the returned [`RunOutput`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::arbitrage::{
    amplify_alpha_to_g, amplify_integer, amplify_kbar_to_g, brute_force_search, repair_to_g,
    normalize_terminal, AmplificationTrace,
};
use crate::config::{Config, KindTag, Params, StrategySpec};
use crate::curves::{beta_modulus, default_grid, validate_axioms};
use crate::error::{Error, Result};
use crate::liquidation::{
    check_l_conditions, delta_gap, liquidate, liquidate_alpha, liquidate_limit, ConeParams,
    Position, TailSup,
};
use crate::market::{arbitrage_verdict, MarketKind, ScenarioTree, Strategy};
use crate::suites;

/// Fixed default seed for every randomized command.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Liquidate,
    Verdict,
    Repair,
    Amplify,
    Search,
    Conditions,
    Props,
}

impl std::str::FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "validate" => Command::Validate,
            "liquidate" => Command::Liquidate,
            "verdict" => Command::Verdict,
            "repair" => Command::Repair,
            "amplify" => Command::Amplify,
            "search" => Command::Search,
            "conditions" => Command::Conditions,
            "props" => Command::Props,
            other => {
                return Err(Error::Config(format!(
                    "unknown command {other:?}; expected validate, liquidate, verdict, repair, \
                     amplify, search, conditions or props"
                )))
            }
        })
    }
}

/// Command-line flag overrides, applied on top of the config's params.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub kind: Option<KindTag>,
    pub alpha: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn merged_params(config: &Config, overrides: &Overrides) -> Params {
    let mut p = config.params.clone();
    if overrides.kind.is_some() {
        p.kind = overrides.kind;
    }
    if overrides.alpha.is_some() {
        p.alpha = overrides.alpha;
    }
    if overrides.tol.is_some() {
        p.tol = overrides.tol;
    }
    if overrides.seed.is_some() {
        p.seed = overrides.seed;
    }
    p
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(path)
}

fn resolve_kind(params: &Params) -> Result<MarketKind> {
    let tag = params
        .kind
        .ok_or_else(|| Error::Config("this command needs a market kind (--kind)".into()))?;
    tag.resolve(params.alpha)
}

fn selected_strategies<'c>(config: &'c Config, params: &Params) -> Result<Vec<&'c StrategySpec>> {
    match &params.strategy {
        Some(name) => Ok(vec![config.strategy_by_name(name)?]),
        None => {
            if config.strategies.is_empty() {
                return Err(Error::Config("the config defines no strategies".into()));
            }
            Ok(config.strategies.iter().collect())
        }
    }
}

/// Runs one command against a loaded config. `Props` ignores the config
/// entirely and may run without one.
pub fn run(
    command: Command,
    config: Option<&Config>,
    overrides: &Overrides,
    out_dir: &Path,
) -> Result<RunOutput> {
    if command == Command::Props {
        return run_props(config, overrides);
    }
    let config = config
        .ok_or_else(|| Error::Config("this command needs --config <path>".into()))?;
    let params = merged_params(config, overrides);
    let tree = config.build_tree()?;
    match command {
        Command::Validate => run_validate(config, &params, &tree, out_dir),
        Command::Liquidate => run_liquidate(&params, &tree),
        Command::Verdict => run_verdict(config, &params, &tree, out_dir),
        Command::Repair => run_repair(config, &params, &tree, out_dir),
        Command::Amplify => run_amplify(config, &params, &tree, out_dir),
        Command::Search => run_search(&params, &tree, out_dir),
        Command::Conditions => run_conditions(&params, &tree, out_dir),
        Command::Props => unreachable!(),
    }
}

#[derive(Serialize)]
struct NodeAxioms<'a> {
    node: usize,
    time: usize,
    report: &'a crate::curves::AxiomReport,
}

fn run_validate(
    config: &Config,
    params: &Params,
    tree: &ScenarioTree,
    out_dir: &Path,
) -> Result<RunOutput> {
    let grid = if params.grid.is_empty() {
        default_grid()
    } else {
        params.grid.clone()
    };
    let tree_report = tree.validate(Some(&grid));
    let axiom_reports: Vec<_> = tree
        .nodes()
        .iter()
        .map(|n| validate_axioms(&n.curve, &grid).map(|r| (n.id, n.time, r)))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<NodeAxioms> = axiom_reports
        .iter()
        .map(|(node, time, report)| NodeAxioms {
            node: *node,
            time: *time,
            report,
        })
        .collect();
    let file = write_json(out_dir, "axioms.json", &rows)?;

    let mut summary = String::new();
    let _ = writeln!(summary, "validated {} nodes on a {}-point grid", tree.len(), grid.len());
    if tree_report.pass() {
        let _ = writeln!(summary, "tree: all invariants hold");
    } else {
        for v in &tree_report.violations {
            let _ = writeln!(summary, "tree violation at node {}: {}", v.node, v.what);
        }
    }
    let _ = writeln!(summary, "wrote {}", file.display());
    let exit_code = if tree_report.pass() { 0 } else { 1 };
    let _ = config;
    Ok(RunOutput {
        exit_code,
        summary,
        files: vec![file],
    })
}

fn run_liquidate(params: &Params, tree: &ScenarioTree) -> Result<RunOutput> {
    if params.positions.is_empty() {
        return Err(Error::Config(
            "liquidate needs params.positions = [[cash, units], ...]".into(),
        ));
    }
    // Positions are valued at the root node's curve.
    let curve = &tree.node(0).curve;
    let alpha = params.alpha.unwrap_or(0.0);
    let cone = ConeParams::new(curve.bid_limit(), curve.ask_limit(), alpha)
        .map_err(|e| Error::Config(format!("root curve limits: {e}")))?;
    let mut summary = String::from("cash,units,curve_value,cone_value,penalized_value,gap\n");
    for &[cash, units] in &params.positions {
        let p = Position::new(cash, units);
        let _ = writeln!(
            summary,
            "{},{},{},{},{},{}",
            cash,
            units,
            liquidate(curve, p),
            liquidate_limit(&cone, p),
            liquidate_alpha(&cone, p),
            delta_gap(curve, p),
        );
    }
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![],
    })
}

fn run_verdict(
    config: &Config,
    params: &Params,
    tree: &ScenarioTree,
    out_dir: &Path,
) -> Result<RunOutput> {
    let kind = resolve_kind(params)?;
    let mut verdicts = Vec::new();
    let mut summary = String::new();
    for spec in selected_strategies(config, params)? {
        let strategy = config.build_strategy(tree, spec)?;
        let verdict = arbitrage_verdict(tree, &strategy, kind, params.tol)?;
        let _ = writeln!(
            summary,
            "strategy {:?} under {}: {:?} (positive mass {})",
            spec.name,
            kind.label(),
            verdict.tag,
            verdict.positive_prob
        );
        if let Some(strong) = &verdict.strong {
            let _ = writeln!(
                summary,
                "  strong pattern: starts at t={}, event {:?} (prob {}), floor {}",
                strong.t_star, strong.event, strong.event_prob, strong.floor
            );
        }
        verdicts.push((spec.name.clone(), verdict));
    }
    #[derive(Serialize)]
    struct Named {
        name: String,
        #[serde(flatten)]
        verdict: crate::market::Verdict,
    }
    let named: Vec<Named> = verdicts
        .into_iter()
        .map(|(name, verdict)| Named { name, verdict })
        .collect();
    let file = write_json(out_dir, "verdict.json", &named)?;
    let _ = writeln!(summary, "wrote {}", file.display());
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![file],
    })
}

fn run_repair(
    config: &Config,
    params: &Params,
    tree: &ScenarioTree,
    out_dir: &Path,
) -> Result<RunOutput> {
    let specs = selected_strategies(config, params)?;
    let spec = specs[0];
    let strategy = config.build_strategy(tree, spec)?;
    let normalized = normalize_terminal(tree, &strategy, MarketKind::Kbar)?;
    let repair = repair_to_g(tree, &normalized, params.k)?;
    let verdict = arbitrage_verdict(tree, &repair.strategy, MarketKind::G, params.tol)?;
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "repaired strategy {:?} with scale k = {} (worst active leaf value {})",
        spec.name, repair.k_used, repair.min_leaf_value
    );
    let _ = writeln!(summary, "curve-market verdict: {:?}", verdict.tag);
    #[derive(Serialize)]
    struct RepairReport<'a> {
        name: &'a str,
        k_used: u64,
        min_leaf_value: f64,
        scan: &'a [(u64, f64)],
        strategy: &'a Strategy,
        verdict: &'a crate::market::Verdict,
    }
    let file = write_json(
        out_dir,
        "verdict.json",
        &RepairReport {
            name: &spec.name,
            k_used: repair.k_used,
            min_leaf_value: repair.min_leaf_value,
            scan: &repair.scan,
            strategy: &repair.strategy,
            verdict: &verdict,
        },
    )?;
    let _ = writeln!(summary, "wrote {}", file.display());
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![file],
    })
}

fn run_amplify(
    config: &Config,
    params: &Params,
    tree: &ScenarioTree,
    out_dir: &Path,
) -> Result<RunOutput> {
    let kind = resolve_kind(params)?;
    let specs = selected_strategies(config, params)?;
    let spec = specs[0];
    let strategy = config.build_strategy(tree, spec)?;
    let trace: AmplificationTrace = match kind {
        MarketKind::Kalpha(alpha) => amplify_alpha_to_g(tree, &strategy, alpha)?.1,
        MarketKind::Kbar => {
            let n_grid = if params.n_grid.is_empty() {
                vec![4, 16, 64, 256]
            } else {
                params.n_grid.clone()
            };
            amplify_kbar_to_g(tree, &strategy, &n_grid)?
        }
        MarketKind::MalphaN(alpha) => {
            amplify_integer(tree, &strategy, alpha, MarketKind::MalphaN(alpha))?.1
        }
        MarketKind::KbarN => {
            let alpha = params
                .alpha
                .ok_or_else(|| Error::Config("integer cone amplification needs alpha".into()))?;
            amplify_integer(tree, &strategy, alpha, MarketKind::KbarN)?.1
        }
        MarketKind::G | MarketKind::Gn => {
            return Err(Error::Config(
                "amplify transfers arbitrage from Kalpha, Kbar, MalphaN or KbarN".into(),
            ))
        }
    };
    let file = write_text(out_dir, "trace.csv", &trace.to_csv())?;
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "amplified strategy {:?} from {}: verdict {:?} over {} step(s)",
        spec.name,
        kind.label(),
        trace.verdict,
        trace.steps.len()
    );
    let _ = writeln!(summary, "wrote {}", file.display());
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![file],
    })
}

fn run_search(params: &Params, tree: &ScenarioTree, out_dir: &Path) -> Result<RunOutput> {
    let kind = resolve_kind(params)?;
    let unit_grid = if params.unit_grid.is_empty() {
        vec![0.0, 1.0, 2.0]
    } else {
        params.unit_grid.clone()
    };
    let budget = params.budget.unwrap_or(100_000);
    let seed = params.seed.unwrap_or(DEFAULT_SEED);
    let outcome = brute_force_search(tree, kind, &unit_grid, budget, seed)?;
    let file = write_json(out_dir, "verdict.json", &outcome)?;
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "searched {} assignments ({}): {:?}, best worst-leaf value {}",
        outcome.evaluated,
        if outcome.exhaustive { "exhaustive" } else { "budget sample" },
        outcome.tag(),
        outcome.best_min_leaf
    );
    let _ = writeln!(summary, "wrote {}", file.display());
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![file],
    })
}

fn run_conditions(params: &Params, tree: &ScenarioTree, out_dir: &Path) -> Result<RunOutput> {
    let curves: Vec<_> = tree.nodes().iter().map(|n| n.curve.clone()).collect();
    let lambda_grid = if params.lambda_grid.is_empty() {
        (0..=8).map(|k| 10f64.powi(k)).collect()
    } else {
        params.lambda_grid.clone()
    };
    let y_bound = params.y_bound.unwrap_or(10.0);
    let report = check_l_conditions(&curves, y_bound, &lambda_grid)?;

    let z_grid = if params.z_grid.is_empty() {
        (0..=12).map(|k| 2f64.powi(k) - 1.0).collect()
    } else {
        params.z_grid.clone()
    };
    let modulus = beta_modulus(&curves, &z_grid)?;

    let mut csv = String::from("lambda,bounded_sup,tail_sup,tail_diverging\n");
    for (i, &lam) in report.lambda_grid.iter().enumerate() {
        let (tail, diverging) = match report.tail_sup[i] {
            TailSup::Bounded { value } => (value, false),
            TailSup::Diverging { value, .. } => (value, true),
        };
        let _ = writeln!(csv, "{},{},{},{}", lam, report.bounded_sup[i], tail, diverging);
    }
    let file = write_text(out_dir, "conditions.csv", &csv)?;

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "uniform gap decay (all unit counts): {}",
        if report.gl0_pass { "holds" } else { "fails (diverging tail)" }
    );
    let _ = writeln!(
        summary,
        "gap decay on |units| <= {y_bound}: {}",
        if report.l0_pass { "holds" } else { "fails" }
    );
    let _ = writeln!(
        summary,
        "strictly positive gap off zero units: {} (min {})",
        if report.l1_pass { "holds" } else { "fails" },
        report.l1_min_delta
    );
    let _ = writeln!(
        summary,
        "price-limit modulus: largest ask limit {}, monotone decay {}",
        modulus.b1_bound, modulus.b2_pass
    );
    if let Some(eps) = params.eps {
        match modulus.m_eps(eps) {
            Some(z) => {
                let _ = writeln!(summary, "modulus reaches {eps} at grid volume {z}");
            }
            None => {
                let _ = writeln!(summary, "modulus stays above {eps} on the probed grid");
            }
        }
    }
    let _ = writeln!(summary, "wrote {}", file.display());
    Ok(RunOutput {
        exit_code: 0,
        summary,
        files: vec![file],
    })
}

fn run_props(config: Option<&Config>, overrides: &Overrides) -> Result<RunOutput> {
    let seed = overrides
        .seed
        .or_else(|| config.and_then(|c| c.params.seed))
        .unwrap_or(DEFAULT_SEED);
    let results = suites::run_all(seed);
    let mut summary = String::new();
    let mut all_pass = true;
    for r in &results {
        all_pass &= r.pass;
        let _ = writeln!(
            summary,
            "{} {}: {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let _ = writeln!(
        summary,
        "{} of {} suites passed (seed {seed})",
        results.iter().filter(|r| r.pass).count(),
        results.len()
    );
    Ok(RunOutput {
        exit_code: if all_pass { 0 } else { 2 },
        summary,
        files: vec![],
    })
}
