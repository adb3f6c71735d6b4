//! Discrete-time markets whose transaction costs depend concavely on traded
//! volume: liquidation values, solvency sets and their cone approximations,
//! and constructive transfer of arbitrage between the curve market and the
//! cone markets on finite scenario trees.
//!
//! The crate is organized around five layers:
//!
//! * [`curves`] — bid/ask curve families with fixed fees, their consistency
//!   axioms and the derived trade inequalities;
//! * [`liquidation`] — position liquidation under curve, cone and penalized
//!   cone prices, the gap between them, and scaling machinery;
//! * [`market`] — finite scenario trees, self-financing strategies and
//!   arbitrage verdicts;
//! * [`arbitrage`] — the constructive pipelines that turn cone-market
//!   arbitrage into curve-market arbitrage (repair, amplification, tilting),
//!   plus a brute-force search used as an independent oracle;
//! * [`cli`]/[`config`] — a JSON-configured batch command interface.
//!
//! The `book/` directory of the repository walks through the model with
//! runnable examples; its code blocks compile as doctests of this crate.

pub mod arbitrage;
pub mod cli;
pub mod config;
pub mod curves;
pub mod error;
pub mod fixtures;
pub mod liquidation;
pub mod market;
pub mod suites;

pub use curves::{
    beta_modulus, default_grid, m_eps_search, validate_axioms, AxiomReport, BetaModulus,
    CostCurve, CurveKind, FixedFees,
};
pub use error::{Error, Result};
pub use liquidation::{
    check_l_conditions, classify_position, cone_membership, default_tolerance, delta_gap,
    delta_rate, liquidate, liquidate_alpha, liquidate_limit, min_scale_into_solvency,
    project_into_cone, scaling_threshold, ConditionsReport, ConeParams, MinScale, Position,
    ScalingThreshold, Solvency, SolvencyClass,
};
pub use market::{
    arbitrage_verdict, event_probability, evolve, restrict_integer, self_financing_check,
    terminal_liquidation, LeafValue, MarketKind, ScenarioTree, SelfFinancingReport, Strategy,
    StrongPattern, TreeNode, TreeReport, Verdict, VerdictTag,
};
pub use arbitrage::{
    amplify_alpha_to_g, amplify_integer, amplify_kbar_to_g, brute_force_search,
    example_strong_arbitrage, normalize_terminal, repair_to_g, tilt_kbar_to_k,
    AmplificationTrace, ExampleOutcome, ExampleParams, RepairOutcome, SearchOutcome, TiltOutcome,
    TraceStep, TraceVerdict,
};
pub use config::{load_config, Config};

// The guide's code blocks are compiled and run with the library's doctests.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(curves, "../../../book/src/curves.md");
    chapter!(liquidation, "../../../book/src/liquidation.md");
    chapter!(markets, "../../../book/src/markets.md");
    chapter!(arbitrage, "../../../book/src/arbitrage.md");
    chapter!(cli, "../../../book/src/cli.md");
}
