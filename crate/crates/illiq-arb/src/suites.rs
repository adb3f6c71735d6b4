//! Seeded property suites behind the `props` command and the acceptance
//! tests. Each suite runs its full population and reports one line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arbitrage::{
    amplify_alpha_to_g, amplify_integer, brute_force_search, example_strong_arbitrage, repair_to_g,
    ExampleParams, TraceVerdict,
};
use crate::config::{Config, KindTag, NodeSpec, Params, StrategySpec, TransferSpec, TreeSpec};
use crate::curves::{CostCurve, CurveKind, FixedFees};
use crate::fixtures;
use crate::liquidation::{
    check_l_conditions, classify_position, default_tolerance, delta_gap, delta_rate, liquidate,
    min_scale_into_solvency, scaling_threshold, MinScale, Position, Solvency, TailSup,
};
use crate::market::{
    restrict_integer, self_financing_check, MarketKind, ScenarioTree, Strategy,
};

/// One suite's outcome.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        SuiteResult { name, pass, detail }
    }
}

/// Runs every suite with sub-seeds derived from `seed`.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        inequality_suite(seed.wrapping_add(1)),
        liquidation_suite(seed.wrapping_add(2)),
        hull_convergence_suite(seed.wrapping_add(3)),
        condition_checker_suite(),
        threshold_geometry_suite(seed.wrapping_add(5)),
        repair_suite(),
        amplifier_suite(),
        oracle_agreement_suite(seed.wrapping_add(8)),
        integer_variant_suite(),
        determinism_suite(),
    ]
}

fn rel_ok(slack: f64, scale: f64) -> bool {
    slack >= -1e-9 * scale.abs().max(1.0)
}

/// Random curve in the broad test family: prices in [1, 1000], shape in
/// [0.3, 0.9], fees in [0, 5] x [-5, 0], with a strict limit spread.
fn random_curve(rng: &mut ChaCha8Rng) -> CostCurve {
    let bid_limit = rng.gen_range(2.0..900.0);
    let bid_zero = rng.gen_range(1.0..=bid_limit);
    let ask_limit = rng.gen_range(bid_limit * 1.001..bid_limit * 1.001 + 99.0);
    let ask_zero = rng.gen_range(ask_limit..=ask_limit + 60.0);
    CostCurve::new(
        CurveKind::PowerLaw {
            bid_zero,
            bid_limit,
            ask_zero,
            ask_limit,
            shape: rng.gen_range(0.3..0.9),
        },
        FixedFees {
            buy: rng.gen_range(0.0..=5.0),
            sell: rng.gen_range(-5.0..=0.0),
        },
    )
    .expect("random family curves are structurally valid")
}

/// Suite 1: the six trade inequalities on 1000 random curves and 100 volume
/// pairs each; the roundtrip inequalities must hold strictly.
pub fn inequality_suite(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    let mut worst: f64 = f64::INFINITY;
    for _ in 0..1000 {
        let curve = random_curve(&mut rng);
        for _ in 0..100 {
            let v1 = 10f64.powf(rng.gen_range(-2.0..4.0));
            let v2 = v1 * rng.gen_range(0.01..0.99);
            let rem = v1 - v2;
            let a1 = curve.ask_cost_raw(v1);
            let a2 = curve.ask_cost_raw(v2);
            let ar = curve.ask_cost_raw(rem);
            let b1 = curve.bid_proceeds_raw(v1);
            let b2 = curve.bid_proceeds_raw(v2);
            let br = curve.bid_proceeds_raw(rem);
            checked += 1;

            let checks = [
                (a2 - (a1 - ar), a1),                                  // split purchase
                ((b1 - br) - b2, b1),                                  // split sale
                (curve.ask_zero() - (a1 - ar) / v2, curve.ask_zero()), // chord upper
                ((a1 - ar) / v2 - curve.ask_limit(), curve.ask_limit()),
                ((b1 - br) / v2 - curve.bid_zero(), curve.bid_zero()),
                (curve.bid_limit() - (b1 - br) / v2, curve.bid_limit()),
            ];
            for (slack, scale) in checks {
                worst = worst.min(slack / scale.abs().max(1.0));
                if !rel_ok(slack, scale) {
                    return SuiteResult::new(
                        "inequality_suite",
                        false,
                        format!("violation: slack {slack} at v1={v1}, v2={v2}"),
                    );
                }
            }
            // roundtrips must lose money strictly
            let strict = [(a1 - b2) - ar, br - (b1 - a2)];
            for slack in strict {
                worst = worst.min(slack / a1.abs().max(1.0));
                if slack <= 0.0 {
                    return SuiteResult::new(
                        "inequality_suite",
                        false,
                        format!("roundtrip not strictly worse: slack {slack} at v1={v1}, v2={v2}"),
                    );
                }
            }
        }
    }
    SuiteResult::new(
        "inequality_suite",
        true,
        format!("{checked} volume pairs on 1000 curves, worst relative slack {worst:.3e}"),
    )
}

/// Suite 2: superadditivity and upward scaling of the liquidation value on
/// 100000 random pairs, plus agreement of the gap's piecewise form with the
/// direct difference.
pub fn liquidation_suite(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = f64::INFINITY;
    let mut curve = random_curve(&mut rng);
    for i in 0..100_000u64 {
        if i % 16 == 0 {
            curve = random_curve(&mut rng);
        }
        let p = Position::new(rng.gen_range(-1e3..1e3), rng.gen_range(-100.0..100.0));
        let q = Position::new(rng.gen_range(-1e3..1e3), rng.gen_range(-100.0..100.0));

        let lp = liquidate(&curve, p);
        let lq = liquidate(&curve, q);
        let lpq = liquidate(&curve, p + q);
        let scale = lp.abs() + lq.abs() + lpq.abs();
        worst = worst.min((lpq - (lp + lq)) / scale.max(1.0));
        if !rel_ok(lpq - (lp + lq), scale) {
            return SuiteResult::new(
                "liquidation_suite",
                false,
                format!("superadditivity fails: {lpq} < {lp} + {lq}"),
            );
        }

        let lambda = rng.gen_range(1.0..1e3);
        let lscaled = liquidate(&curve, p.scaled(lambda));
        let scale = lscaled.abs() + lambda * lp.abs();
        if !rel_ok(lscaled - lambda * lp, scale) {
            return SuiteResult::new(
                "liquidation_suite",
                false,
                format!("scaling fails: L({lambda} p) = {lscaled} < {lambda} * {lp}"),
            );
        }

        // gap: piecewise form vs direct difference, and nonnegativity
        let gap = delta_gap(&curve, p);
        let cone_value = if p.units >= 0.0 {
            p.cash + p.units * curve.bid_limit()
        } else {
            p.cash + p.units * curve.ask_limit()
        };
        let direct = cone_value - lp;
        if (gap - direct).abs() > 1e-9 * (1.0 + gap.abs().max(direct.abs())) {
            return SuiteResult::new(
                "liquidation_suite",
                false,
                format!("gap mismatch: piecewise {gap} vs direct {direct} at {p:?}"),
            );
        }
        if gap < 0.0 {
            return SuiteResult::new(
                "liquidation_suite",
                false,
                format!("negative gap {gap} at {p:?}"),
            );
        }
    }
    SuiteResult::new(
        "liquidation_suite",
        true,
        format!("100000 pairs: superadditivity, scaling and gap agreement hold (worst rel slack {worst:.3e})"),
    )
}

/// Suite 3: the per-scale liquidation value approaches the cone value
/// (checked at scale 1e8 with tolerance 1e-3 * (1 + |cone value|)), and the
/// scaled gap is nonincreasing along a geometric scale grid.
///
/// The curve family ties volume-price gaps to 2% of the limits so that the
/// fixed tolerance is meaningful for the slowest decay in the shape range.
pub fn hull_convergence_suite(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda_grid: Vec<f64> = (0..=8).map(|k| 10f64.powi(k)).collect();
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..1000 {
        let bid_limit = rng.gen_range(50.0..150.0);
        let ask_limit = bid_limit * rng.gen_range(1.01..1.2);
        let g_bid = rng.gen_range(0.0..0.02);
        let g_ask = rng.gen_range(0.0..0.02);
        let curve = CostCurve::new(
            CurveKind::PowerLaw {
                bid_zero: bid_limit * (1.0 - g_bid),
                bid_limit,
                ask_zero: ask_limit * (1.0 + g_ask),
                ask_limit,
                shape: rng.gen_range(0.3..0.9),
            },
            FixedFees {
                buy: rng.gen_range(0.0..=5.0),
                sell: rng.gen_range(-5.0..=0.0),
            },
        )
        .expect("hull family curves are structurally valid");

        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let p = Position::new(
            sign * rng.gen_range(0.0..100.0),
            sign * rng.gen_range(0.5..10.0),
        );
        let cone_value = if p.units >= 0.0 {
            p.cash + p.units * curve.bid_limit()
        } else {
            p.cash + p.units * curve.ask_limit()
        };
        let lambda = 1e8;
        let deviation = (liquidate(&curve, p.scaled(lambda)) / lambda - cone_value).abs();
        let tolerance = 1e-3 * (1.0 + cone_value.abs());
        worst_ratio = worst_ratio.max(deviation / tolerance);
        if deviation > tolerance {
            return SuiteResult::new(
                "hull_convergence_suite",
                false,
                format!("deviation {deviation} exceeds {tolerance} at {p:?}"),
            );
        }

        let mut prev = f64::INFINITY;
        for &lam in &lambda_grid {
            let rate = delta_rate(&curve, p.units, lam).expect("lambda >= 1");
            if rate > prev + 1e-12 * prev.abs().max(1.0) {
                return SuiteResult::new(
                    "hull_convergence_suite",
                    false,
                    format!("gap rate not monotone at lambda {lam} for {p:?}"),
                );
            }
            prev = rate;
        }
    }
    SuiteResult::new(
        "hull_convergence_suite",
        true,
        format!("1000 positions converge at scale 1e8 (worst deviation at {:.0}% of tolerance)", worst_ratio * 100.0),
    )
}

/// Suite 4: the gap-decay condition checkers reproduce the reference
/// behaviour of proportional-with-fees and power-law markets.
pub fn condition_checker_suite() -> SuiteResult {
    let lambda_grid: Vec<f64> = (0..=8).map(|k| 10f64.powi(k)).collect();

    let prop = CostCurve::new(
        CurveKind::FixedProportional { bid: 94.5, ask: 99.0 },
        FixedFees { buy: 2.0, sell: -1.0 },
    )
    .expect("proportional curve is structurally valid");
    let rep = match check_l_conditions(&[prop], 10.0, &lambda_grid) {
        Ok(r) => r,
        Err(e) => return SuiteResult::new("condition_checker_suite", false, e.to_string()),
    };
    if !rep.gl0_pass {
        return SuiteResult::new(
            "condition_checker_suite",
            false,
            "proportional-with-fees market should decay uniformly".into(),
        );
    }
    let fee_bound_ok = matches!(rep.tail_sup[0], TailSup::Bounded { value } if (value - 2.0).abs() < 1e-9);
    if !fee_bound_ok {
        return SuiteResult::new(
            "condition_checker_suite",
            false,
            "proportional tail bound should equal the larger fee".into(),
        );
    }

    let curve_a = fixtures::curve_a();
    let rep = match check_l_conditions(&[curve_a], 10.0, &lambda_grid) {
        Ok(r) => r,
        Err(e) => return SuiteResult::new("condition_checker_suite", false, e.to_string()),
    };
    let diverges_at_1e3 = matches!(rep.tail_sup[3], TailSup::Diverging { value, .. } if value > 1.0);
    let pass = !rep.gl0_pass && rep.l0_pass && rep.l1_pass && rep.l1_min_delta > 0.0 && diverges_at_1e3;
    SuiteResult::new(
        "condition_checker_suite",
        pass,
        format!(
            "uniform decay fails as expected, bounded-band decay holds ({} -> {}), min off-zero gap {}",
            rep.bounded_sup[0],
            rep.bounded_sup[rep.bounded_sup.len() - 1],
            rep.l1_min_delta
        ),
    )
}

/// Suite 5: penalized-cone boundary rays are solvent past the scaling
/// thresholds on 100 random curves, and the reference minimal scale is hit
/// exactly.
pub fn threshold_geometry_suite(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut built = 0u64;
    while built < 100 {
        let curve = random_curve(&mut rng);
        let cap = curve.alpha_cap();
        if cap <= 1e-3 {
            continue; // needs genuine volume dependence on both sides
        }
        built += 1;
        let alpha = cap * rng.gen_range(0.2..0.9);
        let eps = alpha * curve.bid_limit().min(curve.ask_limit()) * rng.gen_range(0.1..0.4);
        let th = match scaling_threshold(&curve, alpha, eps) {
            Ok(th) => th,
            Err(e) => return SuiteResult::new("threshold_geometry_suite", false, e.to_string()),
        };
        for j in 0..=20 {
            let factor = 1.0 + 0.1 * j as f64;
            let sell_units = th.y_sell * factor;
            let sell_point = Position::new(-sell_units * (1.0 - alpha) * curve.bid_limit(), sell_units);
            let buy_units = th.y_buy * factor;
            let buy_point = Position::new(-buy_units * (1.0 + alpha) * curve.ask_limit(), buy_units);
            for point in [sell_point, buy_point] {
                let class = classify_position(&curve, point, default_tolerance(&curve, point));
                if class.class == Solvency::Insolvent {
                    return SuiteResult::new(
                        "threshold_geometry_suite",
                        false,
                        format!(
                            "boundary point {point:?} past the threshold is insolvent \
                             (value {}, alpha {alpha}, eps {eps})",
                            class.value
                        ),
                    );
                }
            }
        }
    }

    let fixture_scale = min_scale_into_solvency(
        &fixtures::curve_a(),
        Position::new(1.05 * 99.0, -1.0),
        true,
    );
    if fixture_scale != MinScale::Finite(5.0) {
        return SuiteResult::new(
            "threshold_geometry_suite",
            false,
            format!("reference minimal scale should be 5, got {fixture_scale:?}"),
        );
    }
    SuiteResult::new(
        "threshold_geometry_suite",
        true,
        "100 random curves: penalized rays solvent past thresholds; reference scale is 5".into(),
    )
}

/// Suite 6: the repair construction on the deterministic chain returns
/// exactly scale 3 with leaf value 4.5 and an exactly curve-solvent output.
pub fn repair_suite() -> SuiteResult {
    let tree = fixtures::tree_d();
    let chain = fixtures::chain_strategy(&tree);
    let repair = match repair_to_g(&tree, &chain, None) {
        Ok(r) => r,
        Err(e) => return SuiteResult::new("repair_suite", false, e.to_string()),
    };
    let sf = match self_financing_check(&tree, &repair.strategy, MarketKind::G) {
        Ok(r) => r,
        Err(e) => return SuiteResult::new("repair_suite", false, e.to_string()),
    };
    let pass = repair.k_used == 3
        && (repair.min_leaf_value - 4.5).abs() <= 1e-9
        && sf.pass
        && sf.worst.abs() <= 1e-9;
    SuiteResult::new(
        "repair_suite",
        pass,
        format!(
            "k = {}, leaf value {}, worst transfer solvency {}",
            repair.k_used, repair.min_leaf_value, sf.worst
        ),
    )
}

/// Two-period growth tree with favorable-branch probability `up_prob`,
/// offsets 5% everywhere and a 10% growth floor, plus the penalized-cone
/// boundary strategy trading `volume` units on the favorable branch.
fn growth_market(up_prob: f64, volume: f64, alpha: f64) -> (ScenarioTree, Strategy) {
    let params = ExampleParams {
        bid_spot: 100.0,
        ask_spot: 101.0,
        growth_floor: 0.10,
        p: [0.05, 0.05],
        q: [0.05, 0.05],
        shape: 0.5,
        up_prob,
        volume: Some(volume),
    };
    let built = example_strong_arbitrage(&params, &[volume])
        .expect("growth market parameters are valid")
        .built
        .expect("the growth market has a positive per-unit profit");
    let tree = built.tree;
    let buy_price = (1.0 + alpha) * tree.node(1).curve.ask_limit();
    let sell_price = (1.0 - alpha) * tree.node(3).curve.bid_limit();
    let strategy = Strategy::with_transfers(
        &tree,
        &[
            (1, Position::new(-buy_price * volume, volume)),
            (3, Position::new(sell_price * volume, -volume)),
        ],
    )
    .expect("penalized boundary strategy fits the growth tree");
    (tree, strategy)
}

/// Suite 7: the penalized-cone amplifier delivers an exact curve-market
/// arbitrage on the deterministic chain and on a stochastic growth market,
/// with positive mass at least half the input's.
pub fn amplifier_suite() -> SuiteResult {
    let tree = fixtures::tree_d();
    let strategy = fixtures::alpha_chain_strategy(&tree, 0.04);
    let (out, trace) = match amplify_alpha_to_g(&tree, &strategy, 0.04) {
        Ok(v) => v,
        Err(e) => return SuiteResult::new("amplifier_suite", false, e.to_string()),
    };
    let scale = out.transfers[1].units;
    let last = *trace.steps.last().expect("trace has steps");
    if trace.verdict != TraceVerdict::ExactArbitrage
        || last.p_nonneg < 1.0
        || last.p_positive < 0.5 * trace.input_positive_prob
    {
        return SuiteResult::new(
            "amplifier_suite",
            false,
            format!("chain amplification not exact: {trace:?}"),
        );
    }

    let (gtree, gstrategy) = growth_market(0.6, 99.0, 0.04);
    let (_, gtrace) = match amplify_alpha_to_g(&gtree, &gstrategy, 0.04) {
        Ok(v) => v,
        Err(e) => return SuiteResult::new("amplifier_suite", false, e.to_string()),
    };
    let glast = *gtrace.steps.last().expect("trace has steps");
    let pass = glast.p_nonneg >= 1.0 - 1e-12
        && glast.p_positive >= 0.5 * gtrace.input_positive_prob
        && glast.p_positive >= 0.3;
    SuiteResult::new(
        "amplifier_suite",
        pass,
        format!(
            "chain: exact at scale {scale}; growth market: positive mass {} >= 0.3 \
             (input mass {})",
            glast.p_positive, gtrace.input_positive_prob
        ),
    )
}

/// Suite 8: the brute-force searcher agrees with the closed-form arbitrage
/// condition on 20 random one-period two-leaf proportional markets.
pub fn oracle_agreement_suite(seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0u32;
    let mut found = 0u32;
    while agreements < 20 {
        let bid0 = rng.gen_range(80.0..110.0);
        let ask0 = bid0 + rng.gen_range(0.5..6.0);
        let mut leaf = |center: f64| {
            let bid = center + rng.gen_range(-8.0..8.0);
            let ask = bid + rng.gen_range(0.5..6.0);
            (bid, ask)
        };
        let (b1, a1) = leaf(bid0);
        let (b2, a2) = leaf(bid0);
        // keep instances decisively away from the boundary of the condition
        let margins = [
            (ask0 - b1).abs(),
            (ask0 - b2).abs(),
            (bid0 - a1).abs(),
            (bid0 - a2).abs(),
        ];
        if margins.iter().any(|m| *m < 1e-3) {
            continue;
        }
        let closed_form = ask0 < b1.min(b2) || bid0 > a1.max(a2);
        let tree = fixtures::proportional_one_period(bid0, ask0, [b1, b2], [a1, a2], [0.5, 0.5]);
        let outcome = match brute_force_search(&tree, MarketKind::G, &[0.0, 1.0], 100_000, seed) {
            Ok(o) => o,
            Err(e) => return SuiteResult::new("oracle_agreement_suite", false, e.to_string()),
        };
        let brute = outcome.arbitrage.is_some();
        if brute != closed_form {
            return SuiteResult::new(
                "oracle_agreement_suite",
                false,
                format!(
                    "disagreement: closed form {closed_form}, search {brute} \
                     (bid0 {bid0}, ask0 {ask0}, leaves ({b1},{a1}) ({b2},{a2}))"
                ),
            );
        }
        agreements += 1;
        found += brute as u32;
    }
    SuiteResult::new(
        "oracle_agreement_suite",
        true,
        format!("20 markets, 0 disagreements ({found} with arbitrage)"),
    )
}

/// Suite 9: the integer amplifier returns integral units that match the
/// real amplifier on unit trades and pass integer-market self-financing.
pub fn integer_variant_suite() -> SuiteResult {
    let tree = fixtures::tree_d();
    let strategy = fixtures::alpha_chain_strategy(&tree, 0.04);
    let (real_out, _) = match amplify_alpha_to_g(&tree, &strategy, 0.04) {
        Ok(v) => v,
        Err(e) => return SuiteResult::new("integer_variant_suite", false, e.to_string()),
    };
    let (int_out, trace) =
        match amplify_integer(&tree, &strategy, 0.04, MarketKind::MalphaN(0.04)) {
            Ok(v) => v,
            Err(e) => return SuiteResult::new("integer_variant_suite", false, e.to_string()),
        };
    let sf = match self_financing_check(&tree, &int_out, MarketKind::Gn) {
        Ok(r) => r,
        Err(e) => return SuiteResult::new("integer_variant_suite", false, e.to_string()),
    };
    let integral = restrict_integer(&real_out).is_ok();
    let units_match = real_out
        .transfers
        .iter()
        .zip(&int_out.transfers)
        .all(|(a, b)| a.units == b.units);
    let pass = int_out.integer
        && sf.pass
        && trace.verdict == TraceVerdict::ExactArbitrage
        && integral
        && units_match;
    SuiteResult::new(
        "integer_variant_suite",
        pass,
        format!(
            "integer amplification exact; real amplifier units already integral: {integral}"
        ),
    )
}

/// Builds the chain config used by the determinism checks.
pub fn chain_config() -> Config {
    let tree = fixtures::tree_d();
    Config {
        schema_version: crate::config::SCHEMA_VERSION,
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
            name: "alpha-chain".into(),
            integer: false,
            transfers: vec![
                TransferSpec {
                    node: 1,
                    cash: -(1.04 * 99.0),
                    units: 1.0,
                },
                TransferSpec {
                    node: 2,
                    cash: 0.96 * 110.0,
                    units: -1.0,
                },
            ],
        }],
        params: Params {
            kind: Some(KindTag::Kalpha),
            alpha: Some(0.04),
            ..Params::default()
        },
    }
}

/// Suite 10: identical seeds and configs reproduce byte-identical traces,
/// and configs survive a serialize/parse round trip unchanged.
pub fn determinism_suite() -> SuiteResult {
    let config = chain_config();
    let text = match serde_json::to_string_pretty(&config) {
        Ok(t) => t,
        Err(e) => return SuiteResult::new("determinism_suite", false, e.to_string()),
    };
    let reparsed: Config = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return SuiteResult::new("determinism_suite", false, e.to_string()),
    };
    if reparsed != config {
        return SuiteResult::new(
            "determinism_suite",
            false,
            "config round trip is not the identity".into(),
        );
    }

    let run_trace = |config: &Config| -> crate::error::Result<String> {
        let tree = config.build_tree()?;
        let strategy = config.build_strategy(&tree, &config.strategies[0])?;
        let (_, trace) = amplify_alpha_to_g(&tree, &strategy, 0.04)?;
        Ok(trace.to_csv())
    };
    let first = match run_trace(&config) {
        Ok(t) => t,
        Err(e) => return SuiteResult::new("determinism_suite", false, e.to_string()),
    };
    let second = match run_trace(&reparsed) {
        Ok(t) => t,
        Err(e) => return SuiteResult::new("determinism_suite", false, e.to_string()),
    };
    let pass = first == second && !first.is_empty();
    SuiteResult::new(
        "determinism_suite",
        pass,
        format!("round trip identity; {} bytes of trace reproduced", first.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{arbitrage_verdict, VerdictTag};

    #[test]
    fn growth_market_strategy_is_penalized_arbitrage() {
        let (tree, strategy) = growth_market(0.6, 99.0, 0.04);
        let verdict = arbitrage_verdict(&tree, &strategy, MarketKind::Kalpha(0.04), None).unwrap();
        assert_ne!(verdict.tag, VerdictTag::NoArbitrageWitnessed);
        assert!((verdict.positive_prob - 0.6).abs() < 1e-12);
    }
}
