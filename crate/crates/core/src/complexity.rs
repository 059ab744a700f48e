//! Closed-form per-iteration operation counts for min-sum decoding, the
//! matching upper and lower bounds, and instrumented comparison against the
//! decoder's live counters.
//!
//! Three pass kinds are counted. A hard-decision pass costs `g_i - 1`
//! comparisons per coordinate. A symbol pass costs `g_i d_i (d_i - 1)`
//! additions at a degree-`d_i` symbol node. A check pass costs at most
//! `d (d - 1) (g_{i_1} x ... x g_{i_d})` operations at a degree-`d` check
//! node; the product counts every label configuration, so the formula is a
//! worst case that live counters reach only if every configuration were
//! valid. The totals grow linearly with the dimension for bounded degrees
//! and group sizes, but the check term is exponential in the check degree
//! through the configuration product.
//!
//! The bounds sandwich the total: the upper bound substitutes the maximum
//! group size and maximum degrees everywhere; the lower bound substitutes
//! the minimum degrees and replaces every group size by the geometric mean
//! `gamma` of the lattice's and its dual's coding gains, which never
//! exceeds any `g_i`.

use serde::Serialize;

use crate::decoder::{decode, IterationCounts};
use crate::error::Result;
use crate::lattice::LatticeModel;
use crate::tanner::TannerGraph;

// --- closed forms over raw profiles ------------------------------------------

/// Hard-decision comparisons per iteration for the given group sizes:
/// an argmin over `g` entries costs `g - 1` comparisons.
pub fn termination_count_from_groups(groups: &[u64]) -> u64 {
    groups.iter().map(|&g| g.saturating_sub(1)).sum()
}

/// Symbol-pass additions per iteration for group sizes paired with symbol
/// degrees: each of the `d` outgoing messages combines `d - 1` terms per
/// label.
pub fn symbol_count_from_profile(groups: &[u64], degrees: &[usize]) -> u64 {
    groups
        .iter()
        .zip(degrees)
        .map(|(&g, &d)| {
            let d = d as u64;
            g.saturating_mul(d.saturating_mul(d.saturating_sub(1)))
        })
        .sum()
}

/// Worst-case check-pass operations per iteration. Each entry pairs a
/// check's degree with its label-configuration count; the result saturates
/// at `u64::MAX` instead of overflowing.
pub fn check_count_from_profile(checks: &[(usize, u128)]) -> u64 {
    checks
        .iter()
        .map(|&(d, configurations)| {
            let d = d as u128;
            let term = d
                .saturating_mul(d.saturating_sub(1))
                .saturating_mul(configurations);
            u64::try_from(term).unwrap_or(u64::MAX)
        })
        .fold(0u64, u64::saturating_add)
}

// --- closed forms over a model and graph -------------------------------------

/// Hard-decision comparisons per iteration: `(sum of g_i) - n`.
pub fn termination_count(model: &LatticeModel) -> u64 {
    termination_count_from_groups(
        &model.labels().iter().map(|info| info.g).collect::<Vec<_>>(),
    )
}

/// Symbol-pass additions per iteration across the whole graph.
pub fn symbol_count(model: &LatticeModel, graph: &TannerGraph) -> u64 {
    symbol_count_from_profile(
        &model.labels().iter().map(|info| info.g).collect::<Vec<_>>(),
        &graph.symbol_degrees(),
    )
}

/// Worst-case check-pass operations per iteration across the whole graph.
pub fn check_count(graph: &TannerGraph) -> u64 {
    check_count_from_profile(
        &graph
            .checks()
            .iter()
            .map(|c| (c.degree(), c.configuration_count()))
            .collect::<Vec<_>>(),
    )
}

/// Total per-iteration operations: the sum of the three pass counts.
pub fn per_iteration_total(model: &LatticeModel, graph: &TannerGraph) -> u64 {
    termination_count(model)
        .saturating_add(symbol_count(model, graph))
        .saturating_add(check_count(graph))
}

/// Per-iteration bounds `(lower, upper)`.
///
/// The upper bound plugs the maximum group size `g` and the maximum
/// degrees into the per-node worst cases:
/// `n (g d_y^max (d_y^max - 1) + g^{d_ch^max} d_ch^max (d_ch^max - 1) + g - 1)`.
/// The lower bound replaces `g` by `gamma` and the maxima by the observed
/// minimum degrees. Both are reals; `gamma` is generally irrational.
pub fn bounds(model: &LatticeModel, graph: &TannerGraph, gamma: f64) -> (f64, f64) {
    let n = model.n() as f64;
    let g = model.labels().iter().map(|info| info.g).max().unwrap_or(1) as f64;
    let symbol_degrees = graph.symbol_degrees();
    let check_degrees = graph.check_degrees();
    let dy_max = symbol_degrees.iter().copied().max().unwrap_or(0) as f64;
    let dy_min = symbol_degrees.iter().copied().min().unwrap_or(0) as f64;
    let dch_max = check_degrees.iter().copied().max().unwrap_or(0) as f64;
    let dch_min = check_degrees.iter().copied().min().unwrap_or(0) as f64;
    let upper = n * (g * dy_max * (dy_max - 1.0)
        + g.powi(dch_max as i32) * dch_max * (dch_max - 1.0)
        + g
        - 1.0);
    let lower = n * (gamma * dy_min * (dy_min - 1.0)
        + gamma.powi(dch_min as i32) * dch_min * (dch_min - 1.0)
        + gamma
        - 1.0);
    (lower, upper)
}

// --- reports ------------------------------------------------------------------

/// Everything the formulas consumed, kept alongside the results.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityParams {
    /// Lattice dimension.
    pub n: usize,
    /// Label-group size per coordinate.
    pub group_sizes: Vec<u64>,
    /// Edge count per symbol node.
    pub symbol_degrees: Vec<usize>,
    /// Edge count per check node.
    pub check_degrees: Vec<usize>,
    /// Largest label-group size.
    pub max_group: u64,
    /// Smallest symbol degree.
    pub min_symbol_degree: usize,
    /// Largest symbol degree.
    pub max_symbol_degree: usize,
    /// Smallest check degree.
    pub min_check_degree: usize,
    /// Largest check degree.
    pub max_check_degree: usize,
    /// Geometric-mean coding gain used for the lower bound, when known.
    pub gamma: Option<f64>,
}

/// Closed-form per-iteration predictions next to measured counters.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityReport {
    /// Closed-form hard-decision comparisons.
    pub termination_comparisons: u64,
    /// Closed-form symbol-pass additions.
    pub symbol_summations: u64,
    /// Closed-form worst-case check-pass operations.
    pub check_operations: u64,
    /// Sum of the three closed forms.
    pub per_iteration_total: u64,
    /// Upper bound from the maximum group size and degrees.
    pub upper_bound: f64,
    /// Lower bound from `gamma` and the minimum degrees; absent when no
    /// `gamma` was supplied or computable.
    pub lower_bound: Option<f64>,
    /// Per-iteration counters from an instrumented decode, when one ran.
    pub measured: Option<IterationCounts>,
    /// Inputs the formulas used.
    pub params: ComplexityParams,
}

impl ComplexityReport {
    /// Evaluates every closed form for a model and graph; `gamma` enables
    /// the lower bound.
    pub fn closed_form(model: &LatticeModel, graph: &TannerGraph, gamma: Option<f64>) -> Self {
        let group_sizes: Vec<u64> = model.labels().iter().map(|info| info.g).collect();
        let symbol_degrees = graph.symbol_degrees();
        let check_degrees = graph.check_degrees();
        let (lower, upper) = bounds(model, graph, gamma.unwrap_or(1.0));
        let params = ComplexityParams {
            n: model.n(),
            max_group: group_sizes.iter().copied().max().unwrap_or(1),
            min_symbol_degree: symbol_degrees.iter().copied().min().unwrap_or(0),
            max_symbol_degree: symbol_degrees.iter().copied().max().unwrap_or(0),
            min_check_degree: check_degrees.iter().copied().min().unwrap_or(0),
            max_check_degree: check_degrees.iter().copied().max().unwrap_or(0),
            group_sizes,
            symbol_degrees,
            check_degrees,
            gamma,
        };
        ComplexityReport {
            termination_comparisons: termination_count(model),
            symbol_summations: symbol_count(model, graph),
            check_operations: check_count(graph),
            per_iteration_total: per_iteration_total(model, graph),
            upper_bound: upper,
            lower_bound: gamma.map(|_| lower),
            measured: None,
            params,
        }
    }

    /// True when measured counters obey their contracts: hard-decision and
    /// symbol counts equal the closed forms exactly, and check work stays
    /// at or below its worst case. False when nothing was measured.
    pub fn measured_consistent(&self) -> bool {
        match &self.measured {
            Some(m) => {
                m.termination_comparisons == self.termination_comparisons
                    && m.symbol_additions == self.symbol_summations
                    && m.check_operations <= self.check_operations
            }
            None => false,
        }
    }
}

/// Decodes `y` with live counters and returns the closed-form report with
/// the measured per-iteration counts filled in.
pub fn instrument_and_compare(
    model: &LatticeModel,
    graph: &TannerGraph,
    y: &[f64],
    max_iterations: u32,
    gamma: Option<f64>,
) -> Result<ComplexityReport> {
    let result = decode(model, graph, y, max_iterations)?;
    let mut report = ComplexityReport::closed_form(model, graph, gamma);
    report.measured = Some(result.counts);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::random_ldgm_codes;
    use crate::rational::RationalMatrix;
    use crate::tanner::build_graph;
    use crate::testutil::example_generator;

    fn example() -> (LatticeModel, TannerGraph) {
        let model = LatticeModel::from_generator(example_generator()).unwrap();
        let graph = build_graph(&model).unwrap();
        (model, graph)
    }

    fn integer_lattice(n: usize) -> (LatticeModel, TannerGraph) {
        let model = LatticeModel::from_generator(RationalMatrix::identity(n)).unwrap();
        let graph = build_graph(&model).unwrap();
        (model, graph)
    }

    #[test]
    fn termination_counts_match_formula_instances() {
        assert_eq!(termination_count_from_groups(&[3, 2]), 3);
        assert_eq!(termination_count_from_groups(&[1, 1, 1]), 0);
        let (model, _) = example();
        assert_eq!(termination_count(&model), 7);
        let (z3, _) = integer_lattice(3);
        assert_eq!(termination_count(&z3), 0);
    }

    #[test]
    fn symbol_counts_match_formula_instances() {
        assert_eq!(symbol_count_from_profile(&[2], &[3]), 12);
        assert_eq!(symbol_count_from_profile(&[5, 9, 2], &[1, 1, 1]), 0);
        let (model, graph) = example();
        assert_eq!(graph.symbol_degrees(), vec![3, 3, 4, 3, 1, 1, 1]);
        assert_eq!(symbol_count(&model, &graph), 60);
    }

    #[test]
    fn check_counts_match_formula_instances() {
        assert_eq!(check_count_from_profile(&[(2, 6)]), 12);
        assert_eq!(check_count_from_profile(&[(1, 4), (1, 9)]), 0);
        let (_, graph) = example();
        assert_eq!(graph.check_degrees(), vec![1, 1, 1, 1, 4, 4, 4]);
        assert_eq!(check_count(&graph), 576);
    }

    #[test]
    fn totals_are_additive() {
        let (model, graph) = example();
        assert_eq!(per_iteration_total(&model, &graph), 643);
        assert_eq!(
            per_iteration_total(&model, &graph),
            termination_count(&model) + symbol_count(&model, &graph) + check_count(&graph)
        );
        let (z4, z4_graph) = integer_lattice(4);
        assert_eq!(per_iteration_total(&z4, &z4_graph), 0);
        for seed in 0..20 {
            let codes = random_ldgm_codes(10, 5, 3, 4, seed).unwrap();
            let model = LatticeModel::from_codes(&codes).unwrap();
            let graph = build_graph(&model).unwrap();
            assert_eq!(
                per_iteration_total(&model, &graph),
                termination_count(&model) + symbol_count(&model, &graph) + check_count(&graph)
            );
        }
    }

    #[test]
    fn example_bounds_are_the_frozen_goldens() {
        let (model, graph) = example();
        let gamma = 3f64.sqrt();
        let (lower, upper) = bounds(&model, &graph, gamma);
        assert_eq!(upper, 1519.0);
        let expected_lower = 7.0 * (gamma - 1.0);
        assert!((lower - expected_lower).abs() <= 1e-9);
        let total = per_iteration_total(&model, &graph) as f64;
        assert!(lower <= total && total <= upper);
    }

    #[test]
    fn degenerate_degrees_leave_only_the_group_term() {
        let (z3, graph) = integer_lattice(3);
        let (lower, upper) = bounds(&z3, &graph, 1.0);
        assert_eq!(lower, 0.0);
        assert_eq!(upper, 0.0);
        assert_eq!(per_iteration_total(&z3, &graph), 0);
    }

    #[test]
    fn direct_sum_doubles_every_count() {
        let (model, graph) = example();
        let doubled = model.direct_sum(&model).unwrap();
        let doubled_graph = build_graph(&doubled).unwrap();
        assert_eq!(termination_count(&doubled), 2 * termination_count(&model));
        assert_eq!(
            symbol_count(&doubled, &doubled_graph),
            2 * symbol_count(&model, &graph)
        );
        assert_eq!(check_count(&doubled_graph), 2 * check_count(&graph));
        assert_eq!(per_iteration_total(&doubled, &doubled_graph), 2 * 643);
    }

    #[test]
    fn check_term_grows_exponentially_in_degree() {
        let mut previous = 0u64;
        for d in 2..=10usize {
            let configurations = 1u128 << d;
            let value = check_count_from_profile(&[(d, configurations)]);
            assert_eq!(value, (d * (d - 1)) as u64 * (1u64 << d));
            if d > 2 {
                assert!(value > 2 * previous, "check term must outpace doubling");
            }
            previous = value;
        }
    }

    #[test]
    fn saturating_arithmetic_never_panics() {
        let huge = check_count_from_profile(&[(40, u128::MAX)]);
        assert_eq!(huge, u64::MAX);
        assert_eq!(symbol_count_from_profile(&[u64::MAX], &[3]), u64::MAX);
        assert_eq!(termination_count_from_groups(&[0]), 0);
    }

    #[test]
    fn sandwich_holds_on_random_single_level_lattices() {
        for seed in 0..10 {
            let codes = random_ldgm_codes(8, 4, 3, 4, seed).unwrap();
            let mut model = LatticeModel::from_codes(&codes).unwrap();
            let graph = build_graph(&model).unwrap();
            let gamma = model.compute_coding_gain(64).unwrap().combined;
            let min_group = model.labels().iter().map(|info| info.g).min().unwrap();
            assert!(gamma <= min_group as f64 + 1e-9);
            let (lower, upper) = bounds(&model, &graph, gamma);
            let total = per_iteration_total(&model, &graph) as f64;
            assert!(
                lower <= total && total <= upper,
                "seed {seed}: {lower} <= {total} <= {upper} violated"
            );
        }
    }

    #[test]
    fn instrumented_decode_obeys_the_contracts() {
        let (model, graph) = example();
        let y = vec![0.45, -0.3, 0.2, 1.4, 0.55, -0.25, 0.3];
        let report = instrument_and_compare(&model, &graph, &y, 50, Some(3f64.sqrt())).unwrap();
        let measured = report.measured.unwrap();
        assert_eq!(measured.symbol_additions, 60);
        assert_eq!(measured.termination_comparisons, 7);
        assert_eq!(measured.check_operations, 288);
        assert!(measured.check_operations <= report.check_operations);
        assert!(report.measured_consistent());
        assert!(!ComplexityReport::closed_form(&model, &graph, None).measured_consistent());
    }

    #[test]
    fn report_serializes_with_all_sections() {
        let (model, graph) = example();
        let report = ComplexityReport::closed_form(&model, &graph, Some(3f64.sqrt()));
        let json = serde_json::to_string(&report).unwrap();
        for key in [
            "termination_comparisons",
            "symbol_summations",
            "check_operations",
            "per_iteration_total",
            "upper_bound",
            "lower_bound",
            "group_sizes",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
    }
}
