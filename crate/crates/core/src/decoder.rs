//! Iterative min-sum decoding over the label Tanner graph.
//!
//! The channel hands the decoder a real vector `y`. Each coordinate is
//! measured against the `g_i` cross-section cosets of its axis: the nearest
//! representative of every coset yields a candidate coordinate value and a
//! squared-distance weight. Message passing on the Tanner graph then trades
//! these weights between symbol and check nodes until the per-coordinate
//! argmin labels satisfy every check, at which point the per-label nearest
//! representatives assemble a point that is guaranteed to lie in the
//! lattice.
//!
//! Weights travel as plain `f64` squared distances. A label that a check
//! cannot complete to any valid configuration is priced at `+inf`, a
//! sentinel that saturates under addition and never wins an argmin (graphs
//! built from consistent lattice models never produce it, because every
//! label is realized by some lattice point; the sentinel guards synthetic
//! or corrupted states). After every check pass the per-edge minimum is
//! subtracted from each message vector; decisions depend only on per-edge
//! weight differences, so this renormalization is invisible to the argmin
//! while keeping magnitudes bounded over long runs.
//!
//! Operation counters tally the naive cost of each pass so closed-form
//! per-iteration cost predictions can be compared with observed work: a
//! symbol pass charges `d - 1` additions per edge per label, a check pass
//! `d - 1` operations per valid configuration per edge (`d - 2` additions
//! to combine the other incoming messages plus one min-comparison), and a
//! termination pass `g_i - 1` comparisons per coordinate. Renormalization
//! and the finalize pass are bookkeeping and go uncounted.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeModel;
use crate::tanner::TannerGraph;

/// Default iteration budget for `decode`.
pub const DEFAULT_MAX_ITERATIONS: u32 = 50;

/// Largest dimension `ml_oracle_decode` will search exhaustively.
pub const MAX_ORACLE_DIMENSION: usize = 10;

/// Largest candidate-box cardinality the exhaustive search will visit.
const MAX_ORACLE_CANDIDATES: u128 = 1 << 27;

// --- received words and candidates -----------------------------------------

/// A channel output, kept both in standard coordinates and in the
/// per-coordinate `v_i = m_i e_i` units the weight formulas work in.
#[derive(Clone, Debug)]
pub struct ReceivedWord {
    /// Channel output in standard coordinates.
    pub y: Vec<f64>,
    /// Per-coordinate projection `y_i / m_i` onto the cross-section unit.
    pub ybar: Vec<f64>,
}

impl ReceivedWord {
    /// Wraps a raw channel output, deriving the `v_i`-unit view.
    pub fn new(model: &LatticeModel, y: &[f64]) -> Result<Self> {
        if y.len() != model.n() {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                found: y.len(),
            });
        }
        let ybar = y
            .iter()
            .zip(model.labels())
            .map(|(yi, info)| yi / info.m_f64)
            .collect();
        Ok(ReceivedWord { y: y.to_vec(), ybar })
    }
}

/// Nearest element of coset `label` (the shifted integer grid
/// `label/g + Z`) to `ybar`, in `v_i` units. Half-integer ties round to
/// even, so the choice is deterministic.
pub fn nearest_coset_point(ybar: f64, g: u64, label: u32) -> f64 {
    let a = label as f64 / g as f64;
    a + (ybar - a).round_ties_even()
}

/// Squared distance from `y_i = ybar * m` to the nearest element of coset
/// `label`, computed by folding into the unit cell: with
/// `u = ybar - label/g`, the weight is `(m * (u - round(u)))^2`. This is
/// the form the decoder uses; no candidate point is materialized.
pub fn folded_coset_weight(ybar: f64, m: f64, g: u64, label: u32) -> f64 {
    let u = ybar - label as f64 / g as f64;
    let frac = u - u.round_ties_even();
    (m * frac) * (m * frac)
}

/// The same squared distance computed through the explicit nearest
/// representative; kept as an independent cross-check of the folded form.
pub fn coset_weight_via_candidate(ybar: f64, m: f64, g: u64, label: u32) -> f64 {
    let x = nearest_coset_point(ybar, g, label);
    let d = (x - ybar) * m;
    d * d
}

/// Per-coordinate nearest coset representatives, in `v_i` units.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    /// `candidates[i][j]` is the element of coset `j` closest to `ybar_i`.
    pub candidates: Vec<Vec<f64>>,
}

impl CandidateSet {
    /// Builds the full candidate table for a received word.
    pub fn new(model: &LatticeModel, word: &ReceivedWord) -> Self {
        let candidates = model
            .labels()
            .iter()
            .map(|info| {
                (0..info.g)
                    .map(|j| nearest_coset_point(word.ybar[info.index], info.g, j as u32))
                    .collect()
            })
            .collect();
        CandidateSet { candidates }
    }

    /// Candidate for coordinate `i` and label `j`, in standard coordinates.
    pub fn real_coordinate(&self, model: &LatticeModel, i: usize, j: u32) -> f64 {
        self.candidates[i][j as usize] * model.label(i).m_f64
    }
}

/// Channel weight table: entry `[i][j]` is the squared distance from `y_i`
/// to the nearest element of coset `j` on coordinate `i`.
pub fn initial_weights(model: &LatticeModel, word: &ReceivedWord) -> Vec<Vec<f64>> {
    model
        .labels()
        .iter()
        .map(|info| {
            (0..info.g)
                .map(|j| folded_coset_weight(word.ybar[info.index], info.m_f64, info.g, j as u32))
                .collect()
        })
        .collect()
}

/// Reassembles the real point selected by one label per coordinate: each
/// coordinate becomes the nearest element of the chosen coset to `y_i`.
pub fn point_from_labels(
    model: &LatticeModel,
    word: &ReceivedWord,
    labels: &[u32],
) -> Result<Vec<f64>> {
    if labels.len() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            found: labels.len(),
        });
    }
    let mut point = Vec::with_capacity(labels.len());
    for (info, &k) in model.labels().iter().zip(labels) {
        if u64::from(k) >= info.g {
            return Err(Error::InvalidArgument(format!(
                "label {k} out of range for coordinate {} (group order {})",
                info.index, info.g
            )));
        }
        point.push(nearest_coset_point(word.ybar[info.index], info.g, k) * info.m_f64);
    }
    Ok(point)
}

// --- operation counters -----------------------------------------------------

/// Naive operation tallies for the three counted pass kinds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IterationCounts {
    /// Additions performed by symbol passes.
    pub symbol_additions: u64,
    /// Additions and min-comparisons performed by check passes.
    pub check_operations: u64,
    /// Comparisons performed by hard-decision passes.
    pub termination_comparisons: u64,
}

impl IterationCounts {
    /// Sum of all three counters.
    pub fn total(&self) -> u64 {
        self.symbol_additions + self.check_operations + self.termination_comparisons
    }
}

// --- message state ----------------------------------------------------------

/// All mutable state of one decode call: the channel weight table, both
/// message directions (edge-indexed, one `f64` per label of the edge's
/// symbol), the final weights, and the cumulative operation tallies.
#[derive(Clone, Debug)]
pub struct MessageState {
    /// Channel weights, one vector of length `g_i` per coordinate.
    pub initial: Vec<Vec<f64>>,
    /// Symbol-to-check messages, indexed by edge id.
    pub symbol_to_check: Vec<Vec<f64>>,
    /// Check-to-symbol messages, indexed by edge id.
    pub check_to_symbol: Vec<Vec<f64>>,
    /// Combined weights from the most recent finalize pass.
    pub final_weights: Vec<Vec<f64>>,
    /// Completed iterations.
    pub iteration: u32,
    /// Operation tallies accumulated over all completed passes.
    pub counts: IterationCounts,
}

/// One message vector per edge, check-major, sized by the edge's label
/// group and filled with `fill`.
fn edge_tables(graph: &TannerGraph, fill: f64) -> Vec<Vec<f64>> {
    let mut tables = Vec::with_capacity(graph.edge_count());
    for check in graph.checks() {
        for &g in check.group_sizes() {
            tables.push(vec![fill; g as usize]);
        }
    }
    tables
}

impl MessageState {
    /// Computes channel weights for a received word and zeroes all
    /// messages, so the first symbol pass forwards the channel weights
    /// verbatim.
    pub fn init(model: &LatticeModel, graph: &TannerGraph, word: &ReceivedWord) -> Result<Self> {
        if graph.n() != model.n() {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                found: graph.n(),
            });
        }
        if word.y.len() != model.n() {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                found: word.y.len(),
            });
        }
        let initial = initial_weights(model, word);
        Ok(MessageState {
            final_weights: initial.clone(),
            initial,
            symbol_to_check: edge_tables(graph, 0.0),
            check_to_symbol: edge_tables(graph, 0.0),
            iteration: 0,
            counts: IterationCounts::default(),
        })
    }

    /// One symbol pass: each outgoing message is the channel weight plus
    /// every incoming check message except the receiving check's own (the
    /// extrinsic rule). Charges `d - 1` additions per edge per label.
    pub fn symbol_update(&mut self, graph: &TannerGraph) {
        for i in 0..graph.n() {
            let edges = graph.symbol_edges(i);
            let d = edges.len() as u64;
            for &(check, pos) in edges {
                let target = graph.edge_id(check, pos);
                for k in 0..self.initial[i].len() {
                    let mut acc = self.initial[i][k];
                    for &(other_check, other_pos) in edges {
                        if (other_check, other_pos) != (check, pos) {
                            acc += self.check_to_symbol[graph.edge_id(other_check, other_pos)][k];
                        }
                    }
                    self.symbol_to_check[target][k] = acc;
                }
                self.counts.symbol_additions += (d - 1) * self.initial[i].len() as u64;
            }
        }
    }

    /// One check pass: for every edge and label, the outgoing message is
    /// the cheapest completion of that label to a valid configuration of
    /// the check, summing the other symbols' incoming messages at their
    /// configuration labels. Labels no configuration realizes stay at the
    /// `+inf` sentinel. Charges `d - 1` operations per valid configuration
    /// per edge, so degree-1 checks are free and emit zeros.
    pub fn check_update(&mut self, graph: &TannerGraph) -> Result<()> {
        for check in graph.checks() {
            let d = check.degree();
            let base = graph.edge_id(check.index(), 0);
            for pos in 0..d {
                for slot in self.check_to_symbol[base + pos].iter_mut() {
                    *slot = f64::INFINITY;
                }
            }
            let tuples = check.valid_configurations()?;
            for labels in tuples {
                for pos in 0..d {
                    let mut acc = 0.0;
                    for (other_pos, &other_label) in labels.iter().enumerate() {
                        if other_pos != pos {
                            acc += self.symbol_to_check[base + other_pos][other_label as usize];
                        }
                    }
                    let slot = &mut self.check_to_symbol[base + pos][labels[pos] as usize];
                    if acc < *slot {
                        *slot = acc;
                    }
                }
                self.counts.check_operations += (d as u64) * (d as u64 - 1);
            }
        }
        Ok(())
    }

    /// Subtracts the per-edge minimum from every check-to-symbol message.
    /// Uncounted: it changes no decision, only keeps magnitudes bounded.
    pub fn normalize_messages(&mut self) {
        for message in &mut self.check_to_symbol {
            let mut low = f64::INFINITY;
            for &w in message.iter() {
                if w < low {
                    low = w;
                }
            }
            if low.is_finite() && low > 0.0 {
                for w in message.iter_mut() {
                    *w -= low;
                }
            }
        }
    }

    /// One finalize pass: per coordinate and label, the channel weight
    /// plus every incident check message, with no exclusion. Uncounted.
    pub fn finalize(&mut self, graph: &TannerGraph) {
        let mut combined = self.initial.clone();
        for (i, slots) in combined.iter_mut().enumerate() {
            for &(check, pos) in graph.symbol_edges(i) {
                let message = &self.check_to_symbol[graph.edge_id(check, pos)];
                for (slot, w) in slots.iter_mut().zip(message) {
                    *slot += w;
                }
            }
        }
        self.final_weights = combined;
    }

    /// Per-coordinate argmin over the final weights, lowest label winning
    /// ties. Charges `g_i - 1` comparisons per coordinate. The flag turns
    /// false when some coordinate prices every label at `+inf`, meaning no
    /// valid configuration is reachable there.
    pub fn hard_decision(&mut self) -> (Vec<u32>, bool) {
        let mut labels = Vec::with_capacity(self.final_weights.len());
        let mut all_finite = true;
        for weights in &self.final_weights {
            let mut best = 0usize;
            for k in 1..weights.len() {
                self.counts.termination_comparisons += 1;
                if weights[k] < weights[best] {
                    best = k;
                }
            }
            if !weights[best].is_finite() {
                all_finite = false;
            }
            labels.push(best as u32);
        }
        (labels, all_finite)
    }
}

// --- decoding ---------------------------------------------------------------

/// How a decode call ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeStatus {
    /// The decided labels satisfy every check; the point is in the lattice.
    Converged,
    /// The iteration budget ran out before the labels went valid.
    MaxIterations,
    /// Some coordinate had every label priced at `+inf`.
    NoValidConfiguration,
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeStatus::Converged => "converged",
            DecodeStatus::MaxIterations => "max-iterations",
            DecodeStatus::NoValidConfiguration => "no-valid-configuration",
        })
    }
}

/// Outcome of one decode call.
#[derive(Clone, Debug, Serialize)]
pub struct DecodeResult {
    /// Termination condition.
    pub status: DecodeStatus,
    /// Decided label per coordinate.
    pub labels: Vec<u32>,
    /// Decided point in standard coordinates.
    pub point: Vec<f64>,
    /// Total channel weight of the decision, which equals the squared
    /// Euclidean distance from the received word to `point`.
    pub weight: f64,
    /// Iterations executed.
    pub iterations: u32,
    /// Operation tallies for a single iteration. Every iteration performs
    /// identical work, so these are the per-iteration measured costs.
    pub counts: IterationCounts,
    /// Operation tallies accumulated over the whole call.
    pub total_operations: u64,
}

/// Runs min-sum message passing until the decided labels satisfy every
/// check or the iteration budget runs out. Each iteration is one symbol
/// pass, one check pass, renormalization, a finalize pass, and a
/// hard decision tested against all checks.
pub fn decode(
    model: &LatticeModel,
    graph: &TannerGraph,
    y: &[f64],
    max_iterations: u32,
) -> Result<DecodeResult> {
    if max_iterations == 0 {
        return Err(Error::InvalidArgument(
            "iteration budget must be at least 1".into(),
        ));
    }
    let word = ReceivedWord::new(model, y)?;
    let mut state = MessageState::init(model, graph, &word)?;
    let mut status = DecodeStatus::MaxIterations;
    let mut labels = vec![0u32; model.n()];
    for _ in 0..max_iterations {
        state.iteration += 1;
        state.symbol_update(graph);
        state.check_update(graph)?;
        state.normalize_messages();
        state.finalize(graph);
        let (decided, all_finite) = state.hard_decision();
        labels = decided;
        if !all_finite {
            status = DecodeStatus::NoValidConfiguration;
            break;
        }
        if graph.labels_satisfy_all(&labels) {
            status = DecodeStatus::Converged;
            break;
        }
    }
    let iterations = state.iteration;
    let point = point_from_labels(model, &word, &labels)?;
    let weight = labels
        .iter()
        .enumerate()
        .map(|(i, &k)| state.initial[i][k as usize])
        .sum();
    let per = u64::from(iterations);
    debug_assert_eq!(state.counts.symbol_additions % per, 0);
    debug_assert_eq!(state.counts.check_operations % per, 0);
    debug_assert_eq!(state.counts.termination_comparisons % per, 0);
    let counts = IterationCounts {
        symbol_additions: state.counts.symbol_additions / per,
        check_operations: state.counts.check_operations / per,
        termination_comparisons: state.counts.termination_comparisons / per,
    };
    Ok(DecodeResult {
        status,
        labels,
        point,
        weight,
        iterations,
        counts,
        total_operations: state.counts.total(),
    })
}

// --- exhaustive nearest-point oracle ----------------------------------------

/// Exhaustive nearest-point search for small lattices. Rounds the dual
/// coordinates of `y` to center an integer-coefficient box of the given
/// radius, enumerates every lattice point the box generates, and returns
/// the closest one together with its squared distance. Exact ties go to
/// the lexicographically smallest point.
pub fn ml_oracle_decode(model: &LatticeModel, y: &[f64], radius: u32) -> Result<(Vec<f64>, f64)> {
    let n = model.n();
    if n > MAX_ORACLE_DIMENSION {
        return Err(Error::GuardExceeded {
            what: "exhaustive nearest-point search",
            limit: MAX_ORACLE_DIMENSION,
            n,
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.len(),
        });
    }
    let width = 2 * u128::from(radius) + 1;
    let candidates = width.pow(n as u32);
    if candidates > MAX_ORACLE_CANDIDATES {
        return Err(Error::InvalidArgument(format!(
            "search box holds {candidates} candidates, above the cap {MAX_ORACLE_CANDIDATES}; \
             reduce the radius"
        )));
    }
    let basis = model.generator().to_f64_dense();
    let dual = model.dual().to_f64_dense();
    let center: Vec<i64> = dual
        .iter()
        .map(|row| {
            let dot: f64 = row.iter().zip(y).map(|(h, yi)| h * yi).sum();
            dot.round_ties_even() as i64
        })
        .collect();

    let radius = i64::from(radius);
    let mut coeff: Vec<i64> = center.iter().map(|c| c - radius).collect();
    let mut x = vec![0.0; n];
    for k in 0..n {
        for i in 0..n {
            x[i] += coeff[k] as f64 * basis[k][i];
        }
    }
    let mut best = x.clone();
    let mut best_d2 = f64::INFINITY;
    loop {
        let d2: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - yi) * (xi - yi)).sum();
        if d2 < best_d2 || (d2 == best_d2 && lexicographically_less(&x, &best)) {
            best_d2 = d2;
            best = x.clone();
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok((best, best_d2));
            }
            if coeff[k] < center[k] + radius {
                coeff[k] += 1;
                for i in 0..n {
                    x[i] += basis[k][i];
                }
                break;
            }
            coeff[k] = center[k] - radius;
            for i in 0..n {
                x[i] -= (2 * radius) as f64 * basis[k][i];
            }
            k += 1;
        }
    }
}

/// Strict lexicographic order on equal-length real vectors.
fn lexicographically_less(a: &[f64], b: &[f64]) -> bool {
    for (ai, bi) in a.iter().zip(b) {
        if ai < bi {
            return true;
        }
        if ai > bi {
            return false;
        }
    }
    false
}
