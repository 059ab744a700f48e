//! Tanner graph over the dual basis.
//!
//! Check node `ch_j` is row `j` of `B*`; symbol node `s_i` is coordinate
//! `i`. An edge joins them exactly when `B*[j][i]` is nonzero. A label
//! assignment `(k_1, …, k_n)` satisfies check `j` when
//!
//! ```text
//! Σ_i  B*[j][i] · p_i · k_i  ∈  Z        (sum over incident symbols)
//! ```
//!
//! evaluated exactly. Valid label tuples per check are materialized up to
//! a configurable cap so the decoder can scan them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::LatticeModel;
use crate::rational::Rational;

/// Default cap on materialized label configurations per check.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

/// Tanner graph construction options.
#[derive(Clone, Copy, Debug)]
pub struct GraphConfig {
    /// Checks whose configuration space `∏ g_i` exceeds this are kept
    /// predicate-only; decoding through them fails with a cap error.
    pub enumeration_cap: u128,
}

impl Default for GraphConfig {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Congruence form of a check: sum of `k_t * coeff_t` must vanish mod `modulus`.
#[derive(Clone, Debug)]
struct ModularForm {
    coeffs: Vec<u64>,
    modulus: u64,
}

/// One check node: its incident symbols, dual-row coefficients, and the
/// valid label configurations.
#[derive(Clone, Debug)]
pub struct CheckConstraint {
    index: usize,
    symbols: Vec<usize>,
    coeffs: Vec<Rational>,
    /// `coeff * p_i` per incident symbol; the label congruence works on these.
    hp: Vec<Rational>,
    group_sizes: Vec<u64>,
    configuration_count: u128,
    modular: Option<ModularForm>,
    valid_tuples: Option<Vec<Vec<u32>>>,
}

impl CheckConstraint {
    /// Check index, 0-based.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Incident symbol indices, ascending.
    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    /// Dual-row coefficients `h_{j,i}`, aligned with [`Self::symbols`].
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Label group orders of the incident symbols.
    pub fn group_sizes(&self) -> &[u64] {
        &self.group_sizes
    }

    /// Number of incident symbols.
    pub fn degree(&self) -> usize {
        self.symbols.len()
    }

    /// Size of the full configuration space `∏ g_i`.
    pub fn configuration_count(&self) -> u128 {
        self.configuration_count
    }

    /// Exact validity of one local label tuple (aligned with `symbols`).
    pub fn is_valid(&self, local_labels: &[u32]) -> bool {
        debug_assert_eq!(local_labels.len(), self.degree());
        if let Some(form) = &self.modular {
            let mut acc: u128 = 0;
            for (k, c) in local_labels.iter().zip(&form.coeffs) {
                acc = (acc + *k as u128 * *c as u128) % form.modulus as u128;
            }
            acc == 0
        } else {
            let sum: Rational = local_labels
                .iter()
                .zip(&self.hp)
                .map(|(k, hp)| hp * Rational::from_integer(BigInt::from(*k)))
                .sum();
            sum.is_integer()
        }
    }

    /// Validity of a global label assignment restricted to this check.
    pub fn is_satisfied_by(&self, labels: &[u32]) -> bool {
        let local: Vec<u32> = self.symbols.iter().map(|&i| labels[i]).collect();
        self.is_valid(&local)
    }

    /// All valid label tuples in lexicographic order, when materialized.
    pub fn valid_configurations(&self) -> Result<&[Vec<u32>]> {
        self.valid_tuples
            .as_deref()
            .ok_or(Error::EnumerationCapExceeded {
                check: self.index,
                configurations: self.configuration_count,
                cap: 0,
            })
    }

    /// Whether valid tuples were materialized at build time.
    pub fn is_materialized(&self) -> bool {
        self.valid_tuples.is_some()
    }
}

/// The bipartite graph: `n` symbols against the `n` rows of the dual.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    checks: Vec<CheckConstraint>,
    /// Per symbol: (check index, position among that check's symbols).
    symbol_adj: Vec<Vec<(usize, usize)>>,
    /// Flat edge numbering: edge id = edge_offsets[check] + position.
    edge_offsets: Vec<usize>,
    edge_count: usize,
    cap: u128,
}

/// Builds the graph with the default enumeration cap.
pub fn build_graph(model: &LatticeModel) -> Result<TannerGraph> {
    build_graph_with_config(model, GraphConfig::default())
}

/// Builds the graph, materializing valid tuples for every check whose
/// configuration space is at most the cap.
///
/// Fails when a dual coefficient violates the integrality `m_i · h_{j,i}`
/// the label-group structure promises; that would make check validity
/// depend on more than the labels.
pub fn build_graph_with_config(model: &LatticeModel, config: GraphConfig) -> Result<TannerGraph> {
    let n = model.n();
    let bstar = model.dual();
    let mut checks = Vec::with_capacity(n);
    let mut symbol_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edge_offsets = Vec::with_capacity(n);
    let mut edge_count = 0usize;
    for j in 0..n {
        edge_offsets.push(edge_count);
        let row = bstar.row(j);
        let mut symbols = Vec::with_capacity(row.len());
        let mut coeffs = Vec::with_capacity(row.len());
        let mut hp = Vec::with_capacity(row.len());
        let mut group_sizes = Vec::with_capacity(row.len());
        for (i, h) in row {
            let info = model.label(*i);
            if !(h * &info.m).is_integer() {
                return Err(Error::ModelViolation {
                    coordinate: *i,
                    reason: format!("dual entry at check {j} times m is not integral"),
                });
            }
            symbol_adj[*i].push((j, symbols.len()));
            symbols.push(*i);
            coeffs.push(h.clone());
            hp.push(h * &info.p);
            group_sizes.push(info.g);
        }
        edge_count += symbols.len();

        let configuration_count = group_sizes
            .iter()
            .try_fold(1u128, |acc, &g| acc.checked_mul(g as u128))
            .unwrap_or(u128::MAX);
        let modular = modular_form(&hp);
        let mut check = CheckConstraint {
            index: j,
            symbols,
            coeffs,
            hp,
            group_sizes,
            configuration_count,
            modular,
            valid_tuples: None,
        };
        if configuration_count <= config.enumeration_cap {
            check.valid_tuples = Some(enumerate_valid(&check));
        }
        checks.push(check);
    }
    Ok(TannerGraph {
        n,
        checks,
        symbol_adj,
        edge_offsets,
        edge_count,
        cap: config.enumeration_cap,
    })
}

/// Reduces the congruence to machine integers when the common denominator
/// fits in a `u64`.
fn modular_form(hp: &[Rational]) -> Option<ModularForm> {
    let mut den = BigInt::one();
    for v in hp {
        den = den.lcm(v.denom());
    }
    let modulus = den.to_u64()?;
    let coeffs = hp
        .iter()
        .map(|v| {
            let scaled = v * Rational::from_integer(den.clone());
            debug_assert!(scaled.is_integer());
            scaled
                .to_integer()
                .mod_floor(&BigInt::from(modulus))
                .to_u64()
        })
        .collect::<Option<Vec<u64>>>()?;
    Some(ModularForm { coeffs, modulus })
}

/// Lexicographic scan of the configuration space, keeping valid tuples.
fn enumerate_valid(check: &CheckConstraint) -> Vec<Vec<u32>> {
    let d = check.degree();
    let mut out = Vec::new();
    let mut current = vec![0u32; d];
    walk(check, 0, &mut current, &mut out);
    return out;

    fn walk(check: &CheckConstraint, depth: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if depth == current.len() {
            if check.is_valid(current) {
                out.push(current.clone());
            }
            return;
        }
        for k in 0..check.group_sizes()[depth] {
            current[depth] = k as u32;
            walk(check, depth + 1, current, out);
        }
        current[depth] = 0;
    }
}

impl TannerGraph {
    /// Number of symbols (and of checks).
    pub fn n(&self) -> usize {
        self.n
    }

    /// All check constraints, in row order.
    pub fn checks(&self) -> &[CheckConstraint] {
        &self.checks
    }

    /// Check constraint `j`.
    pub fn check(&self, j: usize) -> &CheckConstraint {
        &self.checks[j]
    }

    /// Edges of symbol `i` as (check, position) pairs.
    pub fn symbol_edges(&self, i: usize) -> &[(usize, usize)] {
        &self.symbol_adj[i]
    }

    /// Symbol degree profile `d_{y_i}`.
    pub fn symbol_degrees(&self) -> Vec<usize> {
        self.symbol_adj.iter().map(Vec::len).collect()
    }

    /// Check degree profile `d_{ch_j}`.
    pub fn check_degrees(&self) -> Vec<usize> {
        self.checks.iter().map(CheckConstraint::degree).collect()
    }

    /// Total number of edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Flat id of the edge at `position` within check `j`.
    pub fn edge_id(&self, check: usize, position: usize) -> usize {
        debug_assert!(position < self.checks[check].degree());
        self.edge_offsets[check] + position
    }

    /// Enumeration cap the graph was built with.
    pub fn enumeration_cap(&self) -> u128 {
        self.cap
    }

    /// True when the label assignment satisfies every check.
    pub fn labels_satisfy_all(&self, labels: &[u32]) -> bool {
        self.checks.iter().all(|c| c.is_satisfied_by(labels))
    }

    /// GraphViz rendering with deterministic names: symbols `s_1…s_n` as
    /// circles, checks `ch_1…ch_n` as boxes, 1-based.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph tanner {\n");
        for i in 0..self.n {
            out.push_str(&format!("  s_{} [shape=circle];\n", i + 1));
        }
        for j in 0..self.n {
            out.push_str(&format!("  ch_{} [shape=box];\n", j + 1));
        }
        for (j, check) in self.checks.iter().enumerate() {
            for &i in check.symbols() {
                out.push_str(&format!("  s_{} -- ch_{};\n", i + 1, j + 1));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Plain adjacency listing, one check per line: `j: i1,i2,…`, 1-based.
    pub fn format_adjacency(&self) -> String {
        let mut out = String::new();
        for (j, check) in self.checks.iter().enumerate() {
            let syms: Vec<String> = check.symbols().iter().map(|&i| (i + 1).to_string()).collect();
            out.push_str(&format!("{}: {}\n", j + 1, syms.join(",")));
        }
        out
    }
}
