//! Closed-form lower bounds on anonymity leakage, evaluated from graph
//! statistics alone.
//!
//! Each evaluator returns the number of bits an adversary is guaranteed to
//! learn on average (or in expectation) no matter which OR algorithm runs,
//! under the stated observation model:
//!
//! * [`rcase_bound`] — per-edge-set bound from the components left after
//!   removing the watched edges; valid even for randomized algorithms.
//! * [`sparse_bound_k`] / [`sparse_bound_p`] — collision-entropy bounds
//!   driven by pairwise distances; strong on sparse topologies.
//! * [`dense_bound_k`] / [`dense_bound_p`] — topology-free bounds that only
//!   need `n` and `m`.
//! * [`sparsec_bound_k`] / [`sparsec_coro_bound_k`] / [`densec_bound_k`] and
//!   their Bernoulli forms — presence-only analogues that trade leakage
//!   against the algorithm's worst-case message count.
//! * [`petrov_check`] — the concavity inequality the capped bounds lean on.
//! * [`ramp_star_bound`] — total share entropy needed by a `(k, n, n)`-ramp
//!   sharing of a secret.
//!
//! Conventions: `0^0 = 1` so that diagonal (identical-node) terms contribute
//! fully, and all logarithms are base 2.
//!
//! ```
//! use orleak::algorithms::Convergecast;
//! use orleak::bounds::{dense_bound_p, sparse_bound_p};
//! use orleak::graph::{spanning_tree, UnderlyingGraph};
//! use orleak::leakage::{expected_leak_bernoulli, BernoulliMethod, ObservationMode};
//!
//! let g = UnderlyingGraph::path(6).unwrap();
//! let algo = Convergecast::new(spanning_tree(&g, 0).unwrap());
//! let measured = expected_leak_bernoulli(
//!     &algo, &g, 0.5, ObservationMode::Full, BernoulliMethod::Exact,
//! ).unwrap().bits;
//! // the measurement dominates both closed forms
//! assert!(measured >= sparse_bound_p(&g, 0.5).unwrap() - 1e-9);
//! assert!(measured >= dense_bound_p(6, 0.5).unwrap() - 1e-9);
//! // on a long path the distance-aware bound is the stronger of the two
//! assert!(sparse_bound_p(&g, 0.5).unwrap() > dense_bound_p(6, 0.5).unwrap());
//! ```

use thiserror::Error;

use crate::graph::{
    all_pairs_distance, components, connected_supersets, disc, EdgeSet, GraphError, UnderlyingGraph,
};

/// Inner enumerations (connected supersets per node) are capped at this many
/// sets.
pub const SUPERSET_CUTOFF: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} needs {needed} cases; cutoff is {limit}")]
    CutoffExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_p(p: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(BoundsError::InvalidParameter(format!(
            "p = {p} outside [0, 1]"
        )));
    }
    Ok(p)
}

/// `x^k` with the `0^0 = 1` convention.
fn pow_k(x: f64, k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        x.powi(k as i32)
    }
}

/// The component bound for one edge set, together with the alternative
/// printed form `log n + Σ (n_i/n) log(n_i/n)`.
///
/// The two expressions disagree on most inputs (they sum to `log n`), and
/// exhaustive simulation sides with the component entropy, so that field is
/// the operative bound; the other form is carried for side-by-side reporting
/// and flagged whenever it differs.
#[derive(Debug, Clone, PartialEq)]
pub struct RcaseBound {
    /// `-Σ (n_i/n) log2(n_i/n)` over the components of `(V, E - F)`.
    pub component_entropy_bits: f64,
    /// `log2 n + Σ (n_i/n) log2(n_i/n)`.
    pub printed_form_bits: f64,
    /// True when the two expressions differ by more than 1e-9.
    pub forms_disagree: bool,
}

/// Lower bound on the leakage of any OR algorithm (randomized included) for
/// a fixed watched set `F`, derived from which components of `(V, E - F)`
/// the initiator can be placed in.
pub fn rcase_bound(g: &UnderlyingGraph, f: &EdgeSet) -> RcaseBound {
    let n = g.node_count() as f64;
    let kept = g.full_edge_set().difference(f);
    let blocks = components(g, &kept);
    let component_entropy_bits = -blocks
        .iter()
        .map(|b| {
            let p = b.len() as f64 / n;
            p * p.log2()
        })
        .sum::<f64>()
        + 0.0;
    let printed_form_bits = n.log2() - component_entropy_bits;
    RcaseBound {
        component_entropy_bits,
        printed_form_bits,
        forms_disagree: (printed_form_bits - component_entropy_bits).abs() > 1e-9,
    }
}

#[allow(clippy::needless_range_loop)]
fn pair_sum_bound(g: &UnderlyingGraph, term: impl Fn(usize) -> f64) -> Result<f64, BoundsError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::InvalidParameter("graph has no edges".into()));
    }
    let n = g.node_count();
    let dist = all_pairs_distance(g);
    let mut sum = 0.0;
    for u in 0..n {
        for v in 0..n {
            sum += term(dist[u][v]);
        }
    }
    // + 0.0 turns a -0.0 result into +0.0
    Ok(-(sum / (n * n) as f64).log2() + 0.0)
}

/// Distance-driven bound on the average full-history leakage over ordered
/// `k`-tuples of watched edges.
pub fn sparse_bound_k(g: &UnderlyingGraph, k: u32) -> Result<f64, BoundsError> {
    let m = g.edge_count() as f64;
    pair_sum_bound(g, |d| pow_k(1.0 - d as f64 / m, k))
}

/// Distance-driven bound on the expected full-history leakage when each edge
/// is watched independently with probability `p`.
pub fn sparse_bound_p(g: &UnderlyingGraph, p: f64) -> Result<f64, BoundsError> {
    let p = check_p(p)?;
    pair_sum_bound(g, |d| pow_k(1.0 - p, d as u32))
}

/// Topology-free bound on the `k`-tuple average: `(1 - (1 - 1/m)^k) log2 n`.
pub fn dense_bound_k(n: usize, m: usize, k: u32) -> Result<f64, BoundsError> {
    if n < 2 || m < 1 {
        return Err(BoundsError::InvalidParameter(format!(
            "need n >= 2, m >= 1; got n={n}, m={m}"
        )));
    }
    Ok((1.0 - pow_k(1.0 - 1.0 / m as f64, k)) * (n as f64).log2())
}

/// Topology-free Bernoulli bound: `p log2 n`.
pub fn dense_bound_p(n: usize, p: f64) -> Result<f64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::InvalidParameter(format!(
            "need n >= 2; got n={n}"
        )));
    }
    Ok(check_p(p)? * (n as f64).log2())
}

#[allow(clippy::needless_range_loop)]
fn disc_matrix(
    g: &UnderlyingGraph,
    active_sets: &[EdgeSet],
) -> Result<Vec<Vec<usize>>, BoundsError> {
    let n = g.node_count();
    if active_sets.len() != n {
        return Err(BoundsError::InvalidParameter(format!(
            "need one active set per node; got {} for {n} nodes",
            active_sets.len()
        )));
    }
    let mut d = vec![vec![0; n]; n];
    for u in 0..n {
        for v in 0..n {
            let free = active_sets[u].intersection(&active_sets[v]);
            d[u][v] = disc(g, u, v, &free);
        }
    }
    Ok(d)
}

fn disc_sum_bound(
    g: &UnderlyingGraph,
    active_sets: &[EdgeSet],
    term: impl Fn(usize) -> f64,
) -> Result<f64, BoundsError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::InvalidParameter("graph has no edges".into()));
    }
    let n = g.node_count();
    let d = disc_matrix(g, active_sets)?;
    let sum: f64 = d.iter().flatten().map(|&x| term(x)).sum();
    Ok(-(sum / (n * n) as f64).log2() + 0.0)
}

/// Presence-only analogue of [`sparse_bound_k`], with distances discounted by
/// the edges active under both executions (`active_sets[v]` is the active set
/// when `v` initiates).
pub fn sparsec_bound_k(
    g: &UnderlyingGraph,
    active_sets: &[EdgeSet],
    k: u32,
) -> Result<f64, BoundsError> {
    let m = g.edge_count() as f64;
    disc_sum_bound(g, active_sets, |d| pow_k(1.0 - d as f64 / m, k))
}

/// Presence-only analogue of [`sparse_bound_p`].
pub fn sparsec_bound_p(
    g: &UnderlyingGraph,
    active_sets: &[EdgeSet],
    p: f64,
) -> Result<f64, BoundsError> {
    let p = check_p(p)?;
    disc_sum_bound(g, active_sets, |d| pow_k(1.0 - p, d as u32))
}

/// Algorithm-free version of the presence-only distance bound: the active
/// component around each node is replaced by the worst connected node set of
/// at most `wcom + 1` nodes. The inner optimization takes the largest inner
/// sum, which makes the resulting bound the weakest over candidate sets and
/// hence valid for every algorithm with that communication budget.
pub fn sparsec_coro_bound_k(g: &UnderlyingGraph, wcom: usize, k: u32) -> Result<f64, BoundsError> {
    let m = g.edge_count() as f64;
    coro_bound(g, wcom, |d| pow_k(1.0 - d as f64 / m, k))
}

/// Bernoulli form of [`sparsec_coro_bound_k`].
pub fn sparsec_coro_bound_p(g: &UnderlyingGraph, wcom: usize, p: f64) -> Result<f64, BoundsError> {
    let p = check_p(p)?;
    coro_bound(g, wcom, |d| pow_k(1.0 - p, d as u32))
}

#[allow(clippy::needless_range_loop)]
fn coro_bound(
    g: &UnderlyingGraph,
    wcom: usize,
    term: impl Fn(usize) -> f64,
) -> Result<f64, BoundsError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::InvalidParameter("graph has no edges".into()));
    }
    let n = g.node_count();
    let dist = all_pairs_distance(g);
    let mut outer = 0.0;
    let mut enumerated: u128 = 0;
    for u in 0..n {
        let sets = connected_supersets(g, u, wcom + 1)?;
        enumerated += sets.len() as u128;
        if enumerated > SUPERSET_CUTOFF {
            return Err(BoundsError::CutoffExceeded {
                what: format!("connected supersets up to size {}", wcom + 1),
                needed: enumerated,
                limit: SUPERSET_CUTOFF,
            });
        }
        let mut worst = f64::NEG_INFINITY;
        for set in &sets {
            let mut inner = 0.0;
            for v in 0..n {
                let d = set
                    .iter()
                    .map(|&w| dist[w][v])
                    .min()
                    .expect("non-empty set");
                inner += term(d);
            }
            worst = worst.max(inner);
        }
        outer += worst;
    }
    Ok(-(outer / (n * n) as f64).log2() + 0.0)
}

/// A capped bound value together with whether its hypothesis
/// (`wcom < n - 1`) held; a violated hypothesis yields a vacuous 0-bit bound
/// rather than an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensecBound {
    pub bits: f64,
    pub hypothesis_ok: bool,
}

/// Presence-only topology-free bound for communication-thrifty algorithms:
/// `(1 - (1 - 1/m)^k) log2(n / (wcom + 1))`.
pub fn densec_bound_k(n: usize, m: usize, wcom: usize, k: u32) -> Result<DensecBound, BoundsError> {
    if n < 2 || m < 1 {
        return Err(BoundsError::InvalidParameter(format!(
            "need n >= 2, m >= 1; got n={n}, m={m}"
        )));
    }
    if wcom >= n - 1 {
        return Ok(DensecBound {
            bits: 0.0,
            hypothesis_ok: false,
        });
    }
    let bits = (1.0 - pow_k(1.0 - 1.0 / m as f64, k)) * (n as f64 / (wcom + 1) as f64).log2();
    Ok(DensecBound {
        bits,
        hypothesis_ok: true,
    })
}

/// Bernoulli form of [`densec_bound_k`]: `p log2(n / (wcom + 1))`.
pub fn densec_bound_p(n: usize, wcom: usize, p: f64) -> Result<DensecBound, BoundsError> {
    if n < 2 {
        return Err(BoundsError::InvalidParameter(format!(
            "need n >= 2; got n={n}"
        )));
    }
    let p = check_p(p)?;
    if wcom >= n - 1 {
        return Ok(DensecBound {
            bits: 0.0,
            hypothesis_ok: false,
        });
    }
    Ok(DensecBound {
        bits: p * (n as f64 / (wcom + 1) as f64).log2(),
        hypothesis_ok: true,
    })
}

/// Right-hand side of the block-entropy inequality:
/// `(Σ min(n_i, m) - m) / (n - m) · log2(n / m)` for blocks summing to
/// `n > m >= 1`.
pub fn petrov_rhs(block_sizes: &[usize], m: usize) -> Result<f64, BoundsError> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(BoundsError::InvalidParameter(
            "block sizes must be positive".into(),
        ));
    }
    let n: usize = block_sizes.iter().sum();
    if m == 0 || m >= n {
        return Err(BoundsError::InvalidParameter(format!(
            "need 1 <= m < n; got m={m}, n={n}"
        )));
    }
    let capped: usize = block_sizes.iter().map(|&b| b.min(m)).sum();
    Ok((capped - m) as f64 / (n - m) as f64 * (n as f64 / m as f64).log2())
}

/// Outcome of checking the block-entropy inequality on one composition.
#[derive(Debug, Clone, PartialEq)]
pub struct PetrovCheck {
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub pass: bool,
    /// True when both sides vanish (single block).
    pub equality: bool,
}

/// Check `-Σ (n_i/n) log2(n_i/n) >= petrov_rhs(blocks, m)`.
pub fn petrov_check(block_sizes: &[usize], m: usize) -> Result<PetrovCheck, BoundsError> {
    let rhs_bits = petrov_rhs(block_sizes, m)?;
    let n: usize = block_sizes.iter().sum();
    let lhs_bits = -block_sizes
        .iter()
        .map(|&b| {
            let p = b as f64 / n as f64;
            p * p.log2()
        })
        .sum::<f64>()
        + 0.0;
    Ok(PetrovCheck {
        lhs_bits,
        rhs_bits,
        pass: lhs_bits >= rhs_bits - 1e-9,
        equality: (lhs_bits - rhs_bits).abs() <= 1e-12,
    })
}

/// Minimum total share entropy of a `(k, n, n)`-ramp sharing of a secret with
/// the given entropy: `n / (n - k) · H(secret)`.
pub fn ramp_star_bound(n: usize, k: usize, secret_entropy_bits: f64) -> Result<f64, BoundsError> {
    if k >= n {
        return Err(BoundsError::InvalidParameter(format!(
            "need k < n; got k={k}, n={n}"
        )));
    }
    Ok(n as f64 / (n - k) as f64 * secret_entropy_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn rcase_component_entropy() {
        let star = UnderlyingGraph::star(4).unwrap();
        let b = rcase_bound(&star, &EdgeSet::new());
        assert_eq!(b.component_entropy_bits, 0.0);
        assert!(close(b.printed_form_bits, 2.0));
        assert!(b.forms_disagree);
        let b = rcase_bound(&star, &star.full_edge_set());
        assert!(close(b.component_entropy_bits, 2.0));
        assert!(close(b.printed_form_bits, 0.0));
        let f: EdgeSet = [(0usize, 1usize)].into_iter().collect();
        let b = rcase_bound(&star, &f);
        assert!(close(b.component_entropy_bits, 0.8112781244591328));

        // the K2 discrepancy: simulation (1 bit) matches the component form,
        // the printed form evaluates to 0
        let k2 = UnderlyingGraph::complete(2).unwrap();
        let b = rcase_bound(&k2, &k2.full_edge_set());
        assert!(close(b.component_entropy_bits, 1.0));
        assert!(close(b.printed_form_bits, 0.0));
        assert!(b.forms_disagree);
    }

    #[test]
    fn sparse_bounds_path3() {
        let p3 = UnderlyingGraph::path(3).unwrap();
        assert_eq!(sparse_bound_k(&p3, 0).unwrap(), 0.0);
        assert_eq!(sparse_bound_p(&p3, 0.0).unwrap(), 0.0);
        // only diagonal terms survive at p = 1
        assert!(close(sparse_bound_p(&p3, 1.0).unwrap(), 3f64.log2()));
        // distance multiset {0 x3, 1 x4, 2 x2}: -log2((3 + 2 + 0.5) / 9)
        let expected = -(5.5f64 / 9.0).log2();
        assert!(close(sparse_bound_p(&p3, 0.5).unwrap(), expected));
        assert!(close(expected, 0.710493382805015));
        assert!(sparse_bound_p(&p3, -0.1).is_err());
    }

    #[test]
    fn sparse_bound_p_monotone_in_p() {
        let g = UnderlyingGraph::cycle(5).unwrap();
        let mut prev = 0.0;
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let b = sparse_bound_p(&g, p).unwrap();
            assert!(b >= prev - 1e-12, "p={p}: {b} < {prev}");
            prev = b;
        }
    }

    #[test]
    fn dense_bounds() {
        assert_eq!(dense_bound_k(4, 6, 0).unwrap(), 0.0);
        assert!(close(dense_bound_k(4, 6, 1).unwrap(), 1.0 / 3.0));
        assert!(close(dense_bound_p(4, 1.0).unwrap(), 2.0));
        assert!(dense_bound_k(1, 0, 1).is_err());
        let mut prev = 0.0;
        for k in 0..10 {
            let b = dense_bound_k(5, 7, k).unwrap();
            assert!(b >= prev - 1e-12);
            prev = b;
        }
    }

    #[test]
    fn sparsec_reduces_to_sparse_without_active_edges() {
        let g = UnderlyingGraph::cycle(5).unwrap();
        let empty = vec![EdgeSet::new(); 5];
        for k in 0..4 {
            assert!(close(
                sparsec_bound_k(&g, &empty, k).unwrap(),
                sparse_bound_k(&g, k).unwrap()
            ));
        }
        for p in [0.0, 0.3, 0.9] {
            assert!(close(
                sparsec_bound_p(&g, &empty, p).unwrap(),
                sparse_bound_p(&g, p).unwrap()
            ));
        }
    }

    #[test]
    fn sparsec_silent_star_value() {
        // active sets of the silent convergecast on the star: each leaf's own
        // edge, nothing for the center; all pairwise intersections are empty
        let g = UnderlyingGraph::star(4).unwrap();
        let mut active = vec![EdgeSet::new()];
        for leaf in 1..4 {
            active.push([(0, leaf)].into_iter().collect());
        }
        let b = sparsec_bound_p(&g, &active, 0.5).unwrap();
        assert!(close(b, -(8.5f64 / 16.0).log2()));
        assert!(close(b, 0.9125371587496606));
    }

    #[test]
    fn sparsec_path_covered_pairs_vanish() {
        // if every pair's shared active set contains a connecting path, every
        // disc is 0 and the bound collapses
        let g = UnderlyingGraph::path(3).unwrap();
        let all = vec![g.full_edge_set(); 3];
        assert!(close(sparsec_bound_p(&g, &all, 0.7).unwrap(), 0.0));
    }

    #[test]
    fn coro_bound_values() {
        let star = UnderlyingGraph::star(4).unwrap();
        // W = 0 reduces to the distance bound
        for p in [0.25, 0.5, 1.0] {
            assert!(close(
                sparsec_coro_bound_p(&star, 0, p).unwrap(),
                sparse_bound_p(&star, p).unwrap()
            ));
        }
        // W = 1, p = 0.5: worst superset per node sums to 3
        let b = sparsec_coro_bound_p(&star, 1, 0.5).unwrap();
        assert!(close(b, -(12f64 / 16.0).log2()));
        assert!(close(b, 0.4150374992788438));
        // W >= n - 1: the whole vertex set is a candidate, bound collapses
        assert!(close(sparsec_coro_bound_p(&star, 3, 0.5).unwrap(), 0.0));
        assert!(close(sparsec_coro_bound_k(&star, 3, 2).unwrap(), 0.0));
    }

    #[test]
    fn densec_bounds_and_hypothesis() {
        let b = densec_bound_p(4, 1, 0.5).unwrap();
        assert!(b.hypothesis_ok);
        assert!(close(b.bits, 0.5));
        let b = densec_bound_p(4, 3, 0.5).unwrap();
        assert!(!b.hypothesis_ok);
        assert_eq!(b.bits, 0.0);
        let b = densec_bound_k(4, 6, 1, 0).unwrap();
        assert_eq!(b.bits, 0.0);
        // W = n - 2 leaves a log2(n / (n-1)) factor
        let b = densec_bound_p(5, 3, 1.0).unwrap();
        assert!(close(b.bits, (5f64 / 4.0).log2()));
    }

    #[test]
    fn petrov_spot_values() {
        let c = petrov_check(&[2, 2], 1).unwrap();
        assert!(close(c.lhs_bits, 1.0));
        assert!(close(c.rhs_bits, 2.0 / 3.0));
        assert!(c.pass && !c.equality);
        let c = petrov_check(&[7], 1).unwrap();
        assert_eq!(c.lhs_bits, 0.0);
        assert_eq!(c.rhs_bits, 0.0);
        assert!(c.pass && c.equality);
        let c = petrov_check(&[1, 1, 1, 1], 2).unwrap();
        assert!(close(c.lhs_bits, 2.0));
        assert!(close(c.rhs_bits, 1.0));
        assert!(c.pass);
        assert!(petrov_rhs(&[2, 2], 4).is_err());
        assert!(petrov_rhs(&[2, 0], 1).is_err());
    }

    #[test]
    fn ramp_star_bound_values() {
        assert!(close(ramp_star_bound(3, 0, 1.5).unwrap(), 1.5));
        assert!(close(ramp_star_bound(2, 1, 1.0).unwrap(), 2.0));
        assert!(close(ramp_star_bound(4, 2, 1.0).unwrap(), 2.0));
        assert!(ramp_star_bound(3, 3, 1.0).is_err());
    }
}
