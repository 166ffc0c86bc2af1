//! Finite secret-sharing laboratory: exact verification of reconstruction
//! and secrecy from joint probability tables, packed Shamir ramp schemes,
//! and the bridge from message histories to sharing schemes.
//!
//! A scheme here is nothing but a finite [`JointDistribution`] over
//! (secret, share-vector) outcomes; every entropy in the definitions is
//! computed exactly from that table, so verification needs no algebra about
//! the construction that produced it.
//!
//! ```
//! use orleak::ramp::{packed_shamir, ramp_structure, verify_scheme};
//!
//! let scheme = packed_shamir(1, 2, 3, 5).unwrap();
//! let structure = ramp_structure(1, 2, 3).unwrap();
//! assert!(verify_scheme(&scheme, &structure).unwrap().pass);
//! // every share carries log2(5) bits: the scheme is optimal
//! assert!((scheme.share_entropy_bits(0) - 5f64.log2()).abs() < 1e-9);
//! ```

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::engine::{default_max_rounds, run, Algorithm, EngineError, InputAssignment, TapeSpace};
use crate::graph::{components, EdgeSet, GraphError, NodeId, UnderlyingGraph};
use crate::leakage::{observe, LeakageError, Observation, ObservationMode};

/// Joint tables are enumerated exhaustively; their row count is capped here.
pub const TABLE_CUTOFF: u128 = 1_000_000;

/// Entropy comparisons in scheme verification use this tolerance.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RampError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed access structure: {0}")]
    MalformedStructure(String),
    #[error("malformed distribution: {0}")]
    MalformedDistribution(String),
    #[error("{what} needs {needed} cases; cutoff is {limit}")]
    CutoffExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Leakage(#[from] LeakageError),
}

/// A finite probability table over (secret, share-vector) outcomes for `n`
/// parties. Secrets and shares are opaque symbols; only equality matters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    parties: usize,
    rows: Vec<JointRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointRow {
    pub secret: u64,
    pub shares: Vec<u64>,
    pub probability: f64,
}

impl JointDistribution {
    /// Build a table from raw rows. Probabilities must be positive and sum
    /// to 1 within 1e-12; equal (secret, shares) outcomes are merged.
    pub fn from_rows(
        parties: usize,
        rows: impl IntoIterator<Item = (u64, Vec<u64>, f64)>,
    ) -> Result<Self, RampError> {
        let mut merged: HashMap<(u64, Vec<u64>), f64> = HashMap::new();
        for (secret, shares, p) in rows {
            if shares.len() != parties {
                return Err(RampError::MalformedDistribution(format!(
                    "row has {} shares for {parties} parties",
                    shares.len()
                )));
            }
            if p <= 0.0 || !p.is_finite() {
                return Err(RampError::MalformedDistribution(format!("probability {p}")));
            }
            *merged.entry((secret, shares)).or_insert(0.0) += p;
        }
        if merged.is_empty() {
            return Err(RampError::MalformedDistribution("empty table".into()));
        }
        let total: f64 = merged.values().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(RampError::MalformedDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        let mut rows: Vec<JointRow> = merged
            .into_iter()
            .map(|((secret, shares), probability)| JointRow {
                secret,
                shares,
                probability,
            })
            .collect();
        rows.sort_by(|a, b| (a.secret, &a.shares).cmp(&(b.secret, &b.shares)));
        Ok(JointDistribution { parties, rows })
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn rows(&self) -> &[JointRow] {
        &self.rows
    }

    fn entropy_of<K: Ord>(&self, key: impl Fn(&JointRow) -> K) -> f64 {
        let mut acc: std::collections::BTreeMap<K, f64> = std::collections::BTreeMap::new();
        for row in &self.rows {
            *acc.entry(key(row)).or_insert(0.0) += row.probability;
        }
        // + 0.0 turns a -0.0 sum into +0.0
        -acc.values().map(|&p| p * p.log2()).sum::<f64>() + 0.0
    }

    /// Entropy of the secret marginal, in bits.
    pub fn secret_entropy_bits(&self) -> f64 {
        self.entropy_of(|r| r.secret)
    }

    /// Entropy of party `i`'s share marginal, in bits.
    pub fn share_entropy_bits(&self, i: usize) -> f64 {
        self.entropy_of(|r| r.shares[i])
    }

    /// `H(secret | shares of B)` in bits, computed exactly from the table.
    pub fn conditional_secret_entropy_bits(&self, subset: &BTreeSet<usize>) -> f64 {
        let view = |row: &JointRow| -> Vec<u64> { subset.iter().map(|&i| row.shares[i]).collect() };
        let joint = self.entropy_of(|r| (view(r), r.secret));
        let shares_only = self.entropy_of(view);
        (joint - shares_only).max(0.0)
    }
}

/// Sum of share entropies `Σ H(X_i)` in bits.
pub fn share_entropy_sum(j: &JointDistribution) -> f64 {
    (0..j.parties()).map(|i| j.share_entropy_bits(i)).sum()
}

/// A pair of disjoint families: anti-monotone unqualified sets (may learn
/// nothing) and monotone qualified sets (must reconstruct).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAccessStructure {
    parties: usize,
    unqualified: Vec<BTreeSet<usize>>,
    qualified: Vec<BTreeSet<usize>>,
}

impl PartialAccessStructure {
    /// Build and validate a structure from explicit families.
    pub fn new(
        parties: usize,
        unqualified: impl IntoIterator<Item = BTreeSet<usize>>,
        qualified: impl IntoIterator<Item = BTreeSet<usize>>,
    ) -> Result<Self, RampError> {
        let unqualified: Vec<BTreeSet<usize>> = unqualified.into_iter().collect();
        let qualified: Vec<BTreeSet<usize>> = qualified.into_iter().collect();
        if unqualified.is_empty() || qualified.is_empty() {
            return Err(RampError::MalformedStructure(
                "both families must be non-empty".into(),
            ));
        }
        for set in unqualified.iter().chain(&qualified) {
            if set.iter().any(|&i| i >= parties) {
                return Err(RampError::MalformedStructure(format!(
                    "member {set:?} exceeds party count {parties}"
                )));
            }
        }
        for q in &qualified {
            if unqualified.contains(q) {
                return Err(RampError::MalformedStructure(format!(
                    "{q:?} is both qualified and unqualified"
                )));
            }
        }
        // monotone: supersets of qualified sets are qualified
        for q in &qualified {
            for i in 0..parties {
                if !q.contains(&i) {
                    let mut bigger = q.clone();
                    bigger.insert(i);
                    if !qualified.contains(&bigger) {
                        return Err(RampError::MalformedStructure(format!(
                            "qualified family not monotone: {bigger:?} missing"
                        )));
                    }
                }
            }
        }
        // anti-monotone: subsets of unqualified sets are unqualified
        for s in &unqualified {
            for &i in s {
                let mut smaller = s.clone();
                smaller.remove(&i);
                if !unqualified.contains(&smaller) {
                    return Err(RampError::MalformedStructure(format!(
                        "unqualified family not anti-monotone: {smaller:?} missing"
                    )));
                }
            }
        }
        Ok(PartialAccessStructure {
            parties,
            unqualified,
            qualified,
        })
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn unqualified(&self) -> &[BTreeSet<usize>] {
        &self.unqualified
    }

    pub fn qualified(&self) -> &[BTreeSet<usize>] {
        &self.qualified
    }
}

/// The `(s, r, n)`-ramp structure: at most `s` parties are unqualified, at
/// least `r` are qualified.
pub fn ramp_structure(s: usize, r: usize, n: usize) -> Result<PartialAccessStructure, RampError> {
    if !(s < r && r <= n) {
        return Err(RampError::InvalidParameter(format!(
            "need 0 <= s < r <= n; got ({s}, {r}, {n})"
        )));
    }
    let mut unqualified = Vec::new();
    let mut qualified = Vec::new();
    for mask in 0..1u64 << n {
        let set: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if set.len() <= s {
            unqualified.push(set);
        } else if set.len() >= r {
            qualified.push(set);
        }
    }
    PartialAccessStructure::new(n, unqualified, qualified)
}

/// One checked subset in a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetCheck {
    pub subset: Vec<usize>,
    /// "reconstruction" or "secrecy".
    pub requirement: &'static str,
    pub conditional_entropy_bits: f64,
    pub pass: bool,
}

/// Full per-subset verification outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub secret_entropy_bits: f64,
    pub checks: Vec<SubsetCheck>,
}

/// Check reconstruction (`H(S | B) = 0` for qualified `B`) and secrecy
/// (`H(S | B) = H(S)` for unqualified `B`) exactly, within
/// [`VERIFY_TOLERANCE`].
pub fn verify_scheme(
    j: &JointDistribution,
    a: &PartialAccessStructure,
) -> Result<VerifyReport, RampError> {
    if j.parties() != a.parties() {
        return Err(RampError::MalformedStructure(format!(
            "scheme has {} parties, structure has {}",
            j.parties(),
            a.parties()
        )));
    }
    let h_secret = j.secret_entropy_bits();
    let mut checks = Vec::new();
    for b in a.qualified() {
        let h = j.conditional_secret_entropy_bits(b);
        checks.push(SubsetCheck {
            subset: b.iter().copied().collect(),
            requirement: "reconstruction",
            conditional_entropy_bits: h,
            pass: h <= VERIFY_TOLERANCE,
        });
    }
    for b in a.unqualified() {
        let h = j.conditional_secret_entropy_bits(b);
        checks.push(SubsetCheck {
            subset: b.iter().copied().collect(),
            requirement: "secrecy",
            conditional_entropy_bits: h,
            pass: (h - h_secret).abs() <= VERIFY_TOLERANCE,
        });
    }
    Ok(VerifyReport {
        pass: checks.iter().all(|c| c.pass),
        secret_entropy_bits: h_secret,
        checks,
    })
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Packed Shamir ramp scheme over the prime field `GF(q)`.
///
/// A uniformly random polynomial of degree `< r` carries the secret in its
/// top `r - s` coefficients and fresh randomness in the low `s` ones; party
/// `i` receives the evaluation at point `i`. Any `r` shares determine the
/// polynomial, any `s` evaluations are uniform regardless of the secret, and
/// every share's marginal entropy is exactly `log2 q = H(secret) / (r - s)`.
///
/// Requires `0 <= s < r <= n`, `q` prime, `q >= n` (so the `n` evaluation
/// points `0..n` are distinct), and a table of `q^r` rows within
/// [`TABLE_CUTOFF`].
pub fn packed_shamir(s: usize, r: usize, n: usize, q: u64) -> Result<JointDistribution, RampError> {
    if !(s < r && r <= n) {
        return Err(RampError::InvalidParameter(format!(
            "need 0 <= s < r <= n; got ({s}, {r}, {n})"
        )));
    }
    if !is_prime(q) {
        return Err(RampError::InvalidParameter(format!("q = {q} is not prime")));
    }
    if q < n as u64 {
        return Err(RampError::InvalidParameter(format!(
            "q = {q} leaves fewer than n = {n} distinct evaluation points"
        )));
    }
    let table_size = (q as u128)
        .checked_pow(r as u32)
        .filter(|&t| t <= TABLE_CUTOFF);
    let Some(table_size) = table_size else {
        return Err(RampError::CutoffExceeded {
            what: format!("packed Shamir table q^r = {q}^{r}"),
            needed: (q as u128).saturating_pow(r as u32),
            limit: TABLE_CUTOFF,
        });
    };
    let prob = 1.0 / table_size as f64;
    let mut rows = Vec::with_capacity(table_size as usize);
    let mut coeffs = vec![0u64; r];
    loop {
        // secret symbol: the top r - s coefficients, packed base q
        let secret = coeffs[s..].iter().fold(0u64, |acc, &c| acc * q + c);
        let shares: Vec<u64> = (0..n as u64)
            .map(|x| coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % q))
            .collect();
        rows.push((secret, shares, prob));
        // next coefficient vector
        let mut idx = 0;
        loop {
            if idx == r {
                return JointDistribution::from_rows(n, rows);
            }
            coeffs[idx] += 1;
            if coeffs[idx] < q {
                break;
            }
            coeffs[idx] = 0;
            idx += 1;
        }
    }
}

/// Outcome of checking `Σ H(X_i) >= n / (n - k) · H(S)` on a table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarBoundCheck {
    pub share_entropy_sum_bits: f64,
    pub bound_bits: f64,
    pub pass: bool,
    pub equality: bool,
}

/// Check the total-share-entropy bound for a `(k, n, n)`-ramp scheme. The
/// table must actually verify as `(k, n, n)`-ramp; that is re-checked here.
pub fn check_star_bound(j: &JointDistribution, k: usize) -> Result<StarBoundCheck, RampError> {
    let n = j.parties();
    let structure = ramp_structure(k, n, n)?;
    let report = verify_scheme(j, &structure)?;
    if !report.pass {
        return Err(RampError::MalformedStructure(format!(
            "table does not verify as a ({k}, {n}, {n})-ramp scheme"
        )));
    }
    let sum = share_entropy_sum(j);
    let bound = n as f64 / (n - k) as f64 * j.secret_entropy_bits();
    Ok(StarBoundCheck {
        share_entropy_sum_bits: sum,
        bound_bits: bound,
        pass: sum >= bound - VERIFY_TOLERANCE,
        equality: (sum - bound).abs() <= VERIFY_TOLERANCE,
    })
}

/// Minimum share size (bits of support) of any `(s, r, n)`-ramp scheme:
/// `max(log2((n - s + 1)/(r - s)), log2((r + 1)/(r - s)))` for
/// `1 <= s < r < n`.
pub fn share_size_lower_bound(s: usize, r: usize, n: usize) -> Result<f64, RampError> {
    if !(1 <= s && s < r && r < n) {
        return Err(RampError::InvalidParameter(format!(
            "need 1 <= s < r < n; got ({s}, {r}, {n})"
        )));
    }
    let d = (r - s) as f64;
    let a = ((n - s + 1) as f64 / d).log2();
    let b = ((r + 1) as f64 / d).log2();
    Ok(a.max(b))
}

/// Message histories of one edge viewed as that party's share, for the
/// two-initiator secret `{I_u, I_v}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryScheme {
    /// Joint table: secret 0 encodes initiator `u`, secret 1 initiator `v`;
    /// party `i` is the `i`-th edge in canonical order.
    pub joint: JointDistribution,
    /// Edges in party order.
    pub edges: Vec<(NodeId, NodeId)>,
    /// Every edge set whose removal disconnects `u` from `v`, with its
    /// conditional secret entropy: all must reconstruct.
    pub reconstruction_checks: Vec<(EdgeSet, f64, bool)>,
    /// Edge sets observed to satisfy perfect secrecy. No particular family
    /// is asserted; this is a report of what the table shows.
    pub observed_secrecy_sets: Vec<EdgeSet>,
    pub reconstruction_pass: bool,
}

/// Build the joint table of (initiator ∈ {u, v}, per-edge histories) over
/// the full `tape_bits` tape space, verify that every disconnecting edge set
/// reconstructs the initiator, and report the sets that reveal nothing.
///
/// ```
/// use orleak::algorithms::Convergecast;
/// use orleak::graph::{spanning_tree, UnderlyingGraph};
/// use orleak::ramp::histories_as_scheme;
///
/// let g = UnderlyingGraph::complete(2).unwrap();
/// let conv = Convergecast::new(spanning_tree(&g, 0).unwrap());
/// let scheme = histories_as_scheme(&conv, &g, 0, 1, 0).unwrap();
/// assert!(scheme.reconstruction_pass);
/// // only the empty edge set reveals nothing on K2
/// assert_eq!(scheme.observed_secrecy_sets.len(), 1);
/// ```
pub fn histories_as_scheme(
    algo: &dyn Algorithm,
    g: &UnderlyingGraph,
    u: NodeId,
    v: NodeId,
    tape_bits: usize,
) -> Result<HistoryScheme, RampError> {
    let n = g.node_count();
    if u >= n || v >= n || u == v {
        return Err(RampError::InvalidParameter(format!(
            "need distinct nodes u, v < {n}"
        )));
    }
    let m = g.edge_count();
    if m > 20 {
        return Err(RampError::CutoffExceeded {
            what: format!("edge-subset sweep over {m} edges"),
            needed: 1u128 << m,
            limit: 1 << 20,
        });
    }
    let space = TapeSpace::new(n, tape_bits)?;
    let max_rounds = default_max_rounds(n);

    // intern per-edge observations as share symbols
    let mut interner: Vec<HashMap<Observation, u64>> = vec![HashMap::new(); m];
    let mut rows = Vec::new();
    let cells = 2 * space.len();
    for (secret, &node) in [u, v].iter().enumerate() {
        let inputs = InputAssignment::initiator(n, node)?;
        for tapes in space.iter() {
            let rec = run(algo, g, &inputs, &tapes, max_rounds)?;
            let shares: Vec<u64> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let single: EdgeSet = [e].into_iter().collect();
                    let obs = observe(&rec, &single, ObservationMode::Full)
                        .expect("edge from host graph");
                    let next = interner[i].len() as u64;
                    *interner[i].entry(obs).or_insert(next)
                })
                .collect();
            rows.push((secret as u64, shares, 1.0 / cells as f64));
        }
    }
    let joint = JointDistribution::from_rows(m, rows)?;
    let h_secret = joint.secret_entropy_bits();

    let mut reconstruction_checks = Vec::new();
    let mut observed_secrecy_sets = Vec::new();
    for mask in 0..1u64 << m {
        let f = EdgeSet::from_mask(g, mask);
        let kept = g.full_edge_set().difference(&f);
        let blocks = components(g, &kept);
        let disconnects = !blocks.iter().any(|b| b.contains(&u) && b.contains(&v));
        let subset: BTreeSet<usize> = f
            .iter()
            .map(|e| g.edge_index(e).expect("subset of E"))
            .collect();
        let h = joint.conditional_secret_entropy_bits(&subset);
        if disconnects {
            reconstruction_checks.push((f, h, h <= VERIFY_TOLERANCE));
        } else if (h - h_secret).abs() <= VERIFY_TOLERANCE {
            observed_secrecy_sets.push(f);
        }
    }
    let reconstruction_pass = reconstruction_checks.iter().all(|(_, _, ok)| *ok);
    Ok(HistoryScheme {
        joint,
        edges: g.edges().to_vec(),
        reconstruction_checks,
        observed_secrecy_sets,
        reconstruction_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Convergecast;
    use crate::graph::spanning_tree;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn trivial_identity_scheme_verifies() {
        // 1-of-1: the share is the secret
        let j = JointDistribution::from_rows(1, [(0, vec![0], 0.5), (1, vec![1], 0.5)]).unwrap();
        let a = PartialAccessStructure::new(1, [BTreeSet::new()], [BTreeSet::from([0])]).unwrap();
        let report = verify_scheme(&j, &a).unwrap();
        assert!(report.pass);
        assert!(close(report.secret_entropy_bits, 1.0));
    }

    #[test]
    fn independent_share_fails_reconstruction() {
        let j = JointDistribution::from_rows(
            1,
            [
                (0, vec![0], 0.25),
                (0, vec![1], 0.25),
                (1, vec![0], 0.25),
                (1, vec![1], 0.25),
            ],
        )
        .unwrap();
        let a = PartialAccessStructure::new(1, [BTreeSet::new()], [BTreeSet::from([0])]).unwrap();
        let report = verify_scheme(&j, &a).unwrap();
        assert!(!report.pass);
        let failing = report.checks.iter().find(|c| !c.pass).unwrap();
        assert_eq!(failing.requirement, "reconstruction");
        assert!(close(failing.conditional_entropy_bits, 1.0));
    }

    #[test]
    fn structure_validation() {
        // not monotone: {0} qualified but {0,1} missing
        assert!(PartialAccessStructure::new(2, [BTreeSet::new()], [BTreeSet::from([0])],).is_err());
        // not anti-monotone: {0} unqualified but {} missing
        assert!(PartialAccessStructure::new(
            2,
            [BTreeSet::from([0])],
            [BTreeSet::from([0, 1]), BTreeSet::from([1])],
        )
        .is_err());
        // overlap
        assert!(PartialAccessStructure::new(
            1,
            [BTreeSet::new(), BTreeSet::from([0])],
            [BTreeSet::from([0])],
        )
        .is_err());
        assert!(ramp_structure(2, 2, 3).is_err());
    }

    #[test]
    fn packed_shamir_small_cases() {
        // degenerate r = 1: the share is the secret at every party
        let j = packed_shamir(0, 1, 2, 3).unwrap();
        let a = ramp_structure(0, 1, 2).unwrap();
        assert!(verify_scheme(&j, &a).unwrap().pass);
        for row in j.rows() {
            assert_eq!(row.shares[0], row.shares[1]);
        }

        let j = packed_shamir(1, 2, 3, 5).unwrap();
        let a = ramp_structure(1, 2, 3).unwrap();
        assert!(verify_scheme(&j, &a).unwrap().pass);
        for i in 0..3 {
            assert!(close(j.share_entropy_bits(i), 5f64.log2()));
        }
        assert!(close(j.secret_entropy_bits(), 5f64.log2()));

        // two field elements of secret, any 3 reconstruct, any 1 learns nothing
        let j = packed_shamir(1, 3, 4, 5).unwrap();
        let a = ramp_structure(1, 3, 4).unwrap();
        assert!(verify_scheme(&j, &a).unwrap().pass);
        assert!(close(j.secret_entropy_bits(), 2.0 * 5f64.log2()));

        assert!(packed_shamir(1, 1, 2, 5).is_err());
        assert!(packed_shamir(0, 1, 2, 4).is_err(), "q must be prime");
        assert!(
            packed_shamir(0, 1, 3, 2).is_err(),
            "q < n lacks evaluation points"
        );
    }

    #[test]
    fn xor_scheme_meets_star_bound_with_equality() {
        let j = packed_shamir(1, 2, 2, 2).unwrap();
        assert!(close(j.secret_entropy_bits(), 1.0));
        let check = check_star_bound(&j, 1).unwrap();
        assert!(check.pass);
        assert!(check.equality);
        assert!(close(check.share_entropy_sum_bits, 2.0));
        assert!(close(check.bound_bits, 2.0));
    }

    #[test]
    fn star_bound_trivial_k0() {
        let j = JointDistribution::from_rows(1, [(0, vec![0], 0.5), (1, vec![1], 0.5)]).unwrap();
        let check = check_star_bound(&j, 0).unwrap();
        assert!(check.pass);
    }

    #[test]
    fn share_size_values() {
        assert!(close(share_size_lower_bound(1, 2, 3).unwrap(), 3f64.log2()));
        assert!(close(share_size_lower_bound(1, 2, 4).unwrap(), 2.0));
        assert!(share_size_lower_bound(0, 2, 3).is_err());
        assert!(share_size_lower_bound(1, 3, 3).is_err());
    }

    #[test]
    fn convergecast_k2_history_scheme() {
        let g = UnderlyingGraph::complete(2).unwrap();
        let conv = Convergecast::new(spanning_tree(&g, 0).unwrap());
        let scheme = histories_as_scheme(&conv, &g, 0, 1, 0).unwrap();
        assert!(scheme.reconstruction_pass);
        // the single edge pins the initiator; only the empty set is secret
        assert_eq!(scheme.reconstruction_checks.len(), 1);
        assert_eq!(scheme.observed_secrecy_sets, vec![EdgeSet::new()]);
        assert!(close(scheme.joint.secret_entropy_bits(), 1.0));
    }

    #[test]
    fn tampered_table_fails() {
        let mut j = packed_shamir(1, 2, 3, 5).unwrap();
        // break reconstruction by zeroing one party's share everywhere
        for row in &mut j.rows {
            row.shares[0] = 0;
        }
        let a = ramp_structure(1, 2, 3).unwrap();
        assert!(!verify_scheme(&j, &a).unwrap().pass);
    }
}
