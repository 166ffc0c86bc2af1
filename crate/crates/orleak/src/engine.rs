//! Deterministic synchronous-round execution of per-node state machines.
//!
//! An [`Algorithm`] spawns one [`Process`] per node. Execution proceeds in
//! rounds `1, 2, ...`: in round `k` every live process receives the non-empty
//! messages sent to it in round `k - 1`, computes, and emits at most one
//! message per neighbor. A process that has terminated sends only the empty
//! message from then on. The run ends at the first round by which every
//! process has terminated; the resulting [`ExecutionRecord`] keeps the full
//! per-edge, per-direction message history up to that round.
//!
//! Everything here is a pure function of its inputs: running the same
//! algorithm twice with the same graph, inputs, and tapes yields bit-identical
//! records.
//!
//! ```
//! use orleak::algorithms::Convergecast;
//! use orleak::engine::{run, InputAssignment, RandomTape};
//! use orleak::graph::{spanning_tree, UnderlyingGraph};
//!
//! let g = UnderlyingGraph::complete(2).unwrap();
//! let algo = Convergecast::new(spanning_tree(&g, 0).unwrap());
//! let inputs = InputAssignment::initiator(2, 1).unwrap();
//! let rec = run(&algo, &g, &inputs, &RandomTape::zero(2), 8).unwrap();
//! assert_eq!(rec.output(0), Some(true));
//! assert_eq!(rec.card((0, 1)).unwrap(), 1);
//! ```

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::graph::{edge, Edge, EdgeSet, NodeId, UnderlyingGraph};

/// Hard cap on enumerated tape-space size: `bits_per_node * n` must stay at
/// or below this for exact sweeps over all tapes.
pub const TAPE_SPACE_CUTOFF_BITS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("process {node} not terminated after {max_rounds} rounds")]
    NonTermination { node: NodeId, max_rounds: usize },
    #[error("process {node} exhausted its random tape in round {round}")]
    TapeExhausted { node: NodeId, round: usize },
    #[error("a non-empty message needs at least one payload byte")]
    EmptyPayload,
    #[error("process {from} sent to non-neighbor {to} in round {round}")]
    InvalidSend {
        from: NodeId,
        to: NodeId,
        round: usize,
    },
    #[error("process {from} sent twice to {to} in round {round}")]
    DuplicateSend {
        from: NodeId,
        to: NodeId,
        round: usize,
    },
    #[error("edge ({0}, {1}) is not in the execution's graph")]
    UnknownEdge(NodeId, NodeId),
    #[error("process {node} failed in round {round}: {reason}")]
    Process {
        node: NodeId,
        round: usize,
        reason: String,
    },
    #[error("{what} requires {needed} enumerated cases; cutoff is {limit}")]
    CutoffExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("input assignment covers {got} nodes, graph has {expected}")]
    InputSizeMismatch { got: usize, expected: usize },
    #[error("node {0} out of range for {1} nodes")]
    UnknownNode(NodeId, usize),
}

/// One message slot on a directed edge in one round: either the distinguished
/// empty message or a payload of at least one byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message(Option<Vec<u8>>);

impl Message {
    /// The empty message: "nothing was sent this round".
    pub const fn empty() -> Self {
        Message(None)
    }

    /// A non-empty message. Zero-length payloads are rejected; a message is
    /// either empty or carries at least one byte.
    pub fn bytes(payload: impl Into<Vec<u8>>) -> Result<Self, EngineError> {
        let payload = payload.into();
        if payload.is_empty() {
            return Err(EngineError::EmptyPayload);
        }
        Ok(Message(Some(payload)))
    }

    /// Single-byte message carrying a bit.
    pub fn bit(b: bool) -> Self {
        Message(Some(vec![u8::from(b)]))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn payload(&self) -> Option<&[u8]> {
        self.0.as_deref()
    }
}

/// Per-node input bits, total over the node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputAssignment(Vec<bool>);

impl InputAssignment {
    /// The all-zero input.
    pub fn zeros(n: usize) -> Self {
        InputAssignment(vec![false; n])
    }

    /// The input where exactly `initiator` holds 1.
    pub fn initiator(n: usize, initiator: NodeId) -> Result<Self, EngineError> {
        if initiator >= n {
            return Err(EngineError::UnknownNode(initiator, n));
        }
        let mut bits = vec![false; n];
        bits[initiator] = true;
        Ok(InputAssignment(bits))
    }

    pub fn from_bits(bits: impl Into<Vec<bool>>) -> Self {
        InputAssignment(bits.into())
    }

    pub fn get(&self, v: NodeId) -> bool {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// OR of all input bits.
    pub fn or_value(&self) -> bool {
        self.0.iter().any(|&b| b)
    }
}

/// The correctness-check input family: the all-zero input followed by every
/// single-initiator input.
pub fn or_input_family(n: usize) -> impl Iterator<Item = InputAssignment> {
    std::iter::once(InputAssignment::zeros(n))
        .chain((0..n).map(move |v| InputAssignment::initiator(n, v).expect("v < n")))
}

/// Finite random tapes for one execution: `bits_per_node` bits for each node,
/// consumed in order. `bits_per_node = 0` is the deterministic case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomTape {
    bits_per_node: usize,
    words: Vec<u32>,
}

impl RandomTape {
    /// Zero-length tapes (deterministic execution).
    pub fn zero(n: usize) -> Self {
        RandomTape {
            bits_per_node: 0,
            words: vec![0; n],
        }
    }

    /// Decode assignment `index` of the `2^(bits_per_node * n)` tape space:
    /// node `v` receives bits `index >> (v * bits_per_node)`.
    pub fn from_index(n: usize, bits_per_node: usize, index: u64) -> Self {
        assert!(bits_per_node <= 32, "per-node tapes limited to 32 bits");
        let mask = if bits_per_node == 0 {
            0
        } else {
            (1u64 << bits_per_node) - 1
        };
        let words = (0..n)
            .map(|v| ((index >> (v * bits_per_node)) & mask) as u32)
            .collect();
        RandomTape {
            bits_per_node,
            words,
        }
    }

    /// Uniform tapes drawn from a seeded generator.
    pub fn seeded(n: usize, bits_per_node: usize, seed: u64) -> Self {
        assert!(bits_per_node <= 32, "per-node tapes limited to 32 bits");
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let words = (0..n)
            .map(|_| {
                if bits_per_node == 0 {
                    0
                } else {
                    rng.gen_range(0..1u64 << bits_per_node) as u32
                }
            })
            .collect();
        RandomTape {
            bits_per_node,
            words,
        }
    }

    pub fn bits_per_node(&self) -> usize {
        self.bits_per_node
    }

    /// Reader over node `v`'s bits.
    pub fn tape(&self, v: NodeId) -> Tape {
        Tape {
            word: self.words[v],
            len: self.bits_per_node,
            pos: 0,
        }
    }
}

/// Exhaustive enumeration of the uniform tape space for `n` nodes with
/// `bits_per_node` bits each.
pub struct TapeSpace {
    n: usize,
    bits_per_node: usize,
}

impl TapeSpace {
    pub fn new(n: usize, bits_per_node: usize) -> Result<Self, EngineError> {
        let total = n * bits_per_node;
        if total > TAPE_SPACE_CUTOFF_BITS {
            return Err(EngineError::CutoffExceeded {
                what: format!("tape space of {bits_per_node} bits x {n} nodes"),
                needed: 1u128 << total,
                limit: 1u128 << TAPE_SPACE_CUTOFF_BITS,
            });
        }
        Ok(TapeSpace { n, bits_per_node })
    }

    pub fn len(&self) -> u64 {
        1u64 << (self.n * self.bits_per_node)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = RandomTape> + '_ {
        (0..self.len()).map(move |i| RandomTape::from_index(self.n, self.bits_per_node, i))
    }
}

/// Sequential reader over one node's tape bits. Reading past the end is an
/// error: tapes are finite and their length is part of the experiment.
#[derive(Debug, Clone)]
pub struct Tape {
    word: u32,
    len: usize,
    pos: usize,
}

impl Tape {
    pub fn next_bit(&mut self) -> Result<bool, ProcessError> {
        if self.pos >= self.len {
            return Err(ProcessError::TapeExhausted);
        }
        let bit = self.word >> self.pos & 1 == 1;
        self.pos += 1;
        Ok(bit)
    }

    pub fn remaining(&self) -> usize {
        self.len - self.pos
    }
}

/// Errors a process may raise during a step.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProcessError {
    #[error("random tape exhausted")]
    TapeExhausted,
    #[error("{0}")]
    Protocol(String),
}

/// Everything a node knows at round 0: its id, the full topology, the
/// algorithm's target set, its input bit, and its random tape.
pub struct InitContext<'a> {
    pub node: NodeId,
    pub graph: &'a UnderlyingGraph,
    pub targets: &'a BTreeSet<NodeId>,
    pub input: bool,
    pub tape: Tape,
}

/// Messages a process emits in one round; absent neighbors receive the empty
/// message.
pub type Outbox = Vec<(NodeId, Message)>;

/// Non-empty messages delivered to a process in one round, sorted by sender.
pub type Inbox = [(NodeId, Message)];

/// Per-node deterministic state machine. `step` must be a pure function of
/// the state and its arguments.
pub trait Process {
    fn step(&mut self, round: usize, inbox: &Inbox) -> Result<Outbox, ProcessError>;

    /// `Some(bit)` once the process has terminated; the engine stops stepping
    /// it from the next round on.
    fn output(&self) -> Option<bool>;
}

/// Immutable description of a distributed algorithm: spawns one process per
/// node and declares its target set. Descriptions are immutable and
/// shareable across threads; all per-execution state lives in processes.
pub trait Algorithm: Send + Sync {
    fn spawn(&self, ctx: InitContext<'_>) -> Box<dyn Process>;

    /// The nodes required to output the OR of all inputs.
    fn targets(&self) -> BTreeSet<NodeId>;

    /// Tape bits each process expects per execution.
    fn required_tape_bits(&self) -> usize {
        0
    }

    fn name(&self) -> String;
}

/// Default round budget: generously above the convergecast family's `n`.
pub fn default_max_rounds(n: usize) -> usize {
    4 * n.max(1)
}

/// Complete record of one execution: directional per-edge message histories,
/// terminal outputs, and termination rounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionRecord {
    n: usize,
    edges: Vec<Edge>,
    rounds: usize,
    /// `sent[2 * e + d][k]` = message on edge `e` in round `k + 1`;
    /// direction `d = 0` is low-to-high endpoint.
    sent: Vec<Vec<Message>>,
    outputs: Vec<bool>,
    termination_round: Vec<usize>,
}

impl ExecutionRecord {
    /// Number of executed rounds; every process has terminated by this round.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Terminal output of node `v` (all processes terminate in a complete
    /// record; targets carry the OR value).
    pub fn output(&self, v: NodeId) -> Option<bool> {
        self.outputs.get(v).copied()
    }

    pub fn termination_round(&self, v: NodeId) -> usize {
        self.termination_round[v]
    }

    fn edge_slot(&self, e: Edge) -> Result<usize, EngineError> {
        let e = edge(e.0, e.1);
        self.edges
            .binary_search(&e)
            .map_err(|_| EngineError::UnknownEdge(e.0, e.1))
    }

    /// Directional histories of edge `e = (u, v)` as `(u→v, v→u)` with
    /// `u < v`; both sequences have length [`ExecutionRecord::rounds`].
    pub fn history(&self, e: Edge) -> Result<(&[Message], &[Message]), EngineError> {
        let i = self.edge_slot(e)?;
        Ok((&self.sent[2 * i], &self.sent[2 * i + 1]))
    }

    /// The round-`k` prefix of edge `e`'s history. Rounds past the end of
    /// the record are all-empty by the post-termination silence rule, so the
    /// prefix is truncated at [`ExecutionRecord::rounds`].
    pub fn prefix(&self, e: Edge, k: usize) -> Result<(&[Message], &[Message]), EngineError> {
        let (fwd, bwd) = self.history(e)?;
        let k = k.min(self.rounds);
        Ok((&fwd[..k], &bwd[..k]))
    }

    /// Total number of non-empty messages on edge `e`, both directions.
    pub fn card(&self, e: Edge) -> Result<usize, EngineError> {
        let (fwd, bwd) = self.history(e)?;
        Ok(fwd.iter().chain(bwd).filter(|m| !m.is_empty()).count())
    }

    /// Per-round non-emptiness indicators for edge `e`, both directions.
    pub fn binary_filter(&self, e: Edge) -> Result<(Vec<bool>, Vec<bool>), EngineError> {
        let (fwd, bwd) = self.history(e)?;
        Ok((
            fwd.iter().map(|m| !m.is_empty()).collect(),
            bwd.iter().map(|m| !m.is_empty()).collect(),
        ))
    }

    /// Edges carrying at least one non-empty message.
    pub fn active_edges(&self) -> EdgeSet {
        self.edges
            .iter()
            .copied()
            .filter(|&e| self.card(e).expect("own edge") > 0)
            .collect()
    }

    /// Total non-empty message count over all edges.
    pub fn comm_cost(&self) -> usize {
        self.edges
            .iter()
            .map(|&e| self.card(e).expect("own edge"))
            .sum()
    }
}

/// Execute `algo` on `g` and record the complete history.
///
/// Round `k` delivers exactly the non-empty messages sent in round `k - 1`.
/// Errors if any process is still running after `max_rounds` rounds, if a
/// process exhausts its tape, or if an outbox targets a non-neighbor.
pub fn run(
    algo: &dyn Algorithm,
    g: &UnderlyingGraph,
    inputs: &InputAssignment,
    tapes: &RandomTape,
    max_rounds: usize,
) -> Result<ExecutionRecord, EngineError> {
    let n = g.node_count();
    if inputs.len() != n {
        return Err(EngineError::InputSizeMismatch {
            got: inputs.len(),
            expected: n,
        });
    }
    let targets = algo.targets();
    let mut procs: Vec<Box<dyn Process>> = (0..n)
        .map(|v| {
            algo.spawn(InitContext {
                node: v,
                graph: g,
                targets: &targets,
                input: inputs.get(v),
                tape: tapes.tape(v),
            })
        })
        .collect();

    let m = g.edge_count();
    let mut sent: Vec<Vec<Message>> = vec![Vec::new(); 2 * m];
    let mut outputs = vec![None; n];
    let mut termination_round = vec![0; n];
    // directed slot for a send u -> v
    let slot = |u: NodeId, v: NodeId| -> Option<usize> {
        let i = g.edge_index((u, v))?;
        Some(2 * i + usize::from(u > v))
    };

    let mut live = n;
    let mut inboxes: Vec<Vec<(NodeId, Message)>> = vec![Vec::new(); n];
    for round in 1..=max_rounds {
        let mut next_inboxes: Vec<Vec<(NodeId, Message)>> = vec![Vec::new(); n];
        for d in &mut sent {
            d.push(Message::empty());
        }
        for v in 0..n {
            if outputs[v].is_some() {
                continue;
            }
            let inbox = std::mem::take(&mut inboxes[v]);
            let outbox = procs[v].step(round, &inbox).map_err(|e| match e {
                ProcessError::TapeExhausted => EngineError::TapeExhausted { node: v, round },
                ProcessError::Protocol(reason) => EngineError::Process {
                    node: v,
                    round,
                    reason,
                },
            })?;
            let mut sent_to = BTreeSet::new();
            for (to, msg) in outbox {
                if !sent_to.insert(to) {
                    return Err(EngineError::DuplicateSend { from: v, to, round });
                }
                let Some(s) = slot(v, to) else {
                    return Err(EngineError::InvalidSend { from: v, to, round });
                };
                if !msg.is_empty() {
                    next_inboxes[to].push((v, msg.clone()));
                }
                *sent[s].last_mut().expect("pushed above") = msg;
            }
            if let Some(bit) = procs[v].output() {
                outputs[v] = Some(bit);
                termination_round[v] = round;
                live -= 1;
            }
        }
        for ib in &mut next_inboxes {
            ib.sort_by_key(|&(from, _)| from);
        }
        inboxes = next_inboxes;
        if live == 0 {
            return Ok(ExecutionRecord {
                n,
                edges: g.edges().to_vec(),
                rounds: round,
                sent,
                outputs: outputs
                    .into_iter()
                    .map(|o| o.expect("all terminated"))
                    .collect(),
                termination_round,
            });
        }
    }
    let node = outputs.iter().position(|o| o.is_none()).expect("live > 0");
    Err(EngineError::NonTermination { node, max_rounds })
}

/// Worst-case total message count over the input family
/// `{I_0} ∪ {I_v : v ∈ V}` and the full `tape_bits`-bit tape space.
pub fn worst_case_comm(
    algo: &dyn Algorithm,
    g: &UnderlyingGraph,
    tape_bits: usize,
) -> Result<usize, EngineError> {
    let n = g.node_count();
    let space = TapeSpace::new(n, tape_bits)?;
    let max_rounds = default_max_rounds(n);
    let mut worst = 0;
    for inputs in or_input_family(n) {
        for tapes in space.iter() {
            let rec = run(algo, g, &inputs, &tapes, max_rounds)?;
            worst = worst.max(rec.comm_cost());
        }
    }
    Ok(worst)
}

/// Active edge set of the deterministic execution with initiator `v`, for
/// every `v`.
pub fn active_sets_per_initiator(
    algo: &dyn Algorithm,
    g: &UnderlyingGraph,
) -> Result<Vec<EdgeSet>, EngineError> {
    let n = g.node_count();
    let max_rounds = default_max_rounds(n);
    (0..n)
        .map(|v| {
            let inputs = InputAssignment::initiator(n, v)?;
            Ok(run(algo, g, &inputs, &RandomTape::zero(n), max_rounds)?.active_edges())
        })
        .collect()
}

/// A concrete violation of OR correctness: which input, tape, and target
/// produced the wrong (or no) output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrWitness {
    pub initiator: Option<NodeId>,
    pub tape_index: u64,
    pub node: NodeId,
    pub expected: bool,
    pub got: Option<bool>,
}

/// Result of exhaustively checking OR correctness over the input family and
/// the finite tape space; `tape_bits` records how far the randomized claim
/// was actually checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrCorrectness {
    /// Every target output the OR value; all targets terminated within
    /// `rounds_bound` rounds in every checked execution.
    Correct {
        rounds_bound: usize,
        tape_bits: usize,
    },
    Failed {
        witness: OrWitness,
    },
}

impl OrCorrectness {
    pub fn is_correct(&self) -> bool {
        matches!(self, OrCorrectness::Correct { .. })
    }

    /// The observed round bound, if correct.
    pub fn rounds_bound(&self) -> Option<usize> {
        match self {
            OrCorrectness::Correct { rounds_bound, .. } => Some(*rounds_bound),
            OrCorrectness::Failed { .. } => None,
        }
    }
}

/// Check that every target outputs `∨_v I(v)` for every input in
/// `{I_0} ∪ {I_v}` and every tape of `tape_bits` bits per node.
pub fn check_or_correctness(
    algo: &dyn Algorithm,
    g: &UnderlyingGraph,
    targets: &BTreeSet<NodeId>,
    tape_bits: usize,
) -> Result<OrCorrectness, EngineError> {
    assert!(!targets.is_empty(), "target set must be non-empty");
    let n = g.node_count();
    let space = TapeSpace::new(n, tape_bits)?;
    let max_rounds = default_max_rounds(n);
    let mut bound = 0;
    for (input_idx, inputs) in or_input_family(n).enumerate() {
        let initiator = input_idx.checked_sub(1);
        let expected = inputs.or_value();
        for (tape_index, tapes) in space.iter().enumerate() {
            let rec = match run(algo, g, &inputs, &tapes, max_rounds) {
                Ok(rec) => rec,
                Err(EngineError::NonTermination { node, .. }) => {
                    return Ok(OrCorrectness::Failed {
                        witness: OrWitness {
                            initiator,
                            tape_index: tape_index as u64,
                            node,
                            expected,
                            got: None,
                        },
                    })
                }
                Err(e) => return Err(e),
            };
            for &t in targets {
                if rec.output(t) != Some(expected) {
                    return Ok(OrCorrectness::Failed {
                        witness: OrWitness {
                            initiator,
                            tape_index: tape_index as u64,
                            node: t,
                            expected,
                            got: rec.output(t),
                        },
                    });
                }
                bound = bound.max(rec.termination_round(t));
            }
        }
    }
    Ok(OrCorrectness::Correct {
        rounds_bound: bound,
        tape_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{Convergecast, SilentConvergecast};
    use crate::graph::spanning_tree;

    fn k2() -> UnderlyingGraph {
        UnderlyingGraph::complete(2).unwrap()
    }

    #[test]
    fn message_invariants() {
        assert!(Message::empty().is_empty());
        assert!(Message::bytes(Vec::new()).is_err());
        assert_ne!(Message::bit(false), Message::empty());
        assert_ne!(Message::bit(false), Message::bit(true));
    }

    #[test]
    fn convergecast_k2_hand_trace() {
        let g = k2();
        let algo = Convergecast::new(spanning_tree(&g, 0).unwrap());
        // initiator = non-root: one <1> up the edge in round 1, output 1
        let rec = run(
            &algo,
            &g,
            &InputAssignment::initiator(2, 1).unwrap(),
            &RandomTape::zero(2),
            8,
        )
        .unwrap();
        let (fwd, bwd) = rec.history((0, 1)).unwrap();
        assert_eq!(rec.rounds(), 2);
        assert_eq!(bwd, &[Message::bit(true), Message::empty()]);
        assert!(fwd.iter().all(Message::is_empty));
        assert_eq!(rec.output(0), Some(true));
        assert_eq!(rec.card((0, 1)).unwrap(), 1);
        assert_eq!(rec.binary_filter((0, 1)).unwrap().1, vec![true, false]);
        // all-zero input: one <0>, output 0
        let rec = run(
            &algo,
            &g,
            &InputAssignment::zeros(2),
            &RandomTape::zero(2),
            8,
        )
        .unwrap();
        assert_eq!(rec.history((0, 1)).unwrap().1[0], Message::bit(false));
        assert_eq!(rec.output(0), Some(false));
        assert_eq!(rec.comm_cost(), 1);
    }

    #[test]
    fn identical_runs_are_bit_identical() {
        let g = UnderlyingGraph::star(4).unwrap();
        let algo = SilentConvergecast::new(spanning_tree(&g, 0).unwrap());
        let inputs = InputAssignment::initiator(4, 2).unwrap();
        let a = run(&algo, &g, &inputs, &RandomTape::zero(4), 16).unwrap();
        let b = run(&algo, &g, &inputs, &RandomTape::zero(4), 16).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn idle_edge_is_all_empty() {
        let g = UnderlyingGraph::complete(3).unwrap();
        let algo = Convergecast::new(spanning_tree(&g, 0).unwrap());
        let rec = run(
            &algo,
            &g,
            &InputAssignment::zeros(3),
            &RandomTape::zero(3),
            12,
        )
        .unwrap();
        // (1, 2) is a non-tree edge in K3 with BFS root 0
        let (fwd, bwd) = rec.history((1, 2)).unwrap();
        assert!(fwd.iter().all(Message::is_empty));
        assert!(bwd.iter().all(Message::is_empty));
        assert_eq!(rec.card((1, 2)).unwrap(), 0);
        assert!(rec.history((0, 5)).is_err());
        // zero-round prefix is the empty pair; long prefixes saturate
        let (pf, pb) = rec.prefix((0, 1), 0).unwrap();
        assert!(pf.is_empty() && pb.is_empty());
        assert_eq!(rec.prefix((0, 1), 100).unwrap().0.len(), rec.rounds());
    }

    #[test]
    fn active_edges_and_comm_cost() {
        let g = UnderlyingGraph::star(4).unwrap();
        let silent = SilentConvergecast::new(spanning_tree(&g, 0).unwrap());
        let rec = run(
            &silent,
            &g,
            &InputAssignment::initiator(4, 2).unwrap(),
            &RandomTape::zero(4),
            16,
        )
        .unwrap();
        let active: Vec<Edge> = rec.active_edges().iter().collect();
        assert_eq!(active, vec![(0, 2)]);
        let rec0 = run(
            &silent,
            &g,
            &InputAssignment::zeros(4),
            &RandomTape::zero(4),
            16,
        )
        .unwrap();
        assert!(rec0.active_edges().is_empty());
        assert_eq!(worst_case_comm(&silent, &g, 0).unwrap(), 1);
        let conv = Convergecast::new(spanning_tree(&g, 0).unwrap());
        let rec = run(
            &conv,
            &g,
            &InputAssignment::initiator(4, 1).unwrap(),
            &RandomTape::zero(4),
            16,
        )
        .unwrap();
        assert_eq!(rec.active_edges().len(), 3);
        assert_eq!(worst_case_comm(&conv, &g, 0).unwrap(), 3);
    }

    #[test]
    fn or_check_passes_and_reports_bound() {
        for n in 2..=5 {
            let g = UnderlyingGraph::path(n).unwrap();
            let conv = Convergecast::new(spanning_tree(&g, 0).unwrap());
            let res = check_or_correctness(&conv, &g, &conv.targets(), 0).unwrap();
            assert_eq!(res.rounds_bound(), Some(n), "convergecast bound is n");
            let silent = SilentConvergecast::new(spanning_tree(&g, 0).unwrap());
            let res = check_or_correctness(&silent, &g, &silent.targets(), 0).unwrap();
            assert!(res.is_correct());
        }
    }

    #[test]
    fn or_check_catches_constant_algorithm() {
        struct Stubborn;
        struct StubbornProc;
        impl Process for StubbornProc {
            fn step(&mut self, _round: usize, _inbox: &Inbox) -> Result<Outbox, ProcessError> {
                Ok(Vec::new())
            }
            fn output(&self) -> Option<bool> {
                Some(false)
            }
        }
        impl Algorithm for Stubborn {
            fn spawn(&self, _ctx: InitContext<'_>) -> Box<dyn Process> {
                Box::new(StubbornProc)
            }
            fn targets(&self) -> BTreeSet<NodeId> {
                BTreeSet::from([0])
            }
            fn name(&self) -> String {
                "stubborn".into()
            }
        }
        let g = k2();
        let res = check_or_correctness(&Stubborn, &g, &BTreeSet::from([0]), 0).unwrap();
        match res {
            OrCorrectness::Failed { witness } => {
                assert!(witness.expected);
                assert_eq!(witness.got, Some(false));
            }
            OrCorrectness::Correct { .. } => panic!("constant-0 algorithm must fail"),
        }
    }

    #[test]
    fn tape_space_enumeration_and_cutoff() {
        let space = TapeSpace::new(3, 2).unwrap();
        assert_eq!(space.len(), 64);
        let all: Vec<RandomTape> = space.iter().collect();
        assert_eq!(all.len(), 64);
        // node 1's bits come from index bits 2..4
        let t = RandomTape::from_index(3, 2, 0b00_10_00);
        let mut tape = t.tape(1);
        assert!(!tape.next_bit().unwrap());
        assert!(tape.next_bit().unwrap());
        assert!(tape.next_bit().is_err());
        assert!(TapeSpace::new(30, 1).is_err());
    }

    #[test]
    fn non_termination_is_detected() {
        struct Forever;
        struct ForeverProc;
        impl Process for ForeverProc {
            fn step(&mut self, _round: usize, _inbox: &Inbox) -> Result<Outbox, ProcessError> {
                Ok(Vec::new())
            }
            fn output(&self) -> Option<bool> {
                None
            }
        }
        impl Algorithm for Forever {
            fn spawn(&self, _ctx: InitContext<'_>) -> Box<dyn Process> {
                Box::new(ForeverProc)
            }
            fn targets(&self) -> BTreeSet<NodeId> {
                BTreeSet::from([0])
            }
            fn name(&self) -> String {
                "forever".into()
            }
        }
        let err = run(
            &Forever,
            &k2(),
            &InputAssignment::zeros(2),
            &RandomTape::zero(2),
            5,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            EngineError::NonTermination { max_rounds: 5, .. }
        ));
    }
}
