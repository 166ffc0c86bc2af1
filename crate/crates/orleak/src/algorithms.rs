//! Concrete OR algorithms spanning the leakage / communication trade-off.
//!
//! All four constructions run on a rooted spanning tree `Y` and share the
//! same deadline schedule: a node at tree depth `d` acts in round `n - d`,
//! and the root decides in round `n`.
//!
//! * [`Convergecast`] — every non-root reports its subtree OR with exactly
//!   one message; the message-presence pattern is input-independent, so a
//!   presence-only observer learns nothing, at the price of `n - 1` messages
//!   on every run.
//! * [`SilentConvergecast`] — silence encodes 0; only the path from the
//!   initiator to the root talks, so traffic is cheap but presence alone
//!   reveals where the 1 came from.
//! * [`DummyConvergecast`] — the silent schedule plus coin-flipped cover
//!   messages from idle nodes, blurring the presence pattern.
//! * [`rebase_target`] — wraps any OR algorithm and moves its target set by
//!   flooding the result afterwards on an input-independent schedule.
//!
//! ```
//! use orleak::algorithms::{Convergecast, SilentConvergecast};
//! use orleak::engine::worst_case_comm;
//! use orleak::graph::{spanning_tree, UnderlyingGraph};
//!
//! let g = UnderlyingGraph::star(6).unwrap();
//! let tree = spanning_tree(&g, 0).unwrap();
//! // the talkative variant pays n - 1 messages on every input ...
//! let conv = Convergecast::new(tree.clone());
//! assert_eq!(worst_case_comm(&conv, &g, 0).unwrap(), 5);
//! // ... the silent one at most the initiator's depth
//! let silent = SilentConvergecast::new(tree);
//! assert_eq!(worst_case_comm(&silent, &g, 0).unwrap(), 1);
//! ```

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::engine::{Algorithm, Inbox, InitContext, Message, Outbox, Process, ProcessError, Tape};
use crate::graph::{NodeId, SpanningTree, UnderlyingGraph};

/// Payload byte of a cover message; receivers ignore it when computing the
/// OR, the presence-only adversary cannot tell it from a real report.
const DUMMY_MARKER: u8 = 0xFF;

fn real_bit(msg: &Message) -> Option<bool> {
    match msg.payload() {
        Some([b]) if *b == DUMMY_MARKER => None,
        Some([b]) => Some(*b != 0),
        _ => None,
    }
}

/// Spanning tree plus root on which the convergecast family runs.
#[derive(Debug, Clone)]
pub struct ConvergecastConfig {
    tree: SpanningTree,
}

impl ConvergecastConfig {
    pub fn new(tree: SpanningTree) -> Self {
        ConvergecastConfig { tree }
    }

    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ReportRule {
    /// Send `<x>` at the deadline unconditionally.
    Always,
    /// Send `<1>` at the deadline only when `x = 1`.
    WhenOne,
    /// Like `WhenOne`, but an idle node sends a cover message when its tape
    /// bit is 1.
    WhenOneOrDummy,
}

struct TreeCastProcess {
    x: bool,
    deadline: usize,
    parent: Option<NodeId>,
    rule: ReportRule,
    tape: Tape,
    done: Option<bool>,
}

impl TreeCastProcess {
    fn new(cfg: &ConvergecastConfig, rule: ReportRule, ctx: &InitContext<'_>) -> Self {
        let n = ctx.graph.node_count();
        TreeCastProcess {
            x: ctx.input,
            deadline: n - cfg.tree.depth(ctx.node),
            parent: cfg.tree.parent(ctx.node),
            rule,
            tape: ctx.tape.clone(),
            done: None,
        }
    }
}

impl Process for TreeCastProcess {
    fn step(&mut self, round: usize, inbox: &Inbox) -> Result<Outbox, ProcessError> {
        for (_, msg) in inbox {
            if let Some(bit) = real_bit(msg) {
                self.x |= bit;
            }
        }
        if round != self.deadline {
            return Ok(Vec::new());
        }
        self.done = Some(self.x);
        let Some(parent) = self.parent else {
            return Ok(Vec::new()); // root decides, nothing to send
        };
        let outbox = match self.rule {
            ReportRule::Always => vec![(parent, Message::bit(self.x))],
            ReportRule::WhenOne if self.x => vec![(parent, Message::bit(true))],
            ReportRule::WhenOne => Vec::new(),
            ReportRule::WhenOneOrDummy if self.x => vec![(parent, Message::bit(true))],
            ReportRule::WhenOneOrDummy => {
                if self.tape.next_bit()? {
                    vec![(parent, Message::bytes([DUMMY_MARKER]).expect("non-empty"))]
                } else {
                    Vec::new()
                }
            }
        };
        Ok(outbox)
    }

    fn output(&self) -> Option<bool> {
        self.done
    }
}

macro_rules! treecast_algorithm {
    ($name:ident, $rule:expr, $label:literal, $tape_bits:expr) => {
        impl $name {
            pub fn new(tree: SpanningTree) -> Self {
                Self {
                    cfg: ConvergecastConfig::new(tree),
                }
            }

            pub fn config(&self) -> &ConvergecastConfig {
                &self.cfg
            }
        }

        impl Algorithm for $name {
            fn spawn(&self, ctx: InitContext<'_>) -> Box<dyn Process> {
                Box::new(TreeCastProcess::new(&self.cfg, $rule, &ctx))
            }

            fn targets(&self) -> BTreeSet<NodeId> {
                BTreeSet::from([self.cfg.root()])
            }

            fn required_tape_bits(&self) -> usize {
                $tape_bits
            }

            fn name(&self) -> String {
                format!(concat!($label, "(root={})"), self.cfg.root())
            }
        }
    };
}

/// Tree aggregation where every non-root sends its subtree OR to its parent
/// at round `n - depth`. Target set is the root; worst-case communication is
/// always exactly `n - 1` messages.
pub struct Convergecast {
    cfg: ConvergecastConfig,
}
treecast_algorithm!(Convergecast, ReportRule::Always, "convergecast", 0);

/// Communication-thrifty convergecast: a node reports only when it holds a 1,
/// the root decides by absence at its deadline.
pub struct SilentConvergecast {
    cfg: ConvergecastConfig,
}
treecast_algorithm!(SilentConvergecast, ReportRule::WhenOne, "silent", 0);

/// Silent convergecast with randomized cover traffic: an idle node sends a
/// payload-tagged dummy at its deadline when its single tape bit is 1.
/// Receivers ignore dummies, so the OR result is correct for every tape.
pub struct DummyConvergecast {
    cfg: ConvergecastConfig,
}
treecast_algorithm!(DummyConvergecast, ReportRule::WhenOneOrDummy, "dummy", 1);

/// Run `inner` verbatim through round `k0`, then flood the result from the
/// old targets on a fixed schedule, making `new_targets` (indeed all nodes)
/// output the OR value.
///
/// The flood sends on every edge at rounds fixed by the topology alone, so
/// observations of the rebased algorithm reveal exactly what observations of
/// `inner` reveal: under the single-initiator prior the flooded payload is
/// the constant 1.
pub fn rebase_target(
    inner: Arc<dyn Algorithm>,
    k0: usize,
    new_targets: BTreeSet<NodeId>,
) -> RebasedAlgorithm {
    assert!(!new_targets.is_empty(), "target set must be non-empty");
    RebasedAlgorithm {
        inner,
        k0,
        new_targets,
    }
}

/// See [`rebase_target`].
pub struct RebasedAlgorithm {
    inner: Arc<dyn Algorithm>,
    k0: usize,
    new_targets: BTreeSet<NodeId>,
}

impl Algorithm for RebasedAlgorithm {
    fn spawn(&self, ctx: InitContext<'_>) -> Box<dyn Process> {
        let old_targets = self.inner.targets();
        let flood_depth = flood_depths(ctx.graph, &old_targets)[ctx.node];
        let neighbors = ctx.graph.neighbors(ctx.node).to_vec();
        let is_old_target = old_targets.contains(&ctx.node);
        let inner = self.inner.spawn(InitContext {
            node: ctx.node,
            graph: ctx.graph,
            targets: &old_targets,
            input: ctx.input,
            tape: ctx.tape,
        });
        Box::new(RebasedProcess {
            inner,
            k0: self.k0,
            flood_round: self.k0 + 1 + flood_depth,
            neighbors,
            is_old_target,
            s: None,
            done: None,
        })
    }

    fn targets(&self) -> BTreeSet<NodeId> {
        self.new_targets.clone()
    }

    fn required_tape_bits(&self) -> usize {
        self.inner.required_tape_bits()
    }

    fn name(&self) -> String {
        let targets: Vec<String> = self.new_targets.iter().map(|t| t.to_string()).collect();
        format!(
            "rebased({}, targets={})",
            self.inner.name(),
            targets.join("+")
        )
    }
}

/// Multi-source BFS distance from the old target set.
fn flood_depths(g: &UnderlyingGraph, sources: &BTreeSet<NodeId>) -> Vec<usize> {
    let n = g.node_count();
    let mut depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        depth[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    depth
}

struct RebasedProcess {
    inner: Box<dyn Process>,
    k0: usize,
    flood_round: usize,
    neighbors: Vec<NodeId>,
    is_old_target: bool,
    s: Option<bool>,
    done: Option<bool>,
}

impl Process for RebasedProcess {
    fn step(&mut self, round: usize, inbox: &Inbox) -> Result<Outbox, ProcessError> {
        if round <= self.k0 {
            let outbox = if self.inner.output().is_none() {
                self.inner.step(round, inbox)?
            } else {
                Vec::new()
            };
            if round == self.k0 && self.is_old_target {
                self.s = Some(self.inner.output().ok_or_else(|| {
                    ProcessError::Protocol(format!(
                        "inner algorithm missed its {}-round bound",
                        self.k0
                    ))
                })?);
            }
            return Ok(outbox);
        }
        // flood phase: learn s from the first flooded message, relay once at
        // the depth-determined round, then terminate
        for (_, msg) in inbox {
            if let Some(bit) = real_bit(msg) {
                self.s.get_or_insert(bit);
            }
        }
        if round == self.flood_round {
            let s = self.s.ok_or_else(|| {
                ProcessError::Protocol("flood reached a node before its value".into())
            })?;
            self.done = Some(s);
            return Ok(self
                .neighbors
                .iter()
                .map(|&w| (w, Message::bit(s)))
                .collect());
        }
        Ok(Vec::new())
    }

    fn output(&self) -> Option<bool> {
        self.done
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{check_or_correctness, run, InputAssignment, RandomTape, TapeSpace};
    use crate::graph::{spanning_tree, UnderlyingGraph};

    fn star4() -> (UnderlyingGraph, SpanningTree) {
        let g = UnderlyingGraph::star(4).unwrap();
        let t = spanning_tree(&g, 0).unwrap();
        (g, t)
    }

    #[test]
    fn silent_star_traffic() {
        let (g, t) = star4();
        let algo = SilentConvergecast::new(t);
        // initiator leaf 2: exactly one message, on its own edge, round 3
        let rec = run(
            &algo,
            &g,
            &InputAssignment::initiator(4, 2).unwrap(),
            &RandomTape::zero(4),
            16,
        )
        .unwrap();
        let (fwd, bwd) = rec.history((0, 2)).unwrap();
        assert_eq!(bwd[2], Message::bit(true));
        assert_eq!(rec.comm_cost(), 1);
        assert!(fwd.iter().all(Message::is_empty));
        // all-zero input: total silence
        let rec = run(
            &algo,
            &g,
            &InputAssignment::zeros(4),
            &RandomTape::zero(4),
            16,
        )
        .unwrap();
        assert_eq!(rec.comm_cost(), 0);
        assert_eq!(rec.output(0), Some(false));
    }

    #[test]
    fn dummy_tape_extremes() {
        let (g, t) = star4();
        let dummy = DummyConvergecast::new(t.clone());
        let inputs = InputAssignment::initiator(4, 1).unwrap();
        // all tape bits 1: every tree edge active, like plain convergecast
        let all_ones = RandomTape::from_index(4, 1, 0b1111);
        let rec = run(&dummy, &g, &inputs, &all_ones, 16).unwrap();
        assert_eq!(rec.active_edges().len(), 3);
        assert_eq!(rec.output(0), Some(true));
        // all tape bits 0: traffic identical to the silent variant
        let silent = SilentConvergecast::new(t);
        let rec_d = run(&dummy, &g, &inputs, &RandomTape::from_index(4, 1, 0), 16).unwrap();
        let rec_s = run(&silent, &g, &inputs, &RandomTape::zero(4), 16).unwrap();
        for &e in g.edges() {
            assert_eq!(rec_d.history(e).unwrap(), rec_s.history(e).unwrap());
        }
    }

    #[test]
    fn dummy_is_or_correct_for_every_tape() {
        let (g, t) = star4();
        let dummy = DummyConvergecast::new(t);
        let res = check_or_correctness(&dummy, &g, &dummy.targets(), 1).unwrap();
        assert!(res.is_correct(), "{res:?}");
    }

    #[test]
    fn rebased_is_or_correct_and_flood_is_input_independent() {
        let g = UnderlyingGraph::path(3).unwrap();
        let conv = Arc::new(Convergecast::new(spanning_tree(&g, 0).unwrap()));
        let k0 = 3;
        let rebased = rebase_target(conv, k0, BTreeSet::from([2]));
        let res = check_or_correctness(&rebased, &g, &rebased.targets(), 0).unwrap();
        assert!(res.is_correct(), "{res:?}");

        // beyond k0 the presence pattern is the same for every input, and the
        // full histories agree across inputs with the same OR value
        let space = TapeSpace::new(3, 0).unwrap();
        let recs: Vec<_> = crate::engine::or_input_family(3)
            .map(|inp| run(&rebased, &g, &inp, &space.iter().next().unwrap(), 24).unwrap())
            .collect();
        for rec in &recs {
            for other in &recs {
                for &e in g.edges() {
                    let (a_f, a_b) = rec.binary_filter(e).unwrap();
                    let (b_f, b_b) = other.binary_filter(e).unwrap();
                    assert_eq!(&a_f[k0..], &b_f[k0..], "presence differs after k0");
                    assert_eq!(&a_b[k0..], &b_b[k0..]);
                }
            }
        }
        // recs[1..] all have OR value 1
        for pair in recs[1..].windows(2) {
            for &e in g.edges() {
                let (a_f, a_b) = pair[0].history(e).unwrap();
                let (b_f, b_b) = pair[1].history(e).unwrap();
                assert_eq!(&a_f[k0..], &b_f[k0..]);
                assert_eq!(&a_b[k0..], &b_b[k0..]);
            }
        }
    }

    #[test]
    fn rebase_with_same_targets_changes_nothing_before_flood() {
        let g = UnderlyingGraph::complete(3).unwrap();
        let conv = Arc::new(Convergecast::new(spanning_tree(&g, 0).unwrap()));
        let rebased = rebase_target(conv.clone(), 3, BTreeSet::from([0]));
        let inputs = InputAssignment::initiator(3, 2).unwrap();
        let inner_rec = run(conv.as_ref(), &g, &inputs, &RandomTape::zero(3), 12).unwrap();
        let outer_rec = run(&rebased, &g, &inputs, &RandomTape::zero(3), 12).unwrap();
        for &e in g.edges() {
            let (i_f, i_b) = inner_rec.history(e).unwrap();
            let (o_f, o_b) = outer_rec.history(e).unwrap();
            assert_eq!(i_f, &o_f[..inner_rec.rounds()]);
            assert_eq!(i_b, &o_b[..inner_rec.rounds()]);
        }
    }
}
