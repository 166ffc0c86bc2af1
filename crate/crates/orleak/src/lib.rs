//! A laboratory for measuring how much anonymity a distributed OR algorithm
//! gives away to an eavesdropper, and for checking that the measurements
//! respect the known lower bounds.
//!
//! The model: processes sit on the nodes of a connected undirected graph and
//! run a synchronous message-passing algorithm whose designated targets must
//! output the OR of all input bits. Exactly one node — the *initiator* —
//! holds a 1, uniformly at random. An adversary taps a set of edges `F` and
//! watches the traffic. How many bits of the initiator's identity does the
//! traffic hand over?
//!
//! The crate answers that question exactly, by enumeration, and cross-checks
//! the answers against closed-form bounds:
//!
//! * [`graph`] — topologies, spanning trees, distances, connectivity
//!   queries.
//! * [`engine`] — deterministic synchronous execution with complete per-edge
//!   message histories, message counting, and OR-correctness checking.
//! * [`algorithms`] — the convergecast family (talkative, silent, and
//!   cover-traffic variants) plus target rebasing.
//! * [`leakage`] — observation partitions, Shannon/collision entropy, exact
//!   mutual information for randomized algorithms, Bernoulli and tuple
//!   averages.
//! * [`bounds`] — the closed-form lower bounds the measurements must
//!   dominate.
//! * [`ramp`] — ramp secret sharing: packed Shamir constructions, exact
//!   verification, and the view of edge histories as shares.
//! * [`verify`] — the invariant suites that sweep all of the above over a
//!   family of small graphs.
//!
//! # A two-minute tour
//!
//! ```
//! use orleak::algorithms::{Convergecast, SilentConvergecast};
//! use orleak::engine::worst_case_comm;
//! use orleak::graph::{spanning_tree, UnderlyingGraph};
//! use orleak::leakage::{leac_det, leak_det};
//!
//! // A 4-node star; the center is the root of the (only) spanning tree.
//! let g = UnderlyingGraph::star(4).unwrap();
//! let tree = spanning_tree(&g, 0).unwrap();
//!
//! // The talkative convergecast always costs n - 1 messages but its
//! // presence pattern is input-independent:
//! let conv = Convergecast::new(tree.clone());
//! assert_eq!(worst_case_comm(&conv, &g, 0).unwrap(), 3);
//! let one_edge = [(0, 1)].into_iter().collect();
//! assert!(leac_det(&conv, &g, &one_edge).unwrap() == 0.0);
//!
//! // The silent variant sends at most depth-many messages, but silence
//! // speaks: watching one leaf edge yields H(1/4) ≈ 0.811 bits.
//! let silent = SilentConvergecast::new(tree);
//! assert_eq!(worst_case_comm(&silent, &g, 0).unwrap(), 1);
//! let bits = leak_det(&silent, &g, &one_edge).unwrap();
//! assert!((bits - 0.811278).abs() < 1e-6);
//! ```

pub mod algorithms;
pub mod bounds;
pub mod engine;
pub mod graph;
pub mod leakage;
pub mod ramp;
pub mod report;
pub mod verify;
