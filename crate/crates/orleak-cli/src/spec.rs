//! Parsing of graph, algorithm, input, and edge-set specifications from the
//! command line.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use orleak::algorithms::{rebase_target, Convergecast, DummyConvergecast, SilentConvergecast};
use orleak::engine::{check_or_correctness, Algorithm, InputAssignment};
use orleak::graph::{spanning_tree, EdgeSet, NodeId, UnderlyingGraph};
use orleak::verify::LossyConvergecast;

use crate::error::{CliError, CliResult};

/// A graph argument is either a builtin generator (`star:4`, `path:3`,
/// `cycle:5`, `complete:2`) or a path to an edge-list / JSON file.
pub fn load_graph(spec: &str) -> CliResult<(String, UnderlyingGraph)> {
    if let Some((name, arg)) = spec.split_once(':') {
        if let Ok(n) = arg.parse::<usize>() {
            let g = match name {
                "star" => Some(UnderlyingGraph::star(n)),
                "path" => Some(UnderlyingGraph::path(n)),
                "cycle" => Some(UnderlyingGraph::cycle(n)),
                "complete" => Some(UnderlyingGraph::complete(n)),
                _ => None,
            };
            if let Some(g) = g {
                return Ok((spec.to_string(), g?));
            }
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Config(format!("cannot read graph `{spec}`: {e}")))?;
    let label = Path::new(spec)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((label, UnderlyingGraph::parse(&text)?))
}

/// Algorithm specification grammar:
///
/// ```text
/// convergecast[:root=R] | silent[:root=R] | dummy[:root=R]
///   | lossy[:root=R]
///   | rebased(<inner>;targets=T1,T2,...)
/// ```
///
/// Roots default to node 0; the rebased round bound is measured by the
/// exhaustive OR check on the inner algorithm.
pub fn build_algorithm(spec: &str, g: &UnderlyingGraph) -> CliResult<Arc<dyn Algorithm>> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("rebased(") {
        let inner_spec = rest
            .strip_suffix(')')
            .ok_or_else(|| CliError::Config(format!("unbalanced parentheses in `{spec}`")))?;
        let (inner_part, targets_part) = inner_spec.split_once(";targets=").ok_or_else(|| {
            CliError::Config(format!(
                "`{spec}` needs the form rebased(<inner>;targets=1,2)"
            ))
        })?;
        let inner = build_algorithm(inner_part, g)?;
        let targets = parse_nodes(targets_part, g)?;
        if targets.is_empty() {
            return Err(CliError::Config(
                "rebased target set must be non-empty".into(),
            ));
        }
        let check = check_or_correctness(
            inner.as_ref(),
            g,
            &inner.targets(),
            inner.required_tape_bits(),
        )?;
        let k0 = check.rounds_bound().ok_or_else(|| {
            CliError::Config(format!(
                "inner algorithm `{inner_part}` fails the OR check: {check:?}"
            ))
        })?;
        return Ok(Arc::new(rebase_target(inner, k0, targets)));
    }
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let mut root: NodeId = 0;
    if let Some(params) = params {
        for kv in params.split(',') {
            match kv.split_once('=') {
                Some(("root", v)) => {
                    root = v
                        .parse()
                        .map_err(|_| CliError::Config(format!("invalid root `{v}`")))?;
                }
                _ => {
                    return Err(CliError::Config(format!(
                        "unknown parameter `{kv}` in `{spec}`"
                    )))
                }
            }
        }
    }
    if root >= g.node_count() {
        return Err(CliError::Config(format!(
            "root {root} out of range for {} nodes",
            g.node_count()
        )));
    }
    let tree = spanning_tree(g, root)?;
    Ok(match name {
        "convergecast" => Arc::new(Convergecast::new(tree)),
        "silent" => Arc::new(SilentConvergecast::new(tree)),
        "dummy" => Arc::new(DummyConvergecast::new(tree)),
        "lossy" => Arc::new(LossyConvergecast::new(g, root)),
        other => {
            return Err(CliError::Config(format!(
                "unknown algorithm `{other}` (expected convergecast | silent | dummy | lossy | rebased(...))"
            )))
        }
    })
}

fn parse_nodes(text: &str, g: &UnderlyingGraph) -> CliResult<BTreeSet<NodeId>> {
    let mut out = BTreeSet::new();
    for tok in text.split(',').filter(|t| !t.is_empty()) {
        let v: NodeId = tok
            .parse()
            .map_err(|_| CliError::Config(format!("invalid node id `{tok}`")))?;
        if v >= g.node_count() {
            return Err(CliError::Config(format!(
                "node {v} out of range for {} nodes",
                g.node_count()
            )));
        }
        out.insert(v);
    }
    Ok(out)
}

/// Input specification: `zeros`, `initiator:V`, or `bits:0110`.
pub fn parse_input(spec: &str, g: &UnderlyingGraph) -> CliResult<InputAssignment> {
    let n = g.node_count();
    if spec == "zeros" {
        return Ok(InputAssignment::zeros(n));
    }
    if let Some(v) = spec.strip_prefix("initiator:") {
        let v: NodeId = v
            .parse()
            .map_err(|_| CliError::Config(format!("invalid initiator `{v}`")))?;
        return Ok(InputAssignment::initiator(n, v)?);
    }
    if let Some(bits) = spec.strip_prefix("bits:") {
        if bits.len() != n || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(CliError::Config(format!(
                "`bits:` expects exactly {n} characters of 0/1"
            )));
        }
        return Ok(InputAssignment::from_bits(
            bits.chars().map(|c| c == '1').collect::<Vec<_>>(),
        ));
    }
    Err(CliError::Config(format!(
        "invalid input spec `{spec}` (expected zeros | initiator:V | bits:0101...)"
    )))
}

/// Edge-set specification: comma-separated `u-v` pairs, e.g. `0-1,1-2`.
pub fn parse_edges(text: &str, g: &UnderlyingGraph) -> CliResult<EdgeSet> {
    let mut set = EdgeSet::new();
    for tok in text.split(',').filter(|t| !t.is_empty()) {
        let (u, v) = tok
            .split_once('-')
            .ok_or_else(|| CliError::Config(format!("edge `{tok}` is not of the form u-v")))?;
        let u: NodeId = u
            .parse()
            .map_err(|_| CliError::Config(format!("invalid node in `{tok}`")))?;
        let v: NodeId = v
            .parse()
            .map_err(|_| CliError::Config(format!("invalid node in `{tok}`")))?;
        if !g.has_edge(u, v) {
            return Err(CliError::Config(format!(
                "({u}, {v}) is not an edge of the graph"
            )));
        }
        set.insert(u, v);
    }
    Ok(set)
}

/// Canonical `u-v;x-y` rendering for report selectors.
pub fn edges_label(f: &EdgeSet) -> String {
    if f.is_empty() {
        return "F=empty".into();
    }
    let parts: Vec<String> = f.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("F={}", parts.join(";"))
}
