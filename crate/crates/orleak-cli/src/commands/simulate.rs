//! `orleak simulate` — run one execution and dump the complete per-edge
//! directional history.

use orleak::engine::{default_max_rounds, run, RandomTape};
use serde::Serialize;

use crate::error::CliResult;
use crate::output::{emit, render_rows, Format};
use crate::spec;
use crate::SimulateArgs;

#[derive(Serialize)]
struct MessageRow {
    edge: String,
    dir: String,
    round: usize,
    /// `null` encodes the empty message.
    payload_hex: Option<String>,
}

#[derive(Serialize)]
struct OutputRow {
    node: usize,
    bit: u8,
    round: usize,
}

#[derive(Serialize)]
struct Dump {
    graph: String,
    algo: String,
    input: String,
    tape_bits: usize,
    tape_seed: u64,
    rounds: usize,
    outputs: Vec<OutputRow>,
    messages: Vec<MessageRow>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn exec(args: &SimulateArgs, file: &crate::config::FileConfig) -> CliResult<()> {
    let graph_spec =
        crate::config::pick_required(args.common.graph.clone(), file.graph.clone(), "--graph")?;
    let algo_spec =
        crate::config::pick_required(args.common.algo.clone(), file.algo.clone(), "--algo")?;
    let (label, g) = spec::load_graph(&graph_spec)?;
    let algo = spec::build_algorithm(&algo_spec, &g)?;
    let inputs = spec::parse_input(&args.input, &g)?;
    let tape_bits = crate::config::pick(args.tape_bits, file.tape_bits, algo.required_tape_bits());
    let seed = crate::config::pick(args.common.seed, file.seed, 0);
    let tapes = RandomTape::seeded(g.node_count(), tape_bits, seed);
    let max_rounds = args
        .max_rounds
        .unwrap_or_else(|| default_max_rounds(g.node_count()));

    let rec = run(algo.as_ref(), &g, &inputs, &tapes, max_rounds)?;

    let mut messages = Vec::new();
    for &(u, v) in rec.edges() {
        let (fwd, bwd) = rec.history((u, v)).expect("record edge");
        for (dir_label, seq, from, to) in [("fwd", fwd, u, v), ("bwd", bwd, v, u)] {
            let _ = dir_label;
            for (i, msg) in seq.iter().enumerate() {
                messages.push(MessageRow {
                    edge: format!("{u}-{v}"),
                    dir: format!("{from}->{to}"),
                    round: i + 1,
                    payload_hex: msg.payload().map(hex),
                });
            }
        }
    }
    let outputs = (0..g.node_count())
        .map(|v| OutputRow {
            node: v,
            bit: u8::from(rec.output(v).expect("complete record")),
            round: rec.termination_round(v),
        })
        .collect();
    let dump = Dump {
        graph: label,
        algo: algo.name(),
        input: args.input.clone(),
        tape_bits,
        tape_seed: seed,
        rounds: rec.rounds(),
        outputs,
        messages,
    };

    let format = match &args.common.format {
        Some(f) => *f,
        None => match file.format.as_deref() {
            Some(name) => crate::output::parse_format(name)?,
            None => Format::Json,
        },
    };
    let text = match format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&dump).expect("serializable");
            t.push('\n');
            t
        }
        Format::Csv => render_rows(
            Format::Csv,
            "edge,dir,round,payload_hex",
            &dump.messages,
            |m| {
                format!(
                    "{},{},{},{}",
                    m.edge,
                    m.dir,
                    m.round,
                    m.payload_hex.clone().unwrap_or_default()
                )
            },
        ),
    };
    let out = args.common.out.clone().or_else(|| file.out.clone());
    emit(out.as_deref(), &text)
}
