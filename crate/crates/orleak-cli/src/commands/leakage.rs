//! `orleak leakage` — measure leakage for one edge set, one Bernoulli
//! probability, or one tuple length, and emit a report row.

use orleak::leakage::{
    avg_leak_tuples, expected_leak_bernoulli, leak_rand, partition, BernoulliMethod,
    ObservationMode,
};
use orleak::report::LeakageRow;

use crate::error::{CliError, CliResult};
use crate::output::{emit, render_rows, Format};
use crate::spec;
use crate::LeakageArgs;

pub fn parse_mode(name: &str) -> CliResult<ObservationMode> {
    match name {
        "full" => Ok(ObservationMode::Full),
        "filtered" => Ok(ObservationMode::Filtered),
        "card" => Ok(ObservationMode::Card),
        other => Err(CliError::Config(format!(
            "unknown mode `{other}` (full | filtered | card)"
        ))),
    }
}

pub fn exec(args: &LeakageArgs, file: &crate::config::FileConfig) -> CliResult<()> {
    let graph_spec =
        crate::config::pick_required(args.common.graph.clone(), file.graph.clone(), "--graph")?;
    let algo_spec =
        crate::config::pick_required(args.common.algo.clone(), file.algo.clone(), "--algo")?;
    let (label, g) = spec::load_graph(&graph_spec)?;
    let algo = spec::build_algorithm(&algo_spec, &g)?;
    let mode_name = crate::config::pick(args.mode.clone(), file.mode.clone(), "full".to_string());
    let mode = parse_mode(&mode_name)?;
    let tape_bits = crate::config::pick(args.tape_bits, file.tape_bits, algo.required_tape_bits());

    let selectors = [args.edges.is_some(), args.p.is_some(), args.k.is_some()];
    if selectors.iter().filter(|&&s| s).count() != 1 {
        return Err(CliError::Config(
            "exactly one of --edges, --p, --k selects the experiment".into(),
        ));
    }

    let row = if let Some(edges) = &args.edges {
        let f = spec::parse_edges(edges, &g)?;
        let (value, method) = if tape_bits == 0 {
            (
                partition(algo.as_ref(), &g, &f, mode)?.entropy_bits(),
                "exact",
            )
        } else {
            (leak_rand(algo.as_ref(), &g, &f, tape_bits, mode)?, "exact")
        };
        LeakageRow {
            graph: label,
            algo: algo.name(),
            mode: mode.label().into(),
            selector: spec::edges_label(&f),
            value_bits: value,
            method: method.into(),
            samples: None,
            stderr: None,
        }
    } else if let Some(p) = args.p {
        if tape_bits != 0 {
            return Err(CliError::Config(
                "--p averages need a deterministic algorithm (tape bits 0)".into(),
            ));
        }
        let method_name = args.method.as_deref().unwrap_or("exact");
        let (est, method, samples) = match method_name {
            "exact" => (
                expected_leak_bernoulli(algo.as_ref(), &g, p, mode, BernoulliMethod::Exact)?,
                "exact",
                None,
            ),
            "mc" | "monte-carlo" => {
                let samples = crate::config::pick(args.samples, file.samples, 10_000);
                let seed = crate::config::pick(args.common.seed, file.seed, 0);
                (
                    expected_leak_bernoulli(
                        algo.as_ref(),
                        &g,
                        p,
                        mode,
                        BernoulliMethod::MonteCarlo { seed, samples },
                    )?,
                    "monte_carlo",
                    Some(u64::from(samples)),
                )
            }
            other => {
                return Err(CliError::Config(format!(
                    "unknown method `{other}` (exact | mc)"
                )))
            }
        };
        LeakageRow {
            graph: label,
            algo: algo.name(),
            mode: mode.label().into(),
            selector: format!("p={p:.6}"),
            value_bits: est.bits,
            method: method.into(),
            samples,
            stderr: est.stderr,
        }
    } else {
        let k = args.k.expect("selector checked");
        if tape_bits != 0 {
            return Err(CliError::Config(
                "--k averages need a deterministic algorithm (tape bits 0)".into(),
            ));
        }
        LeakageRow {
            graph: label,
            algo: algo.name(),
            mode: mode.label().into(),
            selector: format!("k={k}"),
            value_bits: avg_leak_tuples(algo.as_ref(), &g, k, mode)?,
            method: "exact".into(),
            samples: None,
            stderr: None,
        }
    };

    let format = match &args.common.format {
        Some(f) => *f,
        None => match file.format.as_deref() {
            Some(name) => crate::output::parse_format(name)?,
            None => Format::Csv,
        },
    };
    let text = render_rows(format, LeakageRow::CSV_HEADER, &[row], LeakageRow::csv_line);
    let out = args.common.out.clone().or_else(|| file.out.clone());
    emit(out.as_deref(), &text)
}
