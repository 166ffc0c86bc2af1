//! `orleak ramp` — build, verify, and bound ramp secret-sharing schemes.

use std::path::{Path, PathBuf};

use orleak::ramp::{
    check_star_bound, packed_shamir, ramp_structure, share_entropy_sum, share_size_lower_bound,
    verify_scheme, JointDistribution,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output::emit;
use crate::RampAction;

#[derive(Serialize, Deserialize)]
struct SchemeParams {
    s: usize,
    r: usize,
    n: usize,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct SchemeDump {
    params: SchemeParams,
    table_size: usize,
    secret_entropy_bits: f64,
    share_entropies_bits: Vec<f64>,
    verified: bool,
    /// Full joint table so the dump can be re-verified independently.
    table: Vec<TableRow>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    secret: u64,
    shares: Vec<u64>,
    probability: f64,
}

fn build_dump(s: usize, r: usize, n: usize, q: u64) -> CliResult<SchemeDump> {
    let scheme = packed_shamir(s, r, n, q)?;
    let structure = ramp_structure(s, r, n)?;
    let report = verify_scheme(&scheme, &structure)?;
    Ok(SchemeDump {
        params: SchemeParams { s, r, n, q },
        table_size: scheme.rows().len(),
        secret_entropy_bits: scheme.secret_entropy_bits(),
        share_entropies_bits: (0..n).map(|i| scheme.share_entropy_bits(i)).collect(),
        verified: report.pass,
        table: scheme
            .rows()
            .iter()
            .map(|row| TableRow {
                secret: row.secret,
                shares: row.shares.clone(),
                probability: row.probability,
            })
            .collect(),
    })
}

fn summary_line(dump: &SchemeDump) -> String {
    let entropies: Vec<String> = dump
        .share_entropies_bits
        .iter()
        .map(|h| orleak::report::fmt_bits(*h))
        .collect();
    format!(
        "scheme ({}, {}, {}) over GF({}): table {} rows, secret {} bits, shares [{}] bits, verified={}\n",
        dump.params.s,
        dump.params.r,
        dump.params.n,
        dump.params.q,
        dump.table_size,
        orleak::report::fmt_bits(dump.secret_entropy_bits),
        entropies.join(", "),
        dump.verified,
    )
}

fn load_dump(path: &Path) -> CliResult<SchemeDump> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid scheme dump {}: {e}", path.display())))
}

pub fn exec(action: &RampAction, out: Option<&PathBuf>) -> CliResult<()> {
    match action {
        RampAction::Build { s, r, n, q } => {
            let dump = build_dump(*s, *r, *n, *q)?;
            if !dump.verified {
                return Err(CliError::Invariant(format!(
                    "constructed ({s}, {r}, {n}) scheme over GF({q}) failed verification"
                )));
            }
            print!("{}", summary_line(&dump));
            if let Some(path) = out {
                let mut text = serde_json::to_string_pretty(&dump).expect("serializable");
                text.push('\n');
                emit(Some(path), &text)?;
            }
            Ok(())
        }
        RampAction::Verify { input } => {
            let dump = load_dump(input)?;
            let SchemeParams { s, r, n, q: _ } = dump.params;
            let scheme = JointDistribution::from_rows(
                n,
                dump.table
                    .iter()
                    .map(|row| (row.secret, row.shares.clone(), row.probability)),
            )?;
            let structure = ramp_structure(s, r, n)?;
            let report = verify_scheme(&scheme, &structure)?;
            if !report.pass {
                let failing: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .take(3)
                    .map(|c| {
                        format!(
                            "{} fails {} (H = {})",
                            format_args!("{:?}", c.subset),
                            c.requirement,
                            orleak::report::fmt_bits(c.conditional_entropy_bits)
                        )
                    })
                    .collect();
                return Err(CliError::Invariant(format!(
                    "scheme does not satisfy its ({s}, {r}, {n}) structure: {}",
                    failing.join("; ")
                )));
            }
            let star = if s + 1 == r && r == n {
                // (k, n, n)-ramp: also check the total share entropy bound
                Some(check_star_bound(&scheme, s)?)
            } else {
                None
            };
            println!(
                "verified ({s}, {r}, {n}) scheme: secret {} bits, share sum {} bits{}",
                orleak::report::fmt_bits(report.secret_entropy_bits),
                orleak::report::fmt_bits(share_entropy_sum(&scheme)),
                star.map(|c| format!(
                    ", total-entropy bound {} ({})",
                    orleak::report::fmt_bits(c.bound_bits),
                    if c.equality { "equality" } else { "strict" }
                ))
                .unwrap_or_default()
            );
            Ok(())
        }
        RampAction::Bounds { s, r, n } => {
            let bits = share_size_lower_bound(*s, *r, *n)?;
            println!(
                "share_size_lower_bound({s}, {r}, {n}) = {} bits",
                orleak::report::fmt_bits(bits)
            );
            Ok(())
        }
    }
}
