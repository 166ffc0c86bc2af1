//! `orleak verify` — run the invariant suites over a graph family and print
//! one PASS/FAIL line per suite. Any failure exits with code 3 and the first
//! witness.

use orleak::engine::{check_or_correctness, Algorithm};
use orleak::verify::{self, FamilyConfig, LossyConvergecast, SuiteReport};

use crate::error::{CliError, CliResult};
use crate::VerifyArgs;

fn parse_family(spec: &str, special_n: Option<usize>, seed: u64) -> CliResult<FamilyConfig> {
    let mut cfg = FamilyConfig {
        seed,
        ..FamilyConfig::default()
    };
    match spec {
        "default" => {}
        other => {
            let k = other
                .strip_prefix("n<=")
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| {
                    CliError::Config(format!("invalid family `{other}` (default | n<=K)"))
                })?;
            if k == 0 {
                return Err(CliError::Config("family n<=0 is empty".into()));
            }
            cfg.max_connected_n = k;
            cfg.special_n = None;
        }
    }
    if let Some(s) = special_n {
        cfg.special_n = if s == 0 { None } else { Some(s) };
    }
    if cfg.max_connected_n == 0 && cfg.special_n.is_none() {
        return Err(CliError::Config("family selection is empty".into()));
    }
    Ok(cfg)
}

/// Negative-control sweep: run the OR check and the distinguishing-set check
/// against the deliberately broken lossy algorithm; its violations are
/// reported like any other suite's.
fn lossy_control(cfg: &FamilyConfig) -> SuiteReport {
    let mut report = SuiteReport {
        name: "lossy_control",
        checks: 0,
        failures: Vec::new(),
    };
    for (gname, g) in verify::family(cfg) {
        if g.node_count() < 3 {
            continue;
        }
        let lossy = LossyConvergecast::new(&g, 0);
        let res = check_or_correctness(&lossy, &g, &lossy.targets(), 0).expect("desk scale");
        report.checks += 1;
        if !res.is_correct() {
            report
                .failures
                .push(format!("{gname}: lossy fails the OR check: {res:?}"));
        }
        let split = verify::suite_split_for_algorithm(&lossy, &g, 0);
        report.checks += split.checks;
        report
            .failures
            .extend(split.failures.into_iter().map(|w| format!("{gname}: {w}")));
    }
    report
}

pub fn exec(args: &VerifyArgs, file: &crate::config::FileConfig) -> CliResult<()> {
    let seed = crate::config::pick(args.common.seed, file.seed, FamilyConfig::default().seed);
    let cfg = parse_family(&args.family, args.special_n, seed)?;
    let suites: Vec<String> = args
        .suites
        .as_deref()
        .map(|s| s.split(',').map(str::to_string).collect())
        .unwrap_or_default();

    let mut reports = if args.algos.as_deref() == Some("lossy") {
        vec![lossy_control(&cfg)]
    } else if let Some(other) = &args.algos {
        return Err(CliError::Config(format!(
            "--algos only supports the `lossy` negative control, got `{other}`"
        )));
    } else {
        verify::run_selected(&cfg, &suites).map_err(CliError::Config)?
    };
    reports.sort_by_key(|r| r.name);

    let mut failed = false;
    let mut total: u64 = 0;
    for report in &reports {
        total += report.checks;
        if report.pass() {
            println!("PASS {} ({} checks)", report.name, report.checks);
        } else {
            failed = true;
            println!(
                "FAIL {} ({} checks, {} violations)",
                report.name,
                report.checks,
                report.failures.len()
            );
            for witness in report.failures.iter().take(3) {
                println!("  witness: {witness}");
            }
        }
    }
    println!(
        "{}: {} suites, {total} checks",
        if failed { "FAILED" } else { "OK" },
        reports.len()
    );
    if failed {
        return Err(CliError::Invariant(
            "verification suites reported violations".into(),
        ));
    }
    Ok(())
}
