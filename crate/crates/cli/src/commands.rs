//! One function per subcommand, each producing a [`Report`].

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use turanlab::closedform::crosscheck_suite;
use turanlab::conditions::{default_u_grid, foxwright_conditions, hyp_term_conditions_hold, FoxWrightParams};
use turanlab::exact::rational::fmt_short;
use turanlab::exact::{int, rat, Rational, Ring};
use turanlab::families::{FamilyError, SequenceSpec};
use turanlab::harness::{
    fuzz_conjecture, reproduce_counterexamples, reproduce_printed_points, scan, theorem_suite, Expected,
    ScanReport, ScanSpec, Theorem,
};
use turanlab::identities::{lemma_t_sample, run_all, CaseStatus, LEMMA_T_GRID};
use turanlab::series::{turanian, SeriesError, TuranianReport};

use crate::config::{Case, CommandKind, RunConfig, Suite};
use crate::output::{csv_of, Report};
use crate::CliError;

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let command = cfg
        .command
        .ok_or_else(|| CliError::Config("no command given (subcommand or `command` key)".into()))?;
    match command {
        CommandKind::Turanian => run_turanian(cfg),
        CommandKind::Scan => run_scan(cfg),
        CommandKind::Verify => run_verify(cfg),
        CommandKind::Conditions => run_conditions(cfg),
        CommandKind::Reproduce => run_reproduce(cfg),
        CommandKind::Fuzz => run_fuzz(cfg),
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn need<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::Config(format!("missing `{name}`")))
}

#[derive(Serialize)]
struct TuranianRow {
    m: usize,
    delta: String,
    row: String,
    sign_changes: Option<usize>,
}

fn turanian_report<R: Ring>(rep: &TuranianReport<R>) -> Result<Report, CliError> {
    let rows: Vec<TuranianRow> = (0..=rep.order)
        .map(|m| TuranianRow {
            m,
            delta: rep.delta.coeff(m).to_string(),
            row: rep.rows[m]
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            sign_changes: rep.patterns[m].map(|p| p.sign_changes),
        })
        .collect();
    let mut md = format!(
        "{} / {} at mu={} alpha={} beta={}, N = {}\n\nverdict: {:?}\n\n| m | delta_m | sign changes |\n|---|---|---|\n",
        rep.family, rep.sequence, rep.mu, rep.alpha, rep.beta, rep.order, rep.verdict
    );
    for r in &rows {
        let changes = r.sign_changes.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(md, "| {} | {} | {changes} |", r.m, r.delta);
    }
    Ok(Report {
        json: rep.to_json(),
        markdown: md,
        csv: csv_of(&rows)?,
        failed: false,
    })
}

fn run_turanian(cfg: &RunConfig) -> Result<Report, CliError> {
    let family = need(&cfg.family, "family")?;
    let seq = cfg.sequence.clone().unwrap_or_else(SequenceSpec::constant_one);
    let (mu, a, b) = (need(&cfg.mu, "mu")?, need(&cfg.alpha, "alpha")?, need(&cfg.beta, "beta")?);
    let order = cfg.order.unwrap_or(10);
    match turanian::<Rational>(family, &seq, mu, a, b, order) {
        Ok(rep) => turanian_report(&rep),
        Err(SeriesError::Family(FamilyError::Unsupported(_))) => {
            let f = |r: &Rational| <f64 as Ring>::from_rational(r);
            let rep = turanian::<f64>(family, &seq, &f(mu), &f(a), &f(b), order).map_err(domain)?;
            turanian_report(&rep)
        }
        Err(e) => Err(domain(e)),
    }
}

#[derive(Serialize)]
struct ScanRow<'a> {
    spec: usize,
    family: &'a str,
    sequence: &'a str,
    index: usize,
    mu: &'a str,
    alpha: &'a str,
    beta: &'a str,
    mode: String,
    verdict: String,
    signs: &'a str,
}

fn scan_reports(reports: &[ScanReport]) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        for p in &r.points {
            rows.push(ScanRow {
                spec: i,
                family: &r.family,
                sequence: &r.sequence,
                index: p.index,
                mu: &p.mu,
                alpha: &p.alpha,
                beta: &p.beta,
                mode: format!("{:?}", p.mode),
                verdict: format!("{:?}", p.verdict),
                signs: &p.signs,
            });
        }
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_value(reports).map_err(domain)?
    };
    Ok(Report {
        json,
        markdown: reports.iter().map(ScanReport::summary_table).collect::<Vec<_>>().join("\n"),
        csv: csv_of(&rows)?,
        failed: reports.iter().any(|r| !r.conformant()),
    })
}

fn run_theorems(theorems: &[Theorem], order: usize) -> Result<Vec<ScanReport>, CliError> {
    theorems
        .iter()
        .flat_map(|t| theorem_suite(*t, order))
        .map(|spec| scan(&spec).map_err(domain))
        .collect()
}

fn run_scan(cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(t) = cfg.theorem {
        return scan_reports(&run_theorems(&[t], cfg.order.unwrap_or(30))?);
    }
    let or_single = |grid: &Vec<Rational>, single: &Option<Rational>, name: &str| {
        if !grid.is_empty() {
            Ok(grid.clone())
        } else {
            single
                .clone()
                .map(|v| vec![v])
                .ok_or_else(|| CliError::Config(format!("missing `{name}_grid`")))
        }
    };
    let spec = ScanSpec {
        family: need(&cfg.family, "family")?.clone(),
        seq: cfg.sequence.clone().unwrap_or_else(SequenceSpec::constant_one),
        mu_grid: or_single(&cfg.mu_grid, &cfg.mu, "mu")?,
        alpha_grid: or_single(&cfg.alpha_grid, &cfg.alpha, "alpha")?,
        beta_grid: or_single(&cfg.beta_grid, &cfg.beta, "beta")?,
        order: cfg.order.unwrap_or(20),
        expected: cfg.expected.unwrap_or(Expected::Unknown),
        strict_from: cfg.strict_from,
    };
    spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
    scan_reports(&[scan(&spec).map_err(domain)?])
}

#[derive(Serialize)]
struct CaseRow<'a> {
    id: &'a str,
    kind: String,
    context: &'a str,
    verified: bool,
    derived_only: bool,
}

fn run_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.suite.unwrap_or(Suite::Identities) {
        Suite::Identities => {
            let ledger = run_all();
            let rows: Vec<CaseRow> = ledger
                .cases
                .iter()
                .map(|c| CaseRow {
                    id: &c.id,
                    kind: format!("{:?}", c.kind).to_lowercase(),
                    context: &c.context,
                    verified: c.status == CaseStatus::Verified,
                    derived_only: c.derived_only,
                })
                .collect();
            Ok(Report {
                json: ledger.to_json(),
                markdown: ledger.to_markdown(),
                csv: csv_of(&rows)?,
                failed: !ledger.all_verified(),
            })
        }
        Suite::Lemma => {
            let sample = lemma_t_sample(&LEMMA_T_GRID.map(|(p, q)| rat(p, q)), cfg.order.unwrap_or(16));
            let md = format!(
                "| points | checks | premises | violations |\n|---|---|---|---|\n| {} | {} | {} | {} |\n",
                sample.points,
                sample.checks,
                sample.premises,
                sample.violations.len()
            );
            #[derive(Serialize)]
            struct Row {
                points: usize,
                checks: usize,
                premises: usize,
                violations: usize,
            }
            let csv = csv_of([Row {
                points: sample.points,
                checks: sample.checks,
                premises: sample.premises,
                violations: sample.violations.len(),
            }])?;
            Ok(Report {
                json: serde_json::to_value(&sample).map_err(domain)?,
                markdown: md,
                csv,
                failed: !sample.violations.is_empty(),
            })
        }
        Suite::Closedform => {
            let mu = cfg.mu.clone().unwrap_or(rat(3, 2));
            let alpha = cfg.alpha.clone().unwrap_or(rat(1, 2));
            let beta = cfg.beta.clone().unwrap_or(int(2));
            let results =
                crosscheck_suite(&mu, &alpha, &beta, 25, cfg.order.unwrap_or(120)).map_err(domain)?;
            let mut md = String::from("| form | x | gap | bound | status |\n|---|---|---|---|---|\n");
            for r in &results {
                let bound = r.bound.map_or("-".into(), |b| format!("{b:.3e}"));
                let _ = writeln!(md, "| {} | {} | {:.3e} | {bound} | {:?} |", r.id, r.x, r.gap, r.status);
            }
            Ok(Report {
                json: serde_json::to_value(&results).map_err(domain)?,
                markdown: md,
                csv: turanlab::closedform::crosscheck_csv(&results).map_err(domain)?,
                failed: results.iter().any(|r| !r.passed()),
            })
        }
        Suite::Theorems => scan_reports(&run_theorems(&Theorem::ALL, cfg.order.unwrap_or(30))?),
    }
}

fn worked_example() -> FoxWrightParams {
    FoxWrightParams {
        a: vec![int(1)],
        big_a: vec![int(1)],
        b: vec![int(2)],
        big_b: vec![int(1)],
        theta: int(1),
    }
}

fn run_conditions(cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(h) = &cfg.hyp_term {
        let holds = hyp_term_conditions_hold(&h.a, &h.b, h.r).map_err(domain)?;
        let fmt = |v: &[Rational]| v.iter().map(fmt_short).collect::<Vec<_>>().join(",");
        #[derive(Serialize)]
        struct Row {
            a: String,
            b: String,
            r: usize,
            certified_log_concave: bool,
        }
        let row = Row {
            a: fmt(&h.a),
            b: fmt(&h.b),
            r: h.r,
            certified_log_concave: holds,
        };
        return Ok(Report {
            json: serde_json::to_value(&row).map_err(domain)?,
            markdown: format!(
                "| a | b | r | chain or majorization holds |\n|---|---|---|---|\n| {} | {} | {} | {} |\n",
                row.a, row.b, row.r, holds
            ),
            csv: csv_of([&row])?,
            failed: false,
        });
    }
    let params = cfg.foxwright.clone().unwrap_or_else(worked_example);
    let rep = foxwright_conditions(&params, &default_u_grid(), cfg.order.unwrap_or(60)).map_err(domain)?;
    #[derive(Serialize)]
    struct Row<'a> {
        check: &'a str,
        holds: bool,
        status: String,
    }
    let rows: Vec<Row> = rep
        .checks
        .iter()
        .map(|(k, v)| Row {
            check: k,
            holds: v.holds(),
            status: serde_json::to_string(v).unwrap_or_default(),
        })
        .chain(std::iter::once(Row {
            check: "v_logconvex_numeric",
            holds: rep.v_logconvex_numeric.holds(),
            status: serde_json::to_string(&rep.v_logconvex_numeric).unwrap_or_default(),
        }))
        .collect();
    let mut md = format!(
        "Fox-Wright conditions, delta = {}, rho = {}\n\n| check | holds |\n|---|---|\n",
        rep.delta_conv, rep.rho
    );
    for r in &rows {
        let _ = writeln!(md, "| {} | {} |", r.check, r.holds);
    }
    Ok(Report {
        json: serde_json::to_value(&rep).map_err(domain)?,
        markdown: md,
        csv: csv_of(&rows)?,
        failed: false,
    })
}

fn run_reproduce(cfg: &RunConfig) -> Result<Report, CliError> {
    let points_md = |points: &[turanlab::harness::PrintedPoint]| {
        let mut md = String::from("| mu | computed delta_2 | printed | tolerance | within |\n|---|---|---|---|---|\n");
        for p in points {
            let _ = writeln!(
                md,
                "| {} | {:.7} | {} | {:e} | {} |",
                p.mu, p.computed, p.printed, p.tolerance, p.within_tolerance
            );
        }
        md
    };
    match cfg.case.unwrap_or(Case::RemarkR3) {
        Case::RemarkR3 => {
            let points = reproduce_printed_points().map_err(domain)?;
            Ok(Report {
                json: json!({ "case": "remark-r3", "points": points }),
                markdown: points_md(&points),
                csv: csv_of(&points)?,
                failed: !points.iter().all(|p| p.within_tolerance),
            })
        }
        Case::Counterexamples => {
            let rep = reproduce_counterexamples().map_err(domain)?;
            let mut md = points_md(&rep.printed_points);
            for s in std::iter::once(&rep.search).chain(rep.extended_search.as_ref()) {
                let w = |x: &Option<turanlab::harness::SignWitness>| {
                    x.as_ref()
                        .map_or("none".to_string(), |w| format!("mu={} m={} delta={}", w.mu, w.m, w.delta))
                };
                let _ = writeln!(
                    md,
                    "\n{} search, mu = {}/10..{}/10, m <= {}: {:?}\n- positive: {}\n- negative: {}",
                    s.family,
                    s.mu_tenths.0,
                    s.mu_tenths.1,
                    s.max_order,
                    s.outcome,
                    w(&s.positive),
                    w(&s.negative)
                );
            }
            Ok(Report {
                json: serde_json::to_value(&rep).map_err(domain)?,
                markdown: md,
                csv: csv_of(&rep.printed_points)?,
                failed: !rep.reproduced(),
            })
        }
    }
}

fn run_fuzz(cfg: &RunConfig) -> Result<Report, CliError> {
    let id = *need(&cfg.conjecture, "conjecture")?;
    let rep = fuzz_conjecture(id, cfg.trials.unwrap_or(100), cfg.order.unwrap_or(12), cfg.seed.unwrap_or(0))
        .map_err(|e| CliError::Config(e.to_string()))?;
    #[derive(Serialize)]
    struct Row<'a> {
        trial: usize,
        mu: &'a str,
        alpha: &'a str,
        beta: &'a str,
        m: usize,
        delta: &'a str,
        sequence: String,
    }
    let rows: Vec<Row> = rep
        .violations
        .iter()
        .filter_map(|t| {
            t.violation.as_ref().map(|v| Row {
                trial: t.index,
                mu: &t.mu,
                alpha: &t.alpha,
                beta: &t.beta,
                m: v.m,
                delta: &v.delta,
                sequence: t.sequence.join(";"),
            })
        })
        .collect();
    let csv = if rows.is_empty() {
        "trial,mu,alpha,beta,m,delta,sequence\n".to_string()
    } else {
        csv_of(&rows)?
    };
    Ok(Report {
        json: serde_json::to_value(&rep).map_err(domain)?,
        markdown: rep.summary_table(),
        csv,
        failed: !rep.violations.is_empty(),
    })
}
