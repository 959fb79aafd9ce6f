use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use prgraph::metrics::{metrics_report_on, return_probs_csv, Metric, MetricsReport, MetricsRequest};

use serde::Serialize;

use super::{load_graph, record_space, space_from, warn_truncated};
use crate::error::{CliError, CliResult};
use crate::manifest::{csv_with_manifest, json_document, print, RunManifest, Sink};
use crate::Outcome;

#[derive(Args, Debug)]
pub struct MetricsArgs {
    /// Graph JSON written by `explore`; replaces --group/--n/--root/--radius.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub radius: u32,
    #[arg(long, default_value_t = 200_000)]
    pub cap: usize,
    /// Largest walk length for return probabilities.
    #[arg(long, default_value_t = 8)]
    pub kmax: u32,
    /// Comma-separated subset of cheeger,spectral,return,rho; empty for none.
    #[arg(long, default_value = "cheeger,spectral,return,rho")]
    pub which: String,
    /// Output directory for metrics.json and return_probs.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct MetricsDocument<'a> {
    manifest: &'a RunManifest,
    report: &'a MetricsReport,
}

fn parse_which(text: &str) -> CliResult<BTreeSet<Metric>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Metric>().map_err(CliError::from))
        .collect()
}

pub fn run(args: MetricsArgs, argv: &[String]) -> CliResult<Outcome> {
    let metrics = parse_which(&args.which)?;
    let ball = match (&args.graph, &args.group) {
        (Some(path), group) => load_graph(path, group.as_deref())?,
        (None, Some(group)) => {
            let (space, root) = space_from(group, args.n, args.root.as_deref())?;
            if metrics.is_empty() {
                space.explore_ball(&root, 0, 1)?
            } else {
                space.explore_ball(&root, args.radius, args.cap)?
            }
        }
        (None, None) => return Err(CliError::Usage("metrics needs --graph or --group".into())),
    };
    warn_truncated(&ball);
    let req = MetricsRequest { radius: ball.radius(), cap: ball.cap(), k_max: args.kmax, metrics };
    let report = metrics_report_on(&ball, &req);

    let sink = Sink::new(args.out)?;
    let mut m = RunManifest::new("metrics", argv);
    record_space(&mut m, ball.space(), ball.root());
    m.radius = Some(req.radius);
    m.cap = Some(req.cap);
    m.k_max = Some(req.k_max);
    let rows = report.return_probs.as_deref();
    m.outputs = match rows {
        Some(_) => sink.paths(&["metrics.json", "return_probs.csv"]),
        None => sink.paths(&["metrics.json"]),
    };

    let json = json_document(&MetricsDocument { manifest: &m, report: &report })?;
    if sink.to_stdout() {
        print(&json)?;
    } else {
        sink.write("metrics.json", &json)?;
        if let Some(rows) = rows {
            sink.write("return_probs.csv", &csv_with_manifest(&m, &return_probs_csv(rows)?))?;
        }
    }
    for (metric, err) in &report.errors {
        eprintln!("prgraph: {metric}: {err}");
    }
    if report.all_failed(&req) {
        return Err(CliError::Usage("every requested metric failed".into()));
    }
    Ok(Outcome::Done)
}
