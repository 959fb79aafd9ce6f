use std::path::PathBuf;

use clap::Args;
use prgraph::pra::{histogram_csv, mixing_report, sample_elements, Emit, MixingReport, WalkConfig};
use serde::Serialize;

use super::{record_space, resolve};
use crate::error::{CliError, CliResult};
use crate::manifest::{csv_with_manifest, json_document, print, RunManifest, Sink};
use crate::{Outcome, SpaceArgs};

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 100)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// `coordinate` (a uniformly chosen entry), `tuple`, or `coord:<i>` (1-based).
    #[arg(long, default_value = "coordinate")]
    pub emit: String,
    /// Skip the comparison with the exact law (finite groups only).
    #[arg(long)]
    pub no_mixing: bool,
    /// Output directory for histogram.csv and sample.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Bin {
    value: String,
    count: u64,
}

#[derive(Serialize)]
struct SampleDocument<'a> {
    manifest: &'a RunManifest,
    emit: Emit,
    trials: u64,
    support: usize,
    histogram: Vec<Bin>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mixing: Option<MixingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mixing_error: Option<String>,
}

fn parse_emit(text: &str) -> CliResult<Emit> {
    match text {
        "tuple" => Ok(Emit::Tuple),
        "coordinate" => Ok(Emit::RandomCoordinate),
        other => other
            .strip_prefix("coord:")
            .and_then(|i| i.parse().ok())
            .map(Emit::FixedCoordinate)
            .ok_or_else(|| CliError::Usage(format!("unknown --emit {other:?}"))),
    }
}

pub fn run(args: SampleArgs, argv: &[String]) -> CliResult<Outcome> {
    let emit = parse_emit(&args.emit)?;
    let (space, root) = resolve(&args.space)?;
    let mut m = RunManifest::new("sample", argv);
    record_space(&mut m, &space, &root);
    m.seed = Some(args.seed);
    m.trials = Some(args.trials);
    m.steps = Some(args.steps);

    let cfg = WalkConfig::new(space.clone(), root, args.steps, args.seed, emit)?;
    let hist = sample_elements(&cfg, args.trials)?;
    let (mixing, mixing_error) = if args.no_mixing || !space.group().is_finite() || args.trials == 0 {
        (None, None)
    } else {
        match mixing_report(&cfg, args.trials) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };

    let sink = Sink::new(args.out)?;
    m.outputs = sink.paths(&["sample.json", "histogram.csv"]);
    let doc = SampleDocument {
        manifest: &m,
        emit,
        trials: hist.trials,
        support: hist.support(),
        histogram: hist
            .counts
            .iter()
            .map(|(k, &count)| Bin { value: space.group().format_tuple(k), count })
            .collect(),
        mixing,
        mixing_error,
    };
    let json = json_document(&doc)?;
    if sink.to_stdout() {
        print(&json)?;
    } else {
        sink.write("sample.json", &json)?;
        sink.write("histogram.csv", &csv_with_manifest(&m, &histogram_csv(&space, &hist)?))?;
    }
    Ok(Outcome::Done)
}
