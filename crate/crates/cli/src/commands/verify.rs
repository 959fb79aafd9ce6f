use clap::{Args, Subcommand};
use prgraph::constructions::{
    conjugation_fibers, quadrant_tree_check, reduction_report, verify_center_quotient_cheeger,
    verify_conjugation_lipschitz, verify_embedding, verify_local_isomorphism_on, verify_return_domination,
    Gamma2Embedding, LiftMap,
};
use prgraph::{parse_group_spec, PrGraph, Quotient};
use serde::Serialize;
use serde_json::Value;

use super::{record_space, resolve};
use crate::error::{CliError, CliResult};
use crate::manifest::{json_document, print, RunManifest, Sink};
use crate::{Outcome, SpaceArgs};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: Check,
    /// Output directory for verify.json; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

/// A group `G`, a quotient `G/H` given by `--H`, and a tuple length.
#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long = "G")]
    pub big: String,
    /// Quotient spec: Zmod:m, Zmod:m1x..xmk, center or trivial.
    #[arg(long = "H")]
    pub kernel: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Tuple in `G`; defaults to the standard generating tuple.
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Distance moved by one generator step of the conjugation map.
    Lipschitz {
        #[command(flatten)]
        space: SpaceArgs,
        /// Word-length radius of the sampled group elements.
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Fibers of the conjugation map are cosets of the center.
    Fibers {
        #[command(flatten)]
        space: SpaceArgs,
        /// Elements to group by image (`;`-separated); all elements by default.
        #[arg(long)]
        sample: Option<String>,
    },
    /// The projection to the quotient is a local isomorphism on a ball.
    LocalIso {
        #[command(flatten)]
        lift: LiftArgs,
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Return probabilities never decrease under the projection.
    Domination {
        #[command(flatten)]
        lift: LiftArgs,
        #[arg(long, default_value_t = 10)]
        kmax: u32,
    },
    /// The positive quadrant of Γ₂(ℤ) is a binary tree.
    QuadrantTree {
        #[arg(long = "N", default_value_t = 100)]
        bound: i64,
    },
    /// Cheeger constant of a Cayley graph against that of its central quotient.
    CenterCheeger {
        #[arg(long)]
        group: String,
        /// Generators (`;`-separated); standard generators by default.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Reduce a redundant tuple to one ending in two kernel entries.
    Reduce {
        #[command(flatten)]
        lift: LiftArgs,
    },
    /// Embedding of Γ₂(ℤᵏ) into Γₙ₊₂(G) through commuting elements.
    Embed {
        #[arg(long)]
        group: String,
        /// Fixed leading entries (`;`-separated).
        #[arg(long)]
        prefix: String,
        /// Pairwise commuting elements spanning the lattice (`;`-separated).
        #[arg(long)]
        basis: String,
        /// Root in Γ₂(ℤᵏ); the standard one by default.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

impl Check {
    fn name(&self) -> &'static str {
        match self {
            Check::Lipschitz { .. } => "lipschitz",
            Check::Fibers { .. } => "fibers",
            Check::LocalIso { .. } => "local-iso",
            Check::Domination { .. } => "domination",
            Check::QuadrantTree { .. } => "quadrant-tree",
            Check::CenterCheeger { .. } => "center-cheeger",
            Check::Reduce { .. } => "reduce",
            Check::Embed { .. } => "embed",
        }
    }
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    manifest: &'a RunManifest,
    check: &'a str,
    passed: bool,
    report: Value,
}

fn lift_map(args: &LiftArgs, m: &mut RunManifest) -> CliResult<(LiftMap, prgraph::GenTuple)> {
    let g = parse_group_spec(&args.big)?;
    let lift = LiftMap::new(Quotient::by_spec(&g, &args.kernel)?, args.n)?;
    let root = match &args.root {
        Some(t) => lift.source().parse_vertex(t)?,
        None => lift.source().default_root()?,
    };
    record_space(m, lift.source(), &root);
    m.cap = Some(args.cap);
    Ok((lift, root))
}

fn report<T: Serialize>(r: &T, passed: bool) -> CliResult<(Value, bool)> {
    Ok((serde_json::to_value(r)?, passed))
}

pub fn run(args: VerifyArgs, argv: &[String]) -> CliResult<Outcome> {
    let check = args.check.name();
    let mut m = RunManifest::new("verify", argv);
    let (report, passed) = match &args.check {
        Check::Lipschitz { space, radius } => {
            let (sp, root) = resolve(space)?;
            record_space(&mut m, &sp, &root);
            m.radius = Some(*radius);
            let r = verify_conjugation_lipschitz(&sp, &root, *radius)?;
            report(&r, r.passed)?
        }
        Check::Fibers { space, sample } => {
            let (sp, root) = resolve(space)?;
            record_space(&mut m, &sp, &root);
            let elems = match sample {
                Some(text) => sp.group().parse_tuple(text)?,
                None => sp
                    .group()
                    .elements()
                    .ok_or_else(|| CliError::Usage("fibers of an infinite group need --sample".into()))?,
            };
            let r = conjugation_fibers(&sp, &root, &elems)?;
            report(&r, r.passed)?
        }
        Check::LocalIso { lift, radius } => {
            let (map, root) = lift_map(lift, &mut m)?;
            m.radius = Some(*radius);
            let ball = map.source().explore_ball(&root, *radius, lift.cap)?;
            if ball.truncated() {
                return Err(prgraph::Error::CapExceeded { cap: lift.cap }.into());
            }
            let r = verify_local_isomorphism_on(&map, ball.vertices())?;
            report(&r, r.passed)?
        }
        Check::Domination { lift, kmax } => {
            let (map, root) = lift_map(lift, &mut m)?;
            m.k_max = Some(*kmax);
            let r = verify_return_domination(&map, &root, *kmax, lift.cap)?;
            report(&r, r.all_hold)?
        }
        Check::QuadrantTree { bound } => {
            let r = quadrant_tree_check(*bound)?;
            report(&r, r.passed)?
        }
        Check::CenterCheeger { group, gens } => {
            let g = parse_group_spec(group)?;
            let gens = match gens {
                Some(text) => g.parse_tuple(text)?,
                None => g.standard_generators(),
            };
            m.group = Some(g.describe());
            m.root = Some(g.format_tuple(&gens));
            let r = verify_center_quotient_cheeger(&g, &gens)?;
            report(&r, r.passed)?
        }
        Check::Reduce { lift } => {
            let g = parse_group_spec(&lift.big)?;
            let q = Quotient::by_spec(&g, &lift.kernel)?;
            let space = PrGraph::new(g, lift.n)?;
            let t = match &lift.root {
                Some(text) => space.parse_vertex(text)?,
                None => space.default_root()?,
            };
            record_space(&mut m, &space, &t);
            m.cap = Some(lift.cap);
            let r = reduction_report(&q, &t, lift.cap)?;
            report(&r, r.passed)?
        }
        Check::Embed { group, prefix, basis, root, radius, cap } => {
            let g = parse_group_spec(group)?;
            let emb = Gamma2Embedding::new(&g, &g.parse_tuple(prefix)?, &g.parse_tuple(basis)?)?;
            let root = match root {
                Some(text) => emb.lattice().parse_vertex(text)?,
                None => emb.lattice().default_root()?,
            };
            record_space(&mut m, emb.target(), &emb.map_vertex(&root)?);
            m.radius = Some(*radius);
            m.cap = Some(*cap);
            let r = verify_embedding(&emb, &root, *radius, *cap)?;
            report(&r, r.passed)?
        }
    };

    let sink = Sink::new(args.out)?;
    m.outputs = sink.paths(&["verify.json"]);
    let json = json_document(&VerifyDocument { manifest: &m, check, passed, report })?;
    if sink.to_stdout() {
        print(&json)?;
    } else {
        sink.write("verify.json", &json)?;
    }
    eprintln!("prgraph: {check}: {}", if passed { "pass" } else { "FAIL" });
    Ok(if passed { Outcome::Done } else { Outcome::Failed })
}
