//! The `eawg` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! configuration errors. Output goes to stdout unless `--out` is given.

pub mod render;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::parallel::Execution;
use crate::presentation::{collect, evaluate, inject_fault, present, render_word, Group};
use crate::rootsystem::{cartan_matrix, CartanData, CartanType, ExtendedRootSystem};
use crate::semilattice::{standard_semilattice, Semilattice, SupportClass};
use crate::suites::{self, CheckResult, SuiteOptions};
use crate::weylgroup::WeylContext;
use render::{combination, semilattice_table, standard_rows, SemilatticeRow};

#[derive(Debug, Parser)]
#[command(name = "eawg", version, about = "Simply laced extended affine Weyl groups: realizations, normal forms, presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the document to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List supporting classes with their n(r,s) values.
    Semilattices(SemilatticesArgs),
    /// Emit the presentation of H or W.
    Present(PresentArgs),
    /// Check relators and run the property suites.
    Verify(VerifyArgs),
    /// Normal form of a word over x, y, z generators.
    NormalForm(NormalFormArgs),
    /// Enumerate roots in a window.
    Roots(RootsArgs),
}

#[derive(Debug, Args)]
pub struct SemilatticesArgs {
    /// Restrict the table to this nullity (at most 3 without --class).
    #[arg(long)]
    pub nullity: Option<usize>,
    /// An explicit class such as "{},{1},{2}".
    #[arg(long, requires = "nullity")]
    pub class: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Cartan type letter: A, D or E.
    #[arg(long = "type")]
    pub kind: Option<CartanType>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub nullity: Option<usize>,
    /// Index of a tabulated semilattice (nullity at most 3).
    #[arg(long, conflicts_with = "class")]
    pub index: Option<usize>,
    /// Explicit supporting class such as "{},{1},{2}".
    #[arg(long)]
    pub class: Option<String>,
}

impl ConfigArgs {
    fn is_empty(&self) -> bool {
        self.kind.is_none() && self.rank.is_none() && self.nullity.is_none() && self.index.is_none() && self.class.is_none()
    }

    /// Defaults: type A, rank 1, nullity 1, the full lattice.
    pub fn resolve(&self) -> Result<(CartanData, Semilattice), CliError> {
        let kind = self.kind.unwrap_or(CartanType::A);
        let rank = self.rank.unwrap_or(match kind {
            CartanType::A => 1,
            CartanType::D => 4,
            CartanType::E => 6,
        });
        let cartan = cartan_matrix(kind, rank).map_err(usage)?;
        let nu = self.nullity.unwrap_or(1);
        let s = match (&self.index, &self.class) {
            (Some(m), _) => standard_semilattice(nu, *m).map_err(usage)?,
            (None, Some(text)) => Semilattice::new(SupportClass::parse(nu, text).map_err(usage)?).map_err(usage)?,
            (None, None) => Semilattice::new(SupportClass::full(nu).map_err(usage)?).map_err(usage)?,
        };
        Ok((cartan, s))
    }

    fn context(&self) -> Result<WeylContext, CliError> {
        let (c, s) = self.resolve()?;
        WeylContext::new(&c, s).map_err(usage)
    }
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, ignore_case = true, default_value_t = GroupArg::W)]
    pub group: GroupArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    H,
    W,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::H => Group::H,
            GroupArg::W => Group::W,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Identities,
    Presentation,
    RoundTrip,
    Center,
    Structural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Perturb one relator of each presentation.
    Relator,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A single configuration; without any of these flags every standard
    /// configuration with nullity at most 3 is checked.
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Restrict the presentation suite to one group.
    #[arg(long, value_enum, ignore_case = true)]
    pub group: Option<GroupArg>,
    /// Suites to run (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per property.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
    /// Run every check on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct NormalFormArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Word such as "y1_1 * x1"; "1" is the empty word.
    #[arg(long)]
    pub word: String,
    #[arg(long, value_enum, ignore_case = true, default_value_t = GroupArg::W)]
    pub group: GroupArg,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Window half-width for the radical coordinates.
    #[arg(long, default_value_t = 1)]
    pub bound: i64,
    #[arg(long)]
    pub check_axioms: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Output document and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub document: String,
    pub status: i32,
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Style {
        Style {
            color: std::env::var("EAWG_COLOR").is_ok_and(|v| v == "1"),
        }
    }

    fn verdict(&self, pass: bool) -> String {
        match (pass, self.color) {
            (true, true) => "\x1b[32mPASS\x1b[0m".into(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
            (true, false) => "PASS".into(),
            (false, false) => "FAIL".into(),
        }
    }
}

fn to_json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn cmd_semilattices(args: &SemilatticesArgs, format: Format) -> Result<Outcome, CliError> {
    let (rows, pair_nu) = match (&args.class, args.nullity) {
        (Some(text), Some(nu)) => {
            let class = SupportClass::parse(nu, text).map_err(usage)?;
            (vec![SemilatticeRow::new(Semilattice::new(class).map_err(usage)?)], nu)
        }
        (_, Some(nu)) if nu > 3 => {
            return Err(CliError::Usage(format!("no tabulated semilattices for nullity {nu}; pass --class")));
        }
        (_, nu) => (standard_rows(nu), 3),
    };
    let document = match format {
        Format::Text => semilattice_table(&rows, pair_nu),
        Format::Json => to_json_text(&json!({ "semilattices": rows.iter().map(SemilatticeRow::to_json).collect::<Vec<_>>() })),
    };
    Ok(Outcome { document, status: 0 })
}

fn cmd_present(args: &PresentArgs, format: Format) -> Result<Outcome, CliError> {
    let (c, s) = args.config.resolve()?;
    let p = present(args.group.into(), &c, &s).map_err(usage)?;
    let document = match format {
        Format::Text => p.to_text(),
        Format::Json => to_json_text(&p.to_json()),
    };
    Ok(Outcome { document, status: 0 })
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Outcome, CliError> {
    let configs: Vec<(CartanData, Semilattice)> = if args.config.is_empty() {
        suites::standard_configurations(0..=3)
    } else {
        vec![args.config.resolve()?]
    };
    let chosen: BTreeSet<Suite> = if args.suite.is_empty() {
        Suite::value_variants().iter().copied().collect()
    } else {
        args.suite.iter().copied().collect()
    };
    let groups: Vec<Group> = match args.group {
        Some(g) => vec![g.into()],
        None => vec![Group::H, Group::W],
    };
    let opts = SuiteOptions {
        samples: args.samples,
        seed: args.seed,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
    };

    let mut checks: Vec<CheckResult> = Vec::new();
    let mut faults: Vec<String> = Vec::new();
    if chosen.contains(&Suite::Identities) {
        let mut seen = BTreeSet::new();
        for (c, s) in &configs {
            if s.nullity() > 0 && seen.insert((c.name(), s.nullity())) {
                checks.extend(suites::identity_suite(c, s.nullity(), &opts));
            }
        }
    }
    for (c, s) in &configs {
        let ctx = WeylContext::new(c, s.clone()).map_err(usage)?;
        if chosen.contains(&Suite::Presentation) {
            for &g in &groups {
                let p = present(g, c, s).map_err(usage)?;
                let p = match args.inject_fault {
                    Some(Fault::Relator) => {
                        let (bad, eq) = inject_fault(&p);
                        faults.push(format!("{}: {eq}", p.title()));
                        bad
                    }
                    None => p,
                };
                checks.push(suites::soundness(&p, &ctx));
                checks.push(suites::faithfulness(&p, &ctx, &opts));
            }
        }
        if chosen.contains(&Suite::RoundTrip) {
            checks.extend(suites::round_trip_suite(&ctx, &opts));
        }
        if chosen.contains(&Suite::Center) {
            checks.extend(suites::center_suite(&ctx, &opts));
        }
        if chosen.contains(&Suite::Structural) {
            checks.extend(suites::structural_suite(&ctx, &opts));
        }
    }

    let failed: Vec<&CheckResult> = checks.iter().filter(|c| !c.pass()).collect();
    let pass = failed.is_empty();
    let document = match format {
        Format::Text => {
            let style = Style::from_env();
            let mut out = String::new();
            for f in &faults {
                out.push_str(&format!("injected fault: {f}\n"));
            }
            for c in &checks {
                let line = c.line();
                out.push_str(&style.verdict(c.pass()));
                out.push_str(&line[4..]);
                out.push('\n');
            }
            out.push_str(&format!(
                "{} checks, {} failed (seed {}, samples {})\n",
                checks.len(),
                failed.len(),
                args.seed,
                args.samples
            ));
            for c in &failed {
                out.push_str(&format!(
                    "failed: {} [{}]: {}\n",
                    c.property,
                    c.config,
                    c.first_failure.as_deref().unwrap_or("")
                ));
            }
            out
        }
        Format::Json => to_json_text(&json!({
            "seed": args.seed,
            "samples": args.samples,
            "injected_faults": faults,
            "checks": checks.iter().map(|c| {
                let mut v = serde_json::to_value(c).expect("plain data");
                v["pass"] = json!(c.pass());
                v
            }).collect::<Vec<_>>(),
            "failed": failed.len(),
            "pass": pass,
        })),
    };
    Ok(Outcome {
        document,
        status: if pass { 0 } else { 1 },
    })
}

fn cmd_normal_form(args: &NormalFormArgs, format: Format) -> Result<Outcome, CliError> {
    let ctx = args.config.context()?;
    let p = present(args.group.into(), ctx.cartan(), ctx.semilattice()).map_err(usage)?;
    let word = p.parse(&args.word).map_err(usage)?;
    let g = evaluate(&word, &ctx).map_err(usage)?;
    let nf = ctx.w_normal_form(&g).map_err(usage)?;
    let verified = nf.in_w() && ctx.reconstruct(&nf).map_err(usage)? == g;
    let collected = render_word(&collect(&word, &p).map_err(usage)?);
    let finite = if nf.finite_part.is_empty() {
        "1".to_string()
    } else {
        nf.finite_part.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(" * ")
    };
    let document = match format {
        Format::Text => {
            format!(
                "word: {}\nfinite part: {finite}\nn: {}\ncentral: {}\nz: {}\ncollected: {collected}\nverified: {verified}\n",
                render_word(&word),
                compact(&nf.n),
                compact(&nf.central),
                nf.z.as_ref().map_or("outside W".to_string(), compact),
            )
        }
        Format::Json => {
            let mut v = nf.to_json();
            v["word"] = json!(render_word(&word));
            v["finite_word"] = json!(finite);
            v["collected"] = json!(collected);
            v["verified"] = json!(verified);
            to_json_text(&v)
        }
    };
    Ok(Outcome {
        document,
        status: if verified { 0 } else { 1 },
    })
}

fn compact<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data")
}

fn cmd_roots(args: &RootsArgs, format: Format) -> Result<Outcome, CliError> {
    if args.bound < 0 {
        return Err(CliError::Usage("--bound must be nonnegative".into()));
    }
    let (c, s) = args.config.resolve()?;
    let sys = ExtendedRootSystem::new(&c, s.clone()).map_err(usage)?;
    let roots = sys.enumerate_bounded(args.bound, Execution::Parallel);
    let report = args.check_axioms.then(|| sys.check_axioms(args.bound, Execution::Parallel));
    let pass = report.as_ref().is_none_or(|r| r.all_pass());
    let document = match format {
        Format::Text => {
            let style = Style::from_env();
            let mut out: String = roots.iter().map(|r| combination(r, c.rank()) + "\n").collect();
            if let Some(rep) = &report {
                out.push_str(&format!("axioms (bound {}, {} roots in window)\n", rep.bound, rep.window_size));
                for o in &rep.outcomes {
                    let ok = o.status == crate::rootsystem::AxiomStatus::Pass;
                    out.push_str(&format!(
                        "{} {} checked {} skipped {}{}\n",
                        o.axiom,
                        style.verdict(ok),
                        o.checked,
                        o.skipped,
                        o.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
                    ));
                }
            }
            out
        }
        Format::Json => to_json_text(&json!({
            "type": c.kind(),
            "rank": c.rank(),
            "nullity": s.nullity(),
            "index": s.index(),
            "class": s.support().to_string(),
            "bound": args.bound,
            "roots": roots,
            "axioms": report,
        })),
    };
    Ok(Outcome {
        document,
        status: if pass { 0 } else { 1 },
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Semilattices(a) => cmd_semilattices(a, cli.format),
        Command::Present(a) => cmd_present(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::NormalForm(a) => cmd_normal_form(a, cli.format),
        Command::Roots(a) => cmd_roots(a, cli.format),
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.document),
        None => std::io::stdout().lock().write_all(outcome.document.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    outcome.status
}
