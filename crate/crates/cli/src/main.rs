use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use algdep_core::annihilator::Analyzer;
use algdep_core::aps::{aps_decide, aps_exhaustive, verify_witness, ApsOptions, ApsVerdict};
use algdep_core::hitting::{
    brute_counterexample, certify, exhaustive_search, format_point, parse_points, search, Family,
    HittingInstance,
};
use algdep_core::jacobian::jacobian_rank;
use algdep_core::protocol::gap::{fiber_stats, GapCheck};
use algdep_core::protocol::{
    am_decide, check_am_gap, check_coam_gap, coam_decide, lift_to_qprime, reduce_to_square,
    threshold, GapVerdict, Mode, ProtocolParams, Squared,
};
use algdep_core::rng::{seeded, split_seed};
use algdep_core::{AnnOptions, Error, Instance, Limits, Witness};

mod report;

use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "algdep", version, about = "Algebraic dependence, approximate satisfiability and hitting sets over finite fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base seed; every random stream is split from it by subcommand tag.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Largest number of terms kept while expanding a circuit.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Largest number of annihilator monomials considered.
    #[arg(long, global = true)]
    max_columns: Option<usize>,
    /// Largest number of domain points enumerated.
    #[arg(long, global = true)]
    max_points: Option<u128>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transcendence degree and an independent subset.
    Trdeg { instance: PathBuf },
    /// Whether the inputs are algebraically dependent.
    Depend { instance: PathBuf },
    /// Basis of the annihilators up to a degree bound.
    Annihilator {
        instance: PathBuf,
        /// Overrides the product-of-degrees bound.
        #[arg(long)]
        degree_bound: Option<u64>,
    },
    /// Randomized rank of the Jacobian matrix.
    Jacobian {
        instance: PathBuf,
        #[arg(long, default_value_t = 4)]
        trials: usize,
    },
    /// Exhaustive preimage statistics against the AM gap lemmas.
    AmGap(ProtocolArgs),
    /// Exhaustive image statistics against the coAM gap lemmas.
    CoamGap(ProtocolArgs),
    /// Simulated AM protocol.
    AmDecide(ProtocolArgs),
    /// Simulated coAM protocol.
    CoamDecide(ProtocolArgs),
    /// Approximate satisfiability of the system `f = 0`.
    Aps {
        instance: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Answer with the direct annihilator oracle and report both.
        #[arg(long)]
        oracle: bool,
        /// Sweep every reduction plan over the smallest sample field.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 1 << 16)]
        max_plans: u128,
    },
    /// Checks a Laurent-polynomial point against an instance.
    VerifyWitness { instance: PathBuf, witness: PathBuf },
    /// Hitting-set certification and search.
    #[command(subcommand)]
    Hitting(HittingCommand),
}

#[derive(Args, Debug)]
struct ProtocolArgs {
    instance: PathBuf,
    /// Work over `F_{q^d}`; defaults to the smallest `d` above the threshold.
    #[arg(long)]
    qprime_degree: Option<usize>,
    #[arg(long, default_value_t = 64)]
    rounds: usize,
}

#[derive(Subcommand, Debug)]
enum HittingCommand {
    Certify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    Search {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Sweep all candidates in order instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Read { .. } => return 2,
            CliError::Input { source, .. } => source,
            CliError::Core(e) => e,
        };
        match core {
            Error::ResourceLimit(_) => 3,
            Error::NotFound(_) => 1,
            _ => 2,
        }
    }
}

const HITTING_COUNTEREXAMPLE_BUDGET: u128 = 1 << 16;
const HITTING_EXHAUSTIVE_CAP: u128 = 1 << 20;

struct Ctx {
    seed: u64,
    limits: Limits,
}

impl Ctx {
    fn rng(&self, tag: &str) -> algdep_core::rng::Rng {
        seeded(split_seed(self.seed, tag, 0))
    }

    fn aps(&self, tag: &str, trials: usize, oracle: bool) -> ApsOptions {
        ApsOptions {
            trials,
            seed: split_seed(self.seed, tag, 0),
            oracle,
            limits: self.limits.clone(),
            ..ApsOptions::default()
        }
    }

    fn analyzer<'a>(&self, inst: &'a Instance) -> Result<Analyzer<'a>, CliError> {
        Ok(Analyzer::new(
            inst,
            AnnOptions {
                limits: self.limits.clone(),
                ..AnnOptions::default()
            },
        )?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn input<T>(path: &Path, r: algdep_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read(path)?;
    input(path, Instance::parse(&text))
}

fn load_family(path: &Path) -> Result<Family, CliError> {
    let text = read(path)?;
    input(path, Family::parse(&text))
}

fn names(inst: &Instance, idx: &[usize]) -> String {
    if idx.is_empty() {
        return "-".into();
    }
    idx.iter()
        .map(|&i| inst.circuits[i].name.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let defaults = Limits::default();
    let ctx = Ctx {
        seed: g.seed,
        limits: Limits {
            expand_terms: g.max_terms.unwrap_or(defaults.expand_terms),
            columns: g.max_columns.unwrap_or(defaults.columns),
            enumeration: g.max_points.unwrap_or(defaults.enumeration),
            ..defaults
        },
    };
    match cli.command {
        Command::Trdeg { instance } => {
            let inst = load_instance(&instance)?;
            let t = ctx.analyzer(&inst)?.trdeg()?;
            Ok(Report::new(format!("trdeg: {}", t.k), 0)
                .field("trdeg", t.k)
                .field("inputs", inst.m())
                .field("independent-subset", names(&inst, &t.basis)))
        }
        Command::Depend { instance } => {
            let inst = load_instance(&instance)?;
            let all: Vec<usize> = (0..inst.m()).collect();
            let a = ctx.analyzer(&inst)?;
            if a.is_dependent(&all)? {
                let gen = a.generator()?.compact(&inst.field, "y");
                Ok(Report::new(format!("dependent; annihilator {gen}"), 0)
                    .field("dependent", "yes")
                    .field("annihilator", gen))
            } else {
                Ok(Report::new("independent", 1).field("dependent", "no"))
            }
        }
        Command::Annihilator {
            instance,
            degree_bound,
        } => {
            let inst = load_instance(&instance)?;
            let a = ctx.analyzer(&inst)?;
            let all: Vec<usize> = (0..inst.m()).collect();
            let d = degree_bound.unwrap_or_else(|| a.perron(&all));
            let space = a.annihilator_space(d)?;
            let mut rep = Report::new(
                format!("annihilators up to degree {d}: {}", space.basis.len()),
                0,
            )
            .field("degree-bound", d)
            .field("dimension", space.basis.len());
            for p in &space.basis {
                rep = rep.line(p.compact(&inst.field, "y"));
            }
            Ok(rep)
        }
        Command::Jacobian { instance, trials } => {
            let inst = load_instance(&instance)?;
            let r = jacobian_rank(&inst, &mut ctx.rng("jacobian"), trials.max(1))?;
            let full = r.rank == inst.m();
            Ok(Report::new(
                format!("jacobian rank: {} of {} ({})", r.rank, inst.m(), if full { "full" } else { "deficient" }),
                if full { 0 } else { 1 },
            )
            .field("rank", r.rank)
            .field("inputs", inst.m())
            .field("trials", r.trials)
            .field("applicable", r.applicable)
            .field("reason", r.reason))
        }
        Command::AmGap(args) => gap(&ctx, args, Mode::Am),
        Command::CoamGap(args) => gap(&ctx, args, Mode::CoAm),
        Command::AmDecide(args) => decide(&ctx, args, Mode::Am),
        Command::CoamDecide(args) => decide(&ctx, args, Mode::CoAm),
        Command::Aps {
            instance,
            trials,
            oracle,
            exhaustive,
            max_plans,
        } => {
            let inst = load_instance(&instance)?;
            let v = if exhaustive {
                aps_exhaustive(&inst, &ctx.limits, max_plans)?
            } else {
                aps_decide(&inst, &ctx.aps("aps", trials, oracle))?
            };
            Ok(aps_report(&inst, &v))
        }
        Command::VerifyWitness { instance, witness } => {
            let inst = load_instance(&instance)?;
            let text = read(&witness)?;
            let w = input(&witness, Witness::parse(&text, &inst.field, inst.nvars))?;
            let check = verify_witness(&inst, &w)?;
            let mut rep = Report::new(
                if check.satisfied { "witness: satisfied" } else { "witness: not satisfied" },
                if check.satisfied { 0 } else { 1 },
            )
            .field("satisfied", check.satisfied)
            .field(
                "within-window",
                check.within_window.map_or("n/a".to_string(), |b| b.to_string()),
            );
            for (nc, v) in inst.circuits.iter().zip(&check.values) {
                let value = if v.is_zero() { "0".to_string() } else { v.format(&inst.field) };
                rep = rep.line(format!("{} = {value}", nc.name));
            }
            Ok(rep)
        }
        Command::Hitting(HittingCommand::Certify {
            family,
            candidates,
            r,
            trials,
        }) => {
            let fam = load_family(&family)?;
            let text = read(&candidates)?;
            let points = input(&candidates, parse_points(&text, &fam.field, fam.n()))?;
            let hi = HittingInstance::new(fam, r, points)?;
            let c = certify(&hi, &ctx.aps("hitting", trials, false))?;
            let mut rep = Report::new(
                if c.certified { "hitting set: YES" } else { "hitting set: NO" },
                if c.certified { 0 } else { 1 },
            )
            .field("certified", c.certified)
            .field("points", hi.points.len())
            .field("route", c.verdict.route);
            let q = hi.family.field.order();
            if !c.certified && q.checked_pow(hi.family.params as u32).is_some_and(|t| t <= HITTING_COUNTEREXAMPLE_BUDGET) {
                let ce = brute_counterexample(&hi, HITTING_COUNTEREXAMPLE_BUDGET, ctx.limits.expand_terms)?;
                rep = rep.field(
                    "counterexample",
                    ce.map_or("none".to_string(), |y| format_point(&hi.family.field, &y)),
                );
            }
            Ok(rep)
        }
        Command::Hitting(HittingCommand::Search {
            family,
            h,
            r,
            budget,
            trials,
            exhaustive,
        }) => {
            let fam = load_family(&family)?;
            let opts = ctx.aps("hitting", trials, false);
            let found = if exhaustive {
                exhaustive_search(&fam, r, h, HITTING_EXHAUSTIVE_CAP, &opts)?
            } else {
                search(&fam, r, h, budget, ctx.seed, &opts)?
            };
            let mut rep = Report::new(format!("hitting set of size {}", found.len()), 0).field("size", found.len());
            for p in &found {
                rep = rep.line(format_point(&fam.field, p));
            }
            Ok(rep)
        }
    }
}

fn aps_report(inst: &Instance, v: &ApsVerdict) -> Report {
    let answer = if v.answer { "YES" } else { "NO" };
    let mut rep = Report::new(format!("APS: {answer} (route={})", v.route), if v.answer { 0 } else { 1 })
        .field("answer", answer)
        .field("route", v.route)
        .field("trdeg", v.k.map_or("-".to_string(), |k| k.to_string()))
        .field("inputs", v.m)
        .field("trials", v.trials)
        .field("resamples", v.resamples);
    if let Some(a) = &v.annihilator {
        rep = rep.field("annihilator", a.compact(&inst.field, "y"));
    }
    if let Some(p) = &v.pipeline {
        rep = rep.field(
            "pipeline",
            format!("{} (route={})", if p.answer { "YES" } else { "NO" }, p.route),
        );
    }
    for (i, s) in v.seeds.iter().enumerate() {
        rep = rep.line(format!("trial {}: seed {s:#018x}", i + 1));
    }
    rep
}

/// The square instance over `F_{q'}` with its parameters, or `None` when
/// there are more inputs than variables.
fn prepare(ctx: &Ctx, args: &ProtocolArgs, mode: Mode, tag: &str) -> Result<Option<(Instance, ProtocolParams)>, CliError> {
    let inst = load_instance(&args.instance)?;
    let square = match reduce_to_square(&inst, &mut ctx.rng(&format!("{tag}-square")))? {
        Squared::Dependent => return Ok(None),
        Squared::Square(sq) => sq,
    };
    let degree = match args.qprime_degree {
        Some(d) => d,
        None => {
            let profile = square.degree_profile();
            if let Some(i) = profile.degrees.iter().position(|&d| d == 0) {
                return Err(Error::ConstantCircuit(square.circuits[i].name.clone()).into());
            }
            let bound = threshold(mode, square.nvars, profile.product, profile.max as u128);
            square.field.extension_degree_for(bound + 1)
        }
    };
    let lifted = lift_to_qprime(&square, degree)?;
    let params = ProtocolParams::new(&lifted, args.rounds)?;
    Ok(Some((lifted, params)))
}

fn more_inputs_than_variables() -> Report {
    Report::new("dependent (more inputs than variables)", 0).field("dependent", "yes")
}

fn gap_line(name: &str, c: &GapCheck) -> String {
    format!(
        "{name}: {} (observed {}, bound {}; {})",
        if c.holds { "holds" } else { "fails" },
        c.observed,
        c.bound,
        c.statement
    )
}

fn gap(ctx: &Ctx, args: ProtocolArgs, mode: Mode) -> Result<Report, CliError> {
    let tag = if mode == Mode::Am { "am-gap" } else { "coam-gap" };
    let Some((inst, params)) = prepare(ctx, &args, mode, tag)? else {
        return Ok(more_inputs_than_variables());
    };
    let report = fiber_stats(&inst, ctx.limits.enumeration)?;
    let verdict = match mode {
        Mode::Am => check_am_gap(&report, &params)?,
        Mode::CoAm => check_coam_gap(&report, &params)?,
    };
    let code = if verdict == GapVerdict::ConsistentWithIndependent { 1 } else { 0 };
    let mut rep = Report::new(format!("gap: {verdict}"), code)
        .field("verdict", verdict)
        .field("qprime", params.qprime)
        .field("threshold", params.threshold(mode))
        .field("degree-product", params.d)
        .field("image-size", report.image_size)
        .field("domain-size", report.domain_size);
    let checks = match mode {
        Mode::Am => [("large-preimage", report.large_preimage()), ("small-preimage", report.small_preimage())],
        Mode::CoAm => [("small-image", report.small_image()), ("large-image", report.large_image())],
    };
    for (name, c) in &checks {
        rep = rep.line(gap_line(name, c));
    }
    for (size, count) in &report.histogram {
        rep = rep.line(format!("fiber {size}: {count}"));
    }
    Ok(rep)
}

fn decide(ctx: &Ctx, args: ProtocolArgs, mode: Mode) -> Result<Report, CliError> {
    let tag = if mode == Mode::Am { "am-decide" } else { "coam-decide" };
    let Some((inst, params)) = prepare(ctx, &args, mode, tag)? else {
        return Ok(more_inputs_than_variables());
    };
    let mut rng = ctx.rng(tag);
    let d = match mode {
        Mode::Am => am_decide(&inst, &params, ctx.limits.enumeration, &mut rng)?,
        Mode::CoAm => coam_decide(&inst, &params, ctx.limits.enumeration, &mut rng)?,
    };
    let t = &d.transcript;
    let mut rep = Report::new(
        if d.dependent { "dependent" } else { "independent" },
        if d.dependent { 0 } else { 1 },
    )
    .field("dependent", if d.dependent { "yes" } else { "no" })
    .field("qprime", params.qprime)
    .field("rounds", t.rounds.len())
    .field("accepted", t.accepted)
    .field("threshold", format!("{:.4}", t.threshold))
    .field("claimed", t.claimed);
    for line in t.dump().lines() {
        rep = rep.line(line);
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = match cli.global.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Tsv => Format::Tsv,
    };
    match run(cli) {
        Ok(rep) => {
            print!("{}", rep.render(format));
            ExitCode::from(rep.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
