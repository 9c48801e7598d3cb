//! `xcdof`: command-line front end for the exact linear DoF toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 internal inconsistency.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xcdof::bounds::{self, CheckKind, StrategyMode};
use xcdof::loss::{self, GridMode};
use xcdof::region::{self, CoefficientRule, PlanOutcome, Point};
use xcdof::scheme::{self, SchemeVariant};
use xcdof::table;
use xcdof::transcript::{DecodabilityReport, Transcript};
use xcdof::{bc_sum_dof, case_of, gamma, normalize, scheme_params, sum_dof};
use xcdof::{AntennaConfig, Field, Rational, SchemeParams, XcError, DEFAULT_PRIME};

use output::{json, pairs, show, Format, Table};

#[derive(Parser)]
#[command(
    name = "xcdof",
    version,
    about = "Exact linear DoF toolkit for the two-user MIMO X-channel with delayed CSIT"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add approximate decimals next to exact fractions.
    #[arg(long, global = true)]
    decimal: bool,
    /// Worker threads for trial-level parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Base seed of every random stream.
    #[arg(long, global = true, env = "XCDOF_SEED", default_value_t = 0)]
    seed: u64,
    /// Prime modulus of the simulation field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Write the result to a file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Antennas {
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
}

impl Antennas {
    fn config(&self) -> AntennaConfig {
        AntennaConfig::new(self.m1, self.m2, self.n1, self.n2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Standard,
    Cyclic,
    Verbatim,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-ratios, sum DoF and scheme constants of a configuration.
    Params(Antennas),
    /// Run the three-phase scheme over random channels and check decoding.
    Simulate {
        #[command(flatten)]
        antennas: Antennas,
        /// Save the full transcript as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
    },
    /// Re-check a transcript saved by `simulate --dump`.
    Replay { path: PathBuf },
    /// Monte Carlo check of a converse inequality.
    Verify {
        /// lemma1, lemma2, lemma3, appendix_c or weighted_sum.
        #[arg(value_parser = parse_with::<CheckKind>)]
        kind: CheckKind,
        /// M1 M2 N1 N2.
        #[arg(num_args = 4, value_names = ["M1", "M2", "N1", "N2"], required_unless_present = "bc")]
        antennas: Option<Vec<u32>>,
        /// Broadcast configuration M N1 N2 (transmitter 2 absent).
        #[arg(long, num_args = 3, value_names = ["M", "N1", "N2"], conflicts_with = "antennas")]
        bc: Option<Vec<u32>>,
        /// Slots per random strategy.
        #[arg(long = "T", default_value_t = 6)]
        horizon: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// oblivious_random, delayed_adaptive_random or paper_scheme.
        #[arg(long, value_parser = parse_with::<StrategyMode>)]
        mode: Option<StrategyMode>,
    },
    /// Region of the symmetric configuration (M, M, N, N).
    Region {
        m: u32,
        n: u32,
        /// corrected or literal mixed coefficient.
        #[arg(long, value_parser = parse_with::<CoefficientRule>, default_value = "corrected")]
        rule: CoefficientRule,
        /// Execute the plan of every corner.
        #[arg(long)]
        achieve: bool,
    },
    /// Symmetric closed forms per regime with computed values.
    Table1 {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
    /// Normalized sum-DoF curves of the X-channel and the cooperative BC.
    Fig4 {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
    /// Loss classification grid: symmetric, m1_eq_m2:<M> or n1_eq_n2:<N>.
    Lossmap {
        #[arg(value_parser = parse_with::<GridMode>)]
        mode: GridMode,
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
}

fn parse_with<T: FromStr<Err = XcError>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: XcError| e.to_string())
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<XcError>() {
        Some(
            XcError::InvalidConfig(_) | XcError::InvalidArgument(_) | XcError::UnknownCorner(_),
        ) => 1,
        Some(XcError::CapacityViolation(_) | XcError::BufferDeficit { .. }) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<Status> {
    let g = &cli.global;
    if let Some(n) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    let mut out: Box<dyn Write> = match &g.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let status = match &cli.command {
        Command::Params(a) => cmd_params(g, &mut *out, a.config())?,
        Command::Simulate {
            antennas,
            dump,
            variant,
        } => cmd_simulate(g, &mut *out, antennas.config(), dump.as_ref(), *variant)?,
        Command::Replay { path } => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let t = Transcript::from_json(&text)?;
            summarize(g, &mut *out, &t)?
        }
        Command::Verify {
            kind,
            antennas,
            bc,
            horizon,
            trials,
            mode,
        } => {
            let config = match (antennas, bc) {
                (_, Some(b)) => AntennaConfig::new(b[0], 0, b[1], b[2]),
                (Some(a), None) => normalize(AntennaConfig::new(a[0], a[1], a[2], a[3]))?.0,
                (None, None) => unreachable!("clap requires antennas or --bc"),
            };
            cmd_verify(g, &mut *out, *kind, config, *horizon, *trials, *mode)?
        }
        Command::Region {
            m,
            n,
            rule,
            achieve,
        } => cmd_region(g, &mut *out, *m, *n, *rule, *achieve)?,
        Command::Table1 { max } => cmd_table1(g, &mut *out, *max)?,
        Command::Fig4 { max } => cmd_fig4(g, &mut *out, *max)?,
        Command::Lossmap { mode, max } => cmd_lossmap(g, &mut *out, *mode, *max)?,
    };
    out.flush()?;
    Ok(status)
}

fn field(g: &Global) -> Result<Field> {
    Ok(Field::new(g.prime)?)
}

#[derive(Serialize)]
struct ParamsOutput {
    config: AntennaConfig,
    relabeled: bool,
    case: xcdof::Case,
    gamma: [String; 2],
    sum_dof: String,
    bc_sum_dof: String,
    scheme: Option<SchemeParams>,
    scheme_error: Option<String>,
}

fn cmd_params(g: &Global, out: &mut dyn Write, raw: AntennaConfig) -> Result<Status> {
    let (c, relabeled) = normalize(raw)?;
    c.validate()?;
    let scheme = scheme_params(&c);
    let gm = [gamma(&c, 0), gamma(&c, 1)];
    if g.format == Format::Json {
        json(
            out,
            &ParamsOutput {
                config: c,
                relabeled,
                case: case_of(&c),
                gamma: gm.map(|x| x.to_string()),
                sum_dof: sum_dof(&c).to_string(),
                bc_sum_dof: bc_sum_dof(&c).to_string(),
                scheme_error: scheme.as_ref().err().map(|e| e.to_string()),
                scheme: scheme.ok(),
            },
        )?;
        return Ok(Status::Ok);
    }
    let d = g.decimal;
    let mut rows = vec![("config".to_string(), c.to_string())];
    if relabeled {
        rows.push(("relabeled".into(), format!("transmitters swapped from {raw}")));
    }
    rows.push(("case".into(), format!("{:?}", case_of(&c))));
    rows.push(("gamma".into(), format!("{} {}", show(&gm[0], d), show(&gm[1], d))));
    rows.push(("sum_dof".into(), show(&sum_dof(&c), d)));
    rows.push(("bc_sum_dof".into(), show(&bc_sum_dof(&c), d)));
    match &scheme {
        Ok(p) => {
            for (i, ph) in p.phases.iter().enumerate() {
                rows.push((
                    format!("phase{}", i + 1),
                    format!(
                        "mode={:?} S={} xi={} Lambda={} lambda={} kappa={}",
                        ph.mode, ph.s, ph.xi, ph.lambda_cap, ph.lambda_buf, ph.kappa
                    ),
                ));
            }
            rows.push(("phase3_slots".into(), p.t_phase3.to_string()));
            rows.push(("T".into(), p.t_total.to_string()));
        }
        Err(e) => rows.push(("scheme".into(), format!("unavailable: {e}"))),
    }
    pairs(out, g.format, &rows)?;
    Ok(Status::Ok)
}

fn cmd_simulate(
    g: &Global,
    out: &mut dyn Write,
    raw: AntennaConfig,
    dump: Option<&PathBuf>,
    variant: Variant,
) -> Result<Status> {
    let (c, _) = normalize(raw)?;
    let v = match variant {
        Variant::Standard => SchemeVariant::standard(c),
        Variant::Cyclic => SchemeVariant::cyclic(c),
        Variant::Verbatim => SchemeVariant::verbatim(c),
    };
    let t = scheme::simulate_with(&c, &v, field(g)?, g.seed, 0)?;
    if let Some(p) = dump {
        std::fs::write(p, t.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    summarize(g, out, &t)
}

#[derive(Serialize)]
struct SimulationSummary<'a> {
    config: AntennaConfig,
    label: &'a str,
    seed: u64,
    prime: u64,
    slots: usize,
    symbols: usize,
    dof: String,
    sum_dof: String,
    decodable: bool,
    report: DecodabilityReport,
    resample_events: usize,
}

fn summarize(g: &Global, out: &mut dyn Write, t: &Transcript) -> Result<Status> {
    let report = t.check_decodability();
    let ok = report.all_pass();
    let dof = t.achieved_dof()?;
    match g.format {
        Format::Json => json(
            out,
            &SimulationSummary {
                config: t.config,
                label: &t.label,
                seed: t.seed,
                prime: t.prime,
                slots: t.slots(),
                symbols: t.total_symbols(),
                dof: dof.to_string(),
                sum_dof: sum_dof(&t.config).to_string(),
                decodable: ok,
                report,
                resample_events: t.resample_events,
            },
        )?,
        Format::Csv => {
            let mut tab = Table::new(&["config", "slots", "symbols", "dof", "decodable"]);
            tab.push(vec![
                t.config.to_string(),
                t.slots().to_string(),
                t.total_symbols().to_string(),
                dof.to_string(),
                yes(ok),
            ]);
            let tab = if g.decimal { tab.with_decimals(&["dof"]) } else { tab };
            tab.write_csv(out)?;
        }
        Format::Text => writeln!(
            out,
            "T={} symbols={} dof={} decodable={}",
            t.slots(),
            t.total_symbols(),
            show(&dof, g.decimal),
            yes(ok)
        )?,
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn opt_pair(x: &[Option<Rational>; 2]) -> String {
    x.iter()
        .map(|v| v.map_or_else(|| "-".to_string(), |r| r.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_verify(
    g: &Global,
    out: &mut dyn Write,
    kind: CheckKind,
    config: AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: Option<StrategyMode>,
) -> Result<Status> {
    let mode = mode.unwrap_or(match kind {
        CheckKind::WeightedSum => StrategyMode::PaperScheme,
        _ => StrategyMode::ObliviousRandom,
    });
    let r = bounds::verify(kind, &config, horizon, trials, mode, g.seed, field(g)?)?;
    if g.format == Format::Json {
        json(out, &r)?;
    } else {
        let mut rows = vec![
            ("check".to_string(), kind.to_string()),
            ("config".into(), config.to_string()),
            ("mode".into(), mode.to_string()),
            ("T".into(), horizon.to_string()),
            ("trials".into(), r.trials.to_string()),
            ("skipped".into(), r.skipped.to_string()),
            ("checks".into(), r.checks.to_string()),
            ("violations".into(), r.violations.to_string()),
            ("collisions".into(), r.collisions.to_string()),
        ];
        if kind == CheckKind::AppendixC {
            rows.push(("counterexamples".into(), r.violations.to_string()));
        } else {
            rows.push(("max".into(), opt_pair(&r.max_ratio_observed)));
            rows.push(("bound".into(), opt_pair(&r.bound)));
            rows.push(("tight".into(), r.tightness_hits.to_string()));
        }
        if let Some(v) = &r.first_violation {
            rows.push((
                "first_violation".into(),
                format!("trial {} message {}: {}", v.trial, v.message + 1, v.detail),
            ));
        }
        pairs(out, g.format, &rows)?;
    }
    Ok(if r.passed() { Status::Ok } else { Status::Failed })
}

#[derive(Serialize)]
struct RegionOutput {
    region: region::DoFRegion,
    report: region::RegionReport,
    plans: Option<Vec<PlanOutcome>>,
}

fn tuple(p: &Point) -> String {
    let v: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(", "))
}

fn cmd_region(
    g: &Global,
    out: &mut dyn Write,
    m: u32,
    n: u32,
    rule: CoefficientRule,
    achieve: bool,
) -> Result<Status> {
    let reg = region::region_with_rule(m, n, rule)?;
    let report = region::verify_region_with(m, n, rule)?;
    let plans = if achieve {
        let f = field(g)?;
        let mut v = Vec::new();
        for c in &reg.corners {
            let plan = region::achieve_corner(m, n, &c.point)?;
            v.push(region::run_plan(&plan, f, g.seed)?);
        }
        Some(v)
    } else {
        None
    };
    let plans_ok = plans.as_ref().is_none_or(|v| v.iter().all(PlanOutcome::passed));
    match g.format {
        Format::Json => json(
            out,
            &RegionOutput {
                region: reg,
                report,
                plans,
            },
        )?,
        Format::Csv => {
            let mut tab = Table::new(&["d11", "d12", "d21", "d22", "plan", "feasible", "tight_rank"]);
            for c in &reg.corners {
                let mut row: Vec<String> = c.point.iter().map(|x| x.to_string()).collect();
                row.push(c.plan.name().into());
                row.push(reg.contains(&c.point).to_string());
                row.push(reg.tight_rank(&c.point).to_string());
                tab.push(row);
            }
            let tab = if g.decimal {
                tab.with_decimals(&["d11", "d12", "d21", "d22"])
            } else {
                tab
            };
            tab.write_csv(out)?;
        }
        Format::Text => {
            write!(out, "{}", reg.to_text())?;
            let k = report.distinct_count;
            let rows = vec![
                (
                    "corners".to_string(),
                    format!(
                        "{k} (published {}, listed {})",
                        report.published_count, report.listed_count
                    ),
                ),
                ("feasible".into(), format!("{}/{k}", k - report.infeasible.len())),
                (
                    "extreme".into(),
                    format!(
                        "{}/{k}",
                        k - report.infeasible.len() - report.non_vertices.len()
                    ),
                ),
                ("vertices".into(), report.vertex_count.to_string()),
                ("extra_vertices".into(), report.extra_vertices.len().to_string()),
                (
                    "undominated_extra_vertices".into(),
                    report.uncovered_vertices.len().to_string(),
                ),
                ("max_corner_sum".into(), show(&report.max_corner_sum, g.decimal)),
                ("sum_dof".into(), show(&report.sum_dof, g.decimal)),
                ("corners_verified".into(), yes(report.corners_verified())),
                ("complete".into(), yes(report.passed())),
            ];
            pairs(out, Format::Text, &rows)?;
            for nv in &report.non_vertices {
                writeln!(out, "  not extreme: {} tight rank {}", tuple(&nv.point), nv.tight_rank)?;
            }
            for p in &report.infeasible {
                writeln!(out, "  infeasible: {}", tuple(p))?;
            }
            for p in &report.extra_vertices {
                let tag = if report.uncovered_vertices.contains(p) {
                    "undominated"
                } else {
                    "dominated"
                };
                writeln!(out, "  extra vertex: {} {tag}", tuple(p))?;
            }
            for o in plans.iter().flatten() {
                writeln!(
                    out,
                    "  plan {} {} achieved {} slots={} decodable={}",
                    o.plan.kind.name(),
                    tuple(&o.plan.expected),
                    tuple(&o.achieved),
                    o.slots,
                    yes(o.decodable)
                )?;
            }
        }
    }
    Ok(if plans_ok { Status::Ok } else { Status::Failed })
}

fn cmd_table1(g: &Global, out: &mut dyn Write, max: u32) -> Result<Status> {
    let rows = table::table1(max)?;
    if g.format == Format::Json {
        #[derive(Serialize)]
        struct T1<'a> {
            formulas: &'a [table::RegimeFormulas],
            rows: Vec<table::Table1Row>,
        }
        json(
            out,
            &T1 {
                formulas: &table::TABLE1,
                rows,
            },
        )?;
        return Ok(Status::Ok);
    }
    if g.format == Format::Text {
        for f in &table::TABLE1 {
            writeln!(
                out,
                "{} {}: gamma = {}, symbol ratio = {}, dof = {}",
                f.regime, f.range, f.gamma, f.symbol_ratio, f.dof
            )?;
        }
    }
    let mut tab = Table::new(&[
        "m",
        "n",
        "regime",
        "gamma",
        "symbol_ratio",
        "sum_dof",
        "closed_gamma",
        "closed_ratio",
        "closed_dof",
        "match",
    ]);
    for r in &rows {
        tab.push(vec![
            r.m.to_string(),
            r.n.to_string(),
            r.regime.to_string(),
            r.gamma.to_string(),
            r.symbol_ratio.to_string(),
            r.sum_dof.to_string(),
            r.closed_gamma.to_string(),
            r.closed_ratio.to_string(),
            r.closed_dof.to_string(),
            r.matches().to_string(),
        ]);
    }
    let tab = if g.decimal {
        tab.with_decimals(&["gamma", "symbol_ratio", "sum_dof"])
    } else {
        tab
    };
    tab.write_csv(out)?;
    Ok(Status::Ok)
}

fn cmd_fig4(g: &Global, out: &mut dyn Write, max: u32) -> Result<Status> {
    let rows = table::fig4(max)?;
    if g.format == Format::Json {
        json(out, &rows)?;
        return Ok(Status::Ok);
    }
    let mut tab = Table::new(&["ratio", "xc_normalized", "bc_normalized"]);
    for r in &rows {
        tab.push(vec![r.ratio.to_string(), r.xc.to_string(), r.bc.to_string()]);
    }
    let tab = if g.decimal {
        tab.with_decimals(&["ratio", "xc_normalized", "bc_normalized"])
    } else {
        tab
    };
    tab.write_csv(out)?;
    Ok(Status::Ok)
}

fn cmd_lossmap(g: &Global, out: &mut dyn Write, mode: GridMode, max: u32) -> Result<Status> {
    let rows = loss::loss_grid(mode, max)?;
    if g.format == Format::Json {
        json(out, &rows)?;
        return Ok(Status::Ok);
    }
    if !g.decimal {
        loss::write_grid_csv(&rows, out)?;
        return Ok(Status::Ok);
    }
    let mut tab = Table::new(&[
        "x",
        "y",
        "m1",
        "m2",
        "n1",
        "n2",
        "loss",
        "regime_i1",
        "regime_i2",
        "sum_dof",
        "bc_sum_dof",
    ]);
    let name = |r: Option<loss::LossRegime>| r.map(|x| x.to_string()).unwrap_or_default();
    for r in &rows {
        tab.push(vec![
            r.x.clone(),
            r.y.clone().unwrap_or_default(),
            r.m1.to_string(),
            r.m2.to_string(),
            r.n1.to_string(),
            r.n2.to_string(),
            r.loss.to_string(),
            name(r.regime_i1),
            name(r.regime_i2),
            r.sum_dof.clone(),
            r.bc_sum_dof.clone(),
        ]);
    }
    tab.with_decimals(&["x", "y", "sum_dof", "bc_sum_dof"])
        .write_csv(out)?;
    Ok(Status::Ok)
}
