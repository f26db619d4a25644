use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use spinor_casimir::casimir::{
    invariant_i, lemma1_verify, split_casimir_from_gammas, verify_recurrences, SectorLabel, Sign,
};
use spinor_casimir::check::{CheckRecord, Status};
use spinor_casimir::clifford::build_gamma;
use spinor_casimir::colour::{colour_factor, Closure, LadderSpec, DEFAULT_MAX_RUNGS};
use spinor_casimir::linalg::MatrixDump;
use spinor_casimir::oracles::{c2_closed_form, c2_from_weight, rep_dimension, RepKind};
use spinor_casimir::report::{
    emit_tables, run_suite, OutputFormat, Suite, SuiteConfig, FULL_YBE_MAX_RANK, MAX_RANK,
    MIN_RANK, SECTOR_YBE_MAX_RANK,
};
use spinor_casimir::scalar::{format_rational, parse_rational, Rational};
use spinor_casimir::spectra::{build_rho_projectors, build_sector_projectors, ProjectorFamily};
use spinor_casimir::ybe::{
    sector_r_matrix, sector_ybe_sweep, ybe_grid, Form, Normalization, ShanWitFamily, YbeSweep,
};
use spinor_casimir::Error;

const OUT_DIR_ENV: &str = "SPINCAS_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "spincas",
    version,
    about = "Exact split Casimir, projector, colour-factor and R-matrix checks for so(2r) spinors"
)]
struct Cli {
    /// Rank r of so(2r).
    #[arg(long, global = true)]
    r: Option<usize>,
    /// json or csv.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Output file (or directory for `report --tables`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the gamma matrices and verify the Clifford relations.
    Gamma(GammaArgs),
    /// Casimir eigenvalue of one representation by weights and closed form.
    Oracle(OracleArgs),
    /// Invariants I_k and their relations.
    Invariants(InvariantsArgs),
    /// Eigenvalues and multiplicities of a sector or of ρ⊗ρ.
    Spectra(SpectraArgs),
    /// Ladder colour factor.
    Colour(ColourArgs),
    /// Yang–Baxter checks.
    Ybe(YbeArgs),
    /// Run verification suites over a rank range.
    Report(ReportArgs),
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    verify: bool,
    /// Emit Γ_1..Γ_2r and Γ_{2r+1} in the matrix dump format.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// T_k, T_r_plusminus, Delta_pm or T_f.
    #[arg(long)]
    rep: String,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    verify_recurrences: bool,
    #[arg(long)]
    verify_lemma1: bool,
}

#[derive(Args)]
struct SpectraArgs {
    /// pp, pm, mp, mm or rho.
    #[arg(long, default_value = "rho")]
    sector: String,
}

#[derive(Args)]
struct ColourArgs {
    #[arg(long = "L")]
    rungs: u32,
    #[arg(long, default_value = "pp")]
    sector: String,
    /// full, partial or open.
    #[arg(long, default_value = "full")]
    closure: String,
    #[arg(long, default_value_t = DEFAULT_MAX_RUNGS)]
    max_rungs: u32,
}

#[derive(Args)]
struct YbeArgs {
    /// sector or full.
    #[arg(long, default_value = "sector")]
    mode: String,
    /// plain or braid.
    #[arg(long, default_value = "braid")]
    form: String,
    /// Chirality of the sector: + or −.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    eps: String,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Sweep the deterministic (u, v) grid.
    #[arg(long)]
    grid: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    r_min: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
    /// Comma-separated subset of gamma,invariants,spectra,colour,ybe.
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    /// Also write spectra_r{r}.csv tables for each rank.
    #[arg(long)]
    tables: bool,
}

/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<bool, Failure>;

struct Ctx {
    r: Option<usize>,
    format: OutputFormat,
    out: Option<PathBuf>,
}

impl Ctx {
    fn rank(&self) -> Result<usize, Failure> {
        let r = self
            .r
            .ok_or_else(|| Failure::Usage("--r is required".into()))?;
        if !(MIN_RANK..=MAX_RANK).contains(&r) {
            return Err(Failure::Usage(format!(
                "--r must lie in [{MIN_RANK}, {MAX_RANK}]"
            )));
        }
        Ok(r)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
        self.emit(&(text + "\n"))
    }

    fn require_json(&self, what: &str) -> Result<(), Failure> {
        if self.format == OutputFormat::Csv {
            return Err(Failure::Usage(format!("{what} has no CSV output")));
        }
        Ok(())
    }
}

fn checks_json(records: &[CheckRecord]) -> serde_json::Value {
    let failed = records.iter().filter(|c| c.status == Status::Fail).count();
    json!({ "checks": records.len(), "failed": failed, "records": records })
}

fn cmd_gamma(ctx: &Ctx, args: &GammaArgs) -> CliResult {
    let r = ctx.rank()?;
    let rep = build_gamma(r)?;
    if args.dump {
        ctx.require_json("gamma --dump")?;
        let mut dumps: Vec<MatrixDump> = rep.gammas().iter().map(|g| g.dump()).collect();
        dumps.push(rep.chirality().dump());
        ctx.emit_json(&json!({ "r": r, "gammas": dumps }))?;
        return Ok(true);
    }
    let records = rep.integrity_checks();
    let ok = records.iter().all(CheckRecord::passed);
    if args.verify || ctx.out.is_some() {
        ctx.require_json("gamma")?;
        ctx.emit_json(&json!({ "r": r, "dim": rep.dim(), "verification": checks_json(&records) }))?;
    } else {
        let failed = records.iter().filter(|c| !c.passed()).count();
        ctx.emit(&format!(
            "r = {r}: {} generators of dimension {}; {} checks, {failed} failed\n",
            rep.n(),
            rep.dim(),
            records.len()
        ))?;
    }
    Ok(ok)
}

fn cmd_oracle(ctx: &Ctx, args: &OracleArgs) -> CliResult {
    ctx.require_json("oracle")?;
    let r = ctx.rank()?;
    let kind = RepKind::parse(&args.rep, args.k)?;
    let weight = kind.highest_weight(r)?;
    let by_weight = c2_from_weight(&weight, 2 * r)?;
    let closed = c2_closed_form(kind, r)?;
    ctx.emit_json(&json!({
        "r": r,
        "rep": kind.to_string(),
        "dimension": rep_dimension(kind, r)?.to_string(),
        "c2_weight": format_rational(&by_weight),
        "c2_closed_form": format_rational(&closed),
        "agree": by_weight == closed,
    }))?;
    Ok(by_weight == closed)
}

fn cmd_invariants(ctx: &Ctx, args: &InvariantsArgs) -> CliResult {
    ctx.require_json("invariants")?;
    let r = ctx.rank()?;
    let rep = build_gamma(r)?;
    let ks: Vec<usize> = match args.k {
        Some(k) if k > 2 * r => {
            return Err(Failure::Usage(format!("k = {k} exceeds 2r = {}", 2 * r)))
        }
        Some(k) => vec![k],
        None => (0..=2 * r).collect(),
    };
    let summary: Vec<_> = ks
        .iter()
        .map(|&k| {
            let inv = invariant_i(&rep, k);
            json!({ "k": k, "nnz": inv.matrix.nnz(), "trace": inv.matrix.trace().to_string() })
        })
        .collect();
    let mut records = Vec::new();
    if args.verify_recurrences {
        records.extend(verify_recurrences(&rep));
    }
    if args.verify_lemma1 {
        records.extend(lemma1_verify(&rep));
    }
    let ok = records.iter().all(CheckRecord::passed);
    ctx.emit_json(
        &json!({ "r": r, "invariants": summary, "verification": checks_json(&records) }),
    )?;
    Ok(ok)
}

fn family_for(r: usize, sector: &str) -> Result<ProjectorFamily, Failure> {
    let rep = build_gamma(r)?;
    let c = split_casimir_from_gammas(&rep);
    Ok(if sector == "rho" {
        build_rho_projectors(&c)?
    } else {
        build_sector_projectors(&rep, &c, sector.parse()?)?
    })
}

fn cmd_spectra(ctx: &Ctx, args: &SpectraArgs) -> CliResult {
    let r = ctx.rank()?;
    let family = family_for(r, &args.sector)?;
    let rows: Vec<_> = family
        .projectors
        .iter()
        .zip(&family.spectrum.entries)
        .map(|((k, c, p), e)| {
            let expected = family.expected_trace(*k);
            let trace_ok = p.trace()
                == spinor_casimir::ExactScalar::real(Rational::from_integer(expected.clone()));
            (
                *k,
                c.clone(),
                e.multiplicity,
                trace_ok && e.multiplicity.to_string() == expected.to_string(),
            )
        })
        .collect();
    let ok = rows.iter().all(|r| r.3);
    match ctx.format {
        OutputFormat::Csv => {
            let mut text = String::from("sector,k,eigenvalue,multiplicity\n");
            for (k, c, m, _) in &rows {
                text.push_str(&format!("{},{k},{c},{m}\n", args.sector));
            }
            ctx.emit(&text)?;
        }
        OutputFormat::Json => {
            let entries: Vec<_> = rows
                .iter()
                .map(|(k, c, m, t)| json!({ "k": k, "eigenvalue": format_rational(c), "multiplicity": m, "trace_check": t, "projector_rank": m }))
                .collect();
            ctx.emit_json(&json!({ "r": r, "sector": args.sector, "entries": entries }))?;
        }
    }
    Ok(ok)
}

fn cmd_colour(ctx: &Ctx, args: &ColourArgs) -> CliResult {
    ctx.require_json("colour")?;
    let r = ctx.rank()?;
    let sector: SectorLabel = args.sector.parse()?;
    let closure: Closure = args.closure.parse()?;
    let spec = LadderSpec {
        r,
        rungs: args.rungs,
        sector,
        closure,
    };
    spec.validate(args.max_rungs)?;
    let family = family_for(r, &args.sector)?;
    let report = colour_factor(&family, &spec)?;
    ctx.emit_json(&report)?;
    Ok(report.cross_check)
}

fn cmd_ybe(ctx: &Ctx, args: &YbeArgs) -> CliResult {
    ctx.require_json("ybe")?;
    let r = ctx.rank()?;
    let form: Form = args.form.parse()?;
    let points: Vec<(Rational, Rational)> = if args.grid {
        ybe_grid(r)
    } else {
        match (&args.u, &args.v) {
            (Some(u), Some(v)) => vec![(parse_rational(u)?, parse_rational(v)?)],
            _ => return Err(Failure::Usage("give --u and --v, or --grid".into())),
        }
    };
    let rep = build_gamma(r)?;
    let sweep: YbeSweep = match args.mode.as_str() {
        "sector" => {
            if args.grid && r > SECTOR_YBE_MAX_RANK {
                return Err(Failure::Usage(format!(
                    "sector grid sweeps are capped at r ≤ {SECTOR_YBE_MAX_RANK}"
                )));
            }
            let eps = match args.eps.as_str() {
                "+" | "p" | "plus" => Sign::Plus,
                "-" | "−" | "m" | "minus" => Sign::Minus,
                other => return Err(Failure::Usage(format!("unknown chirality {other}"))),
            };
            let c = split_casimir_from_gammas(&rep);
            sector_ybe_sweep(&sector_r_matrix(&rep, &c, eps, form)?, &points)
        }
        "full" => {
            if form != Form::Braid {
                return Err(Failure::Usage(
                    "the full R̂(u) is defined in braid form".into(),
                ));
            }
            if args.grid && r > FULL_YBE_MAX_RANK {
                return Err(Failure::Usage(format!(
                    "full grid sweeps are capped at r ≤ {FULL_YBE_MAX_RANK}"
                )));
            }
            ShanWitFamily::new(&rep, Normalization::ClosedForm)?.ybe_sweep(&points)
        }
        other => return Err(Failure::Usage(format!("unknown mode {other}"))),
    };
    ctx.emit_json(&sweep)?;
    Ok(sweep.failures.is_empty())
}

fn cmd_report(ctx: &Ctx, args: &ReportArgs) -> CliResult {
    let r_min = args.r_min.or(ctx.r).unwrap_or(2);
    let r_max = args.r_max.or(ctx.r).unwrap_or(r_min.max(4));
    let suites: Vec<Suite> = match &args.suites {
        Some(list) => list
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
        None => Suite::ALL.to_vec(),
    };
    let mut cfg = SuiteConfig::new(r_min, r_max, suites)?;
    cfg.format = ctx.format;
    let default_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let start = Instant::now();
    let report = run_suite(&cfg)?;
    let text = match ctx.format {
        OutputFormat::Json => report.to_json()?,
        OutputFormat::Csv => report.to_csv()?,
    };
    let ext = if ctx.format == OutputFormat::Csv {
        "csv"
    } else {
        "json"
    };
    let target = ctx.out.clone().or_else(|| {
        default_dir
            .as_ref()
            .map(|d| d.join(format!("report.{ext}")))
    });
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match &target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io)?;
            }
            std::fs::write(path, text).map_err(io)?;
        }
        None => print!("{text}"),
    }
    if args.tables {
        let dir = target
            .as_ref()
            .and_then(|p| p.parent().map(PathBuf::from))
            .or(default_dir)
            .unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&dir).map_err(io)?;
        for r in r_min..=r_max.min(spinor_casimir::report::SPECTRA_MAX_RANK) {
            std::fs::write(dir.join(format!("spectra_r{r}.csv")), emit_tables(r)?).map_err(io)?;
        }
    }
    let s = report.summary;
    eprintln!(
        "{} checks: {} pass, {} fail, {} documented-discrepancy, {} skipped ({:.2?})",
        s.total(),
        s.pass,
        s.fail,
        s.documented_discrepancy,
        s.skipped,
        start.elapsed()
    );
    Ok(report.passed())
}

fn run(cli: Cli) -> CliResult {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let ctx = Ctx {
        r: cli.r,
        format: cli.format.parse()?,
        out: cli.out,
    };
    match &cli.command {
        Command::Gamma(a) => cmd_gamma(&ctx, a),
        Command::Oracle(a) => cmd_oracle(&ctx, a),
        Command::Invariants(a) => cmd_invariants(&ctx, a),
        Command::Spectra(a) => cmd_spectra(&ctx, a),
        Command::Colour(a) => cmd_colour(&ctx, a),
        Command::Ybe(a) => cmd_ybe(&ctx, a),
        Command::Report(a) => cmd_report(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
