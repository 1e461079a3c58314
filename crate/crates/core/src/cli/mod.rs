//! Command-line front end: config ingestion, dispatch and reporting.

pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::center::CenterError;
use crate::fusion::FusionError;
use crate::groups::GroupError;
use crate::obstruct::{generator_search, scan, ChainSpec, ObstructError, SearchOutcome};
use crate::tube::{factorization_dim_check, tube_dim_center, tube_dim_hom, Cover, TubeError};

use config::{parse_budget, parse_object, Context, OutputMode, RunConfig};
use report::{big, fill_scan, object, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
        }
    }

    pub fn config(e: impl Display) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn compute(e: impl Display) -> Self {
        CliError::Compute(e.to_string())
    }

    pub fn from_group(e: GroupError) -> Self {
        match e {
            GroupError::DixonExhausted { .. } | GroupError::NonIntegral => CliError::compute(e),
            other => CliError::config(other),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::NotStrongGenerator { .. } | FusionError::InvalidRing(_) => CliError::compute(e),
            FusionError::Group(g) => CliError::from_group(g),
            other => CliError::config(other),
        }
    }
}

impl From<CenterError> for CliError {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Internal(_) => CliError::compute(e),
            CenterError::Group(g) => CliError::from_group(g),
            CenterError::Fusion(f) => f.into(),
            other => CliError::config(other),
        }
    }
}

impl From<ObstructError> for CliError {
    fn from(e: ObstructError) -> Self {
        match e {
            ObstructError::Fusion(f) => f.into(),
            ObstructError::Center(c) => c.into(),
            ObstructError::ModelMismatch => CliError::compute(e),
            other => CliError::config(other),
        }
    }
}

impl From<TubeError> for CliError {
    fn from(e: TubeError) -> Self {
        match e {
            TubeError::BadCover(_) => CliError::config(e),
            TubeError::Fusion(f) => f.into(),
            TubeError::Center(c) => c.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fusion-qca", version, about = "Obstructions to QCA realizations of braided autoequivalences on fusion spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of the group in a rep_group config.
    Chartable(CommonArgs),
    /// Simples, dimensions and invertibles of the Drinfeld center.
    Center(CommonArgs),
    /// Decomposition of I(object) into center simples.
    Induce(CommonArgs),
    /// Tube algebra dimension of X^k by the fusion and center routes.
    TubeDim(CommonArgs),
    /// Gluing local algebras over good covers versus the tube dimension.
    FactorCheck(CommonArgs),
    /// Obstruction check at a single k.
    Obstruct(CommonArgs),
    /// Obstruction checks over a range of k.
    Scan(CommonArgs),
    /// Search for a generator whose scan is obstructed at every k.
    FindGenerator(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Path to the JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Emit the versioned JSON report instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "k-min")]
    k_min: Option<usize>,
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    /// Object such as "chi00 + 2*rho"; defaults to the configured generator.
    #[arg(long)]
    object: Option<String>,
    /// Cover as LENGTHS/OVERLAPS, for example "3,3/1,1".
    #[arg(long)]
    cover: Option<String>,
    /// MAX_ENTRY,MAX_CANDIDATES,CEILING for find-generator.
    #[arg(long)]
    budget: Option<String>,
    /// Largest power tried when computing the strong-generator index.
    #[arg(long)]
    cutoff: Option<usize>,
}

/// Runs one command, writing the report to `out` and errors to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<String, CliError> {
    let (name, args) = match &command {
        Command::Chartable(a) => ("chartable", a),
        Command::Center(a) => ("center", a),
        Command::Induce(a) => ("induce", a),
        Command::TubeDim(a) => ("tube-dim", a),
        Command::FactorCheck(a) => ("factor-check", a),
        Command::Obstruct(a) => ("obstruct", a),
        Command::Scan(a) => ("scan", a),
        Command::FindGenerator(a) => ("find-generator", a),
    };
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let mut cfg = RunConfig::parse(&text)?;
    apply_flags(&mut cfg, args)?;
    if args.json {
        cfg.output = Some(OutputMode::Json);
    }
    let mode = cfg.output.unwrap_or(OutputMode::Text);
    let object_override = args.object.as_deref().map(parse_object).transpose()?;
    Ok(build_report(name, &cfg, object_override)?.emit(mode))
}

/// Runs the named command on an already parsed configuration.
pub fn build_report(
    command: &str,
    cfg: &RunConfig,
    object_override: Option<BTreeMap<String, u64>>,
) -> Result<Report, CliError> {
    let mut input = serde_json::to_value(cfg).expect("config serializes");
    if let (Some(obj), Value::Object(map)) = (&object_override, &mut input) {
        map.insert("object".into(), serde_json::to_value(obj).expect("map serializes"));
    }
    let ctx = Context::build(&cfg.category)?;
    let mut report = Report::new(command, input);
    match command {
        "chartable" => chartable(&ctx, &mut report)?,
        "center" => center(&ctx, &mut report),
        "induce" => {
            let entries = object_override
                .or_else(|| cfg.generator.clone())
                .ok_or_else(|| CliError::Config("induce needs --object or a generator".into()))?;
            induce(&ctx, &ctx.object(&entries)?, &mut report)?
        }
        "tube-dim" => tube_dim(&ctx, cfg, object_override, &mut report)?,
        "factor-check" => factor_check(&ctx, cfg, object_override, &mut report)?,
        "obstruct" => {
            let k = cfg.k.ok_or_else(|| CliError::Config("obstruct needs k".into()))?;
            run_scan(&ctx, cfg, object_override, k, k, &mut report)?
        }
        "scan" => {
            let k_max = cfg.k_max.ok_or_else(|| CliError::Config("scan needs k_max".into()))?;
            run_scan(&ctx, cfg, object_override, cfg.k_min.unwrap_or(1), k_max, &mut report)?
        }
        "find-generator" => find_generator(&ctx, cfg, &mut report)?,
        other => return Err(CliError::Config(format!("unknown command {other:?}"))),
    }
    Ok(report)
}

fn apply_flags(cfg: &mut RunConfig, args: &CommonArgs) -> Result<(), CliError> {
    if args.k.is_some() {
        cfg.k = args.k;
    }
    if args.k_min.is_some() {
        cfg.k_min = args.k_min;
    }
    if args.k_max.is_some() {
        cfg.k_max = args.k_max;
    }
    if let Some(c) = &args.cover {
        cfg.cover = Some(c.parse::<Cover>()?);
    }
    if let Some(b) = &args.budget {
        cfg.budget = Some(parse_budget(b)?);
    }
    if args.cutoff.is_some() {
        cfg.cutoff = args.cutoff;
    }
    Ok(())
}

fn generator(
    ctx: &Context,
    cfg: &RunConfig,
    object_override: Option<BTreeMap<String, u64>>,
) -> Result<crate::fusion::ObjectVector, CliError> {
    let entries = object_override
        .or_else(|| cfg.generator.clone())
        .ok_or_else(|| CliError::Config("this command needs a generator".into()))?;
    ctx.object(&entries)
}

fn cutoff(ctx: &Context, cfg: &RunConfig) -> usize {
    cfg.cutoff.unwrap_or_else(|| ctx.ring.default_cutoff())
}

fn chartable(ctx: &Context, report: &mut Report) -> Result<(), CliError> {
    let (group, table) = ctx
        .group
        .as_ref()
        .ok_or_else(|| CliError::Config("chartable needs a rep_group category".into()))?;
    for (row, label) in ctx.ring.labels().iter().enumerate() {
        let mut r = Map::new();
        r.insert("label".into(), Value::String(label.clone()));
        r.insert("degree".into(), Value::from(table.degrees[row]));
        let values: Map<String, Value> = table
            .class_reps
            .iter()
            .zip(&table.rows[row])
            .map(|(&g, v)| (group.name(g).to_string(), Value::String(v.to_string())))
            .collect();
        r.insert("values".into(), Value::Object(values));
        report.rows.push(r);
    }
    let s = &mut report.summary;
    s.insert("group_order".into(), Value::from(group.order()));
    let classes: Map<String, Value> = table
        .class_reps
        .iter()
        .zip(&table.class_sizes)
        .map(|(&g, &n)| (group.name(g).to_string(), Value::from(n)))
        .collect();
    s.insert("class_sizes".into(), Value::Object(classes));
    s.insert("prime".into(), Value::from(table.prime));
    s.insert("orthogonal".into(), Value::Bool(crate::groups::chartab::verify_orthogonality(table)));
    Ok(())
}

fn center(ctx: &Context, report: &mut Report) {
    let m = &ctx.model;
    for z in 0..m.len() {
        let mut r = Map::new();
        r.insert("simple".into(), Value::String(m.label(z).to_string()));
        r.insert(
            "dim".into(),
            m.dim(z)
                .map_or_else(|| Value::String(format!("sqrt({})", m.dim_sq()[z])), Value::from),
        );
        r.insert("weight".into(), Value::from(m.weights()[z]));
        r.insert("invertible".into(), Value::Bool(m.is_invertible(z)));
        r.insert("tracked".into(), Value::Bool(m.tracked()[z]));
        report.rows.push(r);
    }
    let s = &mut report.summary;
    s.insert("simples".into(), Value::from(m.len()));
    s.insert("unaggregated_simples".into(), Value::from(m.unaggregated_len()));
    s.insert("unit".into(), Value::String(m.label(m.unit()).to_string()));
    s.insert(
        "invertibles".into(),
        Value::Array(m.invertibles().iter().map(|&g| Value::String(m.label(g).into())).collect()),
    );
    s.insert(
        "excluded_invertible_candidates".into(),
        Value::Array(m.non_invertible_central_candidates().into_iter().map(Value::String).collect()),
    );
    report.notes = m.notes();
}

fn induce(ctx: &Context, v: &crate::fusion::ObjectVector, report: &mut Report) -> Result<(), CliError> {
    let m = ctx.model.induce(v)?;
    for (z, c) in m.iter().enumerate() {
        if *c != num_bigint::BigUint::default() {
            let mut r = Map::new();
            r.insert("simple".into(), Value::String(ctx.model.label(z).to_string()));
            r.insert("multiplicity".into(), big(c));
            report.rows.push(r);
        }
    }
    let s = &mut report.summary;
    s.insert("object".into(), Value::String(ctx.ring.format_vector(v)));
    s.insert("induced".into(), Value::String(ctx.model.format_vector(&m)));
    s.insert("terms".into(), Value::from(report.rows.len()));
    report.notes = ctx.model.notes();
    Ok(())
}

fn k_range(cfg: &RunConfig) -> Vec<usize> {
    match (cfg.k, cfg.k_min, cfg.k_max) {
        (Some(k), _, _) => vec![k],
        (None, lo, Some(hi)) => (lo.unwrap_or(1)..=hi).collect(),
        (None, Some(lo), None) => vec![lo],
        (None, None, None) => vec![1],
    }
}

fn tube_dim(
    ctx: &Context,
    cfg: &RunConfig,
    object_override: Option<BTreeMap<String, u64>>,
    report: &mut Report,
) -> Result<(), CliError> {
    let x = generator(ctx, cfg, object_override)?;
    let ks = k_range(cfg);
    if ks.is_empty() {
        return Err(CliError::Config("empty k range".into()));
    }
    let mut all_agree = true;
    for k in ks {
        let xk = ctx.ring.power(&x, k)?;
        let hom = tube_dim_hom(&ctx.ring, &xk)?;
        let cen = tube_dim_center(&ctx.model, &ctx.ring, &xk)?;
        all_agree &= hom == cen;
        let mut r = Map::new();
        r.insert("k".into(), Value::from(k));
        r.insert("end_dim".into(), big(&xk.end_dim()));
        r.insert("tube_dim_hom".into(), big(&hom));
        r.insert("tube_dim_center".into(), big(&cen));
        r.insert("agree".into(), Value::Bool(hom == cen));
        report.rows.push(r);
    }
    report.summary.insert("generator".into(), object(&ctx.ring, &x));
    report.summary.insert("all_agree".into(), Value::Bool(all_agree));
    Ok(())
}

fn factor_check(
    ctx: &Context,
    cfg: &RunConfig,
    object_override: Option<BTreeMap<String, u64>>,
    report: &mut Report,
) -> Result<(), CliError> {
    let x = generator(ctx, cfg, object_override)?;
    let k = cfg.k.ok_or_else(|| CliError::Config("factor-check needs k".into()))?;
    let cutoff = cutoff(ctx, cfg);
    let n = ctx.ring.strong_gen_index(&x, cutoff)?;
    let covers = match &cfg.cover {
        Some(c) => vec![c.clone()],
        None => Cover::enumerate(k, n, 3),
    };
    if covers.is_empty() {
        return Err(CliError::Config(format!("no good cover of {k} sites with overlaps >= {n}")));
    }
    let mut all_equal = true;
    for cover in &covers {
        let c = factorization_dim_check(&ctx.ring, &x, k, cover, cutoff)?;
        all_equal &= c.equal();
        let mut r = Map::new();
        r.insert("cover".into(), Value::String(cover.to_string()));
        r.insert("contracted".into(), big(&c.contracted));
        r.insert("tube_dim".into(), big(&c.direct));
        r.insert("equal".into(), Value::Bool(c.equal()));
        report.rows.push(r);
    }
    let s = &mut report.summary;
    s.insert("k".into(), Value::from(k));
    s.insert("generator_index".into(), Value::from(n));
    s.insert("covers".into(), Value::from(covers.len()));
    s.insert("all_equal".into(), Value::Bool(all_equal));
    Ok(())
}

fn run_scan(
    ctx: &Context,
    cfg: &RunConfig,
    object_override: Option<BTreeMap<String, u64>>,
    k_min: usize,
    k_max: usize,
    report: &mut Report,
) -> Result<(), CliError> {
    let x = generator(ctx, cfg, object_override)?;
    let f = ctx.autoequivalence(cfg.autoequivalence.as_ref())?;
    let spec = ChainSpec::new(ctx.ring.clone(), ctx.model.clone(), f, x.clone(), cutoff(ctx, cfg))?;
    let result = scan(&spec, k_min, k_max, cfg.ceiling())?;
    fill_scan(report, &ctx.model, &ctx.ring, &x, &result);
    Ok(())
}

fn find_generator(ctx: &Context, cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let f = ctx.autoequivalence(cfg.autoequivalence.as_ref())?;
    let budget = cfg.budget.unwrap_or_default();
    let model = &ctx.model;
    let witness_rows = |report: &mut Report, witnesses: &[(usize, usize)]| {
        for &(g, s) in witnesses {
            let mut r = Map::new();
            r.insert("invertible".into(), Value::String(model.label(g).to_string()));
            r.insert("witness".into(), Value::String(ctx.ring.label(s).to_string()));
            report.rows.push(r);
        }
    };
    match generator_search(model, &ctx.ring, &f, &budget)? {
        SearchOutcome::Found {
            x,
            witnesses,
            report: scan,
            candidates_tried,
        } => {
            witness_rows(report, &witnesses);
            let s = &mut report.summary;
            s.insert("outcome".into(), Value::String("found".into()));
            s.insert("generator".into(), object(&ctx.ring, &x));
            s.insert("generator_index".into(), Value::from(scan.generator_index));
            s.insert("verified_k_max".into(), Value::from(scan.k_max));
            s.insert("witness_count".into(), Value::from(scan.witness_count()));
            s.insert("candidates_tried".into(), Value::from(candidates_tried));
            if scan.necessary_condition_only {
                report.banner = Some(crate::obstruct::TY_BANNER.to_string());
            }
        }
        SearchOutcome::Blocked { g } => {
            let s = &mut report.summary;
            s.insert("outcome".into(), Value::String("blocked".into()));
            s.insert("blocking".into(), Value::String(model.label(g).to_string()));
            s.insert(
                "statement".into(),
                Value::String(format!(
                    "{} fixes I(Y) up to the autoequivalence for every object Y",
                    model.label(g)
                )),
            );
        }
        SearchOutcome::BudgetExhausted {
            witnesses,
            candidates_tried,
        } => {
            witness_rows(report, &witnesses);
            let s = &mut report.summary;
            s.insert("outcome".into(), Value::String("budget_exhausted".into()));
            s.insert("candidates_tried".into(), Value::from(candidates_tried));
        }
    }
    report.notes = model.notes();
    Ok(())
}
