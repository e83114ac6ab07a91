//! Command-line front end: compute constants for a group expression, dump
//! subgroup lattices and Chermak-Delgado data, and verify the bundled case
//! ledger.
//!
//! Exit codes: 0 success/verified, 1 usage or parse error (or failed
//! verification), 2 cap/timeout with partial JSON still emitted, 3 the
//! result is a bound-only report.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use jordan_core::catalog::{self, Catalog};
use jordan_core::config::{self, EngineConfig};
use jordan_core::jordan::{self, CertMethod};
use jordan_core::ledger::{self, CaseBound, Field, VerdictKind};
use jordan_core::report::{self, Format};
use jordan_core::subgroups;
use jordan_core::{Error, PermGroup};

#[derive(Parser)]
#[command(
    name = "jordan",
    about = "Jordan constants and Chermak-Delgado data for finite permutation groups",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Emit JSON (default for data commands)
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,
    /// Emit Markdown (default for verify-paper and report)
    #[arg(long, global = true)]
    md: bool,
    /// Largest order for full subgroup-lattice enumeration
    #[arg(long, global = true)]
    order_cap: Option<u64>,
    /// Largest order for explicit element listings
    #[arg(long, global = true)]
    element_cap: Option<u64>,
    /// Largest permitted point set
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Soft time budget per task, in seconds
    #[arg(long, global = true)]
    time_budget: Option<u64>,
    /// Worker threads for ledger verification
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Catalog file overriding the bundled one
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Ledger file overriding the bundled one
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    /// Omit timing fields (byte-identical reruns)
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute nu, abar, J and J-bar for an expression or catalog label
    Compute { expr: String },
    /// Summarize the subgroup lattice of an expression or catalog label
    Subgroups { expr: String },
    /// The Chermak-Delgado maximal-measure set
    #[command(name = "cd-lattice")]
    CdLattice { expr: String },
    /// Verify the bundled case ledger and aggregate the theorem constants
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Restrict to one field: C, R, Q, P2R or S2
        #[arg(long)]
        field: Option<String>,
    },
    /// Recompute every catalog entry and check its asserted quantities
    Report,
}

/// Resolved run configuration: flags win over JL_* environment variables,
/// which win over defaults.
struct RunConfig {
    engine: EngineConfig,
    format: Option<Format>,
    jobs: usize,
    catalog: Option<PathBuf>,
    ledger: Option<PathBuf>,
    no_timing: bool,
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn resolve_config(opts: &GlobalOpts) -> Result<RunConfig, String> {
    let order_cap = opts
        .order_cap
        .or_else(|| env_u64("JL_ORDER_CAP"))
        .unwrap_or(config::DEFAULT_ORDER_CAP);
    let element_cap = opts
        .element_cap
        .or_else(|| env_u64("JL_ELEMENT_CAP"))
        .unwrap_or(config::DEFAULT_ELEMENT_CAP);
    let degree_cap = opts
        .degree_cap
        .or_else(|| env_u64("JL_DEGREE_CAP").map(|v| v as usize))
        .unwrap_or(config::DEFAULT_DEGREE_CAP);
    let budget = opts
        .time_budget
        .or_else(|| env_u64("JL_TIME_BUDGET_SECONDS"))
        .unwrap_or(config::DEFAULT_TIME_BUDGET_SECS);
    if order_cap == 0 || element_cap == 0 || degree_cap == 0 || budget == 0 {
        return Err("caps and the time budget must be positive".into());
    }
    if degree_cap > config::DEFAULT_DEGREE_CAP {
        return Err(format!(
            "degree cap is limited to {}",
            config::DEFAULT_DEGREE_CAP
        ));
    }

    let format_flags = [
        (opts.json, Format::Json),
        (opts.csv, Format::Csv),
        (opts.md, Format::Markdown),
    ];
    let picked: Vec<Format> = format_flags
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, f)| *f)
        .collect();
    if picked.len() > 1 {
        return Err("pick at most one of --json, --csv, --md".into());
    }
    let format = picked.first().copied().or_else(|| {
        std::env::var("JL_FORMAT")
            .ok()
            .and_then(|v| Format::parse(&v))
    });

    let jobs = opts
        .jobs
        .or_else(|| env_u64("JL_JOBS").map(|v| v as usize))
        .unwrap_or(1)
        .max(1);

    let catalog = opts
        .catalog
        .clone()
        .or_else(|| std::env::var("JL_CATALOG").ok().map(PathBuf::from));
    let ledger = opts
        .ledger
        .clone()
        .or_else(|| std::env::var("JL_LEDGER").ok().map(PathBuf::from));

    let engine = EngineConfig {
        order_cap,
        element_cap,
        degree_cap,
        deadline: None,
    }
    .with_time_budget(Duration::from_secs(budget));

    Ok(RunConfig {
        engine,
        format,
        jobs,
        catalog,
        ledger,
        no_timing: opts.no_timing,
    })
}

enum LoadedCatalog {
    Shipped(&'static Catalog),
    External(Catalog),
}

impl LoadedCatalog {
    fn get(&self) -> &Catalog {
        match self {
            LoadedCatalog::Shipped(c) => c,
            LoadedCatalog::External(c) => c,
        }
    }
}

fn load_catalog(cfg: &RunConfig) -> Result<LoadedCatalog, Error> {
    match &cfg.catalog {
        Some(path) => Ok(LoadedCatalog::External(catalog::load_catalog(path)?)),
        None => Ok(LoadedCatalog::Shipped(catalog::shipped())),
    }
}

fn load_rows(cfg: &RunConfig) -> Result<Vec<CaseBound>, Error> {
    match &cfg.ledger {
        Some(path) => ledger::load_ledger(path),
        None => Ok(ledger::shipped_rows().to_vec()),
    }
}

/// Catalog labels take precedence over expression syntax.
fn build_group(text: &str, cat: &Catalog, cfg: &RunConfig) -> Result<PermGroup, Error> {
    if let Ok(found) = cat.group(text) {
        return Ok(found.clone());
    }
    cat.build_expr(text, &cfg.engine)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } | Error::TimeBudget { .. } => 2,
        _ => 1,
    }
}

fn fail(err: &Error, label: &str) -> ExitCode {
    let code = exit_code_for(err);
    if code == 2 {
        // partial JSON so scripted callers still get structure
        let partial = serde_json::json!({
            "label": label,
            "error": err.to_string(),
            "partial": true,
        });
        println!("{}", serde_json::to_string_pretty(&partial).unwrap());
    }
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn cmd_compute(expr: &str, cfg: &RunConfig) -> ExitCode {
    let cat = match load_catalog(cfg) {
        Ok(c) => c,
        Err(e) => return fail(&e, expr),
    };
    let group = match build_group(expr, cat.get(), cfg) {
        Ok(g) => g,
        Err(e) => return fail(&e, expr),
    };
    let mut report = match jordan::jordan_report(&group, expr, &cfg.engine) {
        Ok(r) => r,
        Err(e) => return fail(&e, expr),
    };
    if cfg.no_timing {
        report = report.strip_timing();
    }
    let format = cfg.format.unwrap_or(Format::Json);
    match report::render_jordan(&report, format) {
        Ok(text) => println!("{}", text.trim_end()),
        Err(e) => return fail(&e, expr),
    }
    if report.method == CertMethod::BoundOnly {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_subgroups(expr: &str, cfg: &RunConfig) -> ExitCode {
    let cat = match load_catalog(cfg) {
        Ok(c) => c,
        Err(e) => return fail(&e, expr),
    };
    let group = match build_group(expr, cat.get(), cfg) {
        Ok(g) => g,
        Err(e) => return fail(&e, expr),
    };
    let lattice = match subgroups::all_subgroups(&group, &cfg.engine) {
        Ok(l) => l,
        Err(e) => return fail(&e, expr),
    };
    let mut by_order: std::collections::BTreeMap<u64, usize> = Default::default();
    for rec in lattice.records() {
        *by_order.entry(rec.order).or_default() += 1;
    }
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let value = serde_json::json!({
                "label": expr,
                "order": group.order(),
                "subgroups": lattice.len(),
                "classes": lattice.classes().len(),
                "by_order": by_order,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("order,count");
            for (order, count) in &by_order {
                println!("{order},{count}");
            }
        }
        Format::Markdown => {
            println!(
                "{} subgroups in {} classes",
                lattice.len(),
                lattice.classes().len()
            );
            for (order, count) in &by_order {
                println!("- order {order}: {count}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_cd_lattice(expr: &str, cfg: &RunConfig) -> ExitCode {
    let cat = match load_catalog(cfg) {
        Ok(c) => c,
        Err(e) => return fail(&e, expr),
    };
    let group = match build_group(expr, cat.get(), cfg) {
        Ok(g) => g,
        Err(e) => return fail(&e, expr),
    };
    let lattice = match subgroups::all_subgroups(&group, &cfg.engine) {
        Ok(l) => l,
        Err(e) => return fail(&e, expr),
    };
    let cd = jordan::cd_lattice(&lattice);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let members: Vec<serde_json::Value> = cd
                .entries
                .iter()
                .map(|e| {
                    let rec = &lattice.records()[e.record as usize];
                    let gens: Vec<String> = rec
                        .gen_ids
                        .iter()
                        .map(|&i| lattice.table().perm(i).to_string())
                        .collect();
                    serde_json::json!({
                        "order": e.order,
                        "centralizer_order": e.centralizer_order,
                        "measure": e.measure,
                        "generators": gens,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "label": expr,
                "order": group.order(),
                "max_measure": cd.max_measure,
                "members": members,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("order,centralizer_order,measure");
            for e in &cd.entries {
                println!("{},{},{}", e.order, e.centralizer_order, e.measure);
            }
        }
        Format::Markdown => {
            println!("max measure {}", cd.max_measure);
            for e in &cd.entries {
                let rec = &lattice.records()[e.record as usize];
                let gens: Vec<String> = rec
                    .gen_ids
                    .iter()
                    .map(|&i| lattice.table().perm(i).to_string())
                    .collect();
                let gens = if gens.is_empty() {
                    "()".to_string()
                } else {
                    gens.join(" ")
                };
                println!(
                    "- order {} (centralizer {}): {}",
                    e.order, e.centralizer_order, gens
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn theorem_line(agg: &ledger::TheoremResult) -> String {
    let name = match agg.field {
        Field::C => "J(Cr2(C))",
        Field::R => "J(Cr2(R))",
        Field::Q => "J(Cr2(Q))",
        Field::P2R => "J(Aut(P2(R)))",
        Field::S2 => "J(Quad3,1(R))",
    };
    match agg.jbar {
        Some(jbar) => format!(
            "{name} = {}, Jbar = {jbar} — attained by {} (case {})",
            agg.j, agg.attaining_witness, agg.attaining_case
        ),
        None => format!(
            "{name} = {} — attained by {} (case {})",
            agg.j, agg.attaining_witness, agg.attaining_case
        ),
    }
}

fn cmd_verify_paper(field: Option<&str>, cfg: &RunConfig) -> ExitCode {
    let cat = match load_catalog(cfg) {
        Ok(c) => c,
        Err(e) => return fail(&e, "verify-paper"),
    };
    let all_rows = match load_rows(cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e, "verify-paper"),
    };
    let fields: Vec<Field> = match field {
        Some(name) => match Field::parse(name) {
            Ok(f) => vec![f],
            Err(e) => return fail(&e, "verify-paper"),
        },
        None => Field::ALL.to_vec(),
    };

    // verify every row that contributes to a requested field
    let mut wanted: Vec<CaseBound> = all_rows
        .iter()
        .filter(|row| {
            fields
                .iter()
                .any(|&f| row.field == f || (f == Field::Q && row.field == Field::R))
        })
        .cloned()
        .collect();
    wanted.sort_by(|a, b| a.id.cmp(&b.id));
    let verdicts = ledger::verify_rows(&wanted, cat.get(), &cfg.engine, cfg.jobs);

    let mut aggregates = Vec::new();
    let mut aggregation_ok = true;
    for &f in &fields {
        match ledger::aggregate(f, &wanted, &verdicts) {
            Ok(agg) => {
                let (expected_j, expected_jbar) = ledger::expected_aggregate(f);
                if agg.j != expected_j || (expected_jbar.is_some() && agg.jbar != expected_jbar) {
                    aggregation_ok = false;
                }
                aggregates.push(agg);
            }
            Err(e) => {
                eprintln!("aggregation for {f} failed: {e}");
                aggregation_ok = false;
            }
        }
    }

    let any_failed = verdicts.iter().any(|v| v.verdict == VerdictKind::Failed);
    let any_unverified = verdicts
        .iter()
        .any(|v| v.verdict == VerdictKind::Unverified);
    let ok = !any_failed && !any_unverified && aggregation_ok;

    let rows_out = report::verified_rows(&wanted, &verdicts, !cfg.no_timing);
    let full = report::VerificationReport {
        rows: rows_out,
        aggregates,
        ok,
    };
    match cfg.format.unwrap_or(Format::Markdown) {
        Format::Json => println!("{}", serde_json::to_string_pretty(&full).unwrap()),
        Format::Csv => {
            print!("{}", report::verification_csv(&full.rows));
            for agg in &full.aggregates {
                println!("# {}", theorem_line(agg));
            }
        }
        Format::Markdown => {
            print!("{}", report::verification_markdown(&full));
            for agg in &full.aggregates {
                println!("{}", theorem_line(agg));
            }
        }
    }

    if any_failed {
        ExitCode::from(1)
    } else if any_unverified {
        ExitCode::from(2)
    } else if !aggregation_ok {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_report(cfg: &RunConfig) -> ExitCode {
    let cat = match load_catalog(cfg) {
        Ok(c) => c,
        Err(e) => return fail(&e, "report"),
    };
    let cat = cat.get();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for entry in cat.entries() {
        let label = entry.label.clone();
        let group = match cat.group(&label) {
            Ok(g) => g.clone(),
            Err(e) => return fail(&e, &label),
        };
        let report = match jordan::jordan_report(&group, &label, &cfg.engine) {
            Ok(mut r) => {
                if cfg.no_timing {
                    r = r.strip_timing();
                }
                r
            }
            Err(e) => return fail(&e, &label),
        };
        let mut problems: Vec<String> = Vec::new();
        if let Some(exp) = &entry.expected {
            if let Some(nu) = exp.nu {
                if report.nu != nu {
                    problems.push("nu".into());
                }
            }
            if let Some(j) = exp.j {
                if report.j.exact() != Some(j) {
                    problems.push("J".into());
                }
            }
            if let Some(jbar) = exp.jbar {
                if report.jbar.exact() != Some(jbar) {
                    problems.push("Jbar".into());
                }
            }
            if let Some(j_le) = exp.j_le {
                if report.j.upper() > j_le {
                    problems.push("J_le".into());
                }
            }
            if let Some(jbar_le) = exp.jbar_le {
                if report.jbar.upper() > jbar_le {
                    problems.push("Jbar_le".into());
                }
            }
        }
        if !problems.is_empty() {
            all_ok = false;
        }
        rows.push((report, problems));
    }

    match cfg.format.unwrap_or(Format::Markdown) {
        Format::Json => {
            let value: Vec<serde_json::Value> = rows
                .iter()
                .map(|(r, problems)| {
                    serde_json::json!({
                        "report": r,
                        "expected_ok": problems.is_empty(),
                        "mismatches": problems,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("{},expected_ok", report::jordan_csv_header());
            for (r, problems) in &rows {
                println!("{},{}", report::jordan_csv_row(r), problems.is_empty());
            }
        }
        Format::Markdown => {
            let fmt_value = |v: &jordan::Value| match v.exact() {
                Some(x) => x.to_string(),
                None => format!("[{}, {}]", v.lower(), v.upper()),
            };
            println!("| label | order | nu | J | Jbar | method | asserted |");
            println!("|---|---|---|---|---|---|---|");
            for (r, problems) in &rows {
                println!(
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.label,
                    r.order,
                    r.nu,
                    fmt_value(&r.j),
                    fmt_value(&r.jbar),
                    r.method,
                    if problems.is_empty() {
                        "ok".to_string()
                    } else {
                        format!("MISMATCH: {}", problems.join(","))
                    }
                );
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe closes early (e.g. `jordan report | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successful exits
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let cfg = match resolve_config(&cli.opts) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match &cli.command {
        Command::Compute { expr } => cmd_compute(expr, &cfg),
        Command::Subgroups { expr } => cmd_subgroups(expr, &cfg),
        Command::CdLattice { expr } => cmd_cd_lattice(expr, &cfg),
        Command::VerifyPaper { field } => cmd_verify_paper(field.as_deref(), &cfg),
        Command::Report => cmd_report(&cfg),
    }
}
