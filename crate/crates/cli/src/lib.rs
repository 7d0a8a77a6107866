//! The `solgroup` command line: argument parsing, command dispatch and
//! report assembly. [`run`] is the whole program minus process exit, so
//! tests drive it in-process.

pub mod report;

use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use solgroup::bounds::{self, CheckOptions, Cover};
use solgroup::claims::{self, ExampleId, Quantity};
use solgroup::hall::{self, Profiler};
use solgroup::oracle;
use solgroup::primes::format_factored;
use solgroup::series;
use solgroup::{build, Action, Config, ConstructedGroup, Error, GroupExpr, Perm, PrimeSet};

use report::{Document, Format, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for success, including conjecture outcomes of either sign.
pub const EXIT_OK: i32 = 0;
/// Usage, parse and budget errors.
pub const EXIT_USAGE: i32 = 1;
/// A bound violation, a claimed/measured mismatch, a corrupt Sylow system
/// or an internal inconsistency.
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "solgroup", version, about = "Fitting length of soluble groups through Hall subgroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Action of the top group in IT(·,ℓ) products.
    #[arg(long, global = true, value_enum, default_value_t = ActionArg::Natural)]
    pub action: ActionArg,
    /// ℓ for `example`, and for `frak`.
    #[arg(long, global = true, default_value_t = 1)]
    pub ell: u32,
    /// Largest permutation degree a construction may reach.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_degree: usize,
    /// Largest group order the brute-force oracle enumerates.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub oracle_cap: usize,
    /// Worker threads for profile evaluation. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Append wall-clock time per phase. Breaks byte-for-byte reproducibility.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Natural,
    Regular,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Action {
        match a {
            ActionArg::Natural => Action::Natural,
            ActionArg::Regular => Action::Regular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Kv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Kv => Format::Kv,
        }
    }
}

/// Wherever a group is expected, `example:<id>` stands for the example
/// expression at `--ell` and `catalog:<name>` for a catalog entry.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a group and verify its Sylow system.
    Build { expr: String },
    /// Fitting length and the lower nilpotent series.
    Fitting { expr: String },
    /// Fitting length of the Hall σ-subgroup of the attached system.
    Hall {
        expr: String,
        /// Prime set, e.g. "{2,3}".
        #[arg(long)]
        sigma: String,
    },
    /// The largest h(G_σ) over |σ| = --ell.
    Frak { expr: String },
    /// Enumerate covers of a prime set.
    Covers {
        /// Prime set, e.g. "{2,3,5}".
        pi: String,
        /// Number of members.
        #[arg(long)]
        t: usize,
        /// Include covers with π itself as a member.
        #[arg(long)]
        degenerate: bool,
    },
    /// Hall profile and every applicable bound.
    Check {
        expr: String,
        /// Largest cover order to enumerate (default w+1).
        #[arg(long)]
        max_t: Option<usize>,
        /// An extra cover, members separated by ';', e.g. "{2,3};{3,5};{2,5}".
        #[arg(long = "cover")]
        covers: Vec<String>,
    },
    /// Reproduce a worked example: 3.2a, 3.2b, 3.3, 3.4 or 3.5-arith.
    Example { id: String },
    /// Evaluate a three-factor conjecture on a tiny group.
    Conjecture {
        /// 37: three pairwise permuting subgroups; 38: three nilpotent ones.
        #[arg(long, value_parser = ["37", "38"])]
        kind: String,
        /// A group expression, or generators in cycle notation such as "(1 2),(1 2 3)".
        #[arg(long)]
        group: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        l: String,
    },
}

/// Everything the process would print, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let format: Format = cli.global.format.into();
    match with_threads(cli.global.parallel, || execute(cli)).and_then(|r| r) {
        Ok((doc, code)) => Outcome {
            stdout: doc.render(format),
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SylowCorrupt(_) | Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> Result<R, Error> {
    if n == 0 {
        return Err(Error::Usage("--parallel must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> Result<R, Error> {
    if n == 0 {
        return Err(Error::Usage("--parallel must be at least 1".into()));
    }
    Ok(f())
}

/// Per-phase wall clock, reported only under `--timings`.
struct Clock {
    enabled: bool,
    phases: Vec<(&'static str, Duration)>,
}

impl Clock {
    fn new(enabled: bool) -> Clock {
        Clock { enabled, phases: Vec::new() }
    }

    fn time<R>(&mut self, phase: &'static str, f: impl FnOnce() -> R) -> R {
        let start = Instant::now();
        let r = f();
        self.phases.push((phase, start.elapsed()));
        r
    }

    fn finish(self, doc: &mut Document) {
        if self.enabled {
            for (phase, d) in self.phases {
                doc.push(&format!("time.{phase}_ms"), format!("{:.3}", d.as_secs_f64() * 1e3));
            }
        }
    }
}

type Run = Result<(Document, i32), Error>;

fn execute(cli: &Cli) -> Run {
    let g = &cli.global;
    let cfg = Config {
        max_degree: g.max_degree,
        action: g.action.into(),
        oracle_cap: g.oracle_cap,
        ..Config::default()
    };
    let mut clock = Clock::new(g.timings);
    let mut doc = Document::new();
    doc.push("tool", "solgroup");
    doc.push("version", VERSION);
    let code = match &cli.command {
        Command::Build { expr } => {
            doc.push("command", "build");
            let cg = construct(expr, g, &cfg, &mut doc, &mut clock)?;
            cmd_build(&cg, &mut doc)
        }
        Command::Fitting { expr } => {
            doc.push("command", "fitting");
            let cg = construct(expr, g, &cfg, &mut doc, &mut clock)?;
            clock.time("fitting", || cmd_fitting(&cg, &mut doc))?
        }
        Command::Hall { expr, sigma } => {
            doc.push("command", "hall");
            let sigma: PrimeSet = sigma.parse()?;
            let cg = construct(expr, g, &cfg, &mut doc, &mut clock)?;
            clock.time("hall", || cmd_hall(&cg, &sigma, &mut doc))?
        }
        Command::Frak { expr } => {
            doc.push("command", "frak");
            let cg = construct(expr, g, &cfg, &mut doc, &mut clock)?;
            clock.time("frak", || cmd_frak(&cg, g.ell as usize, &mut doc))?
        }
        Command::Covers { pi, t, degenerate } => {
            doc.push("command", "covers");
            cmd_covers(&pi.parse()?, *t, *degenerate, &mut doc)?
        }
        Command::Check { expr, max_t, covers } => {
            doc.push("command", "check");
            let cg = construct(expr, g, &cfg, &mut doc, &mut clock)?;
            let pi = cg.group().primes().clone();
            let opts = CheckOptions {
                max_t: *max_t,
                covers: covers
                    .iter()
                    .map(|c| parse_cover(c, &pi))
                    .collect::<Result<_, _>>()?,
                ..CheckOptions::default()
            };
            doc.push("max_t", max_t.map_or("default".to_string(), |t| t.to_string()));
            let report = clock.time("check", || bounds::check_all_with(&cg, &opts))?;
            push_bound_report(&report, &mut doc)
        }
        Command::Example { id } => {
            doc.push("command", "example");
            let id: ExampleId = id.parse()?;
            cmd_example(id, g, &cfg, &mut doc, &mut clock)?
        }
        Command::Conjecture { kind, group, h, k, l } => {
            doc.push("command", "conjecture");
            clock.time("conjecture", || cmd_conjecture(kind, group, [h, k, l], g, &cfg, &mut doc))?
        }
    };
    clock.finish(&mut doc);
    doc.push("exit", code);
    Ok((doc, code))
}

fn resolve_expr(text: &str, ell: u32) -> Result<String, Error> {
    if let Some(id) = text.strip_prefix("example:") {
        let id: ExampleId = id.parse()?;
        return claims::expression(id, ell)
            .ok_or_else(|| Error::Usage(format!("example {id} has no group expression")));
    }
    if let Some(name) = text.strip_prefix("catalog:") {
        return solgroup::catalog::find(name)
            .map(|e| e.expr.to_string())
            .ok_or_else(|| Error::Usage(format!("no catalog entry named {name:?}")));
    }
    Ok(text.to_string())
}

fn construct(
    text: &str,
    g: &Global,
    cfg: &Config,
    doc: &mut Document,
    clock: &mut Clock,
) -> Result<ConstructedGroup, Error> {
    let text = resolve_expr(text, g.ell)?;
    let expr = GroupExpr::parse(&text)?;
    doc.push("expression", &expr);
    push_config(cfg, doc);
    clock.time("build", || build(&expr, cfg))
}

fn push_config(cfg: &Config, doc: &mut Document) {
    doc.push("action", cfg.action);
    doc.push("max_degree", cfg.max_degree);
    doc.push("oracle_cap", cfg.oracle_cap);
}

fn push_group(cg: &ConstructedGroup, doc: &mut Document) {
    let grp = cg.group();
    doc.push("degree", grp.degree());
    doc.push("order", grp.order());
    doc.push("order_factored", format_factored(grp.order(), u64::from(u16::MAX)));
    doc.push("primes", grp.primes());
    doc.push("w", grp.num_primes());
}

fn cmd_build(cg: &ConstructedGroup, doc: &mut Document) -> i32 {
    push_group(cg, doc);
    let rep = hall::verify_sylow_system(cg);
    doc.push("sylow_system", if rep.pass() { "pass" } else { "FAIL" });
    let mut t = Table::new("sylow", &["primes", "measured", "expected", "status"]);
    for c in rep.primes.iter().chain(&rep.pairs) {
        t.row([
            c.primes.to_string(),
            c.measured.to_string(),
            c.expected.to_string(),
            if c.pass() { "ok" } else { "FAIL" }.to_string(),
        ]);
    }
    doc.tables.push(t);
    if rep.pass() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn cmd_fitting(cg: &ConstructedGroup, doc: &mut Document) -> Result<i32, Error> {
    push_group(cg, doc);
    let s = series::lower_nilpotent_series(cg.group())?;
    doc.push("h", s.length());
    let mut t = Table::new("lower_nilpotent_series", &["term", "order"]);
    for (i, term) in s.terms.iter().enumerate() {
        t.row([i.to_string(), format_factored(term.order(), u64::from(u16::MAX))]);
    }
    doc.tables.push(t);
    Ok(EXIT_OK)
}

fn cmd_hall(cg: &ConstructedGroup, sigma: &PrimeSet, doc: &mut Document) -> Result<i32, Error> {
    push_group(cg, doc);
    if !cg.system_is_valid() {
        return Err(Error::SylowCorrupt(cg.sylow_report().to_string()));
    }
    let hs = hall::hall_subgroup(cg, sigma)?;
    doc.push("sigma", sigma);
    doc.push("hall_order", format_factored(hs.order(), u64::from(u16::MAX)));
    doc.push("h_sigma", Profiler::new(cg).h(sigma)?);
    Ok(EXIT_OK)
}

fn cmd_frak(cg: &ConstructedGroup, ell: usize, doc: &mut Document) -> Result<i32, Error> {
    push_group(cg, doc);
    if !cg.system_is_valid() {
        return Err(Error::SylowCorrupt(cg.sylow_report().to_string()));
    }
    doc.push("ell", ell);
    let profiler = Profiler::new(cg);
    let value = profiler.frak(ell)?;
    let subsets = cg.group().primes().subsets_of_size(ell);
    let profile = profiler.profile(&subsets)?;
    doc.push("frak", value);
    doc.tables.push(profile_table(profile.iter()));
    Ok(EXIT_OK)
}

fn cmd_covers(pi: &PrimeSet, t: usize, degenerate: bool, doc: &mut Document) -> Result<i32, Error> {
    if pi.is_empty() {
        return Err(Error::Usage("π must be nonempty".into()));
    }
    if pi.len() > bounds::MAX_ENUM_W {
        return Err(Error::Usage(format!(
            "cover enumeration is limited to w <= {}",
            bounds::MAX_ENUM_W
        )));
    }
    doc.push("pi", pi);
    doc.push("t", t);
    doc.push("degenerate", degenerate);
    let covers = bounds::enumerate_covers(pi, t, degenerate);
    doc.push("count", covers.len());
    let mut table = Table::new("covers", &["index", "members", "degenerate"]);
    for (i, c) in covers.iter().enumerate() {
        table.row([(i + 1).to_string(), c.to_string(), c.is_degenerate().to_string()]);
    }
    doc.tables.push(table);
    Ok(EXIT_OK)
}

fn parse_cover(text: &str, pi: &PrimeSet) -> Result<Cover, Error> {
    let members = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<PrimeSet>, _>>()?;
    Cover::new(members, pi)
}

fn profile_table<'a>(rows: impl Iterator<Item = (&'a PrimeSet, usize)>) -> Table {
    let mut t = Table::new("profile", &["sigma", "h"]);
    for (s, h) in rows {
        t.row([s.to_string(), h.to_string()]);
    }
    t
}

fn push_bound_report(r: &bounds::BoundReport, doc: &mut Document) -> i32 {
    doc.push("primes", &r.primes);
    doc.push("w", r.primes.len());
    doc.push("h", r.h_actual);
    doc.push("entries", r.entries.len());
    doc.push("violations", r.violations().count());
    doc.push("lemma_sweep", format!("{} checked, {} failures", r.lemma.checked, r.lemma.failures.len()));
    doc.push("bounds", if r.pass() { "pass" } else { "VIOLATION" });
    doc.tables.push(profile_table(r.profile.iter()));
    let mut t = Table::new("bounds", &["name", "inputs", "bounded", "actual", "bound", "slack", "status"]);
    for e in &r.entries {
        t.row([
            e.name.to_string(),
            e.inputs.clone(),
            e.bounded.to_string(),
            e.actual.to_string(),
            opt_str(e.value),
            opt_str(e.slack()),
            e.status().to_string(),
        ]);
    }
    doc.tables.push(t);
    if r.pass() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn cmd_example(id: ExampleId, g: &Global, cfg: &Config, doc: &mut Document, clock: &mut Clock) -> Result<i32, Error> {
    if g.ell == 0 {
        return Err(Error::Usage("ℓ must be at least 1".into()));
    }
    doc.push("example", id);
    doc.push("ell", g.ell);
    let mut code = EXIT_OK;
    let feasible = claims::group_level_feasible(id, g.ell);
    let mut measured = None;
    match claims::expression(id, g.ell) {
        Some(text) if feasible => {
            let expr = GroupExpr::parse(&text)?;
            doc.push("expression", &expr);
            push_config(cfg, doc);
            doc.push("mode", "group");
            let cg = clock.time("build", || build(&expr, cfg))?;
            let report = clock.time("check", || bounds::check_all(&cg))?;
            measured = Some(report);
        }
        text => {
            if let Some(text) = text {
                doc.push("expression", text);
            }
            push_config(cfg, doc);
            doc.push("mode", "arithmetic-only");
            doc.push(
                "notice",
                format!("example {id} at ℓ={} is arithmetic-only at this scale; group-level runs need ℓ=1 and a group expression", g.ell),
            );
        }
    }

    let mut claimed = Table::new("claims", &["quantity", "formula", "claimed", "measured", "status"]);
    let mut mismatches = 0;
    for c in claims::claims(id, g.ell) {
        let m = match &measured {
            Some(r) => Some(measured_value(r, &c.quantity)?),
            None => None,
        };
        let status = match m {
            None => "-",
            Some(v) if v == c.value => "match",
            Some(_) => {
                mismatches += 1;
                "MISMATCH"
            }
        };
        claimed.row([
            c.quantity.to_string(),
            c.formula.to_string(),
            c.value.to_string(),
            m.map_or("-".to_string(), |v| v.to_string()),
            status.to_string(),
        ]);
    }
    doc.push("mismatches", mismatches);
    if mismatches > 0 {
        code = EXIT_FAILURE;
    }

    let checks = claims::arithmetic(id, g.ell);
    let failed = checks.iter().filter(|c| !c.pass()).count();
    doc.push("arithmetic", if failed == 0 { "pass" } else { "MISMATCH" });
    if failed > 0 {
        code = EXIT_FAILURE;
    }
    let mut arith = Table::new("arithmetic", &["check", "lhs", "relation", "rhs", "holds", "expected", "status"]);
    for c in &checks {
        arith.row([
            c.name.clone(),
            c.lhs.to_string(),
            c.relation.to_string(),
            c.rhs.to_string(),
            c.holds.to_string(),
            c.expected.to_string(),
            if c.pass() { "pass" } else { "MISMATCH" }.to_string(),
        ]);
    }
    doc.tables.push(claimed);
    doc.tables.push(arith);

    if let Some(r) = &measured {
        if push_bound_report(r, doc) != EXIT_OK {
            code = EXIT_FAILURE;
        }
    }
    Ok(code)
}

fn measured_value(r: &bounds::BoundReport, q: &Quantity) -> Result<i64, Error> {
    Ok(match q {
        Quantity::H => r.h_actual as i64,
        Quantity::Hall(s) => r.profile.get(s)? as i64,
        Quantity::ThetaMinus2 => {
            let ps: Vec<u64> = r.primes.iter().collect();
            if ps.len() != 3 {
                return Err(Error::Internal("Θ-2 needs three primes".into()));
            }
            let mut theta = 0;
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                theta += r.profile.get(&PrimeSet::new([ps[a], ps[b]])?)? as i64;
            }
            theta - 2
        }
    })
}

fn cmd_conjecture(
    kind: &str,
    group: &str,
    subgroups: [&String; 3],
    g: &Global,
    cfg: &Config,
    doc: &mut Document,
) -> Result<i32, Error> {
    doc.push("kind", kind);
    let text = resolve_expr(group, g.ell)?;
    let pg = if text.trim_start().starts_with('(') {
        doc.push("generators", &text);
        push_config(cfg, doc);
        let gens = Perm::parse_list(&text, None)?;
        let degree = gens.first().map_or(1, Perm::degree);
        solgroup::PermGroup::new(degree, gens)?
    } else {
        let expr = GroupExpr::parse(&text)?;
        doc.push("expression", &expr);
        push_config(cfg, doc);
        build(&expr, cfg)?.group().clone()
    };
    let tiny = oracle::enumerate(&pg, cfg.oracle_cap)?;
    let degree = tiny.degree();
    let names = ["H", "K", "L"];
    let mut lists = Vec::new();
    for (name, s) in names.iter().zip(subgroups) {
        doc.push(&format!("subgroup.{name}"), s);
        lists.push(Perm::parse_list(s, Some(degree))?);
    }
    doc.push("order", tiny.order());
    let flag = |b: bool| if b { "yes" } else { "no" };
    let opt = |b: Option<bool>| b.map_or("n/a", |b| if b { "holds" } else { "fails" });
    if kind == "37" {
        let r = oracle::check_conjecture37(&tiny, &lists[0], &lists[1], &lists[2], cfg.pair_budget)?;
        doc.push("products", format!("|HK|={} |KL|={} |LH|={}", r.products[0], r.products[1], r.products[2]));
        doc.push("trifactorized", flag(r.trifactorized));
        doc.push("h_g", r.h_g);
        doc.push("h_factors", format!("{} {} {}", r.h_factors[0], r.h_factors[1], r.h_factors[2]));
        doc.push("inequality", opt(r.inequality));
        doc.push("kegel", r.kegel.map_or("n/a", |_| "G nilpotent"));
    } else {
        let r = oracle::check_conjecture38(&tiny, &lists[0], &lists[1], &lists[2], cfg.pair_budget)?;
        let tri = |a: [bool; 3]| a.map(flag).join(" ");
        doc.push("nilpotent", tri(r.nilpotent));
        doc.push("permutable", tri(r.permutable));
        doc.push("triple_product", r.triple_product);
        doc.push("hypothesis", flag(r.hypothesis));
        doc.push("h_g", r.h_g);
        doc.push(
            "h_pairs",
            r.h_pairs.map_or("n/a".to_string(), |p| format!("{} {} {}", p[0], p[1], p[2])),
        );
        doc.push("inequality", opt(r.inequality));
    }
    Ok(EXIT_OK)
}

fn opt_str<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}
