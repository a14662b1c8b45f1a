//! The `gtcode` command line: argument parsing, configuration and reports.
//!
//! Exit codes: 0 success, 2 parse or validation error, 3 budget exhausted,
//! 4 internal invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::catalog::CYCLE_ROWS;
use crate::code_algebra::{
    anyon_basis_with, check_to_condition, factor_univariate, k_on_torus_direct_with, k_on_torus_by_remainders,
    minimal_full_k_torus, minimal_untwisted_torus, standard_monomials, to_gf2, univariate_generator,
    AlgebraError, Axis,
};
use crate::distance::{css_distance, DistanceError, DistancePolicy};
use crate::gb1d::{k_1d, reduce_to_1d, write_cycle_table, Gb1dError};
use crate::groebner::{Budget, GroebnerError, MonomialOrder};
use crate::lattice::{k_from_ranks, CssCode};
use crate::poly2::LaurentPoly;
use crate::search::{run_search, write_optima_csv, CodeRecord, OptimalityOrder, SearchError, SearchSpace};
use crate::torus::TwistedTorus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Largest `n` for which distances default to the exact method.
pub const EXACT_MAX_N: usize = 200;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: m.into() }
    }

    fn internal(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INTERNAL, message: m.into() }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let code = match &e {
            AlgebraError::Groebner(GroebnerError::Budget(_)) => EXIT_BUDGET,
            AlgebraError::ToViolation | AlgebraError::NotZeroDimensional | AlgebraError::Zero => EXIT_INPUT,
            AlgebraError::Groebner(GroebnerError::Overflow | GroebnerError::NegativeExponent) => EXIT_INPUT,
            AlgebraError::Period(_) => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<Gb1dError> for CliError {
    fn from(e: Gb1dError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::InvalidN(_) | SearchError::Record(_) => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::internal(e.to_string())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    LexXy,
    LexYx,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceArg {
    Exact,
    Ris,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixFormat {
    Alist,
    Dense,
    Both,
}

#[derive(Parser, Debug)]
#[command(name = "gtcode", version, about = "Generalized toric codes on twisted tori")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GlobalArgs {
    /// Monomial order for displayed Gröbner bases.
    #[arg(long, global = true, value_enum)]
    pub order: Option<OrderArg>,
    /// Distance method.
    #[arg(long, global = true, value_enum)]
    pub distance: Option<DistanceArg>,
    /// Largest distance the exact method tries to certify.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Random information-set trials.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true, value_parser = parse_u64)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// TOML file with defaults for any of the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coprimality, anyon count and, given a torus, n, k and d.
    Analyze {
        f: String,
        g: String,
        /// Torus as `alpha,beta,gamma`.
        #[arg(long, value_parser = parse_torus)]
        torus: Option<TwistedTorus>,
        /// Also compute the distance (needs --torus).
        #[arg(long)]
        with_distance: bool,
        /// Directory for the parity-check matrices (needs --torus).
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        matrix_format: MatrixFormat,
    },
    /// Univariate generators, their factorizations and the minimal tori.
    Period { f: String, g: String },
    /// Exhaustive search over n in [n-min, n-max].
    Search {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Output directory for records.jsonl and optima.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Keep pairs that fail the coprimality check.
        #[arg(long)]
        allow_non_coprime: bool,
        /// Disable symmetry reduction.
        #[arg(long)]
        no_dedup: bool,
        #[arg(long, value_enum)]
        optimality: Option<OptimalityArg>,
    },
    /// Reduce a width-one torus code to a cycle code.
    Reduce1d {
        f: Option<String>,
        g: Option<String>,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(long, default_value_t = 0)]
        gamma: i64,
        #[arg(long)]
        with_distance: bool,
        /// Print the built-in cycle-code table as CSV instead.
        #[arg(long)]
        catalog: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimalityArg {
    MeritFirst,
    DistanceFirst,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("{s:?}: {e}"))
}

fn parse_torus(s: &str) -> Result<TwistedTorus, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = parts[..] else {
        return Err(format!("expected alpha,beta,gamma, got {s:?}"));
    };
    TwistedTorus::new(a, b, c).map_err(|e| e.to_string())
}

/// Settings from a config file; flags take precedence.
#[derive(Debug, Default, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub order: Option<OrderArg>,
    pub distance: Option<DistanceArg>,
    pub cap: Option<usize>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<FormatArg>,
    pub optimality: Option<OptimalityArg>,
    pub max_pair_reductions: Option<u64>,
    pub max_terms: Option<usize>,
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub order: OrderArg,
    /// `None` picks exact for `n <= EXACT_MAX_N` and randomized above.
    pub distance: Option<DistanceArg>,
    pub cap: usize,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub format: FormatArg,
    pub optimality: OptimalityArg,
    pub budget: Budget,
}

impl Config {
    pub fn resolve(flags: &GlobalArgs, file: &ConfigFile) -> Result<Config, CliError> {
        let budget_default = Budget::default();
        let cfg = Config {
            order: flags.order.or(file.order).unwrap_or(OrderArg::LexXy),
            distance: flags.distance.or(file.distance),
            cap: flags.cap.or(file.cap).unwrap_or(14),
            trials: flags.trials.or(file.trials).unwrap_or(100_000),
            seed: flags.seed.or(file.seed).unwrap_or(0xC0DE),
            workers: flags.workers.or(file.workers).unwrap_or(1),
            format: flags.format.or(file.format).unwrap_or(FormatArg::Table),
            optimality: file.optimality.unwrap_or(OptimalityArg::MeritFirst),
            budget: Budget {
                max_pair_reductions: file.max_pair_reductions.unwrap_or(budget_default.max_pair_reductions),
                max_terms: file.max_terms.unwrap_or(budget_default.max_terms),
            },
        };
        if cfg.cap == 0 || cfg.trials == 0 || cfg.workers == 0 {
            return Err(CliError::input("cap, trials and workers must be positive"));
        }
        if cfg.budget.max_pair_reductions == 0 || cfg.budget.max_terms == 0 {
            return Err(CliError::input("budgets must be positive"));
        }
        Ok(cfg)
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        match self.order {
            OrderArg::LexXy => MonomialOrder::lex_xy(),
            OrderArg::LexYx => MonomialOrder::lex_yx(),
        }
    }

    pub fn policy(&self, n: usize) -> DistancePolicy {
        let default = if n <= EXACT_MAX_N { DistanceArg::Exact } else { DistanceArg::Ris };
        match self.distance.unwrap_or(default) {
            DistanceArg::Exact => DistancePolicy::ExactBelowCap { cap: self.cap },
            DistanceArg::Ris => DistancePolicy::Probabilistic { trials: self.trials },
        }
    }
}

pub fn load_config(path: Option<&Path>) -> Result<ConfigFile, CliError> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_poly(s: &str) -> Result<LaurentPoly, CliError> {
    LaurentPoly::parse(s).map_err(|e| CliError::input(format!("{s:?}: {e}")))
}

/// A report printed as JSON or as `key: value` lines.
fn emit(out: &mut dyn Write, format: FormatArg, report: &Value) -> Result<(), CliError> {
    match format {
        FormatArg::Json | FormatArg::Csv => writeln!(out, "{}", serde_json::to_string_pretty(report).expect("json"))?,
        FormatArg::Table => {
            let mut text = String::new();
            render_table(&mut text, report, 0);
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn render_table(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_table(out, val, indent + 2);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for item in items {
                            let _ = writeln!(out, "{pad}  -");
                            render_table(out, item, indent + 4);
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(val));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn cmd_analyze(
    cfg: &Config,
    f: &str,
    g: &str,
    torus: Option<TwistedTorus>,
    with_distance: bool,
    emit_matrices: Option<(&Path, MatrixFormat)>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (fp, gp) = (parse_poly(f)?, parse_poly(g)?);
    if fp.is_zero() || gp.is_zero() {
        return Err(CliError::input("f and g must be nonzero"));
    }
    let coprime = check_to_condition(&fp, &gp)?;
    let order = cfg.monomial_order();
    let mut report = serde_json::Map::new();
    report.insert("f".into(), json!(fp.render()));
    report.insert("g".into(), json!(gp.render()));
    report.insert("to_condition".into(), json!(coprime));
    if coprime {
        let gb = anyon_basis_with(&fp, &gp, &order, &cfg.budget)?;
        let std = standard_monomials(&gb)?;
        report.insert("groebner_basis".into(), json!(gb.laurent_gens().iter().map(|p| p.render()).collect::<Vec<_>>()));
        report.insert("anyons".into(), json!(std.count));
        report.insert("k_max".into(), json!(2 * std.count));
        report.insert(
            "standard_monomials".into(),
            json!(std.monomials.iter().map(|e| LaurentPoly::from_exponents([*e]).render()).collect::<Vec<_>>()),
        );
    } else {
        report.insert(
            "diagnostic".into(),
            json!("f and g share a common factor: the topological-order condition fails and k_max is unbounded"),
        );
        if torus.is_none() {
            emit(out, cfg.format, &Value::Object(report))?;
            return Err(CliError::input("topological-order condition violated"));
        }
    }
    if let Some(t) = torus {
        let k = k_on_torus_direct_with(&fp, &gp, &t, &cfg.budget)?;
        let code = CssCode::new_unchecked(fp.clone(), gp.clone(), t);
        let (hx, hz) = code.parity_checks();
        let k_rank = k_from_ranks(&code);
        if k != k_rank {
            return Err(CliError::internal(format!("k from Gröbner basis {k} differs from rank count {k_rank}")));
        }
        let mut tr = serde_json::Map::new();
        tr.insert("a1".into(), json!([0, t.alpha()]));
        tr.insert("a2".into(), json!([t.beta(), t.gamma()]));
        tr.insert("n".into(), json!(t.n()));
        tr.insert("k".into(), json!(k));
        if with_distance && k > 0 {
            let d = css_distance(&code, cfg.policy(t.n()), cfg.seed)?;
            tr.insert("d".into(), json!(d.d));
            tr.insert("d_exact".into(), json!(d.exact));
            tr.insert("d_side".into(), json!(format!("{:?}", d.side)));
        }
        report.insert("torus".into(), Value::Object(tr));
        if let Some((dir, fmt)) = emit_matrices {
            fs::create_dir_all(dir)?;
            for (name, m) in [("hx", &hx), ("hz", &hz)] {
                if matches!(fmt, MatrixFormat::Alist | MatrixFormat::Both) {
                    fs::write(dir.join(format!("{name}.alist")), m.to_alist())?;
                }
                if matches!(fmt, MatrixFormat::Dense | MatrixFormat::Both) {
                    fs::write(dir.join(format!("{name}.txt")), m.to_dense_text())?;
                }
            }
            report.insert("matrices".into(), json!(dir.display().to_string()));
        }
    } else if with_distance || emit_matrices.is_some() {
        return Err(CliError::input("--with-distance and --emit-matrices need --torus"));
    }
    emit(out, cfg.format, &Value::Object(report))
}

fn axis_report(f: &LaurentPoly, g: &LaurentPoly, axis: Axis) -> Result<Value, CliError> {
    let name = match axis {
        Axis::X => 'x',
        Axis::Y => 'y',
    };
    let h = to_gf2(&univariate_generator(f, g, axis)?, axis)?;
    let fac = factor_univariate(&h)?;
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(p, m)| {
            let order = p.order_irreducible().map(|o| json!(o)).unwrap_or(Value::Null);
            json!({ "factor": p.render(name), "multiplicity": m, "order": order })
        })
        .collect();
    Ok(json!({ "generator": h.render(name), "factors": factors, "period": h.period().map_err(AlgebraError::from)? }))
}

pub fn cmd_period(cfg: &Config, f: &str, g: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let (fp, gp) = (parse_poly(f)?, parse_poly(g)?);
    if !check_to_condition(&fp, &gp)? {
        return Err(CliError::input("topological-order condition violated: no finite period"));
    }
    let mut report = serde_json::Map::new();
    report.insert("h_y".into(), axis_report(&fp, &gp, Axis::Y)?);
    report.insert("h_x".into(), axis_report(&fp, &gp, Axis::X)?);
    let (lx, ly) = minimal_untwisted_torus(&fp, &gp)?;
    report.insert("L_x".into(), json!(lx));
    report.insert("L_y".into(), json!(ly));
    let t = minimal_full_k_torus(&fp, &gp)?;
    if (t.cells() as u128) < lx as u128 * ly as u128 {
        report.insert("twisted_torus".into(), json!({ "a1": [0, t.alpha()], "a2": [t.beta(), t.gamma()], "n": t.n() }));
    }
    emit(out, cfg.format, &Value::Object(report))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    cfg: &Config,
    n_min: usize,
    n_max: usize,
    out_dir: &Path,
    require_to: bool,
    dedup: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if n_min % 2 == 1 || n_max % 2 == 1 || n_min == 0 {
        return Err(CliError::input("n-min and n-max must be positive even integers"));
    }
    let n_values: Vec<usize> = (n_min..=n_max).step_by(2).collect();
    // the search escalates only promising candidates, so exact stays the default
    let policy = cfg.distance.map_or(DistancePolicy::ExactBelowCap { cap: cfg.cap }, |_| cfg.policy(0));
    let mut space = SearchSpace::new(n_values, policy);
    space.seed = cfg.seed;
    space.require_to = require_to;
    space.dedup = dedup;
    space.budget = cfg.budget;
    space.order = match cfg.optimality {
        OptimalityArg::MeritFirst => OptimalityOrder::MeritFirst,
        OptimalityArg::DistanceFirst => OptimalityOrder::DistanceFirst,
    };
    fs::create_dir_all(out_dir)?;
    let mut records = std::io::BufWriter::new(fs::File::create(out_dir.join("records.jsonl"))?);
    let summary = run_search(&space, cfg.workers, &mut records)?;
    records.flush()?;
    let optima = summary.optima();
    write_optima_csv(&optima, fs::File::create(out_dir.join("optima.csv"))?)?;
    print_records(cfg.format, &optima, out)?;
    Ok(if summary.budget_exhausted() { EXIT_BUDGET } else { EXIT_OK })
}

fn print_records(format: FormatArg, records: &[CodeRecord], out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        FormatArg::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
        FormatArg::Csv => write_optima_csv(records, &mut *out)?,
        FormatArg::Table => {
            writeln!(out, "{:<14} {:<28} {:<28} {:<10} {:<10} {:>7}", "[[n,k,d]]", "f", "g", "a1", "a2", "kd^2/n")?;
            for r in records {
                let merit = *r.merit.numer() as f64 / *r.merit.denom() as f64;
                writeln!(
                    out,
                    "{:<14} {:<28} {:<28} {:<10} {:<10} {:>7.2}{}",
                    format!("[[{},{},{}]]", r.n, r.k, r.d),
                    r.f,
                    r.g,
                    format!("(0,{})", r.torus.alpha()),
                    format!("({},{})", r.torus.beta(), r.torus.gamma()),
                    merit,
                    if r.d_exact { "" } else { "  (d upper bound)" }
                )?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_reduce1d(
    cfg: &Config,
    f: Option<&str>,
    g: Option<&str>,
    alpha: Option<i64>,
    gamma: i64,
    with_distance: bool,
    catalog: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if catalog {
        write_cycle_table(CYCLE_ROWS, &mut *out).map_err(|e| CliError::internal(e.to_string()))?;
        return Ok(());
    }
    let (Some(f), Some(g), Some(alpha)) = (f, g, alpha) else {
        return Err(CliError::input("reduce1d needs F, G and --alpha (or --catalog)"));
    };
    let (fp, gp) = (parse_poly(f)?, parse_poly(g)?);
    let torus = TwistedTorus::new(alpha, 1, gamma).map_err(|e| CliError::input(e.to_string()))?;
    let code = reduce_to_1d(&fp, &gp, &torus)?;
    let k = k_1d(&code);
    let k2 = k_on_torus_by_remainders(&fp, &gp, &torus)
        .or_else(|_| k_on_torus_direct_with(&fp, &gp, &torus, &cfg.budget));
    if let Ok(k2) = k2 {
        if k2 != k {
            return Err(CliError::internal(format!("cycle k {k} differs from torus k {k2}")));
        }
    }
    let mut report = serde_json::Map::new();
    report.insert("f_y".into(), json!(code.f().render('y')));
    report.insert("g_y".into(), json!(code.g().render('y')));
    report.insert("l".into(), json!(code.l()));
    report.insert("n".into(), json!(code.n()));
    report.insert("k".into(), json!(k));
    if with_distance && k > 0 {
        let (f1, g1, t1) = code.as_toric();
        let d = css_distance(&CssCode::new_unchecked(f1, g1, t1), cfg.policy(code.n() as usize), cfg.seed)?;
        report.insert("d".into(), json!(d.d));
        report.insert("d_exact".into(), json!(d.exact));
    }
    emit(out, cfg.format, &Value::Object(report))
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<i32, CliError> {
        let file = load_config(cli.global.config.as_deref())?;
        let mut cfg = Config::resolve(&cli.global, &file)?;
        match cli.command {
            Command::Analyze { f, g, torus, with_distance, emit_matrices, matrix_format } => {
                cmd_analyze(&cfg, &f, &g, torus, with_distance, emit_matrices.as_deref().map(|p| (p, matrix_format)), out)?;
                Ok(EXIT_OK)
            }
            Command::Period { f, g } => {
                cmd_period(&cfg, &f, &g, out)?;
                Ok(EXIT_OK)
            }
            Command::Search { n_min, n_max, out_dir, allow_non_coprime, no_dedup, optimality } => {
                if let Some(o) = optimality {
                    cfg.optimality = o;
                }
                if n_min > n_max {
                    fs::create_dir_all(&out_dir)?;
                    fs::write(out_dir.join("records.jsonl"), "")?;
                    write_optima_csv(&[], fs::File::create(out_dir.join("optima.csv"))?)?;
                    return Ok(EXIT_OK);
                }
                cmd_search(&cfg, n_min, n_max, &out_dir, !allow_non_coprime, !no_dedup, out)
            }
            Command::Reduce1d { f, g, alpha, gamma, with_distance, catalog } => {
                cmd_reduce1d(&cfg, f.as_deref(), g.as_deref(), alpha, gamma, with_distance, catalog, out)?;
                Ok(EXIT_OK)
            }
        }
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("gtcode").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analyze_reports() {
        let (code, out, _) = run_args(&["analyze", "1+x", "1+y", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["k_max"], 2);
        assert_eq!(v["to_condition"], true);
        let (code, out, _) = run_args(&["analyze", "1+x+x^-1*y^3", "1+y+x^3*y^-1", "--torus", "12,3,3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["torus"]["n"].as_u64(), v["torus"]["k"].as_u64()), (Some(72), Some(8)));
        let (code, out, _) = run_args(&["analyze", "1+x", "1+x"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.contains("to_condition: false"));
        let (code, _, err) = run_args(&["analyze", "1+z", "1+y"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn config_merging() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "cap = 9\nseed = 0x10\nformat = \"json\"\n").unwrap();
        let file = load_config(Some(&path)).unwrap();
        let flags = GlobalArgs { cap: Some(11), ..Default::default() };
        let cfg = Config::resolve(&flags, &file).unwrap();
        assert_eq!((cfg.cap, cfg.seed, cfg.format), (11, 16, FormatArg::Json));
        fs::write(&path, "bogus = 1\n").unwrap();
        assert_eq!(load_config(Some(&path)).unwrap_err().code, EXIT_INPUT);
        let bad = GlobalArgs { trials: Some(0), ..Default::default() };
        assert_eq!(Config::resolve(&bad, &ConfigFile::default()).unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn matrices_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let m = dir.path().join("m");
        let (code, _, _) =
            run_args(&["analyze", "1+x", "1+y", "--torus", "3,3,0", "--emit-matrices", m.to_str().unwrap()]);
        assert_eq!(code, 0);
        let dense = fs::read_to_string(m.join("hx.txt")).unwrap();
        assert_eq!(dense.lines().count(), 9);
        assert!(fs::read_to_string(m.join("hz.alist")).unwrap().starts_with("18 9"));
    }

    #[test]
    fn period_and_reduce() {
        let (code, out, _) = run_args(&["period", "1+x+x*y", "1+y+x*y", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["L_x"].as_u64().unwrap() > 0);
        let (code, out, _) =
            run_args(&["reduce1d", "1+x+x^-1*y^-3", "1+y+y^-6", "--alpha", "127", "--gamma", "25", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["f_y"], "1 + y^22 + y^102");
        assert_eq!(v["k"], 14);
        let (code, _, _) = run_args(&["reduce1d", "1+x", "1+y", "--alpha", "5"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn search_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, out, _) = run_args(&["search", "--n-min", "12", "--n-max", "14", "--out-dir", d, "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.contains("[[12,4,2]]") && out.contains("[[14,6,2]]"));
        let lines = fs::read_to_string(dir.path().join("records.jsonl")).unwrap();
        assert!(lines.lines().all(|l| CodeRecord::from_json_line(l).is_ok()));
        let empty = dir.path().join("e");
        let (code, _, _) =
            run_args(&["search", "--n-min", "20", "--n-max", "18", "--out-dir", empty.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(fs::read_to_string(empty.join("records.jsonl")).unwrap(), "");
    }
}
