//! Command-line front end.
//!
//! Every subcommand builds a [`Table`] that is rendered as aligned text, TSV
//! or JSON. [`run`] returns the process exit code: 0 on success, 1 when
//! `check` finds a failure, 2 on usage or configuration errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cartan::{build_cartan, Family, QuiverType};
use crate::cellbasis::{
    enumerate_cyclotomic_basis, finite_dot_slots, klr_gdim, klr_tableau_count, sandwich_gdim, sandwich_spec,
    total_dim, wklrw_truncated_gdim, Algebra,
};
use crate::coords::Context;
use crate::diagrams::{dotidem, dotidem_dots, render_ascii, young_classify, StraightLineDiagram};
use crate::laurent::Laurent;
use crate::partitions::{enumerate_hparts, enumerate_parts, MultiPartition};
use crate::relations::{catalog, partner, pattern_degree, verify_homogeneity};
use crate::tableaux::{enumerate_sstd, standard_tableaux, tableau_degree, Tableau};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "wklrw", version, about = "Cellular bases and graded dimensions of weighted KLRW algebras")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[command(subcommand)]
    pub cmd: Command,
}

/// Parameters shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Quiver family: atwo or dtwo.
    #[arg(long, global = true, default_value = "dtwo")]
    pub family: Family,
    #[arg(long, global = true, default_value_t = 2)]
    pub e: usize,
    /// Number of solid strings.
    #[arg(long, global = true, default_value_t = 0)]
    pub n: usize,
    /// Comma-separated red residues; the length is the level.
    #[arg(long, global = true, default_value = "0")]
    pub rho: String,
    /// Comma-separated strictly increasing red positions (default 0,1,...).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// ε used when coordinates are shown as decimals.
    #[arg(long, global = true, default_value_t = 0.001)]
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Wklrw,
    Klr,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List multipartitions with residues, dots and slots.
    Partitions {
        /// Include multipartitions with affine nodes.
        #[arg(long)]
        affine: bool,
    },
    /// Show the dotted idempotent of a shape.
    Idempotent {
        /// Shape such as `4,2` or `2|1`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// List the tableaux of a shape with their degrees.
    Tableaux {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Type of the semistandard tableaux (default: the shape itself).
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: Option<String>,
        /// List standard tableaux instead.
        #[arg(long)]
        standard: bool,
    },
    /// Graded dimension of an idempotent truncation.
    Gdim {
        /// Residue sequence, comma separated.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = AlgebraArg::Wklrw)]
        algebra: AlgebraArg,
    },
    /// Tableau counts and KLR graded dimensions for both families.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Recover the multipartition of a dotted idempotent given as JSON.
    Classify { diagram: PathBuf },
    /// Run the homogeneity, counting and fixture checks.
    Check {
        /// Run a small subset.
        #[arg(long)]
        quick: bool,
        /// Extra graded-dimension fixtures as a JSON list.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Dump the relation catalog.
    Relations,
}

/// Rows of output with a JSON rendering.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// Replaces the aligned table in text output.
    pub text: Option<String>,
    /// Set by `check` when a check fails.
    pub failed: bool,
}

impl Table {
    fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Renders in the requested format; JSON falls back to the rows.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = if self.json.is_null() { self.rows_json() } else { self.json.clone() };
                serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
            }
            Format::Tsv => {
                let mut s = self.headers.join("\t") + "\n";
                for r in &self.rows {
                    s += &(r.join("\t") + "\n");
                }
                s
            }
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                None => self.aligned(),
            },
        }
    }

    fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.headers.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect(),
        )
    }

    fn aligned(&self) -> String {
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (k, c) in cells.iter().enumerate() {
                let pad = width[k].saturating_sub(c.chars().count());
                s += c;
                if k + 1 < cells.len() {
                    s += &" ".repeat(pad + 2);
                }
            }
            s + "\n"
        };
        let mut s = line(&self.headers);
        for r in &self.rows {
            s += &line(r);
        }
        s
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() || s == "-" || s == "∅" {
        return Ok(vec![]);
    }
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry {p:?}"))))
        .collect()
}

/// Parses `4,2`, `(4,2)`, `2|1` or `∅` into a validated multipartition.
pub fn parse_shape(ctx: &Context, s: &str) -> Result<MultiPartition> {
    let s = s.trim().trim_matches(|c| c == '(' || c == ')');
    let comps: Vec<Vec<usize>> = s.split('|').map(|c| parse_list(c, "part")).collect::<Result<_>>()?;
    MultiPartition::new(ctx, comps)
}

/// Builds the context described by the shared flags.
pub fn context(cfg: &ConfigArgs) -> Result<Context> {
    let rho: Vec<usize> = parse_list(&cfg.rho, "rho")?;
    let kappa: Vec<i64> = match &cfg.kappa {
        Some(k) => parse_list(k, "kappa")?,
        None => (0..rho.len() as i64).collect(),
    };
    Context::new(QuiverType::new(cfg.family, cfg.e)?, cfg.n, kappa, rho)
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_partitions(ctx: &Context, affine: bool) -> Table {
    let pool = enumerate_parts(ctx);
    let shapes = if affine { enumerate_hparts(ctx) } else { pool.clone() };
    let mut t = Table::new(&["shape", "residues", "dots", "finite_slots", "affine_slots"]);
    let mut js = Vec::new();
    for lam in &shapes {
        let spec = sandwich_spec(ctx, lam, &pool);
        let dots = dotidem_dots(ctx, lam);
        let res = lam.residue_sequence(ctx);
        t.push(vec![
            lam.to_string(),
            join(&res),
            join(&dots),
            join(spec.finite.iter().map(|s| format!("{}:{}", s.k, s.degree))),
            join(&spec.affine),
        ]);
        js.push(json!({"shape": lam.to_json(ctx), "residues": res, "dots": dots, "slots": spec}));
    }
    t.json = Value::Array(js);
    t
}

fn cmd_idempotent(ctx: &Context, lambda: &str, eps: f64) -> Result<Table> {
    let lam = parse_shape(ctx, lambda)?;
    let ctx = ctx.with_n(lam.size());
    let d = dotidem(&ctx, &lam);
    let mut t = Table::new(&["shape", "residues", "dots", "degree", "strings"]);
    let strings = render_ascii(&ctx.qt, &d, eps);
    t.push(vec![
        lam.to_string(),
        join(lam.residue_sequence(&ctx)),
        join(dotidem_dots(&ctx, &lam)),
        d.degree(&ctx).to_string(),
        strings.clone(),
    ]);
    t.text = Some(format!("{lam}\n{strings}\n"));
    t.json = serde_json::to_value(&d).expect("diagrams serialize");
    Ok(t)
}

fn cmd_tableaux(ctx: &Context, lambda: &str, ty: Option<&str>, standard: bool) -> Result<Table> {
    let lam = parse_shape(ctx, lambda)?;
    let ctx = ctx.with_n(lam.size());
    let tabs: Vec<Tableau> = if standard {
        standard_tableaux(&ctx, &lam)
    } else {
        let mu = match ty {
            Some(s) => parse_shape(&ctx, s)?,
            None => lam.clone(),
        };
        enumerate_sstd(&ctx, &lam, &mu)?
    };
    let mut t = Table::new(&["index", "entries", "degree"]);
    let mut js = Vec::new();
    for (k, tab) in tabs.iter().enumerate() {
        let deg = tableau_degree(&ctx, tab);
        t.push(vec![k.to_string(), join(tab.entries(&ctx)), deg.to_string()]);
        js.push(json!({"tableau": tab.to_json(&ctx), "degree": deg}));
    }
    t.json = Value::Array(js);
    Ok(t)
}

fn gdim_row(t: &mut Table, label: String, g: &Laurent) {
    t.push(vec![label, g.to_string(), g.eval_one().to_string()]);
}

fn cmd_gdim(ctx: &Context, beta: Option<&str>, lambda: Option<&str>, algebra: AlgebraArg) -> Result<Table> {
    let mut t = Table::new(&["input", "gdim", "dim"]);
    match (beta, lambda) {
        (Some(b), None) => {
            if algebra != AlgebraArg::Klr {
                return Err(Error::InvalidConfig("--beta requires --algebra klr".into()));
            }
            let beta: Vec<usize> = parse_list(b, "beta")?;
            let g = klr_gdim(ctx, &beta);
            gdim_row(&mut t, format!("β=({})", join(&beta)), &g);
        }
        (None, Some(l)) => {
            let lam = parse_shape(ctx, l)?;
            let ctx = ctx.with_n(lam.size());
            let g = match algebra {
                AlgebraArg::Wklrw => wklrw_truncated_gdim(&ctx, &lam)?,
                AlgebraArg::Klr => {
                    let pool = enumerate_parts(&ctx);
                    let spec = sandwich_spec(&ctx, &lam, &pool);
                    let sw = sandwich_gdim(&ctx, &lam, &spec, true, None)?;
                    let yd = crate::diagrams::dotidem_degree(&ctx, &lam);
                    let degs: Vec<i64> = standard_tableaux(&ctx, &lam).iter().map(|s| tableau_degree(&ctx, s)).collect();
                    let mut g = Laurent::zero();
                    for a in &degs {
                        for b in &degs {
                            g = g.add(&sw.shift(a + b + yd));
                        }
                    }
                    g
                }
            };
            gdim_row(&mut t, format!("λ={lam}"), &g);
        }
        _ => return Err(Error::InvalidConfig("give exactly one of --beta and --lambda".into())),
    }
    Ok(t)
}

fn cmd_compare(ctx: &Context, beta: &str) -> Result<Table> {
    let beta: Vec<usize> = parse_list(beta, "beta")?;
    let mut t = Table::new(&["family", "beta", "tableaux", "gdim"]);
    for family in [Family::Atwo, Family::Dtwo] {
        let qt = QuiverType::new(family, ctx.qt.e)?;
        let c = Context { qt, cd: build_cartan(qt), ..ctx.with_n(beta.len()) };
        t.push(vec![
            family.to_string(),
            format!("({})", join(&beta)),
            klr_tableau_count(&c, &beta).to_string(),
            klr_gdim(&c, &beta).to_string(),
        ]);
    }
    Ok(t)
}

fn cmd_classify(ctx: &Context, path: &PathBuf) -> Result<Table> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let d: StraightLineDiagram = serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
    let found = young_classify(ctx, &d);
    let mut t = Table::new(&["result"]);
    t.push(vec![found.as_ref().map_or("none".to_string(), |l| l.to_string())]);
    t.json = match found {
        Some(l) => serde_json::to_value(l.to_json(ctx)).expect("shapes serialize"),
        None => Value::Null,
    };
    if t.json.is_null() {
        t.json = json!("none");
    }
    Ok(t)
}

/// A graded-dimension fixture for `check --fixtures`.
#[derive(Debug, Clone, Deserialize)]
pub struct GdimFixture {
    pub family: Family,
    pub e: usize,
    pub rho: usize,
    pub lambda: String,
    pub gdim: String,
}

struct Report {
    table: Table,
}

impl Report {
    fn record(&mut self, name: &str, pass: bool, detail: String) {
        self.table.failed |= !pass;
        self.table.push(vec![name.into(), if pass { "PASS" } else { "FAIL" }.into(), detail]);
    }
}

fn check_fixture(fx: &GdimFixture) -> Result<(bool, String)> {
    let lam_ctx = Context::level_one(fx.family, fx.e, 0, fx.rho)?;
    let lam = parse_shape(&lam_ctx, &fx.lambda)?;
    let ctx = lam_ctx.with_n(lam.size());
    let got = wklrw_truncated_gdim(&ctx, &lam)?;
    let want: Laurent = fx.gdim.parse()?;
    Ok((got == want, format!("expected {want}, got {got}")))
}

fn cmd_check(quick: bool, fixtures: Option<&PathBuf>) -> Result<Table> {
    let start = Instant::now();
    let mut rep = Report { table: Table::new(&["check", "status", "detail"]) };
    let es: &[usize] = if quick { &[2] } else { &[2, 3, 4] };
    for family in [Family::Atwo, Family::Dtwo] {
        for &e in es {
            let qt = QuiverType::new(family, e)?;
            let cd = build_cartan(qt);
            let bad: Vec<String> = catalog(&qt)
                .iter()
                .flat_map(|r| [r.clone(), partner(r)])
                .filter(|r| !verify_homogeneity(r, &cd))
                .map(|r| format!("{} (lhs degree {})", r.name, pattern_degree(&cd, &r.strands, &r.lhs)))
                .collect();
            rep.record(&format!("homogeneity {family} e={e}"), bad.is_empty(), bad.join("; "));
        }
    }
    let max_n = if quick { 2 } else { 4 };
    for family in [Family::Atwo, Family::Dtwo] {
        for rho in 0..=2 {
            for n in 0..=max_n {
                let ctx = Context::level_one(family, 2, n, rho)?;
                let formula = total_dim(&ctx).weighted as usize;
                let basis = enumerate_cyclotomic_basis(&ctx, Algebra::Weighted).len();
                rep.record(
                    &format!("rank {family} e=2 ρ={rho} n={n}"),
                    formula == basis,
                    format!("formula {formula}, basis {basis}"),
                );
            }
        }
    }
    let mut fxs = vec![GdimFixture {
        family: Family::Dtwo,
        e: 2,
        rho: 0,
        lambda: "4,2".into(),
        gdim: "q^-2+2+2q^2+2q^4+q^6".into(),
    }];
    if let Some(p) = fixtures {
        let raw = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        fxs.extend(serde_json::from_str::<Vec<GdimFixture>>(&raw).map_err(|e| Error::Parse(e.to_string()))?);
    }
    for fx in &fxs {
        let (pass, detail) = check_fixture(fx)?;
        rep.record(&format!("gdim {} e={} ρ={} λ={}", fx.family, fx.e, fx.rho, fx.lambda), pass, detail);
    }
    let klr = [
        (Family::Atwo, 0, vec![0, 1, 2], "1+q^2+q^4+q^6"),
        (Family::Dtwo, 0, vec![0, 1, 2], "1+q^2"),
        (Family::Atwo, 2, vec![2, 1, 0], "1"),
        (Family::Dtwo, 2, vec![2, 1, 0], "1+q^2"),
    ];
    for (family, rho, beta, want) in klr {
        let ctx = Context::level_one(family, 2, beta.len(), rho)?;
        let got = klr_gdim(&ctx, &beta);
        rep.record(
            &format!("klr {family} ρ={rho} β=({})", join(&beta)),
            got.to_string() == want,
            format!("expected {want}, got {got}"),
        );
    }
    let ctx = Context::level_one(Family::Dtwo, 2, 6, 0)?;
    let lam = MultiPartition::single(&ctx, &[4, 2])?;
    let slots = finite_dot_slots(&ctx, &lam, &enumerate_parts(&ctx));
    rep.record("slots (4,2)", slots.len() == 1 && slots[0].degree == 4, format!("{slots:?}"));
    let mut summary = String::new();
    let _ = write!(summary, "{:.2}s", start.elapsed().as_secs_f64());
    rep.record("elapsed", true, summary);
    Ok(rep.table)
}

fn cmd_relations(ctx: &Context) -> Table {
    let cat = catalog(&ctx.qt);
    let mut t = Table::new(&["name", "provenance", "strands", "degree", "terms", "homogeneous"]);
    for r in &cat {
        t.push(vec![
            r.name.clone(),
            format!("{:?}", r.provenance),
            r.strands.len().to_string(),
            pattern_degree(&ctx.cd, &r.strands, &r.lhs).to_string(),
            r.rhs.len().to_string(),
            verify_homogeneity(r, &ctx.cd).to_string(),
        ]);
    }
    t.json = serde_json::to_value(&cat).expect("relations serialize");
    t
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Table> {
    let ctx = context(&cli.cfg)?;
    match &cli.cmd {
        Command::Partitions { affine } => Ok(cmd_partitions(&ctx, *affine)),
        Command::Idempotent { lambda } => cmd_idempotent(&ctx, lambda, cli.cfg.eps),
        Command::Tableaux { lambda, ty, standard } => cmd_tableaux(&ctx, lambda, ty.as_deref(), *standard),
        Command::Gdim { beta, lambda, algebra } => cmd_gdim(&ctx, beta.as_deref(), lambda.as_deref(), *algebra),
        Command::Compare { beta } => cmd_compare(&ctx, beta),
        Command::Classify { diagram } => cmd_classify(&ctx, diagram),
        Command::Check { quick, fixtures } => cmd_check(*quick, fixtures.as_ref()),
        Command::Relations => Ok(cmd_relations(&ctx)),
    }
}

/// Parses `args` (including the program name), runs and writes the output.
/// Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let table = match execute(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let out = table.render(cli.cfg.format);
    match &cli.cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &out) {
                eprintln!("error: {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{out}"),
    }
    i32::from(table.failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(args: &[&str]) -> Result<Table> {
        let cli = Cli::try_parse_from(std::iter::once("wklrw").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn partitions_rows() {
        let t = table(&["partitions", "--family", "atwo", "--n", "3"]).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(table(&["partitions"]).unwrap().rows.len(), 1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["wklrw", "partitions", "--rho", "0,1", "--kappa", "3,1"]), 2);
        assert_eq!(run(["wklrw", "bogus"]), 2);
        assert!(table(&["gdim"]).is_err());
    }

    #[test]
    fn gdim_outputs() {
        let t = table(&["gdim", "--lambda", "4,2"]).unwrap();
        assert_eq!(t.rows[0][1], "q^-2+2+2q^2+2q^4+q^6");
        assert_eq!(t.rows[0][2], "8");
        let t = table(&["gdim", "--family", "atwo", "--beta", "0,1,2", "--algebra", "klr"]).unwrap();
        assert_eq!(t.rows[0][1], "1+q^2+q^4+q^6");
        let t = table(&["gdim", "--beta", "", "--algebra", "klr"]).unwrap();
        assert_eq!(t.rows[0][1], "1");
        let t = table(&["gdim", "--beta", "1,1", "--algebra", "klr"]).unwrap();
        assert_eq!(t.rows[0][1], "0");
    }

    #[test]
    fn compare_table() {
        let t = table(&["compare", "--beta", "0,1,2"]).unwrap();
        assert_eq!(t.rows[0][2..], ["2".to_string(), "1+q^2+q^4+q^6".to_string()]);
        assert_eq!(t.rows[1][2..], ["1".to_string(), "1+q^2".to_string()]);
        let t = table(&["compare", "--beta", ""]).unwrap();
        assert!(t.rows.iter().all(|r| r[3] == "1"));
    }

    #[test]
    fn shapes_parse() {
        let ctx = Context::new(QuiverType::new(Family::Atwo, 2).unwrap(), 3, vec![0, 1], vec![0, 0]).unwrap();
        assert_eq!(parse_shape(&ctx, "2|1").unwrap().to_string(), "(2|1)");
        assert!(parse_shape(&ctx, "1,2").is_err());
    }

    #[test]
    fn formats() {
        let t = table(&["partitions", "--family", "atwo", "--n", "2"]).unwrap();
        assert_eq!(t.render(Format::Tsv).lines().count(), 3);
        let v: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
    }
}
