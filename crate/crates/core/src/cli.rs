//! The `hecke` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ff::FieldCtx;
use crate::gln::{self, ho_isomorphic, GlnError, SimpleJson, SimpleSS};
use crate::haff::{self, has_finite_pd, is_supersingular, s_xi, stabilizer};
use crate::oracle::{self, OracleError};
use crate::weyl::GroupSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Simple supersingular pro-p Iwahori-Hecke modules of GL-product groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Faces of the closed fundamental chamber, with closure relations.
    Faces {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Characters (J, xi) of the affine Hecke algebra.
    Chars {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Only supersingular characters.
        #[arg(long)]
        supersingular: bool,
        #[arg(long, default_value_t = haff::DEFAULT_CHAR_CAP)]
        cap: usize,
    },
    /// Decide Mod(H)- and Ho(H)-isomorphism of two simple modules given as JSON files.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        a: PathBuf,
        b: PathBuf,
    },
    /// Both decisions for every pair of enumerated simple modules.
    Sweep {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 1)]
        field_degree: u32,
        #[arg(long, default_value_t = gln::DEFAULT_SIMPLE_CAP)]
        cap: usize,
    },
    /// Compare every predicate with the brute-force oracle.
    OracleCheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 1)]
        field_degree: u32,
        /// Maximum instances per check; larger sweeps are truncated with a warning.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// GL factor sizes, e.g. 3,2.
    #[arg(long, value_delimiter = ',')]
    factors: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    torus_rank: usize,
    #[arg(long)]
    q: Option<u64>,
    /// Group as JSON {"factors":[..],"torus_rank":..,"q":..}; replaces the flags above.
    #[arg(long, conflicts_with_all = ["factors", "torus_rank", "q"])]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// A rendered result: fixed headers, string cells, and the JSON body.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
    /// Lines printed before the table in text mode.
    preamble: Vec<String>,
}

impl Table {
    fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(domain),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).map_err(domain)?;
                for r in &self.rows {
                    w.write_record(r).map_err(domain)?;
                }
                let bytes = w.into_inner().map_err(domain)?;
                String::from_utf8(bytes).map_err(domain)
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let mut s = String::new();
                for p in &self.preamble {
                    s.push_str(p);
                    s.push('\n');
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> =
                        cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                    padded.join("  ").trim_end().to_string()
                };
                s.push_str(&line(self.headers.clone()));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&line(r.iter().map(String::as_str).collect()));
                    s.push('\n');
                }
                Ok(s)
            }
        }
    }
}

fn load_spec(a: &SpecArgs) -> Result<GroupSpec, CliError> {
    if let Some(path) = &a.spec {
        let text = read(path)?;
        return serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())));
    }
    let q = a.q.ok_or_else(|| CliError::Usage("either --q (with --factors/--torus-rank) or --spec is required".into()))?;
    GroupSpec::new(a.factors.clone(), a.torus_rank, q).map_err(domain)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn field_for(spec: &GroupSpec, degree: u32) -> Result<std::sync::Arc<FieldCtx>, CliError> {
    FieldCtx::new(spec.p(), degree).map_err(domain)
}

fn names(spec: &GroupSpec, set: crate::weyl::NodeSet) -> String {
    spec.diagram().names_of(set).join(" ")
}

fn cmd_faces(spec: &GroupSpec) -> Result<Table, CliError> {
    let d = spec.diagram();
    let faces = d.faces();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        let ty = d.face_type(f).map_err(domain)?;
        let closure: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(k, g)| *k != i && d.closure_leq(f, g).unwrap_or(false))
            .map(|(k, _)| k)
            .collect();
        let closure_s = closure.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        rows.push(vec![
            i.to_string(),
            names(spec, f.nodes()),
            ty.to_string(),
            ty.order().to_string(),
            closure_s,
        ]);
        items.push(json!({
            "id": i,
            "nodes": d.names_of(f.nodes()),
            "type": ty.to_string(),
            "weyl_order": ty.order() as u64,
            "closure": closure,
        }));
    }
    Ok(Table {
        headers: vec!["id", "nodes", "type", "weyl_order", "closure"],
        rows,
        json: json!({"schema": 1, "command": "faces", "spec": spec, "faces": items}),
        preamble: vec![format!("{}: {} faces (closure lists faces F' with S_F ⊆ S_F')", spec.label(), faces.len())],
    })
}

fn cmd_chars(spec: &GroupSpec, only_ss: bool, cap: usize) -> Result<Table, CliError> {
    let chars = haff::all_chars(spec, cap).map_err(domain)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut id = 0;
    for c in &chars {
        let ss = is_supersingular(spec, c);
        if only_ss && !ss {
            continue;
        }
        let fin = if ss { has_finite_pd(spec, c).map_err(domain)?.to_string() } else { "-".into() };
        let d = stabilizer(spec, c).d;
        let d_s = d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        rows.push(vec![
            id.to_string(),
            c.display(spec),
            names(spec, c.j()),
            names(spec, s_xi(spec, c.xi())),
            ss.to_string(),
            fin.clone(),
            d_s,
        ]);
        items.push(json!({
            "id": id,
            "chi": c.to_json(spec),
            "S_xi": spec.diagram().names_of(s_xi(spec, c.xi())),
            "supersingular": ss,
            "finite_pd": if ss { json!(fin == "true") } else { Value::Null },
            "stabilizer": d,
        }));
        id += 1;
    }
    Ok(Table {
        headers: vec!["id", "chi", "J", "S_xi", "supersingular", "finite_pd", "stabilizer"],
        rows,
        json: json!({"schema": 1, "command": "chars", "spec": spec, "chars": items}),
        preamble: vec![format!("{}: {id} characters", spec.label())],
    })
}

fn load_simple(spec: &GroupSpec, path: &Path) -> Result<SimpleSS, CliError> {
    let raw: SimpleJson =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    SimpleSS::from_json(spec, &raw).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn cmd_classify(spec: &GroupSpec, a: &Path, b: &Path) -> Result<Table, CliError> {
    let (m, n) = (load_simple(spec, a)?, load_simple(spec, b)?);
    let c = ho_isomorphic(&m, &n).map_err(|e| match e {
        GlnError::FinitePd(which) => {
            let path = if which == "a" { a } else { b };
            CliError::Domain(format!(
                "{}: module has finite projective dimension (every GL factor is GL2 and S_xi = S); \
                 it is zero in Ho(H) and the classification applies only to modules of infinite projective dimension",
                path.display()
            ))
        }
        e => domain(e),
    })?;
    let witness = c.witness.to_string();
    Ok(Table {
        headers: vec!["mod_iso", "ho_iso", "witness"],
        rows: vec![vec![c.mod_iso.to_string(), c.ho_iso.to_string(), witness]],
        json: json!({
            "schema": 1,
            "command": "classify",
            "spec": spec,
            "a": m.to_json(),
            "b": n.to_json(),
            "mod_iso": c.mod_iso,
            "ho_iso": c.ho_iso,
            "witness": c.witness,
        }),
        preamble: vec![format!("a: {}", m.describe()), format!("b: {}", n.describe())],
    })
}

fn cmd_sweep(spec: &GroupSpec, degree: u32, cap: usize) -> Result<Table, CliError> {
    let field = field_for(spec, degree)?;
    let (simples, rows) = gln::sweep(spec, &field, cap).map_err(domain)?;
    let table_rows = rows
        .iter()
        .map(|r| vec![r.id_a.to_string(), r.id_b.to_string(), r.mod_iso.to_string(), r.ho_iso.to_string(), r.witness.clone()])
        .collect();
    let differ = rows.iter().filter(|r| r.mod_iso != r.ho_iso).count();
    let mut preamble = vec![format!(
        "{} over GF({}^{degree}): {} simple modules of infinite projective dimension, {} pairs, {differ} with ho_iso != mod_iso",
        spec.label(),
        spec.p(),
        simples.len(),
        rows.len()
    )];
    preamble.extend(simples.iter().enumerate().map(|(i, m)| format!("  {i}: {}", m.describe())));
    Ok(Table {
        headers: vec!["id_a", "id_b", "mod_iso", "ho_iso", "witness"],
        rows: table_rows,
        json: json!({
            "schema": 1,
            "command": "sweep",
            "spec": spec,
            "simples": simples.iter().map(SimpleSS::to_json).collect::<Vec<_>>(),
            "pairs": rows,
        }),
        preamble,
    })
}

fn cmd_oracle_check(spec: &GroupSpec, degree: u32, cap: usize) -> Result<(Table, usize, Vec<String>), CliError> {
    let field = field_for(spec, degree)?;
    let rep = oracle::run_oracle_check(spec, &field, cap).map_err(|e| match e {
        OracleError::NonPrimeQ(_) => CliError::Domain(format!("{e}; the oracle covers q = p only")),
        e => domain(e),
    })?;
    let bad = rep.disagreements();
    let mut preamble = vec![format!("{} over GF({}^{degree}): {} rows, {bad} disagreements", spec.label(), spec.p(), rep.rows.len())];
    for (check, n, d) in rep.summary() {
        preamble.push(format!("  {check}: {n} checked, {d} disagree"));
    }
    let rows = rep
        .rows
        .iter()
        .map(|r| vec![r.check.clone(), r.instance.clone(), r.predicate.clone(), r.oracle.clone(), r.agree.to_string()])
        .collect();
    let table = Table {
        headers: vec!["check", "instance", "predicate_value", "oracle_value", "agree"],
        rows,
        json: json!({"schema": 1, "command": "oracle-check", "spec": spec, "disagreements": bad, "report": rep}),
        preamble,
    };
    Ok((table, bad, rep.warnings))
}

/// Runs the CLI on explicit arguments, writing to the given streams, and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, stderr) {
        Ok((text, out, code)) => {
            let written = match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                    // reader went away, e.g. `| head`
                    Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                    r => r.map_err(|e| e.to_string()),
                },
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_DOMAIN
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: Cli, stderr: &mut dyn Write) -> Result<(String, Option<PathBuf>, i32), CliError> {
    let (table, out, code) = match cli.cmd {
        Cmd::Faces { spec, out } => (cmd_faces(&load_spec(&spec)?)?, out, EXIT_OK),
        Cmd::Chars { spec, out, supersingular, cap } => (cmd_chars(&load_spec(&spec)?, supersingular, cap)?, out, EXIT_OK),
        Cmd::Classify { spec, out, a, b } => (cmd_classify(&load_spec(&spec)?, &a, &b)?, out, EXIT_OK),
        Cmd::Sweep { spec, out, field_degree, cap } => (cmd_sweep(&load_spec(&spec)?, field_degree, cap)?, out, EXIT_OK),
        Cmd::OracleCheck { spec, out, field_degree, cap } => {
            let (t, bad, warnings) = cmd_oracle_check(&load_spec(&spec)?, field_degree, cap)?;
            let mut msg = String::new();
            for w in &warnings {
                let _ = writeln!(msg, "warning: {w}");
            }
            if bad > 0 {
                let _ = writeln!(msg, "error: {bad} oracle disagreements");
            }
            let _ = stderr.write_all(msg.as_bytes());
            (t, out, if bad > 0 { EXIT_DISAGREE } else { EXIT_OK })
        }
    };
    Ok((table.render(out.format)?, out.out, code))
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
