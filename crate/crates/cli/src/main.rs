use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harmonica::harmonic::{self, harmonic_space, is_harmonic, primitive_harmonic_space};
use harmonica::hermitian::primitive_decompose;
use harmonica::structure::{check_almost_kahler, check_integrability_relations};
use harmonica::theorems::{run_suite, verify_relations};
use harmonica::{
    catalog, load_spec, parse_form, Error, FormPrinter, LaplacianKind, ManifoldSpec, OperatorKind,
    Status, CATALOG_NAMES,
};
use serde_json::json;

const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "harmonica",
    version,
    about = "Exact invariant harmonic forms on almost Hermitian nilmanifolds"
)]
struct Cli {
    /// Plain ASCII output (phi, del, delbar) instead of Unicode.
    #[arg(long, global = true, env = "HARMONICA_ASCII", value_parser = clap::builder::BoolishValueParser::new())]
    ascii: bool,
    /// Compute on specs that fail structural validation.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check d^2 = 0, the seven component identities and the almost Kähler condition.
    Validate(SpecArg),
    /// Invariant harmonic spaces: one bidegree with its basis, or the full table.
    Harmonics {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, short)]
        laplacian: LaplacianKind,
        #[arg(long, short, value_parser = parse_bidegree)]
        bidegree: Option<(usize, usize)>,
        /// Intersect with the primitive forms.
        #[arg(long)]
        primitive: bool,
    },
    /// Primitive decomposition of a form, or a basis of P^{p,q}.
    Primitive {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, short, conflicts_with = "bidegree")]
        form: Option<String>,
        #[arg(long, short, value_parser = parse_bidegree, required_unless_present = "form")]
        bidegree: Option<(usize, usize)>,
    },
    /// Relations among the primitive bc, del, delbar and a harmonic spaces.
    Relations {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, short, value_parser = parse_bidegree)]
        bidegree: Option<(usize, usize)>,
    },
    /// Exact harmonicity certificate for one form.
    CheckForm {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, short)]
        form: String,
        #[arg(long, short)]
        laplacian: LaplacianKind,
    },
    /// Dimension tables and every verification statement.
    Report {
        #[command(flatten)]
        spec: SpecArg,
        /// Emit the machine-readable document instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SpecArg {
    /// Catalog name or path to a spec file.
    spec: String,
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(p)?, parse(q)?))
}

/// Exit-code contract: 0 ok, 1 refuted, 2 input errors, 3 unsupported.
enum Failure {
    Refuted(String),
    Input(String),
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Refuted(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Refuted(m) | Failure::Input(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::Schema { .. }
            | Error::FormSyntax { .. }
            | Error::Validation(_)
            | Error::UnknownSpec(_)
            | Error::CoframeMismatch(..)
            | Error::UndeclaredSymbol(_)
            | Error::UndeclaredConjugate(_) => Failure::Input(msg),
            _ => Failure::Unsupported(msg),
        }
    }
}

type CmdResult = Result<String, Failure>;

struct Ctx {
    ascii: bool,
    force: bool,
}

impl Ctx {
    fn printer(&self) -> FormPrinter {
        FormPrinter::new(self.ascii)
    }

    fn kahler(&self) -> &'static str {
        if self.ascii {
            "Kahler"
        } else {
            "Kähler"
        }
    }

    /// Operator words in condition labels, e.g. `del delbar *`.
    fn operator_word(&self, label: &str) -> String {
        if self.ascii {
            return label.to_string();
        }
        label
            .split_whitespace()
            .map(|t| t.parse::<OperatorKind>().map_or(t, |k| k.symbol(false)))
            .collect::<Vec<_>>()
            .concat()
    }

    fn load(&self, arg: &SpecArg) -> Result<ManifoldSpec, Failure> {
        if CATALOG_NAMES.contains(&arg.spec.as_str()) {
            return Ok(catalog(&arg.spec)?);
        }
        let path = Path::new(&arg.spec);
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::Input(format!(
                "`{}` is neither a catalog spec ({}) nor a readable file: {e}",
                arg.spec,
                CATALOG_NAMES.join(", ")
            ))
        })?;
        Ok(load_spec(&text)?)
    }

    /// Loads and refuses structurally broken specs unless forced.
    fn load_checked(&self, arg: &SpecArg) -> Result<ManifoldSpec, Failure> {
        let spec = self.load(arg)?;
        let report = check_integrability_relations(&spec);
        if !report.passed() && !self.force {
            return Err(Failure::Refuted(format!(
                "{}spec `{}` fails structural validation; rerun with --force to compute anyway",
                report.render(self.printer()),
                spec.name()
            )));
        }
        Ok(spec)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_validate(ctx: &Ctx, arg: &SpecArg) -> CmdResult {
    let spec = ctx.load(arg)?;
    let structure = check_integrability_relations(&spec);
    let ak = check_almost_kahler(&spec);
    let mut out = format!("spec {} (n = {})\n", spec.name(), spec.n());
    out.push_str(&structure.render(ctx.printer()));
    out.push('\n');
    let flag = |k: &str| ak.flags.get(k).copied().unwrap_or(false);
    let _ = writeln!(
        out,
        "almost {}: {}, integrable: {}",
        ctx.kahler(),
        yes_no(flag("almost-kahler")),
        yes_no(flag("integrable"))
    );
    if structure.passed() {
        Ok(out)
    } else {
        Err(Failure::Refuted(out))
    }
}

fn bidegree_cells(n: usize, one: Option<(usize, usize)>) -> Vec<(usize, usize)> {
    match one {
        Some(b) => vec![b],
        None => (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect(),
    }
}

fn dimension_table(
    spec: &ManifoldSpec,
    kind: LaplacianKind,
    primitive: bool,
) -> Result<String, Failure> {
    let n = spec.n();
    let mut out = format!(
        "h^{{p,q}}_{kind}{} ({}), rows p, columns q\n",
        if primitive { " cap P" } else { "" },
        spec.name()
    );
    out.push_str("     ");
    for q in 0..=n {
        let _ = write!(out, "{:>4}", format!("q={q}"));
    }
    out.push('\n');
    for p in 0..=n {
        let _ = write!(out, "p={p:<3}");
        for q in 0..=n {
            let cell = if primitive && p + q > n {
                "-".to_string()
            } else if primitive {
                primitive_harmonic_space(spec, kind, p, q)?
                    .dim()
                    .to_string()
            } else {
                harmonic_space(spec, kind, p, q)?.dim().to_string()
            };
            let _ = write!(out, "{cell:>4}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn cmd_harmonics(
    ctx: &Ctx,
    arg: &SpecArg,
    kind: LaplacianKind,
    bidegree: Option<(usize, usize)>,
    primitive: bool,
) -> CmdResult {
    let spec = ctx.load_checked(arg)?;
    spec.require_constant()?;
    let Some((p, q)) = bidegree else {
        return dimension_table(&spec, kind, primitive);
    };
    let h = if primitive {
        primitive_harmonic_space(&spec, kind, p, q)?
    } else {
        harmonic_space(&spec, kind, p, q)?
    };
    let mut out = format!("{} ({})\n", h.label(), spec.name());
    let conditions: Vec<String> = h.conditions.iter().map(|c| ctx.operator_word(c)).collect();
    let _ = writeln!(out, "conditions: {}", conditions.join(", "));
    let _ = writeln!(out, "dimension: {}", h.dim());
    for f in h.basis() {
        let _ = writeln!(out, "  {}", ctx.printer().print(&f));
    }
    Ok(out)
}

fn cmd_primitive(
    ctx: &Ctx,
    arg: &SpecArg,
    form: Option<&str>,
    bidegree: Option<(usize, usize)>,
) -> CmdResult {
    let spec = ctx.load_checked(arg)?;
    let printer = ctx.printer();
    let mut out = String::new();
    if let Some(text) = form {
        let f = parse_form(spec.n(), text)?;
        let parts = primitive_decompose(&spec, &f)?;
        let _ = writeln!(out, "form: {}", printer.print(&f));
        let _ = writeln!(out, "degree {}: sum over r of (1/r!) L^r beta_r", parts.k);
        for (r, beta) in &parts.parts {
            let _ = writeln!(out, "  r = {r}: beta = {}", printer.print(beta));
        }
        return Ok(out);
    }
    let (p, q) = bidegree.expect("clap requires --form or --bidegree");
    let space = harmonic::primitive_space(&spec, p, q)?;
    let _ = writeln!(out, "P^{{{p},{q}}} ({})", spec.name());
    let _ = writeln!(out, "dimension: {}", space.dim());
    for f in space.basis() {
        let _ = writeln!(out, "  {}", printer.print(&f));
    }
    Ok(out)
}

fn cmd_relations(ctx: &Ctx, arg: &SpecArg, bidegree: Option<(usize, usize)>) -> CmdResult {
    let spec = ctx.load_checked(arg)?;
    let n = spec.n();
    let cells: Vec<(usize, usize)> = bidegree_cells(n, bidegree)
        .into_iter()
        .filter(|&(p, q)| bidegree.is_some() || p + q <= n)
        .collect();
    let mut out = String::new();
    let mut refuted = false;
    for (p, q) in cells {
        let report = verify_relations(&spec, p, q)?;
        out.push_str(&report.render(ctx.printer()));
        if report.passed() {
            if p + q == n {
                out.push_str("  all four primitive spaces equal\n");
            }
        } else {
            refuted = true;
        }
        out.push('\n');
    }
    if refuted {
        Err(Failure::Refuted(out))
    } else {
        Ok(out)
    }
}

fn cmd_check_form(ctx: &Ctx, arg: &SpecArg, text: &str, kind: LaplacianKind) -> CmdResult {
    let spec = ctx.load_checked(arg)?;
    let f = parse_form(spec.n(), text)?;
    let cert = is_harmonic(&spec, kind, &f)?;
    let printer = ctx.printer();
    let neq = if ctx.ascii { "!=" } else { "≠" };
    let mut out = if cert.member {
        "member\n".to_string()
    } else {
        let failing: Vec<String> = cert
            .conditions
            .iter()
            .filter(|c| !c.zero)
            .map(|c| format!("residual {} {neq} 0", ctx.operator_word(&c.condition)))
            .collect();
        format!("non-member; {}\n", failing.join("; "))
    };
    let _ = writeln!(out, "form: {}", printer.print(&cert.form));
    let _ = writeln!(out, "laplacian: {kind}");
    for c in &cert.conditions {
        let value = if c.zero {
            "0".to_string()
        } else {
            printer.print(&c.residual)
        };
        let _ = writeln!(
            out,
            "  {} {}: {value}",
            if c.zero { "ok  " } else { "FAIL" },
            ctx.operator_word(&c.condition)
        );
    }
    if cert.member {
        Ok(out)
    } else {
        Err(Failure::Refuted(out))
    }
}

fn cmd_report(ctx: &Ctx, arg: &SpecArg, as_json: bool) -> CmdResult {
    let spec = ctx.load_checked(arg)?;
    let n = spec.n();
    let structure = check_integrability_relations(&spec);
    let ak = check_almost_kahler(&spec);
    let statements = run_suite(&spec);
    let refuted = statements.iter().any(|r| r.status == Status::Refuted);

    let mut tables = serde_json::Map::new();
    let mut text_tables = String::new();
    for kind in LaplacianKind::PRIMARY {
        if !spec.is_constant() {
            tables.insert(kind.as_str().into(), serde_json::Value::Null);
            continue;
        }
        let mut rows = Vec::new();
        for p in 0..=n {
            let mut row = Vec::new();
            for q in 0..=n {
                row.push(harmonic_space(&spec, kind, p, q)?.dim());
            }
            rows.push(row);
        }
        tables.insert(kind.as_str().into(), json!(rows));
        text_tables.push_str(&dimension_table(&spec, kind, false)?);
        text_tables.push('\n');
    }

    let out = if as_json {
        let doc = json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "spec": spec.name(),
            "n": n,
            "constant_coefficients": spec.is_constant(),
            "almost_kahler": ak.flags.get("almost-kahler").copied().unwrap_or(false),
            "integrable": ak.flags.get("integrable").copied().unwrap_or(false),
            "structure": structure,
            "dimensions": tables,
            "statements": statements,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    } else {
        let mut out = format!("spec {} (n = {})\n", spec.name(), n);
        let _ = writeln!(
            out,
            "almost {}: {}, integrable: {}\n",
            ctx.kahler(),
            yes_no(ak.flags.get("almost-kahler").copied().unwrap_or(false)),
            yes_no(ak.flags.get("integrable").copied().unwrap_or(false))
        );
        if spec.is_constant() {
            out.push_str(&text_tables);
        } else {
            out.push_str("dimension tables: skipped, structure coefficients are symbolic\n\n");
        }
        for r in &statements {
            out.push_str(&r.render(ctx.printer()));
            out.push('\n');
        }
        let count = |s: Status| statements.iter().filter(|r| r.status == s).count();
        let _ = writeln!(
            out,
            "summary: {} verified, {} refuted, {} not applicable",
            count(Status::Verified),
            count(Status::Refuted),
            count(Status::NotApplicable)
        );
        out
    };
    if refuted {
        Err(Failure::Refuted(out))
    } else {
        Ok(out)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Ctx {
        ascii: cli.ascii,
        force: cli.force,
    };
    let result = match &cli.command {
        Command::Validate(arg) => cmd_validate(&ctx, arg),
        Command::Harmonics {
            spec,
            laplacian,
            bidegree,
            primitive,
        } => cmd_harmonics(&ctx, spec, *laplacian, *bidegree, *primitive),
        Command::Primitive {
            spec,
            form,
            bidegree,
        } => cmd_primitive(&ctx, spec, form.as_deref(), *bidegree),
        Command::Relations { spec, bidegree } => cmd_relations(&ctx, spec, *bidegree),
        Command::CheckForm {
            spec,
            form,
            laplacian,
        } => cmd_check_form(&ctx, spec, form, *laplacian),
        Command::Report { spec, json } => cmd_report(&ctx, spec, *json),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refuted(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
