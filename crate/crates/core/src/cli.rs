//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on parse or validation errors, 3 when an
//! `--oracle` cross-check disagrees with the main engine.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::error::Error;
use crate::forms::{conjugate, Form};
use crate::grundy::{value_of_sum, Analyzer, NimberSet, Value};
use crate::nimstring::{self, Board};
use crate::notation::{parse, parse_form, Expr};
use crate::outcomes::{compare_conway, outcome_of_forms, Comparison, Outcome};
use crate::topentails::{self, direct_form, set_json, Sweep, MAX_DIRECT_HEAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "entail", version, about = "Impartial games with entailing moves")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check results against the slower independent evaluators.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Fix the nimber probe ceiling instead of deriving it per form.
    #[arg(long, global = true, value_name = "B")]
    pub max_probe: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value of an affine impartial form or sum.
    Eval { expr: String },
    /// Outcome class (L, N, P or R) of a form or sum.
    Outcome { expr: String },
    /// Compare a form or sum with a Conway form.
    Compare { left: String, right: String },
    /// Values of NIMSTRING boards and of their sum.
    #[command(name = "nimstring-eval")]
    NimstringEval {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Outcome of a sum of NIMSTRING boards, with winning first moves.
    #[command(name = "nimstring-outcome")]
    NimstringOutcome {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// TOP ENTAILS values for heaps 0..=N.
    #[command(name = "topentails-table")]
    TopentailsTable { n: usize },
    /// Loony TOP ENTAILS heaps up to N.
    #[command(name = "topentails-scan")]
    TopentailsScan { n: usize },
}

enum Failure {
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Step = std::result::Result<(), Failure>;

struct Context<'a> {
    json: bool,
    oracle: bool,
    analyzer: Analyzer,
    out: &'a mut dyn Write,
    mismatches: Vec<String>,
}

impl Context<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
    }

    fn emit(&mut self, value: Json) {
        let _ = writeln!(self.out, "{value}");
    }

    fn mismatch(&mut self, message: String) {
        self.mismatches.push(message);
    }

    fn component_json(&self, g: &Form) -> Result<Json, Error> {
        Ok(json!({
            "form": g.to_string(),
            "value": self.analyzer.value(g)?.to_string(),
            "grundy": grundy_json(self.analyzer.value(g)?),
            "S": set_json(&self.analyzer.immediate_nimbers(g)?),
            "P": set_json(&self.analyzer.protected_nimbers(g)?),
        }))
    }

    fn values(&self, comps: &[Form]) -> Result<Vec<Value>, Error> {
        comps.iter().map(|g| self.analyzer.value(g)).collect()
    }

    fn check_values(&mut self, comps: &[Form], values: &[Value]) -> Step {
        for (g, v) in comps.iter().zip(values) {
            let expected = self.analyzer.value_oracle(g)?;
            if expected != *v {
                self.mismatch(format!("value of {g}: mex rule {v}, probing {expected}"));
            }
        }
        Ok(())
    }
}

fn grundy_json(v: Value) -> Json {
    match v {
        Value::Nimber(k) => json!(k),
        Value::Moon => json!("inf"),
    }
}

fn require_impartial(expr: &Expr) -> Step {
    for g in expr.components() {
        if !g.is_affine_impartial() {
            return Err(Error::NotImpartial(g.to_string()).into());
        }
    }
    Ok(())
}

fn eval(cx: &mut Context, text: &str) -> Step {
    let expr = parse(text)?;
    require_impartial(&expr)?;
    let comps = expr.components();
    let values = cx.values(comps)?;
    let total = value_of_sum(&values);
    if cx.oracle {
        cx.check_values(comps, &values)?;
    }
    if cx.json {
        let components = comps
            .iter()
            .map(|g| cx.component_json(g))
            .collect::<Result<Vec<_>, _>>()?;
        cx.emit(json!({
            "expr": expr.to_string(),
            "value": total.to_string(),
            "grundy": grundy_json(total),
            "components": components,
        }));
    } else {
        cx.line(total.to_string());
    }
    Ok(())
}

/// For impartial sums the outcome is 𝒫 exactly when the value is 0.
fn predicted_outcome(cx: &Context, comps: &[Form]) -> Result<Option<Outcome>, Error> {
    if !comps.iter().all(Form::is_affine_impartial) {
        return Ok(None);
    }
    let total = value_of_sum(&cx.values(comps)?);
    Ok(Some(if total == Value::Nimber(0) {
        Outcome::P
    } else {
        Outcome::N
    }))
}

fn outcome(cx: &mut Context, text: &str) -> Step {
    let expr = parse(text)?;
    let result = outcome_of_forms(expr.components())?;
    if cx.oracle {
        if let Some(expected) = predicted_outcome(cx, expr.components())? {
            if expected != result {
                cx.mismatch(format!("outcome of {expr}: solver {result}, values predict {expected}"));
            }
        }
    }
    if cx.json {
        cx.emit(json!({ "expr": expr.to_string(), "outcome": result.symbol() }));
    } else {
        cx.line(result.symbol());
    }
    Ok(())
}

fn compare(cx: &mut Context, left: &str, right: &str) -> Step {
    let g = parse(left)?;
    let h = parse_form(right)?;
    if !h.is_conway_form() {
        return Err(Failure::Invalid(format!(
            "cannot compare with {h}: the second argument must be a Conway form \
             (no checks in any follower); comparison with general affine forms is not supported"
        )));
    }
    let relation = match &g {
        Expr::Form(g) => compare_conway(g, &h)?,
        Expr::Sum(s) => {
            let mut comps = s.components().to_vec();
            comps.push(conjugate(&h));
            match outcome_of_forms(&comps)? {
                Outcome::L => Comparison::Greater,
                Outcome::P => Comparison::Equal,
                Outcome::N => Comparison::Confused,
                Outcome::R => Comparison::Less,
            }
        }
    };
    if cx.oracle && h.is_affine_impartial() && g.components().iter().all(Form::is_affine_impartial) {
        let lhs = value_of_sum(&cx.values(g.components())?);
        let rhs = cx.analyzer.value(&h)?;
        if (lhs == rhs) != (relation == Comparison::Equal) {
            cx.mismatch(format!(
                "{g} {relation} {h} but the values are {lhs} and {rhs}"
            ));
        }
    }
    if cx.json {
        cx.emit(json!({
            "left": g.to_string(),
            "right": h.to_string(),
            "relation": relation.to_string(),
        }));
    } else {
        cx.line(format!("{g} {relation} {h}"));
    }
    Ok(())
}

fn load_boards(files: &[PathBuf]) -> std::result::Result<Vec<Board>, Failure> {
    files
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            nimstring::parse_board(&text)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
        })
        .collect()
}

fn nimstring_eval(cx: &mut Context, files: &[PathBuf]) -> Step {
    let boards = load_boards(files)?;
    let forms: Vec<Form> = boards.iter().map(nimstring::to_form).collect();
    let values = cx.values(&forms)?;
    let total = value_of_sum(&values);
    if cx.oracle {
        cx.check_values(&forms, &values)?;
        let direct = nimstring::direct_outcome(&boards);
        let expected = if total == Value::Nimber(0) { Outcome::P } else { Outcome::N };
        if direct != expected {
            cx.mismatch(format!(
                "boards play as {direct} but their value {total} predicts {expected}"
            ));
        }
    }
    if cx.json {
        let boards_json: Vec<Json> = files
            .iter()
            .zip(&forms)
            .zip(&values)
            .map(|((path, g), v)| {
                json!({
                    "file": path.display().to_string(),
                    "form": g.to_string(),
                    "value": v.to_string(),
                    "grundy": grundy_json(*v),
                })
            })
            .collect();
        cx.emit(json!({
            "boards": boards_json,
            "value": total.to_string(),
            "grundy": grundy_json(total),
        }));
    } else {
        for (path, v) in files.iter().zip(&values) {
            cx.line(format!("{}: {v}", path.display()));
        }
        cx.line(format!("total: {total}"));
    }
    Ok(())
}

fn nimstring_outcome(cx: &mut Context, files: &[PathBuf]) -> Step {
    let boards = load_boards(files)?;
    let result = nimstring::direct_outcome(&boards);
    let moves = nimstring::winning_moves(&boards);
    if cx.oracle {
        let forms: Vec<Form> = boards.iter().map(nimstring::to_form).collect();
        let by_forms = outcome_of_forms(&forms)?;
        if by_forms != result {
            cx.mismatch(format!(
                "boards play as {result} but their forms solve to {by_forms}"
            ));
        }
    }
    if cx.json {
        let moves_json: Vec<Json> = moves
            .iter()
            .map(|(i, e)| json!({ "file": files[*i].display().to_string(), "edge": e.to_string() }))
            .collect();
        cx.emit(json!({ "outcome": result.symbol(), "winning_moves": moves_json }));
    } else {
        cx.line(result.symbol());
        for (i, e) in &moves {
            cx.line(format!("{}: {e}", files[*i].display()));
        }
    }
    Ok(())
}

fn check_direct_heap(cx: &mut Context, n: usize, value: Value) -> Step {
    if n <= MAX_DIRECT_HEAP {
        let literal = cx.analyzer.value(&direct_form(n)?)?;
        if literal != value {
            cx.mismatch(format!(
                "heap {n}: recursion gives {value}, the literal form {literal}"
            ));
        }
    }
    Ok(())
}

fn topentails_table(cx: &mut Context, max_n: usize) -> Step {
    let table = topentails::compute_table(max_n);
    if cx.oracle {
        for r in &table {
            check_direct_heap(cx, r.n, r.value)?;
        }
    }
    if cx.json {
        for r in &table {
            cx.emit(r.to_json());
        }
        return Ok(());
    }
    let rows: Vec<[String; 5]> = table
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.immediate.to_string(),
                r.protected.to_string(),
                r.value.to_string(),
                r.value.grundy_label(),
            ]
        })
        .collect();
    let header = ["n", "S", "P", "value", "grundy"].map(String::from);
    let mut widths = header.clone().map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        cx.line(cells.join("  ").trim_end());
    }
    Ok(())
}

fn topentails_scan(cx: &mut Context, max_n: usize) -> Step {
    let mut loony = Vec::new();
    let mut previous_union = NimberSet::empty();
    for r in Sweep::new().take(max_n + 1) {
        if r.value == Value::Moon {
            loony.push(r.n);
        }
        if cx.oracle {
            if r.n > 0 && previous_union.is_subset(&r.immediate) != (r.value == Value::Moon) {
                cx.mismatch(format!("heap {}: moon criterion disagrees with the mex rule", r.n));
            }
            check_direct_heap(cx, r.n, r.value)?;
            previous_union = r.immediate.union(&r.protected);
        }
    }
    if cx.json {
        cx.emit(json!({ "max_n": max_n, "loony": loony }));
    } else {
        let list: Vec<String> = loony.iter().map(usize::to_string).collect();
        cx.line(list.join(" "));
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    let analyzer = match cli.max_probe {
        Some(b) => Analyzer::with_max_probe(b),
        None => Analyzer::new(),
    };
    let mut cx = Context {
        json: cli.json,
        oracle: cli.oracle,
        analyzer,
        out,
        mismatches: Vec::new(),
    };
    let step = match &cli.command {
        Command::Eval { expr } => eval(&mut cx, expr),
        Command::Outcome { expr } => outcome(&mut cx, expr),
        Command::Compare { left, right } => compare(&mut cx, left, right),
        Command::NimstringEval { files } => nimstring_eval(&mut cx, files),
        Command::NimstringOutcome { files } => nimstring_outcome(&mut cx, files),
        Command::TopentailsTable { n } => topentails_table(&mut cx, *n),
        Command::TopentailsScan { n } => topentails_scan(&mut cx, *n),
    };
    match step {
        Err(Failure::Invalid(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INVALID
        }
        Ok(()) if !cx.mismatches.is_empty() => {
            for m in &cx.mismatches {
                let _ = writeln!(err, "oracle mismatch: {m}");
            }
            EXIT_ORACLE
        }
        Ok(()) => EXIT_OK,
    }
}
