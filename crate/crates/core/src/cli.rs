//! Command-line front end. `run` parses arguments, writes the report to the
//! given sink and returns the process exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{FiniteGroup, FiniteQuandle};
use crate::cohomology::{
    are_cohomologous, classify, cocycle_violation, format_cocycle, parse_cocycle, satisfies_stability, search_cocycles,
    CohomologyError, TwoCocycle, Violation,
};
use crate::coloring::{
    coloring_counts, enumerate_colorings, enumerate_special_colorings, special_report, ColoringError,
};
use crate::diagram::{parse_diagram, Diagram, DiagramWarning, MoveKind};
use crate::fixtures;
use crate::presentation::{
    abelianization, associated_group_presentation, fundamental_quandle_presentation, wirtinger_presentation,
};
use crate::walks::{GateMode, PsiSetup, WalkError, WalkFilters};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("invariant changed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Coloring(c) => c.into(),
            WalkError::Cohomology(c) => c.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "spatial-quandle", version, about = "Quandle invariants of spatial graphs and graph tangles")]
struct Cli {
    /// Output style: human-readable text or `key=value` records.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a diagram and report its shape.
    Validate(DiagramArg),
    /// Build and check finite quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Quandle and group presentations of a diagram.
    #[command(subcommand)]
    Presentation(PresentationCmd),
    /// Count or list colorings by a finite quandle.
    #[command(subcommand)]
    Colorings(ColoringsCmd),
    /// Check, enumerate and classify 2-cocycles.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// The walk invariant of a tangle.
    Psi(PsiArgs),
    /// Find, apply and fuzz diagram moves.
    #[command(subcommand)]
    Moves(MovesCmd),
    /// Print the mirror image of a diagram.
    Mirror(DiagramArg),
}

#[derive(Args, Debug)]
struct DiagramArg {
    /// Fixture name or path to a diagram file.
    #[arg(long)]
    diagram: String,
}

#[derive(Args, Debug)]
struct QuandleArg {
    /// dihedral:n, alexander:n:poly, conj:sym:n, core:cyc:n, trivial:n, table:path or paper5.
    #[arg(long)]
    quandle: String,
}

#[derive(Subcommand, Debug)]
enum QuandleCmd {
    /// Validate the axioms and report basic data.
    Check(QuandleArg),
    /// Print the operation table, 1-based.
    Make(QuandleArg),
}

#[derive(Subcommand, Debug)]
enum PresentationCmd {
    /// Fundamental quandle.
    Quandle(DiagramArg),
    /// Associated group of the fundamental quandle.
    Group(DiagramArg),
    /// Wirtinger presentation of the fundamental group.
    Pi1(DiagramArg),
    /// Abelianizations of both groups.
    Abelianization(DiagramArg),
}

#[derive(Args, Debug)]
struct ColoringArgs {
    /// Fixture name or path to a diagram file.
    #[arg(long)]
    diagram: String,
    /// Quandle spec, as for `quandle check`.
    #[arg(long)]
    quandle: String,
    /// Only colorings constant around every vertex.
    #[arg(long)]
    special: bool,
    /// Search-node limit; exceeding it exits with code 3.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum ColoringsCmd {
    /// Number of colorings.
    Count(ColoringArgs),
    /// One arc-to-element map per line.
    List(ColoringArgs),
}

#[derive(Args, Debug)]
struct CocycleArgs {
    /// Quandle spec, as for `quandle check`.
    #[arg(long)]
    quandle: String,
    /// sym:n or cyc:n.
    #[arg(long)]
    group: String,
    /// Restrict to cocycles satisfying the stability condition.
    #[arg(long)]
    stability: bool,
    /// Search-node limit; exceeding it exits with code 3.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum CocycleCmd {
    /// Check a cocycle file.
    Check {
        /// Quandle spec, as for `quandle check`.
        #[arg(long)]
        quandle: String,
        /// sym:n or cyc:n.
        #[arg(long)]
        group: String,
        /// Cocycle file, or `paper5-s3` for the shipped one.
        #[arg(long)]
        cocycle: String,
    },
    /// List all cocycles.
    Search(CocycleArgs),
    /// Count cohomology classes among all cocycles.
    Classify(CocycleArgs),
}

#[derive(Args, Debug)]
struct PsiArgs {
    /// Fixture name or path to a tangle diagram.
    #[arg(long)]
    diagram: String,
    /// Cocycle file, or `paper5-s3`.
    #[arg(long)]
    cocycle: String,
    /// Quandle the cocycle is defined on.
    #[arg(long, default_value = "paper5")]
    quandle: String,
    /// Coefficient group of the cocycle.
    #[arg(long, default_value = "sym:3")]
    group: String,
    /// Boundary label where walks start.
    #[arg(long, required_unless_present = "all_pairs")]
    from: Option<String>,
    /// Boundary label where walks end.
    #[arg(long, required_unless_present = "all_pairs")]
    to: Option<String>,
    /// Longest walk, counted in whole graph edges.
    #[arg(long)]
    max_len: usize,
    /// Only this boundary color (quandle element label).
    #[arg(long)]
    q: Option<String>,
    /// Only walks that repeat no vertex.
    #[arg(long, conflicts_with = "trails")]
    paths: bool,
    /// Only walks that repeat no edge.
    #[arg(long)]
    trails: bool,
    /// Only walks of exactly this length.
    #[arg(long)]
    exact_len: Option<usize>,
    /// Only walks using this many edges in their own direction.
    #[arg(long)]
    positive_edges: Option<usize>,
    /// Every ordered pair of distinct boundary labels.
    #[arg(long, conflicts_with_all = ["from", "to"])]
    all_pairs: bool,
    /// Skip the stability and exponent checks (balanced tangles only).
    #[arg(long)]
    relaxed: bool,
    /// Search-node limit; exceeding it exits with code 3.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum MovesCmd {
    /// List applicable move sites.
    Sites {
        /// Fixture name or path to a diagram file.
        #[arg(long)]
        diagram: String,
        /// R1+, R1-, R2+, R2-, R3, R4 or R5; all kinds when omitted.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Apply one site and print the resulting diagram.
    Apply {
        /// Fixture name or path to a diagram file.
        #[arg(long)]
        diagram: String,
        /// Move kind, as for `moves sites`.
        #[arg(long)]
        kind: String,
        /// Site index from `moves sites`.
        #[arg(long)]
        index: usize,
    },
    /// Apply seeded random moves and check an invariant after each one.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct FuzzArgs {
    /// Fixture name or path to a diagram file.
    #[arg(long)]
    diagram: String,
    /// colorings:QUANDLE, special-colorings:QUANDLE, abelianization or psi.
    #[arg(long)]
    invariant: String,
    /// Seed for the move sequence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of moves to apply.
    #[arg(long, default_value_t = 8)]
    steps: usize,
    /// For `psi`: cocycle file or `paper5-s3`.
    #[arg(long, default_value = "paper5-s3")]
    cocycle: String,
    /// For `psi`: quandle of the cocycle.
    #[arg(long, default_value = "paper5")]
    quandle: String,
    /// For `psi`: coefficient group.
    #[arg(long, default_value = "sym:3")]
    group: String,
    /// For `psi`: longest walk compared.
    #[arg(long, default_value_t = 1)]
    max_len: usize,
    /// Search-node limit; exceeding it exits with code 3.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

/// Text lines and `key=value` records, collected side by side.
struct Report {
    format: Format,
    out: Vec<String>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, out: Vec::new() }
    }

    /// A single named value.
    fn kv(&mut self, key: &str, value: impl ToString) {
        let v = value.to_string();
        match self.format {
            Format::Text => self.out.push(format!("{key}: {v}")),
            Format::Structured => self.out.push(format!("{}={}", key.replace(' ', "_"), quote(&v))),
        }
    }

    /// A record of several fields; text shows `text`.
    fn record(&mut self, kind: &str, fields: &[(&str, String)], text: String) {
        match self.format {
            Format::Text => self.out.push(text),
            Format::Structured => {
                let mut line = kind.to_string();
                for (k, v) in fields {
                    line.push_str(&format!(" {k}={}", quote(v)));
                }
                self.out.push(line);
            }
        }
    }

    /// Verbatim text block (diagram files, tables); one record per line when structured.
    fn block(&mut self, kind: &str, text: &str) {
        for l in text.lines() {
            match self.format {
                Format::Text => self.out.push(l.to_string()),
                Format::Structured => self.out.push(format!("{kind} line={}", quote(l))),
            }
        }
    }
}

fn quote(v: &str) -> String {
    if !v.is_empty() && !v.contains([' ', '"', '=', '\t']) {
        v.to_string()
    } else {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut report = Report::new(cli.format);
    let result = dispatch(cli.command, &mut report);
    for l in &report.out {
        let _ = writeln!(out, "{l}");
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        Command::Validate(a) => validate(&a.diagram, r),
        Command::Quandle(QuandleCmd::Check(a)) => {
            let q = parse_quandle(&a.quandle)?;
            r.kv("valid", true);
            r.kv("size", q.size());
            r.kv("k_order", q.k_order());
            Ok(())
        }
        Command::Quandle(QuandleCmd::Make(a)) => {
            let q = parse_quandle(&a.quandle)?;
            let rows: Vec<Vec<usize>> = q.table().iter().map(|row| row.iter().map(|&x| x + 1).collect()).collect();
            r.kv("labels", q.labels().join(","));
            r.kv("table", serde_json::to_string(&rows).expect("table serializes"));
            Ok(())
        }
        Command::Presentation(p) => presentation(p, r),
        Command::Colorings(c) => colorings(c, r),
        Command::Cocycle(c) => cocycle(c, r),
        Command::Psi(a) => psi(a, r),
        Command::Moves(m) => moves(m, r),
        Command::Mirror(a) => {
            let d = load_diagram(&a.diagram)?;
            r.block("diagram", &d.mirror().to_text());
            Ok(())
        }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
}

/// Fixture name or file path.
pub fn load_diagram(name: &str) -> Result<Diagram, CliError> {
    let text = match fixtures::by_name(name) {
        Some(t) => t.to_string(),
        None => read(name)?,
    };
    parse_diagram(&text).map(|o| o.diagram).map_err(input)
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, CliError> {
    text.parse().map_err(|_| CliError::Usage(format!("bad {what} `{text}`")))
}

/// Quandle spec mini-language.
pub fn parse_quandle(spec: &str) -> Result<FiniteQuandle, CliError> {
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    match parts.as_slice() {
        ["paper5"] => Ok(FiniteQuandle::paper5()),
        ["dihedral", n] => FiniteQuandle::dihedral(number(n, "size")?).map_err(input),
        ["trivial", n] => FiniteQuandle::trivial(number(n, "size")?).map_err(input),
        ["alexander", n, poly] => {
            let coeffs = crate::algebra::parse_poly(poly).map_err(input)?;
            FiniteQuandle::alexander(number(n, "modulus")?, &coeffs).map_err(input)
        }
        ["conj", g, n] => FiniteQuandle::conjugation(&parse_group(&format!("{g}:{n}"))?).map_err(input),
        ["core", g, n] => FiniteQuandle::core(&parse_group(&format!("{g}:{n}"))?).map_err(input),
        ["table", _, ..] => {
            let path = &spec["table:".len()..];
            let text = read(path)?;
            let rows: Vec<Vec<usize>> =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("`{path}`: {e}")))?;
            FiniteQuandle::from_one_based(&rows).map_err(input)
        }
        _ => Err(CliError::Usage(format!("unknown quandle spec `{spec}`"))),
    }
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    match spec.split_once(':') {
        Some(("sym", n)) => FiniteGroup::symmetric(number(n, "degree")?).map_err(input),
        Some(("cyc", n)) => FiniteGroup::cyclic(number(n, "order")?).map_err(input),
        _ => Err(CliError::Usage(format!("unknown group spec `{spec}`"))),
    }
}

fn load_cocycle(q: &FiniteQuandle, h: &FiniteGroup, name: &str) -> Result<TwoCocycle, CliError> {
    let text = if name == "paper5-s3" { fixtures::PAPER5_S3.to_string() } else { read(name)? };
    Ok(parse_cocycle(q, h, &text)?)
}

fn warning_text(w: &DiagramWarning) -> String {
    match w {
        DiagramWarning::NonPlanarMap { euler, components } => {
            format!("map is not planar (Euler characteristic {euler}, {components} components)")
        }
        DiagramWarning::ScatteredEndpoints => "boundary points do not share one face".into(),
    }
}

fn validate(name: &str, r: &mut Report) -> Result<(), CliError> {
    let text = match fixtures::by_name(name) {
        Some(t) => t.to_string(),
        None => read(name)?,
    };
    let parsed = parse_diagram(&text).map_err(input)?;
    let d = &parsed.diagram;
    let s = d.structure();
    r.kv("tangle", d.is_tangle());
    r.kv("crossings", d.crossing_count());
    r.kv("vertices", d.vertices().count());
    r.kv("endpoints", d.endpoints().count());
    r.kv("arcs", s.arcs.len());
    r.kv("edges", s.edges.len());
    r.kv("planar", d.is_planar());
    r.kv("balance gcd", d.balance_gcd());
    for w in &parsed.warnings {
        r.kv("warning", warning_text(w));
    }
    Ok(())
}

fn presentation(cmd: PresentationCmd, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        PresentationCmd::Quandle(a) => {
            let p = fundamental_quandle_presentation(&load_diagram(&a.diagram)?);
            r.block("relation", &p.to_string());
        }
        PresentationCmd::Group(a) => {
            let p = fundamental_quandle_presentation(&load_diagram(&a.diagram)?);
            r.block("relator", &associated_group_presentation(&p).to_string());
        }
        PresentationCmd::Pi1(a) => {
            let g = wirtinger_presentation(&load_diagram(&a.diagram)?).map_err(input)?;
            r.block("relator", &g.to_string());
        }
        PresentationCmd::Abelianization(a) => {
            let d = load_diagram(&a.diagram)?;
            let p = fundamental_quandle_presentation(&d);
            r.kv("associated group", abelianization(&associated_group_presentation(&p)));
            if !d.is_tangle() {
                r.kv("fundamental group", abelianization(&wirtinger_presentation(&d).map_err(input)?));
            }
        }
    }
    Ok(())
}

fn colorings(cmd: ColoringsCmd, r: &mut Report) -> Result<(), CliError> {
    let (a, list) = match cmd {
        ColoringsCmd::Count(a) => (a, false),
        ColoringsCmd::List(a) => (a, true),
    };
    let d = load_diagram(&a.diagram)?;
    let q = parse_quandle(&a.quandle)?;
    let p = fundamental_quandle_presentation(&d);
    if list {
        let all = if a.special {
            enumerate_special_colorings(&p, &q, a.budget)?
        } else {
            enumerate_colorings(&p, &q, a.budget)?
        };
        for c in &all {
            let fields: Vec<(&str, String)> =
                p.generators.iter().zip(&c.0).map(|(g, &x)| (g.as_str(), q.label(x).to_string())).collect();
            r.record("coloring", &fields, c.render(&p, &q));
        }
        return Ok(());
    }
    if a.special {
        let n = enumerate_special_colorings(&p, &q, a.budget)?.len();
        let rep = special_report(&q, d.balance_gcd());
        r.kv("special", n);
        r.kv("k_order", rep.k_order);
        r.kv("balance gcd", rep.balance_gcd);
        r.kv("k divides balances", rep.k_divides_balances);
    } else {
        let c = coloring_counts(&p, &q, a.budget)?;
        r.kv("total", c.total);
        r.kv("trivial", c.trivial);
        r.kv("nontrivial", c.nontrivial);
        r.kv("special", c.special);
    }
    Ok(())
}

fn one_line(q: &FiniteQuandle, h: &FiniteGroup, phi: &TwoCocycle) -> String {
    let text = format_cocycle(q, h, phi);
    let cells: Vec<String> = text.lines().map(|l| l.replace(' ', "")).collect();
    if cells.is_empty() {
        "trivial".into()
    } else {
        cells.join(" ")
    }
}

fn cocycle(cmd: CocycleCmd, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        CocycleCmd::Check { quandle, group, cocycle } => {
            let q = parse_quandle(&quandle)?;
            let h = parse_group(&group)?;
            let phi = load_cocycle(&q, &h, &cocycle)?;
            let violation = cocycle_violation(&q, &h, &phi)?;
            r.kv("cocycle", violation.is_none());
            if let Some(v) = violation {
                let l = |x: usize| q.label(x).to_string();
                r.kv(
                    "violation",
                    match v {
                        Violation::Diagonal(x) => format!("phi({},{}) is not the identity", l(x), l(x)),
                        Violation::Triple(a, b, c) => format!("identity fails at ({},{},{})", l(a), l(b), l(c)),
                    },
                );
            }
            r.kv("stability", satisfies_stability(&q, &phi));
            let trivial = are_cohomologous(&q, &h, &phi, &TwoCocycle::constant(&q, &h))?.is_some();
            r.kv("cohomologous to trivial", trivial);
        }
        CocycleCmd::Search(a) => {
            let q = parse_quandle(&a.quandle)?;
            let h = parse_group(&a.group)?;
            let all = search_cocycles(&q, &h, a.stability, a.budget)?;
            r.kv("cocycles", all.len());
            for (i, phi) in all.iter().enumerate() {
                let line = one_line(&q, &h, phi);
                r.record("cocycle", &[("index", i.to_string()), ("values", line.clone())], format!("{i}: {line}"));
            }
        }
        CocycleCmd::Classify(a) => {
            let q = parse_quandle(&a.quandle)?;
            let h = parse_group(&a.group)?;
            let all = search_cocycles(&q, &h, a.stability, a.budget)?;
            let c = classify(&q, &h, &all)?;
            r.kv("cocycles", all.len());
            r.kv("classes", c.class_count());
            r.kv("nontrivial classes", c.nontrivial_count());
            for (i, class) in c.classes.iter().enumerate() {
                let rep = one_line(&q, &h, &all[class[0]]);
                let trivial = c.trivial == Some(i);
                r.record(
                    "class",
                    &[
                        ("index", i.to_string()),
                        ("size", class.len().to_string()),
                        ("trivial", trivial.to_string()),
                        ("representative", rep.clone()),
                    ],
                    format!("class {i} ({} cocycles{}): {rep}", class.len(), if trivial { ", trivial" } else { "" }),
                );
            }
        }
    }
    Ok(())
}

fn psi(a: PsiArgs, r: &mut Report) -> Result<(), CliError> {
    let d = load_diagram(&a.diagram)?;
    let q = parse_quandle(&a.quandle)?;
    let h = parse_group(&a.group)?;
    let phi = load_cocycle(&q, &h, &a.cocycle)?;
    let mode = if a.relaxed { GateMode::Relaxed } else { GateMode::Strict };
    let setup = PsiSetup::new(&d, &q, &h, &phi, mode, a.budget)?;
    let filters =
        WalkFilters { paths: a.paths, trails: a.trails, exact_length: a.exact_len, positive_edges: a.positive_edges };
    let only = match &a.q {
        Some(l) => {
            Some(q.element_by_label(l).ok_or_else(|| CliError::Input(format!("unknown quandle element `{l}`")))?)
        }
        None => None,
    };
    let pairs: Vec<(String, String)> = if a.all_pairs {
        let labels: Vec<String> = d.endpoints().filter_map(|e| d.endpoint_label(e).map(str::to_string)).collect();
        let mut v = Vec::new();
        for x in &labels {
            for y in &labels {
                if x != y {
                    v.push((x.clone(), y.clone()));
                }
            }
        }
        v.sort();
        v
    } else {
        vec![(a.from.clone().unwrap_or_default(), a.to.clone().unwrap_or_default())]
    };
    for (from, to) in pairs {
        for x in 0..q.size() {
            if only.is_some_and(|o| o != x) {
                continue;
            }
            let m = setup.psi_q(x, &from, &to, a.max_len, filters)?;
            let label = q.label(x);
            r.record(
                "psi",
                &[
                    ("from", from.clone()),
                    ("to", to.clone()),
                    ("q", label.to_string()),
                    ("size", m.len().to_string()),
                    ("multiset", m.to_string()),
                ],
                format!("{from} -> {to} q={label}: {m}"),
            );
        }
    }
    Ok(())
}

fn parse_kind(s: &str) -> Result<MoveKind, CliError> {
    MoveKind::parse(s).ok_or_else(|| CliError::Usage(format!("unknown move kind `{s}`")))
}

/// All sites of the given kinds, in kind order then site order.
fn all_sites(d: &Diagram, kinds: &[MoveKind]) -> Vec<crate::diagram::MoveSite> {
    kinds.iter().flat_map(|&k| d.find_move_sites(k)).collect()
}

fn moves(cmd: MovesCmd, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        MovesCmd::Sites { diagram, kind } => {
            let d = load_diagram(&diagram)?;
            let kinds = match kind {
                Some(k) => vec![parse_kind(&k)?],
                None => MoveKind::ALL.to_vec(),
            };
            for k in kinds {
                for (i, s) in d.find_move_sites(k).iter().enumerate() {
                    let desc = s.describe(&d);
                    r.record(
                        "site",
                        &[("kind", k.name().into()), ("index", i.to_string()), ("detail", desc.clone())],
                        format!("{i}: {desc}"),
                    );
                }
            }
        }
        MovesCmd::Apply { diagram, kind, index } => {
            let d = load_diagram(&diagram)?;
            let k = parse_kind(&kind)?;
            let sites = d.find_move_sites(k);
            let site = sites
                .get(index)
                .ok_or_else(|| CliError::Input(format!("{} has {} sites, no index {index}", k.name(), sites.len())))?;
            r.block("diagram", &d.apply_move(site).map_err(input)?.to_text());
        }
        MovesCmd::Fuzz(a) => fuzz(a, r)?,
    }
    Ok(())
}

/// A named invariant, evaluated to a canonical string.
enum Invariant {
    Colorings(FiniteQuandle),
    Special(FiniteQuandle),
    Abelianization,
    Psi { q: FiniteQuandle, h: FiniteGroup, phi: TwoCocycle, max_len: usize },
}

impl Invariant {
    fn parse(a: &FuzzArgs) -> Result<Self, CliError> {
        let (name, rest) = a.invariant.split_once(':').unwrap_or((a.invariant.as_str(), ""));
        match name {
            "colorings" => Ok(Invariant::Colorings(parse_quandle(rest)?)),
            "special-colorings" => Ok(Invariant::Special(parse_quandle(rest)?)),
            "abelianization" => Ok(Invariant::Abelianization),
            "psi" => {
                let q = parse_quandle(&a.quandle)?;
                let h = parse_group(&a.group)?;
                let phi = load_cocycle(&q, &h, &a.cocycle)?;
                Ok(Invariant::Psi { q, h, phi, max_len: a.max_len })
            }
            _ => Err(CliError::Usage(format!("unknown invariant `{}`", a.invariant))),
        }
    }

    fn eval(&self, d: &Diagram, budget: u64) -> Result<String, CliError> {
        let p = || fundamental_quandle_presentation(d);
        Ok(match self {
            Invariant::Colorings(q) => enumerate_colorings(&p(), q, budget)?.len().to_string(),
            Invariant::Special(q) => enumerate_special_colorings(&p(), q, budget)?.len().to_string(),
            Invariant::Abelianization => abelianization(&associated_group_presentation(&p())).to_string(),
            Invariant::Psi { q, h, phi, max_len } => {
                let s = PsiSetup::new(d, q, h, phi, GateMode::Strict, budget)?;
                format!("{:?}", s.psi_all_pairs(*max_len, WalkFilters::default())?)
            }
        })
    }
}

fn fuzz(a: FuzzArgs, r: &mut Report) -> Result<(), CliError> {
    let mut d = load_diagram(&a.diagram)?;
    let inv = Invariant::parse(&a)?;
    let before = inv.eval(&d, a.budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    r.kv("seed", a.seed);
    r.kv("invariant", &a.invariant);
    for step in 0..a.steps {
        let sites = all_sites(&d, &MoveKind::ALL);
        if sites.is_empty() {
            break;
        }
        let site = &sites[rng.gen_range(0..sites.len())];
        let desc = site.describe(&d);
        d = d.apply_move(site).map_err(input)?;
        let after = inv.eval(&d, a.budget)?;
        let same = after == before;
        r.record(
            "step",
            &[
                ("step", step.to_string()),
                ("move", desc.clone()),
                ("crossings", d.crossing_count().to_string()),
                ("unchanged", same.to_string()),
            ],
            format!("step {step}: {desc} ({} crossings)", d.crossing_count()),
        );
        if !same {
            return Err(CliError::Mismatch(format!("after {desc}: {before} became {after}")));
        }
    }
    r.kv("result", "invariant unchanged");
    Ok(())
}
