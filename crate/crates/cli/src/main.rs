//! `quadfrieze`: command-line front end for the frieze and quadratic-order
//! library.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 census emitted but
//! only complete relative to the quiddity bound.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use num_rational::BigRational;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quadfrieze::enumerate::{
    enumerate_friezes_with_progress, frieze_subring_report, CensusResult, Positivity, SearchConfig,
};
use quadfrieze::eta::reduce_to_canonical;
use quadfrieze::goldens;
use quadfrieze::orders::{class_number, find_infinite_unit, format_poly, reduced_forms};
use quadfrieze::qint::{Domain, FieldTag, QuadRat};
use quadfrieze::triangulate::enumerate_triangulations;
use quadfrieze::{FriezePattern, QuiddityCycle};

#[derive(Parser, Debug)]
#[command(name = "quadfrieze", version, about = "Frieze patterns over imaginary quadratic integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive census of non-zero friezes of one height.
    Enumerate(EnumerateArgs),
    /// Build the frieze of a quiddity cycle, validate and classify it.
    Classify(CycleArgs),
    /// List the triangulations of an N-gon with their quiddity cycles.
    Triangulations(TriangulationArgs),
    /// Reduce a quiddity cycle to (0,0) or (1,1,1) by local rewrites.
    Reduce(CycleArgs),
    /// Check whether a cycle's eta-matrix product is -I.
    QuiddityCheck(CycleArgs),
    /// Search a unit of infinite order in Z[alpha].
    UnitSearch(UnitArgs),
    /// Class number of O_d from reduced binary quadratic forms.
    ClassNumber(ClassArgs),
    /// Replay the fixed reference checks and print a pass/fail table.
    VerifyPaper(FormatArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
struct FormatArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Square-free d < 0, or Z for the rational integers.
    #[arg(long, allow_hyphen_values = true, default_value = "Z")]
    d: String,
    #[arg(long)]
    height: usize,
    /// Bound on |c|^2 for quiddity entries; defaults to max((n+1)^2, 4).
    #[arg(long)]
    bound_sq: Option<String>,
    /// Only positive rational integer quiddity entries.
    #[arg(long)]
    positive: bool,
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    /// Report progress on stderr.
    #[arg(long)]
    progress: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CycleArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "Z")]
    d: String,
    /// Comma-separated entries, e.g. `w,wbar,w,wbar` or `1,2,1,2`.
    #[arg(long, allow_hyphen_values = true)]
    quiddity: String,
    #[command(flatten)]
    output: FormatArgs,
}

#[derive(Args, Debug)]
struct TriangulationArgs {
    /// Number of polygon vertices.
    #[arg(long)]
    n_gon: usize,
    #[command(flatten)]
    output: FormatArgs,
}

#[derive(Args, Debug)]
struct UnitArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Element of Q(sqrt(d)), e.g. `(-2+5*tau)/47`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 6)]
    power_budget: u32,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[command(flatten)]
    output: FormatArgs,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[command(flatten)]
    output: FormatArgs,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn parse_domain(s: &str) -> Result<Domain, Failure> {
    Ok(Domain::parse_label(s)?)
}

fn parse_cycle(domain: Domain, s: &str) -> Result<QuiddityCycle, Failure> {
    let tag = domain.tag();
    let entries = s
        .split([',', ';'])
        .map(|e| QuadRat::parse(tag, e.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if matches!(domain, Domain::Integers) && !entries.iter().all(|e| e.is_rational()) {
        return Err(fail("entries over Z must be rational"));
    }
    Ok(QuiddityCycle::new(tag, entries)?)
}

fn entry_list(f: &FriezePattern) -> String {
    f.extract_quiddity()
        .entries()
        .iter()
        .map(|e| match e.to_quad_int() {
            Some(z) => z.to_string(),
            None => e.to_string(),
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn run_enumerate(a: &EnumerateArgs) -> Result<(), Failure> {
    let domain = parse_domain(&a.d)?;
    let bound = match &a.bound_sq {
        Some(s) => s
            .trim()
            .parse::<BigRational>()
            .map_err(|_| fail(format!("--bound-sq: not a rational number: {s}")))?,
        None => BigRational::from_integer(((a.height as i64 + 1).pow(2).max(4)).into()),
    };
    let positivity = if a.positive {
        Positivity::PositiveOnly
    } else {
        Positivity::All
    };
    let cfg = SearchConfig::new(domain, a.height, bound, positivity, a.workers)?;
    let show = a.progress;
    let result = enumerate_friezes_with_progress(&cfg, &|done, total| {
        if show {
            eprintln!("progress: {done}/{total} branches");
        }
    })?;
    let mut w = open_output(&a.out)?;
    match a.format {
        Format::Json => write_json(&mut w, &result.to_record())?,
        Format::Csv => write_census_csv(&mut w, &result)?,
        Format::Pretty => write_census_pretty(&mut w, &result)?,
    }
    w.flush()?;
    eprintln!(
        "{} friezes; {}",
        result.friezes.len(),
        result.completeness_note
    );
    if result.complete {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "census is complete only relative to the quiddity bound".into(),
        })
    }
}

fn write_census_csv(w: &mut dyn Write, r: &CensusResult) -> Result<(), Failure> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["d", "height", "quiddity", "class"])?;
    for f in &r.friezes {
        out.write_record([
            r.domain.label(),
            r.height.to_string(),
            entry_list(f),
            f.classify().as_str().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn write_census_pretty(w: &mut dyn Write, r: &CensusResult) -> Result<(), Failure> {
    writeln!(w, "ring {} height {} bound_sq {}", r.domain.label(), r.height, r.bound_used)?;
    writeln!(w, "{}", r.completeness_note)?;
    for (class, n) in &r.counts {
        writeln!(w, "  {:<22} {n}", class.as_str())?;
    }
    if let Ok(report) = frieze_subring_report(std::slice::from_ref(r)) {
        if !r.friezes.is_empty() {
            writeln!(w, "entries generate {report}")?;
        }
    }
    for f in &r.friezes {
        writeln!(w, "({})  {}", entry_list(f).replace(';', ", "), f.classify().as_str())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput {
    record: quadfrieze::frieze::FriezeRecord,
    unimodular: bool,
    tame: bool,
    nonzero: bool,
    glide: bool,
    untwist_parity: Option<String>,
    rows: Vec<Vec<String>>,
}

fn run_classify(a: &CycleArgs) -> Result<(), Failure> {
    let domain = parse_domain(&a.d)?;
    let cycle = parse_cycle(domain, &a.quiddity)?;
    let f = FriezePattern::from_quiddity(&cycle)?;
    let v = f.validate();
    let c = f.classify_detailed();
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => {
            let tag = f.tag();
            let rows = f
                .rows()
                .iter()
                .map(|r| r.iter().map(|e| quadfrieze::frieze::entry_symbol(e, tag)).collect())
                .collect();
            let out = ClassifyOutput {
                record: f.to_record(domain),
                unimodular: v.unimodular,
                tame: v.tame,
                nonzero: v.nonzero,
                glide: v.glide,
                untwist_parity: c.untwist_parity.map(|p| format!("{p:?}")),
                rows,
            };
            write_json(&mut w, &out)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["d", "height", "quiddity", "class"])?;
            out.write_record([
                domain.label(),
                f.height().to_string(),
                entry_list(&f),
                c.class.as_str().to_string(),
            ])?;
            out.flush()?;
        }
        Format::Pretty => {
            write!(w, "{}", f.pretty())?;
            writeln!(w, "class: {}", c.class.as_str())?;
            if let Some(p) = c.untwist_parity {
                writeln!(w, "untwist by negating {p:?} diagonals")?;
            }
            writeln!(
                w,
                "unimodular: {}  tame: {}  nonzero: {}  glide: {}",
                v.unimodular, v.tame, v.nonzero, v.glide
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_triangulations(a: &TriangulationArgs) -> Result<(), Failure> {
    let ts = enumerate_triangulations(a.n_gon)?;
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                diagonals: Vec<(usize, usize)>,
                quiddity: Vec<usize>,
            }
            let rows: Vec<Row> = ts
                .iter()
                .map(|t| Row {
                    diagonals: t.diagonals().iter().copied().collect(),
                    quiddity: t.triangle_counts(),
                })
                .collect();
            write_json(&mut w, &rows)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["n_gon", "diagonals", "quiddity"])?;
            for t in &ts {
                let diags: Vec<String> = t.diagonals().iter().map(|(x, y)| format!("{x}-{y}")).collect();
                let q: Vec<String> = t.triangle_counts().iter().map(|c| c.to_string()).collect();
                out.write_record([a.n_gon.to_string(), diags.join(";"), q.join(";")])?;
            }
            out.flush()?;
        }
        Format::Pretty => {
            for t in &ts {
                let q: Vec<String> = t.triangle_counts().iter().map(|c| c.to_string()).collect();
                writeln!(w, "{t}  quiddity ({})", q.join(", "))?;
            }
            writeln!(w, "{} triangulations", ts.len())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_reduce(a: &CycleArgs) -> Result<(), Failure> {
    let domain = parse_domain(&a.d)?;
    let cycle = parse_cycle(domain, &a.quiddity)?;
    let trace = reduce_to_canonical(&cycle)?;
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => write_json(&mut w, &trace.to_record())?,
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["step", "rule", "position", "before", "after", "sign_flip"])?;
            for (i, s) in trace.steps.iter().enumerate() {
                out.write_record([
                    i.to_string(),
                    format!("{:?}", s.rule),
                    s.position.to_string(),
                    s.before.to_string(),
                    s.after.to_string(),
                    s.sign_flip.to_string(),
                ])?;
            }
            out.flush()?;
        }
        Format::Pretty => {
            writeln!(w, "{}", trace.original)?;
            for s in &trace.steps {
                let flip = if s.sign_flip { "  (sign flip)" } else { "" };
                writeln!(w, "  {:?} at {} -> {}{flip}", s.rule, s.position, s.after)?;
            }
            writeln!(w, "terminal {}", trace.terminal)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_quiddity_check(a: &CycleArgs) -> Result<(), Failure> {
    let domain = parse_domain(&a.d)?;
    let cycle = parse_cycle(domain, &a.quiddity)?;
    let p = cycle.eta_product();
    let ok = cycle.is_quiddity_cycle();
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                cycle: quadfrieze::eta::CycleRecord,
                quiddity_cycle: bool,
                product: [String; 4],
            }
            let out = Out {
                cycle: cycle.to_record(),
                quiddity_cycle: ok,
                product: [p.m11.to_string(), p.m12.to_string(), p.m21.to_string(), p.m22.to_string()],
            };
            write_json(&mut w, &out)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["cycle", "quiddity_cycle"])?;
            out.write_record([cycle.to_string(), ok.to_string()])?;
            out.flush()?;
        }
        Format::Pretty => {
            writeln!(w, "product [[{}, {}], [{}, {}]]", p.m11, p.m12, p.m21, p.m22)?;
            writeln!(w, "quiddity cycle: {}", if ok { "yes" } else { "no" })?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_unit_search(a: &UnitArgs) -> Result<(), Failure> {
    let tag = FieldTag::new(a.d)?;
    let alpha = QuadRat::parse(tag, &a.alpha)?;
    let cert = find_infinite_unit(&alpha, a.power_budget, a.n_max)?;
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => write_json(&mut w, &cert.to_record())?,
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["d", "alpha", "h", "gamma2", "k", "unit", "inverse", "norm"])?;
            out.write_record([
                a.d.to_string(),
                alpha.to_string(),
                cert.h.to_string(),
                cert.gamma2.to_string(),
                cert.k.to_string(),
                cert.unit.to_string(),
                cert.inverse.to_string(),
                cert.norm.to_string(),
            ])?;
            out.flush()?;
        }
        Format::Pretty => {
            writeln!(w, "alpha = {alpha}, h = {}", cert.h)?;
            writeln!(w, "alpha^{} = gamma1/gamma2 with gamma1 = {}, gamma2 = {}", cert.h, cert.gamma1, cert.gamma2)?;
            writeln!(w, "({})*gamma1 + ({})*gamma2 = 1", cert.bezout_x, cert.bezout_y)?;
            writeln!(w, "k = {}", cert.k)?;
            writeln!(w, "{} = {}", cert.unit, format_poly(&cert.unit_poly, "a"))?;
            writeln!(w, "{} = {}", cert.inverse, format_poly(&cert.inverse_poly, "a"))?;
            writeln!(w, "norm = {} != 1", cert.norm)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_class_number(a: &ClassArgs) -> Result<(), Failure> {
    let tag = FieldTag::new(a.d)?;
    let h = class_number(tag);
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                d: i64,
                disc: i64,
                h: u64,
                forms: Vec<quadfrieze::orders::BinaryQuadraticForm>,
            }
            let out = Out {
                d: a.d,
                disc: tag.disc(),
                h,
                forms: reduced_forms(tag),
            };
            write_json(&mut w, &out)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["d", "disc", "h"])?;
            out.write_record([a.d.to_string(), tag.disc().to_string(), h.to_string()])?;
            out.flush()?;
        }
        Format::Pretty => writeln!(w, "{h}")?,
    }
    w.flush()?;
    Ok(())
}

fn run_verify(a: &FormatArgs) -> Result<(), Failure> {
    let checks = goldens::run_all();
    let mut w = open_output(&a.out)?;
    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                name: &'a str,
                passed: bool,
                detail: &'a str,
            }
            let rows: Vec<Row> = checks
                .iter()
                .map(|c| Row {
                    name: &c.name,
                    passed: c.passed,
                    detail: &c.detail,
                })
                .collect();
            write_json(&mut w, &rows)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(["check", "result", "detail"])?;
            for c in &checks {
                out.write_record([c.name.as_str(), if c.passed { "pass" } else { "fail" }, c.detail.as_str()])?;
            }
            out.flush()?;
        }
        Format::Pretty => {
            let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            for c in &checks {
                let pad = width - c.name.chars().count();
                writeln!(
                    w,
                    "{}{}  {}  {}",
                    c.name,
                    " ".repeat(pad),
                    if c.passed { "PASS" } else { "FAIL" },
                    c.detail
                )?;
            }
        }
    }
    w.flush()?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(fail(format!("{failed} reference checks failed")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Enumerate(a) => run_enumerate(a),
        Command::Classify(a) => run_classify(a),
        Command::Triangulations(a) => run_triangulations(a),
        Command::Reduce(a) => run_reduce(a),
        Command::QuiddityCheck(a) => run_quiddity_check(a),
        Command::UnitSearch(a) => run_unit_search(a),
        Command::ClassNumber(a) => run_class_number(a),
        Command::VerifyPaper(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}: {}", if f.code == 2 { "warning" } else { "error" }, f.message);
            ExitCode::from(f.code)
        }
    }
}
