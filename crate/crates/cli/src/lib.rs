//! Command-line front end: one subcommand per analysis, a combined report and
//! file exporters.
//!
//! [`run`] never touches the process state beyond the files it is asked to
//! write, so it can be driven from tests.

mod sections;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use equivelar::family::{export_cas, CasDialect};
use equivelar::torus::{build, GammaPresentation, Triangulation};
use equivelar::Error;

pub use sections::Section;

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

pub const DEFAULT_ORDER: usize = 10;
pub const DEFAULT_GUARD: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "equivelar", version, about = "Equivelar torus triangulations and their versal deformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Truncation order of power series.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER, value_name = "N")]
    order: usize,
    /// Node limit for the component search and element limit for character
    /// enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD, value_name = "K")]
    guard: usize,
    /// Seed for the random fibre samples.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Record wall-clock timings in the report (which makes it
    /// nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Abc {
    #[arg(allow_negative_numbers = true)]
    a: i64,
    #[arg(allow_negative_numbers = true)]
    b: i64,
    #[arg(allow_negative_numbers = true)]
    c: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group invariants, chirality and polyhedrality.
    Classify(Abc),
    /// Stanley-Reisner generators and Hilbert function.
    Sr(Abc),
    /// Exponent lattice, weight matrix and local chart samples.
    Deform(Abc),
    /// The cone σ∨ and its dual.
    Cone(Abc),
    /// Gorenstein certificates of σ∨ and its dual.
    Reflexive(Abc),
    /// Cayley decomposition of σ∨.
    Cayley(Abc),
    /// Invariants of the Minkowski sum of the Cayley cells.
    Polytope(Abc),
    /// Minimal primes of the versal ideal.
    Components(Abc),
    /// Heisenberg group, characters and the quotient singularity.
    Symmetry(Abc),
    /// The one-parameter family over the seven-vertex torus.
    Family,
    /// Write a PALP polytope or a computer algebra script.
    Export {
        format: ExportFormat,
        #[command(flatten)]
        abc: Abc,
        /// Which polytope to write for `palp`.
        #[arg(long, value_enum, default_value_t = PolytopeChoice::Delta)]
        polytope: PolytopeChoice,
        /// Output file; standard output otherwise.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Every analysis in turn.
    ReportAll(Abc),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ExportFormat {
    /// Vertex matrix in PALP format.
    Palp,
    /// The versal ideal for Macaulay2.
    M2,
    /// The versal ideal for Singular.
    Singular,
    /// The family and its flatness check for Macaulay2 (7 2 1 only).
    FamilyM2,
    /// The family and its flatness check for Singular (7 2 1 only).
    FamilySingular,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PolytopeChoice {
    /// The centred Minkowski sum of the Cayley cells.
    Delta,
    /// Its polar.
    Polar,
    /// The first Cayley cell.
    Cell1,
    Cell2,
    Cell3,
}

/// Everything an invocation produced.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// `(a, b, c)`, absent for commands without a presentation.
    pub presentation: Option<[i64; 3]>,
    pub flags: Flags,
    pub sections: BTreeMap<String, Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
    pub versions: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Flags {
    pub order: usize,
    pub guard: usize,
    pub seed: u64,
}

impl Report {
    fn new(command: &str, abc: Option<Abc>, flags: Flags, timings: bool) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            presentation: abc.map(|x| [x.a, x.b, x.c]),
            flags,
            sections: BTreeMap::new(),
            timings_ms: timings.then(BTreeMap::new),
            versions: BTreeMap::from([
                ("equivelar".into(), equivelar::VERSION.into()),
                ("equivelar-cli".into(), env!("CARGO_PKG_VERSION").into()),
            ]),
        }
    }

    /// Highest exit code over the sections: 1 for failures, 2 for guard trips.
    pub fn exit_code(&self) -> i32 {
        let failed = self.sections.values().any(|s| s.status == sections::Status::Failed);
        let incomplete = self.sections.values().any(|s| s.status == sections::Status::Incomplete);
        if failed {
            1
        } else if incomplete {
            2
        } else {
            0
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(text: String) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: text }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome::usage(e.render().to_string()),
            };
        }
    };
    let flags = Flags { order: cli.order, guard: cli.guard, seed: cli.seed };
    if let Command::Export { format, abc, polytope, output } = cli.command {
        return export(format, abc, polytope, output, flags);
    }
    let (name, abc, list) = plan(&cli.command);
    let input = match abc.map(triangulation).transpose() {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let report = execute(name, abc, input, &list, flags, cli.timings);
    let mut out = String::new();
    for sec in list.iter().filter_map(|k| report.sections.get(k.name())).chain(report.sections.get("error")) {
        for line in &sec.lines {
            out.push_str(line);
            out.push('\n');
        }
    }
    let mut stderr = String::new();
    if let Some(path) = &cli.json {
        if let Err(e) = fs::write(path, report.to_json_string()) {
            stderr = format!("error: cannot write {}: {e}\n", path.display());
            return Outcome { code: 1, stdout: out, stderr };
        }
    }
    let code = report.exit_code();
    if code == 2 {
        stderr.push_str("search guard exceeded; results are incomplete (raise --guard)\n");
    }
    Outcome { code, stdout: out, stderr }
}

fn triangulation(x: Abc) -> Result<Triangulation, Error> {
    Ok(build(&GammaPresentation::new(x.a, x.b, x.c)?))
}

fn plan(cmd: &Command) -> (&'static str, Option<Abc>, Vec<sections::Kind>) {
    use sections::Kind::*;
    match *cmd {
        Command::Classify(x) => ("classify", Some(x), vec![Classify]),
        Command::Sr(x) => ("sr", Some(x), vec![Sr]),
        Command::Deform(x) => ("deform", Some(x), vec![Deform]),
        Command::Cone(x) => ("cone", Some(x), vec![Cone]),
        Command::Reflexive(x) => ("reflexive", Some(x), vec![Reflexive]),
        Command::Cayley(x) => ("cayley", Some(x), vec![Cayley]),
        Command::Polytope(x) => ("polytope", Some(x), vec![Polytope]),
        Command::Components(x) => ("components", Some(x), vec![Components]),
        Command::Symmetry(x) => ("symmetry", Some(x), vec![Symmetry]),
        Command::Family => ("family", None, vec![Family]),
        Command::ReportAll(x) => ("report-all", Some(x), sections::Kind::ALL.to_vec()),
        Command::Export { .. } => unreachable!("handled separately"),
    }
}

fn export(format: ExportFormat, abc: Abc, which: PolytopeChoice, output: Option<PathBuf>, flags: Flags) -> Outcome {
    let fail = |msg: String| Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") };
    let t = match triangulation(abc) {
        Ok(t) => t,
        Err(e) => return fail(e.to_string()),
    };
    if !t.polyhedral {
        return fail(Error::NotPolyhedral.to_string());
    }
    let text = match format {
        ExportFormat::M2 => equivelar::deform::versal_ideal(&t).to_macaulay2(),
        ExportFormat::Singular => equivelar::deform::versal_ideal(&t).to_singular(),
        ExportFormat::FamilyM2 | ExportFormat::FamilySingular => {
            if !sections::is_t7(&t) {
                return fail("the family is only defined over the seven-vertex torus (7 2 1)".into());
            }
            if flags.order < 2 {
                return fail("--order must be at least 2".into());
            }
            let d = if format == ExportFormat::FamilyM2 { CasDialect::Macaulay2 } else { CasDialect::Singular };
            export_cas(flags.order, d)
        }
        ExportFormat::Palp => match sections::polytope_for_export(&t, which as usize) {
            Ok(p) => p.to_palp(),
            Err(e) => return fail(e.to_string()),
        },
    };
    match output {
        Some(path) => match fs::write(&path, &text) {
            Ok(()) => Outcome { code: 0, stdout: format!("wrote {}\n", path.display()), stderr: String::new() },
            Err(e) => fail(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome { code: 0, stdout: text, stderr: String::new() },
    }
}

/// Runs the analyses in order. A non-polyhedral input ends `report-all`
/// after classification with an `error` section.
fn execute(
    name: &str,
    abc: Option<Abc>,
    t: Option<Triangulation>,
    kinds: &[sections::Kind],
    flags: Flags,
    timings: bool,
) -> Report {
    let mut report = Report::new(name, abc, flags, timings);
    let polyhedral = t.as_ref().is_none_or(|t| t.polyhedral);
    let ctx = sections::Context { t, flags };
    for &kind in kinds {
        let start = Instant::now();
        let sec = sections::compute(kind, &ctx);
        if let Some(tm) = report.timings_ms.as_mut() {
            tm.insert(kind.name().into(), start.elapsed().as_millis());
        }
        report.sections.insert(kind.name().into(), sec);
        if kinds.len() > 1 && !polyhedral {
            report.sections.insert("error".into(), Section::failed("report-all", &Error::NotPolyhedral));
            break;
        }
    }
    report
}

/// The `report-all` report for `(a, b, c)`.
pub fn report_all(a: i64, b: i64, c: i64, flags: Flags) -> Result<Report, Error> {
    let abc = Abc { a, b, c };
    Ok(execute("report-all", Some(abc), Some(triangulation(abc)?), sections::Kind::ALL, flags, false))
}

impl Default for Flags {
    fn default() -> Self {
        Flags { order: DEFAULT_ORDER, guard: DEFAULT_GUARD, seed: DEFAULT_SEED }
    }
}
