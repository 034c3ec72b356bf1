//! The `granule` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approximation::{approximate, ApproximationError, Direction};
use crate::bitset::ObjectSet;
use crate::context::{
    make_cn_context, parse_compound_json, parse_context, serialize_context, to_compound_json, CompoundContext,
    Flavor, Format, FormalContext, DEFAULT_NEGATION_PREFIX,
};
use crate::definability::{define, minimal_descriptions, DefinabilityError, Mode, Reason, Status, Verdict};
use crate::derivation::DerivationError;
use crate::formula::{Scope, Style};
use crate::lattice::{
    enumerate_cn, enumerate_formal, enumerate_object_oriented, enumerate_three_way_compound, Guard, LatticeError,
};
use crate::report;

pub const EXIT_DEFINABLE: i32 = 0;
pub const EXIT_INDEFINABLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "granule", version, about = "Definability and approximation of object granules in formal contexts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the concepts of a context.
    Concepts(ConceptsArgs),
    /// Decide whether a granule is definable and describe it.
    Define(DefineArgs),
    /// Compute the nearest definable granules above or below a granule.
    Approx(ApproxArgs),
    /// Complement a context or adjoin its negated columns.
    Convert(ConvertArgs),
    /// Parse a context and report its size.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Formal,
    ObjectOriented,
    ThreeWay,
    Cn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Wedge,
    Vee,
    ThreeWay,
    Cn,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wedge => Mode::Wedge,
            ModeArg::Vee => Mode::Vee,
            ModeArg::ThreeWay => Mode::ThreeWay,
            ModeArg::Cn => Mode::Cn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Complement,
    Appose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContextFormat {
    Cxt,
    Json,
}

#[derive(Debug, Args)]
pub struct ConceptsArgs {
    /// Context file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "formal")]
    pub variant: Variant,
    /// B-block context for the three-way and cn variants.
    #[arg(long)]
    pub compound: Option<PathBuf>,
    /// Defaults to text on a terminal, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<LatticeFormat>,
    /// Enumerate even past the size limits.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct GranuleArgs {
    /// Context file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Comma-separated object names or 1-based indices.
    #[arg(long, allow_hyphen_values = true)]
    pub granule: String,
    /// B-block context for the three-way and cn modes.
    #[arg(long)]
    pub compound: Option<PathBuf>,
    /// Defaults to text on a terminal, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
    /// Render with `& | !` instead of `∧ ∨ ¬`.
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, Args)]
pub struct DefineArgs {
    #[command(flatten)]
    pub common: GranuleArgs,
    /// Also list every inclusion-minimal description.
    #[arg(long)]
    pub minimal: bool,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: GranuleArgs,
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    /// Report every result (always on).
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Context file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub op: Op,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Output format; taken from the output extension, then from the input.
    #[arg(long, value_enum)]
    pub format: Option<ContextFormat>,
    /// Prefix for complemented attribute names.
    #[arg(long, default_value = DEFAULT_NEGATION_PREFIX)]
    pub prefix: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Context file (`-` for stdin).
    pub input: PathBuf,
    /// B-block context to check against the input.
    #[arg(long)]
    pub compound: Option<PathBuf>,
}

/// A failed invocation: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Failure { code: EXIT_ERROR, message: message.into() }
    }
}

type Outcome = Result<i32, Failure>;

/// Standard streams plus whether stdout is a terminal.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub tty: bool,
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Concepts(a) => concepts(a, io),
        Command::Define(a) => define_cmd(a, io),
        Command::Approx(a) => approx_cmd(a, io),
        Command::Convert(a) => convert(a, io),
        Command::Validate(a) => validate(a, io),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "granule: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Failure::error(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::error(format!("{}: {e}", path.display())))
    }
}

/// A loaded input file.
enum Loaded {
    Formal(FormalContext),
    Compound(CompoundContext),
}

impl Loaded {
    fn scope(&self) -> Scope<'_> {
        match self {
            Loaded::Formal(c) => Scope::Formal(c),
            Loaded::Compound(c) => Scope::Compound(c),
        }
    }
}

fn is_compound_json(text: &str) -> bool {
    Format::detect(text) == Format::Json
        && serde_json::from_str::<serde_json::Value>(text).is_ok_and(|v| v.get("a_attributes").is_some())
}

fn load(path: &Path, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let text = read_text(path, stdin)?;
    let shown = path.display();
    if is_compound_json(&text) {
        parse_compound_json(&text).map(Loaded::Compound).map_err(|e| Failure::error(format!("{shown}: {e}")))
    } else {
        parse_context(&text).map(Loaded::Formal).map_err(|e| Failure::error(format!("{shown}: {e}")))
    }
}

fn load_formal(path: &Path, stdin: &mut dyn Read) -> Result<FormalContext, Failure> {
    match load(path, stdin)? {
        Loaded::Formal(c) => Ok(c),
        Loaded::Compound(_) => Err(Failure::error(format!("{}: expected a plain context", path.display()))),
    }
}

/// The context `mode` reads: plain for wedge and vee, compound otherwise.
fn resolve(input: &Path, compound: Option<&Path>, mode: Mode, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let primary = load(input, stdin)?;
    let b_block = compound.map(|p| load_formal(p, stdin)).transpose()?;
    let err = |m: String| Err(Failure::error(m));
    match (mode, primary, b_block) {
        (Mode::Wedge | Mode::Vee, Loaded::Formal(a), None) => Ok(Loaded::Formal(a)),
        (Mode::Wedge | Mode::Vee, _, Some(_)) => err(format!("--compound does not apply to mode {mode}")),
        (Mode::Wedge | Mode::Vee, Loaded::Compound(_), None) => err(format!("mode {mode} needs a plain context")),
        (Mode::ThreeWay, Loaded::Formal(a), None) => Ok(Loaded::Compound(a.appose_negation())),
        (Mode::ThreeWay, Loaded::Formal(a), Some(b)) => CompoundContext::three_way(a, b)
            .map(Loaded::Compound)
            .map_err(|e| Failure::error(e.to_string())),
        (Mode::Cn, Loaded::Formal(_), None) => err("mode cn needs --compound or a compound input".into()),
        (Mode::Cn, Loaded::Formal(a), Some(b)) => {
            make_cn_context(a, b).map(Loaded::Compound).map_err(|e| Failure::error(e.to_string()))
        }
        (_, Loaded::Compound(_), Some(_)) => err("a compound input takes no --compound".into()),
        (_, Loaded::Compound(c), None) => {
            let wanted = if mode == Mode::Cn { Flavor::CommonNecessary } else { Flavor::ThreeWay };
            if c.flavor() == wanted {
                Ok(Loaded::Compound(c))
            } else {
                err(format!("mode {mode} cannot read a {} compound context", c.flavor()))
            }
        }
    }
}

/// Object names win over indices; bare numbers are 1-based indices.
fn parse_granule(text: &str, objects: &[String], stderr: &mut dyn Write) -> Result<ObjectSet, Failure> {
    let n = objects.len();
    let mut out = ObjectSet::empty(n);
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let by_name = objects.iter().position(|o| o == token);
        let by_index = token.parse::<usize>().ok().filter(|&i| (1..=n).contains(&i)).map(|i| i - 1);
        match (by_name, by_index) {
            (Some(i), Some(j)) if i != j => {
                let _ = writeln!(
                    stderr,
                    "granule: warning: `{token}` names object {}; read as a name, not as index {token}",
                    i + 1
                );
                out.insert(i);
            }
            (Some(i), _) | (None, Some(i)) => out.insert(i),
            (None, None) => return Err(Failure::error(format!("unknown object `{token}`"))),
        }
    }
    Ok(out)
}

fn report_format(f: Option<ReportFormat>, tty: bool) -> ReportFormat {
    f.unwrap_or(if tty { ReportFormat::Text } else { ReportFormat::Json })
}

fn emit(io: &mut Io<'_>, text: &str) -> Result<(), Failure> {
    io.stdout.write_all(text.as_bytes()).map_err(|e| Failure::error(format!("stdout: {e}")))?;
    if !text.ends_with('\n') {
        io.stdout.write_all(b"\n").map_err(|e| Failure::error(format!("stdout: {e}")))?;
    }
    Ok(())
}

fn lattice_failure(e: LatticeError) -> Failure {
    match e {
        LatticeError::TooLarge { .. } => Failure { code: EXIT_TOO_LARGE, message: e.to_string() },
        other => Failure::error(other.to_string()),
    }
}

fn concepts(a: &ConceptsArgs, io: &mut Io<'_>) -> Outcome {
    let guard = if a.force { Guard::Force } else { Guard::Enforce };
    let format = a.format.unwrap_or(if io.tty { LatticeFormat::Text } else { LatticeFormat::Json });
    let mode = match a.variant {
        Variant::Formal | Variant::ObjectOriented => Mode::Wedge,
        Variant::ThreeWay => Mode::ThreeWay,
        Variant::Cn => Mode::Cn,
    };
    let target = resolve(&a.input, a.compound.as_deref(), mode, io.stdin)?;
    let text = match (a.variant, &target) {
        (Variant::Cn, Loaded::Compound(c)) => {
            let list = enumerate_cn(c, guard).map_err(lattice_failure)?;
            let (ab, bb) = (c.a_block(), c.b_block());
            match format {
                LatticeFormat::Text => report::cn_text(ab, bb, &list),
                LatticeFormat::Json => report::cn_json(ab, bb, &list),
                LatticeFormat::Dot => report::cn_dot(ab, bb, &list),
            }
        }
        (variant, target) => {
            let (ctx, lattice) = match (variant, target) {
                (Variant::Formal, Loaded::Formal(c)) => (c, enumerate_formal(c, guard)),
                (Variant::ObjectOriented, Loaded::Formal(c)) => (c, enumerate_object_oriented(c, guard)),
                (Variant::ThreeWay, Loaded::Compound(c)) => (c.joined(), enumerate_three_way_compound(c, guard)),
                _ => unreachable!("resolve matches the variant"),
            };
            let lattice = lattice.map_err(lattice_failure)?;
            match format {
                LatticeFormat::Text => report::lattice_text(ctx, &lattice),
                LatticeFormat::Json => report::lattice_json(ctx, &lattice),
                LatticeFormat::Dot => report::lattice_dot(ctx, &lattice),
            }
        }
    };
    emit(io, &text)?;
    Ok(EXIT_DEFINABLE)
}

fn style(ascii: bool) -> Style {
    if ascii {
        Style::Ascii
    } else {
        Style::Unicode
    }
}

fn define_cmd(a: &DefineArgs, io: &mut Io<'_>) -> Outcome {
    let c = &a.common;
    let mode = Mode::from(c.mode);
    let target = resolve(&c.input, c.compound.as_deref(), mode, io.stdin)?;
    let scope = target.scope();
    let x = parse_granule(&c.granule, scope.objects(), io.stderr)?;
    let verdict = match define(scope, mode, &x) {
        Ok(v) => v,
        Err(DefinabilityError::Derivation(DerivationError::EmptyGranule)) => Verdict::inapplicable(Reason::EmptyGranule),
        Err(e) => return Err(Failure::error(e.to_string())),
    };
    let minimal = if a.minimal {
        Some(minimal_descriptions(scope, mode, &x).map_err(|e| Failure::error(e.to_string()))?)
    } else {
        None
    };
    let style = style(c.ascii);
    let text = match report_format(c.format, io.tty) {
        ReportFormat::Text => report::verdict_text(scope, &x, &verdict, minimal.as_deref(), style),
        ReportFormat::Json => report::verdict_json(scope, &verdict, minimal.as_deref(), style),
    };
    emit(io, &text)?;
    Ok(match verdict.status {
        Status::Definable => EXIT_DEFINABLE,
        Status::Indefinable => EXIT_INDEFINABLE,
        Status::Inapplicable => EXIT_INAPPLICABLE,
    })
}

fn approx_cmd(a: &ApproxArgs, io: &mut Io<'_>) -> Outcome {
    let c = &a.common;
    let mode = Mode::from(c.mode);
    let direction = match a.direction {
        DirectionArg::Upper => Direction::Upper,
        DirectionArg::Lower => Direction::Lower,
    };
    let target = resolve(&c.input, c.compound.as_deref(), mode, io.stdin)?;
    let scope = target.scope();
    let x = parse_granule(&c.granule, scope.objects(), io.stderr)?;
    let inapplicable = |r: Reason| Failure { code: EXIT_INAPPLICABLE, message: format!("not applicable: {r}") };
    let approx = match approximate(scope, mode, direction, &x) {
        Ok(ap) => ap,
        Err(ApproximationError::Inapplicable(r)) => return Err(inapplicable(r)),
        Err(ApproximationError::Definability(DefinabilityError::Derivation(DerivationError::EmptyGranule))) => {
            return Err(inapplicable(Reason::EmptyGranule))
        }
        Err(e) => return Err(Failure::error(e.to_string())),
    };
    let style = style(c.ascii);
    let text = match report_format(c.format, io.tty) {
        ReportFormat::Text => report::approximation_text(scope, &x, &approx, style),
        ReportFormat::Json => report::approximation_json(scope, &approx, style),
    };
    emit(io, &text)?;
    Ok(EXIT_DEFINABLE)
}

fn convert(a: &ConvertArgs, io: &mut Io<'_>) -> Outcome {
    let text = read_text(&a.input, io.stdin)?;
    let input_format = Format::detect(&text);
    let ctx = parse_context(&text).map_err(|e| Failure::error(format!("{}: {e}", a.input.display())))?;
    let from_extension = a.output.as_ref().and_then(|p| match p.extension()?.to_str()? {
        "json" => Some(Format::Json),
        "cxt" => Some(Format::Cxt),
        _ => None,
    });
    let format = match a.format {
        Some(ContextFormat::Cxt) => Format::Cxt,
        Some(ContextFormat::Json) => Format::Json,
        None => from_extension.unwrap_or(input_format),
    };
    let out = match a.op {
        Op::Complement => serialize_context(&ctx.complement(&a.prefix), format),
        Op::Appose => {
            let c = ctx.appose_negation_with_prefix(&a.prefix);
            match format {
                Format::Cxt => serialize_context(c.joined(), Format::Cxt),
                Format::Json => to_compound_json(&c),
            }
        }
    };
    match &a.output {
        Some(path) => fs::write(path, out).map_err(|e| Failure::error(format!("{}: {e}", path.display())))?,
        None => emit(io, &out)?,
    }
    Ok(EXIT_DEFINABLE)
}

fn validate(a: &ValidateArgs, io: &mut Io<'_>) -> Outcome {
    let primary = load(&a.input, io.stdin)?;
    let line = match (primary, &a.compound) {
        (Loaded::Formal(c), None) => {
            format!("formal context: {} objects, {} attributes", c.n_objects(), c.n_attributes())
        }
        (Loaded::Formal(c), Some(path)) => {
            let b = load_formal(path, io.stdin)?;
            let cc = make_cn_context(c, b).map_err(|e| Failure::error(e.to_string()))?;
            compound_summary(&cc)
        }
        (Loaded::Compound(c), None) => compound_summary(&c),
        (Loaded::Compound(_), Some(_)) => return Err(Failure::error("a compound input takes no --compound")),
    };
    emit(io, &line)?;
    Ok(EXIT_DEFINABLE)
}

fn compound_summary(c: &CompoundContext) -> String {
    format!(
        "{} compound context: {} objects, {} + {} attributes",
        c.flavor(),
        c.n_objects(),
        c.a_block().n_attributes(),
        c.b_block().n_attributes()
    )
}
