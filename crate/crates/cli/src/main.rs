//! `amenable` — command-line front end for the entropy/covering toolkit.
//!
//! Exit codes: `0` success (including `--help`/`--version`), `1` usage
//! errors (bad flags, malformed argument values, contradictory options),
//! `2` domain or contract errors (unreadable files, malformed spec
//! documents, inputs outside an operation's domain).
//!
//! Output goes to stdout and is byte-identical across repeated runs of the
//! same command: randomized pipelines take explicit `--seed` values, floats
//! print with six significant digits, and JSON keys keep a fixed order.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};

use amenable::covering::{random_instance, CoveringInstance, InstanceParams};
use amenable::estimates::{binomial_bound_check, delta_for_epsilon, entropy_slack, min_scale};
use amenable::foelner::FoelnerSequence;
use amenable::group::Group;
use amenable::specfile::{parse_document, parse_rational, SpecDocument};
use amenable::subshift::{
    bowen_entropy_estimate, entropy_curve, hausdorff_dimension_estimate, CountMode,
    EstimateParams,
};

use amenable_cli::{
    fmt6, rational, to_json, CoveringReport, EntropyReport, EntropyRow, EstimateReport,
    FoelnerReport, FoelnerRow, GroupReport, ProofnumReport, ProofnumRow, ScalarReport, ToCsv,
};

#[derive(Parser)]
#[command(
    name = "amenable",
    version,
    about = "Entropy and covering diagnostics for subshifts over amenable groups",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Count locally admissible patterns.
    Local,
    /// Count patterns extendable one or more scales up.
    Extendable,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a group: arity, identity, generators.
    Group {
        /// Spec file whose `group` section names the group.
        #[arg(long, conflicts_with_all = ["kind", "d"])]
        spec: Option<PathBuf>,
        /// Group kind: `lattice` or `heisenberg`.
        #[arg(long)]
        kind: Option<String>,
        /// Lattice dimension (required with `--kind lattice`).
        #[arg(long)]
        d: Option<usize>,
        /// Output format (default: json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Følner diagnostics: defect table, boundary ratios, temperedness.
    Foelner {
        /// Spec file with `group` and `foelner` sections.
        #[arg(long, conflicts_with_all = ["seq", "d"])]
        spec: Option<PathBuf>,
        /// Built-in sequence: `z-boxes`, `z-centered`, or `heisenberg`.
        #[arg(long)]
        seq: Option<String>,
        /// Lattice dimension for `z-boxes`/`z-centered` (default 1).
        #[arg(long)]
        d: Option<usize>,
        /// Largest scale to tabulate (capped at the length of an explicit
        /// sequence).
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Output format (default: json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the covering selection on a spec-file or generated instance.
    Covering {
        /// Spec file with `group` and `covering` sections.
        #[arg(long, conflicts_with_all = ["random", "delta", "rows", "ambient"])]
        spec: Option<PathBuf>,
        /// Generate a random instance over Z instead of reading a file.
        #[arg(long)]
        random: bool,
        /// Seed for instance generation and for the selection's shuffles.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Slack parameter for `--random`, e.g. `0.005` or `1/200`.
        #[arg(long)]
        delta: Option<String>,
        /// Number of shape rows for `--random`.
        #[arg(long, default_value_t = 2)]
        rows: usize,
        /// Ambient interval length for `--random`.
        #[arg(long, default_value_t = 1600)]
        ambient: usize,
        /// Output format (default: json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Per-scale entropy curve of a subshift along a Følner sequence.
    Entropy {
        /// Spec file with `group`, `alphabet`, and optional `forbidden`.
        #[arg(long)]
        sft: PathBuf,
        /// Sequence name (`z-boxes`, `z-centered`, `heisenberg`); defaults
        /// to the spec file's `foelner` section.
        #[arg(long)]
        seq: Option<String>,
        /// Largest scale on the curve.
        #[arg(long)]
        n_max: usize,
        /// Which pattern count drives the curve (default: local).
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
        /// With `--mode extendable`: margin is this many scales up.
        #[arg(long, default_value_t = 1)]
        margin_growth: usize,
        /// Output format (default: csv).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Estimate dimensional (Bowen) entropy by bisection.
    Bowen {
        /// Spec file with `group`, `alphabet`, and optional `forbidden`.
        #[arg(long)]
        sft: PathBuf,
        /// Sequence name; defaults to the spec file's `foelner` section.
        #[arg(long)]
        seq: Option<String>,
        /// Smallest scale the outer measure may use.
        #[arg(long, default_value_t = 1)]
        n_start: usize,
        /// Deepest scale of the horizon.
        #[arg(long)]
        n_max: usize,
        /// Bisection stops below this bracket width.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// Output format (default: json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Estimate Hausdorff dimension in the Følner metric (same critical
    /// exponent as `bowen`).
    Dim {
        /// Spec file with `group`, `alphabet`, and optional `forbidden`.
        #[arg(long)]
        sft: PathBuf,
        /// Sequence name; defaults to the spec file's `foelner` section.
        #[arg(long)]
        seq: Option<String>,
        /// Smallest scale the outer measure may use.
        #[arg(long, default_value_t = 1)]
        n_start: usize,
        /// Deepest scale of the horizon.
        #[arg(long)]
        n_max: usize,
        /// Bisection stops below this bracket width.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// Output format (default: json).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Binomial-sum bound table and scalar counting-estimate helpers.
    Proofnum {
        /// Comma-separated list of n values (default `100,1000,10000`).
        #[arg(long)]
        n: Option<String>,
        /// Comma-separated list of delta values (default `0.1,0.01,0.005`).
        #[arg(long)]
        delta: Option<String>,
        /// Print the entropy slack `H(2d + 11 d^(1/4))` for this delta.
        #[arg(long, conflicts_with_all = ["n", "delta", "min_scale", "delta_for_epsilon"])]
        slack: Option<String>,
        /// Print the smallest scale usable at this delta.
        #[arg(long, conflicts_with_all = ["n", "delta", "delta_for_epsilon"])]
        min_scale: Option<String>,
        /// Print the largest grid delta whose slack is below this epsilon.
        #[arg(long, conflicts_with_all = ["n", "delta"])]
        delta_for_epsilon: Option<String>,
        /// Output format (default: csv).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Usage errors exit 1, run (domain/contract) errors exit 2.
enum CliError {
    Usage(String),
    Run(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn run_err(err: impl std::fmt::Display) -> CliError {
    CliError::Run(err.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's convention exits 2 on usage errors; this tool reserves
            // 2 for domain errors, so usage problems map to 1 instead.
            let ok = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn render<T: serde::Serialize + ToCsv>(report: &T, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => report.to_csv(),
    }
}

fn load_doc(path: &Path) -> Result<SpecDocument, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Run(format!("{}: {err}", path.display())))?;
    parse_document(&text).map_err(|err| CliError::Run(format!("{}: {err}", path.display())))
}

/// Resolves a named built-in sequence against the group it must live on.
fn named_sequence(name: &str, group: Group) -> Result<FoelnerSequence, CliError> {
    match (name, group) {
        ("z-boxes", Group::Lattice { dim }) => {
            FoelnerSequence::lattice_boxes(dim).map_err(run_err)
        }
        ("z-centered", Group::Lattice { dim }) => {
            FoelnerSequence::lattice_centered_boxes(dim).map_err(run_err)
        }
        ("heisenberg", Group::Heisenberg) => Ok(FoelnerSequence::heisenberg_boxes()),
        ("z-boxes" | "z-centered", _) => {
            Err(usage(format!("--seq {name} requires a lattice group")))
        }
        ("heisenberg", _) => Err(usage("--seq heisenberg requires the heisenberg group")),
        _ => Err(usage(format!(
            "unknown sequence `{name}`; expected z-boxes, z-centered, or heisenberg"
        ))),
    }
}

/// Sequence for a subshift command: `--seq` wins, the spec file's `foelner`
/// section is the fallback.
fn subshift_sequence(
    doc: &SpecDocument,
    seq: Option<&str>,
    group: Group,
) -> Result<FoelnerSequence, CliError> {
    match seq {
        Some(name) => named_sequence(name, group),
        None if doc.foelner.is_some() => doc.foelner().map_err(run_err),
        None => Err(usage(
            "pass --seq NAME or add a foelner section to the spec file",
        )),
    }
}

fn dispatch(cmd: Cmd) -> Result<String, CliError> {
    match cmd {
        Cmd::Group { spec, kind, d, format } => cmd_group(spec, kind, d, format),
        Cmd::Foelner { spec, seq, d, n_max, format } => cmd_foelner(spec, seq, d, n_max, format),
        Cmd::Covering { spec, random, seed, delta, rows, ambient, format } => {
            cmd_covering(spec, random, seed, delta, rows, ambient, format)
        }
        Cmd::Entropy { sft, seq, n_max, mode, margin_growth, format } => {
            cmd_entropy(sft, seq, n_max, mode, margin_growth, format)
        }
        Cmd::Bowen { sft, seq, n_start, n_max, tolerance, format } => cmd_estimate(
            "bowen-entropy",
            sft,
            seq,
            n_start,
            n_max,
            tolerance,
            format,
        ),
        Cmd::Dim { sft, seq, n_start, n_max, tolerance, format } => cmd_estimate(
            "hausdorff-dimension",
            sft,
            seq,
            n_start,
            n_max,
            tolerance,
            format,
        ),
        Cmd::Proofnum { n, delta, slack, min_scale, delta_for_epsilon, format } => {
            cmd_proofnum(n, delta, slack, min_scale, delta_for_epsilon, format)
        }
    }
}

fn cmd_group(
    spec: Option<PathBuf>,
    kind: Option<String>,
    d: Option<usize>,
    format: Option<Format>,
) -> Result<String, CliError> {
    let group = match (&spec, &kind) {
        (Some(path), None) => load_doc(path)?.group().map_err(run_err)?,
        (None, Some(kind)) => match kind.as_str() {
            "lattice" => {
                let dim = d.ok_or_else(|| usage("--kind lattice requires --d"))?;
                Group::lattice(dim).map_err(run_err)?
            }
            "heisenberg" => {
                if d.is_some() {
                    return Err(usage("--kind heisenberg does not take --d"));
                }
                Group::Heisenberg
            }
            other => return Err(usage(format!(
                "unknown group kind `{other}`; expected lattice or heisenberg"
            ))),
        },
        _ => return Err(usage("pass exactly one of --spec FILE or --kind KIND")),
    };
    let report = GroupReport {
        kind: match group {
            Group::Lattice { .. } => "lattice".into(),
            Group::Heisenberg => "heisenberg".into(),
        },
        arity: group.arity(),
        identity: group.identity().coords().to_vec(),
        generators: group
            .generators()
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
    };
    Ok(render(&report, format.unwrap_or(Format::Json)))
}

fn cmd_foelner(
    spec: Option<PathBuf>,
    seq: Option<String>,
    d: Option<usize>,
    n_max: usize,
    format: Option<Format>,
) -> Result<String, CliError> {
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    let (label, sequence) = match (&spec, &seq) {
        (Some(path), None) => {
            let doc = load_doc(path)?;
            let label = doc
                .foelner
                .as_ref()
                .map(|f| f.kind.clone())
                .unwrap_or_else(|| "missing".into());
            (label, doc.foelner().map_err(run_err)?)
        }
        (None, Some(name)) => {
            let group = match name.as_str() {
                "heisenberg" => {
                    if d.is_some() {
                        return Err(usage("--seq heisenberg does not take --d"));
                    }
                    Group::Heisenberg
                }
                _ => Group::lattice(d.unwrap_or(1)).map_err(run_err)?,
            };
            (name.clone(), named_sequence(name, group)?)
        }
        _ => return Err(usage("pass exactly one of --spec FILE or --seq NAME")),
    };
    let horizon = match sequence.max_scale() {
        Some(max) => n_max.min(max),
        None => n_max,
    };
    let table = sequence.defect_table(1..=horizon).map_err(run_err)?;
    let temperedness = if horizon >= 2 {
        rational(&sequence.temperedness_constant(horizon).map_err(run_err)?)
    } else {
        String::from("-")
    };
    let report = FoelnerReport {
        sequence: label,
        generators: table
            .generators
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
        temperedness,
        rows: table
            .rows
            .iter()
            .map(|row| FoelnerRow {
                n: row.n,
                size: row.size,
                max_defect: rational(
                    row.defects.iter().max().unwrap_or(&num_rational::Rational64::new(0, 1)),
                ),
                boundary_ratio: rational(&row.boundary_ratio),
            })
            .collect(),
    };
    Ok(render(&report, format.unwrap_or(Format::Json)))
}

fn cmd_covering(
    spec: Option<PathBuf>,
    random: bool,
    seed: u64,
    delta: Option<String>,
    rows: usize,
    ambient: usize,
    format: Option<Format>,
) -> Result<String, CliError> {
    let (source, instance): (String, CoveringInstance) = match (&spec, random) {
        (Some(path), false) => (
            path.display().to_string(),
            load_doc(path)?.covering_instance().map_err(run_err)?,
        ),
        (None, true) => {
            let delta_text = delta.as_deref().unwrap_or("1/200");
            let delta = parse_rational(delta_text)
                .map_err(|err| usage(format!("--delta {delta_text}: {err}")))?;
            let params = InstanceParams {
                group: Group::lattice(1).map_err(run_err)?,
                rows,
                shapes_per_row: 2,
                ambient_size: ambient,
                delta,
                first_row_max_shape: 2,
            };
            ("random".into(), random_instance(&params, seed).map_err(run_err)?)
        }
        _ => return Err(usage("pass exactly one of --spec FILE or --random")),
    };
    let hypotheses = instance.check_hypotheses().map_err(run_err)?;
    if !hypotheses.all_hold() {
        return Err(CliError::Run(
            "instance fails the selection hypotheses; no selection attempted".into(),
        ));
    }
    let selection = instance.lindenstrauss_select(seed).map_err(run_err)?;
    let report = CoveringReport {
        source,
        seed,
        rows: instance.rows(),
        delta: rational(&instance.delta()),
        ambient: instance.ambient().len(),
        alpha: rational(&selection.alpha),
        selected: selection.selected.len(),
        distinct_bases: selection.base_multiplicity.len(),
        coverage: rational(&selection.coverage),
        disjointness: "verified".into(),
        coverage_bound: "met".into(),
    };
    Ok(render(&report, format.unwrap_or(Format::Json)))
}

fn cmd_entropy(
    sft: PathBuf,
    seq: Option<String>,
    n_max: usize,
    mode: Mode,
    margin_growth: usize,
    format: Option<Format>,
) -> Result<String, CliError> {
    let doc = load_doc(&sft)?;
    let subshift = doc.subshift().map_err(run_err)?;
    let group = doc.group().map_err(run_err)?;
    let sequence = subshift_sequence(&doc, seq.as_deref(), group)?;
    let count_mode = match mode {
        Mode::Local => CountMode::Local,
        Mode::Extendable => CountMode::Extendable { margin_growth },
    };
    let curve = entropy_curve(&subshift, &sequence, n_max, count_mode).map_err(run_err)?;
    let mut rows = Vec::with_capacity(curve.len());
    for (n, rate) in curve {
        let cells = sequence.set(n).map_err(run_err)?.len();
        rows.push(EntropyRow { n, cells, rate: fmt6(rate) });
    }
    let report = EntropyReport {
        mode: match mode {
            Mode::Local => "local".into(),
            Mode::Extendable => format!("extendable(margin_growth={margin_growth})"),
        },
        alphabet: subshift.alphabet_len(),
        rows,
    };
    Ok(render(&report, format.unwrap_or(Format::Csv)))
}

fn cmd_estimate(
    quantity: &str,
    sft: PathBuf,
    seq: Option<String>,
    n_start: usize,
    n_max: usize,
    tolerance: f64,
    format: Option<Format>,
) -> Result<String, CliError> {
    let doc = load_doc(&sft)?;
    let subshift = doc.subshift().map_err(run_err)?;
    let group = doc.group().map_err(run_err)?;
    let sequence = subshift_sequence(&doc, seq.as_deref(), group)?;
    let params = EstimateParams { n_start, n_max, tolerance };
    let value = match quantity {
        "bowen-entropy" => bowen_entropy_estimate(&subshift, &sequence, &params),
        _ => hausdorff_dimension_estimate(&subshift, &sequence, &params),
    }
    .map_err(run_err)?;
    let report = EstimateReport {
        quantity: quantity.into(),
        n_start,
        n_max,
        tolerance: fmt6(tolerance),
        value: fmt6(value),
    };
    Ok(render(&report, format.unwrap_or(Format::Json)))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<(String, T)>, CliError>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|token| !token.is_empty())
        .map(|token| {
            token
                .parse::<T>()
                .map(|value| (token.to_string(), value))
                .map_err(|err| usage(format!("bad {what} value `{token}`: {err}")))
        })
        .collect()
}

fn parse_scalar(text: &str, flag: &str) -> Result<f64, CliError> {
    text.parse::<f64>()
        .map_err(|err| usage(format!("bad {flag} value `{text}`: {err}")))
}

fn cmd_proofnum(
    n: Option<String>,
    delta: Option<String>,
    slack: Option<String>,
    min_scale_at: Option<String>,
    delta_for: Option<String>,
    format: Option<Format>,
) -> Result<String, CliError> {
    if let Some(text) = slack {
        let value = entropy_slack(parse_scalar(&text, "--slack")?).map_err(run_err)?;
        let report = ScalarReport {
            quantity: "entropy-slack".into(),
            input: text,
            value: fmt6(value),
        };
        return Ok(render(&report, format.unwrap_or(Format::Csv)));
    }
    if let Some(text) = min_scale_at {
        let value = min_scale(parse_scalar(&text, "--min-scale")?).map_err(run_err)?;
        let report = ScalarReport {
            quantity: "min-scale".into(),
            input: text,
            value: fmt6(value),
        };
        return Ok(render(&report, format.unwrap_or(Format::Csv)));
    }
    if let Some(text) = delta_for {
        let value =
            delta_for_epsilon(parse_scalar(&text, "--delta-for-epsilon")?).map_err(run_err)?;
        let report = ScalarReport {
            quantity: "delta-for-epsilon".into(),
            input: text,
            value: fmt6(value),
        };
        return Ok(render(&report, format.unwrap_or(Format::Csv)));
    }

    let n_list = parse_list::<u64>(n.as_deref().unwrap_or("100,1000,10000"), "--n")?;
    let delta_list = parse_list::<f64>(delta.as_deref().unwrap_or("0.1,0.01,0.005"), "--delta")?;
    if n_list.is_empty() || delta_list.is_empty() {
        return Err(usage("--n and --delta need at least one value each"));
    }
    let mut rows = Vec::with_capacity(n_list.len() * delta_list.len());
    for (_, n) in &n_list {
        for (delta_token, delta) in &delta_list {
            let row = match binomial_bound_check(*n, *delta) {
                Ok(check) => ProofnumRow {
                    n: *n,
                    delta: delta_token.clone(),
                    exact_sum: check.exact_sum.to_string(),
                    bound: fmt6(check.bound),
                    log_bound: fmt6(check.log_bound),
                    status: if check.holds { "holds" } else { "violated" }.into(),
                    note: String::new(),
                },
                Err(err) => ProofnumRow {
                    n: *n,
                    delta: delta_token.clone(),
                    exact_sum: String::new(),
                    bound: String::new(),
                    log_bound: String::new(),
                    status: "domain-error".into(),
                    note: err.to_string(),
                },
            };
            rows.push(row);
        }
    }
    let report = ProofnumReport { rows };
    Ok(render(&report, format.unwrap_or(Format::Csv)))
}
