//! `relprob`: validate, inspect, build and combine relative probability
//! functions stored as JSON documents.
//!
//! Exit codes: 0 success, 1 domain or axiom error, 2 parse or usage error,
//! 3 a limit that does not converge.

mod document;

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use relprob::bayes::{bayes_update, noisy_channel_likelihood, sequential_update, CountVector};
use relprob::compose::{compose, total_comparability_conditions, Composition};
use relprob::events::{event_rel_prob, to_absolute};
use relprob::limits::{sequence_limit, LimitError, NamedFamily, DEFAULT_STEPS};
use relprob::{catalog, validate, ClassedRpf, DenseRpf, Event, Magnitude, RpfError};

use document::{DocError, Document};

#[derive(Parser)]
#[command(
    name = "relprob",
    version,
    about = "Relative probability functions on finite outcome spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the identity, inverse and composition axioms.
    Validate { file: String },
    /// Comparability flags, anchors, possibility classes and their order.
    Classify {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the table.
    Show { file: String },
    /// Rewrite a document in dense or classed form.
    Convert {
        file: String,
        #[arg(long, value_enum)]
        to: Form,
    },
    /// Emit a standard RPF.
    Catalog {
        #[command(subcommand)]
        entry: CatalogEntry,
    },
    /// Relative probability of two outcomes or two events.
    Query {
        file: String,
        /// Two outcome indices.
        #[arg(long, num_args = 2, value_names = ["I", "J"], conflicts_with = "events", required_unless_present = "events")]
        outcomes: Option<Vec<usize>>,
        /// Two comma-separated index lists; "" is the empty event.
        #[arg(long, num_args = 2, value_names = ["E1", "E2"], allow_hyphen_values = true)]
        events: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Absolute distribution of an anchored RPF, one probability per line.
    ToAbsolute { file: String },
    /// Compose components under a top-level RPF over the components.
    Compose {
        top: String,
        #[arg(required = true)]
        components: Vec<String>,
    },
    /// Multiply a prior by one or more likelihood RPFs.
    Bayes {
        prior: String,
        #[arg(required = true)]
        likelihoods: Vec<String>,
    },
    /// Likelihood RPF of a symmetric noisy channel.
    NoisyChannel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        counts: Vec<u64>,
    },
    /// Limit of a sequence of documents or of a built-in family.
    Limit {
        #[arg(conflicts_with = "family", required_unless_present = "family")]
        files: Vec<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Dense,
    Classed,
}

#[derive(Subcommand)]
enum CatalogEntry {
    Uniform {
        k: usize,
    },
    Indeterminate {
        k: usize,
    },
    Certain {
        k: usize,
        c: usize,
    },
    Empty,
    Unit,
    /// `P(h_{i+1}, h_i) = r`; `r` may be `0` or `inf`.
    Geometric {
        k: usize,
        r: Magnitude,
    },
    Binomial {
        n: usize,
        p: f64,
    },
    FromAbsolute {
        #[arg(required = true)]
        probs: Vec<f64>,
    },
}

enum Failure {
    Usage(String),
    Parse(String),
    Domain(RpfError),
    NotConverged(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::NotConverged(_) => 3,
        }
    }

    fn line(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("error[usage]: {msg}"),
            Failure::Parse(msg) => format!("error[parse]: {msg}"),
            Failure::Domain(RpfError::Axioms(report)) => format!("error[axioms]: {report}"),
            Failure::Domain(e) => format!("error[domain]: {e}"),
            Failure::NotConverged(msg) => format!("error[not-converged]: {msg}"),
        }
    }
}

impl From<RpfError> for Failure {
    fn from(e: RpfError) -> Failure {
        Failure::Domain(e)
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Failure {
        match e {
            DocError::Syntax(msg) => Failure::Parse(msg),
            DocError::Domain(e) => Failure::Domain(e),
        }
    }
}

impl From<LimitError> for Failure {
    fn from(e: LimitError) -> Failure {
        match e {
            LimitError::Rpf(e) => Failure::Domain(e),
            other => Failure::NotConverged(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Reads files, allowing standard input ("-") at most once.
struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn text(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::Usage(
                    "standard input can only be read once".into(),
                ));
            }
            self.stdin_used = true;
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
    }

    fn document(&mut self, path: &str) -> Result<Document, Failure> {
        Ok(document::parse(&self.text(path)?)?)
    }

    fn rpf(&mut self, path: &str) -> Result<DenseRpf, Failure> {
        Ok(self.document(path)?.into_rpf()?)
    }
}

fn parse_event(text: &str) -> Result<Event, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad outcome index {s:?} in event {text:?}")))
        })
        .collect()
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn classify(p: &DenseRpf, as_json: bool) -> String {
    let r = p.classify();
    if as_json {
        return document::finish(json!({
            "totally_comparable": r.totally_comparable,
            "anchored": r.anchored,
            "anchors": r.anchors,
            "totally_mutually_possible": r.totally_mutually_possible,
            "classes": r.classes,
            "class_dag": r.class_dag,
        }));
    }
    let classes = r
        .classes
        .iter()
        .map(|c| format!("{{{}}}", list(c).replace(' ', ",")))
        .collect::<Vec<_>>();
    let dag = r.class_dag.iter().map(|(a, b)| format!("{a}->{b}"));
    format!(
        "totally_comparable: {}\nanchored: {}\nanchors: {}\ntotally_mutually_possible: {}\nclasses: {}\nclass_dag: {}\n",
        r.totally_comparable,
        r.anchored,
        list(&r.anchors),
        r.totally_mutually_possible,
        classes.join(" "),
        list(dag),
    )
}

fn show(p: &DenseRpf) -> String {
    let cells: Vec<Vec<String>> = p
        .table()
        .rows()
        .map(|row| row.iter().map(Magnitude::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        let line = row
            .iter()
            .map(|c| format!("{c:>width$}"))
            .collect::<Vec<_>>();
        writeln!(out, "{}", line.join("  ")).unwrap();
    }
    out
}

fn catalog_entry(entry: CatalogEntry) -> Result<DenseRpf, Failure> {
    Ok(match entry {
        CatalogEntry::Uniform { k } => catalog::uniform(k),
        CatalogEntry::Indeterminate { k } => catalog::indeterminate(k),
        CatalogEntry::Certain { k, c } => catalog::certain(k, c)?,
        CatalogEntry::Empty => catalog::empty(),
        CatalogEntry::Unit => catalog::unit(),
        CatalogEntry::Geometric { k, r } => catalog::finite_geometric(k, r)?,
        CatalogEntry::Binomial { n, p } => catalog::binomial(n, p)?,
        CatalogEntry::FromAbsolute { probs } => catalog::from_absolute(&probs)?,
    })
}

fn run(command: Command, warnings: &mut Vec<String>) -> Outcome {
    let mut inputs = Inputs { stdin_used: false };
    match command {
        Command::Validate { file } => {
            let table = inputs.document(&file)?.into_table();
            let report = validate(&table);
            if report.is_valid() {
                Ok("valid\n".into())
            } else {
                Err(RpfError::Axioms(report).into())
            }
        }
        Command::Classify { file, json } => Ok(classify(&inputs.rpf(&file)?, json)),
        Command::Show { file } => Ok(show(&inputs.rpf(&file)?)),
        Command::Convert { file, to } => {
            let p = inputs.rpf(&file)?;
            Ok(match to {
                Form::Dense => document::dense(&p),
                Form::Classed => document::classed(&ClassedRpf::from_dense(&p)),
            })
        }
        Command::Catalog { entry } => Ok(document::dense(&catalog_entry(entry)?)),
        Command::Query {
            file,
            outcomes,
            events,
            json,
        } => {
            let p = inputs.rpf(&file)?;
            let value = match (outcomes, events) {
                (Some(o), _) => {
                    let (i, j) = (o[0], o[1]);
                    for h in [i, j] {
                        if h >= p.k() {
                            return Err(RpfError::OutOfRange { index: h, k: p.k() }.into());
                        }
                    }
                    p[(i, j)]
                }
                (None, Some(e)) => event_rel_prob(&p, &parse_event(&e[0])?, &parse_event(&e[1])?)?,
                (None, None) => {
                    return Err(Failure::Usage("query needs --outcomes or --events".into()))
                }
            };
            if json {
                Ok(document::finish(json!({
                    "value": value.to_string(),
                    "log_value": value.log_value().filter(|l| l.is_finite()),
                })))
            } else {
                Ok(format!("{value}\n"))
            }
        }
        Command::ToAbsolute { file } => {
            let d = to_absolute(&inputs.rpf(&file)?)?;
            Ok(d.probs().iter().map(|x| format!("{x}\n")).collect())
        }
        Command::Compose { top, components } => {
            let top = inputs.rpf(&top)?;
            let components = components
                .iter()
                .map(|f| inputs.rpf(f))
                .collect::<Result<Vec<_>, _>>()?;
            let c = Composition::new(top, components)?;
            let conditions = total_comparability_conditions(&c)?;
            let mut note = format!(
                "condition1={} condition2={} condition3={}",
                conditions.condition1, conditions.condition2, conditions.condition3
            );
            if let Some(w) = &conditions.witness {
                write!(note, " witness={w:?}").unwrap();
            }
            warnings.push(note);
            Ok(document::dense(&compose(&c)?.rpf))
        }
        Command::Bayes { prior, likelihoods } => {
            let prior = inputs.rpf(&prior)?;
            let likelihoods = likelihoods
                .iter()
                .map(|f| inputs.rpf(f))
                .collect::<Result<Vec<_>, _>>()?;
            if !prior.is_totally_mutually_possible() {
                warnings.push(
                    "warning: prior is not totally mutually possible; its zero and incomparable entries can never be revised"
                        .into(),
                );
            }
            let posterior = match likelihoods.as_slice() {
                [one] => bayes_update(&prior, one)?,
                many => sequential_update(&prior, many)?,
            };
            Ok(document::dense(&posterior))
        }
        Command::NoisyChannel { k, p, counts } => Ok(document::dense(&noisy_channel_likelihood(
            k,
            p,
            &CountVector(counts),
        )?)),
        Command::Limit {
            files,
            family,
            steps,
        } => {
            let limit = match family {
                Some(name) => {
                    let family = NamedFamily::from_name(&name).ok_or_else(|| {
                        let known = list(NamedFamily::ALL.iter().map(|f| f.name()));
                        Failure::Usage(format!("unknown family {name:?}; known: {known}"))
                    })?;
                    family.limit(steps)?
                }
                None => {
                    let seq = files
                        .iter()
                        .map(|f| inputs.rpf(f))
                        .collect::<Result<Vec<_>, _>>()?;
                    sequence_limit(&seq)?
                }
            };
            Ok(document::dense(&limit))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut warnings = Vec::new();
    let result = run(cli.command, &mut warnings);
    for w in &warnings {
        eprintln!("{w}");
    }
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.line());
            ExitCode::from(failure.code())
        }
    }
}
