//! Command-line front end for the `polypart` binary.
//!
//! [`run`] parses arguments and returns the text that would be printed, so the
//! commands can be exercised without spawning a process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::census::{self, ColorWeights, ModularShape};
use crate::crosscheck::{self, Counters};
use crate::error::Error;
use crate::oracle;
use crate::scenarios;

#[derive(Debug, Parser)]
#[command(name = "polypart", version, about = "Count colored dissections of convex polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form count of dissections into k cells with total index n.
    Phat {
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long, default_value = "default=1")]
        colors: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Evaluate through the quadratic recurrence instead.
        #[arg(long)]
        recurrence: bool,
    },
    /// Print the terms of a named family.
    Sequence {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "default=1")]
        colors: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a JSON array of `{scenario, params, max_n}` requests.
    Batch {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count by exhaustive enumeration.
    Oracle {
        #[arg(long)]
        sides: usize,
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long, default_value = "default=1")]
        colors: String,
        /// Require a (d+1)-gon over the base edge.
        #[arg(long, value_name = "D", conflicts_with = "exactly_one")]
        based: Option<usize>,
        /// Count dissections with exactly one cell of this many sides.
        #[arg(long, value_name = "SIDES")]
        exactly_one: Option<usize>,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// List every dissection, one `m;i-j,...` line each.
    Dissections {
        #[arg(long)]
        sides: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every counting route on a bounded grid.
    Crosscheck {
        #[arg(long, default_value_t = 12)]
        max_sides: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    ColoredTotal,
    Schroeder,
    SingleSize,
    TriQuad,
    Adjacent,
    Even,
    OddEdges,
    OddSides,
    TriangleFree,
    MinSize,
    Avoid,
    BasedTriangle,
    BasedTotal,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let value = self.to_possible_value().expect("no skipped variants");
        f.write_str(value.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Bfile,
    Json,
}

/// Parses `default=<uint>[,<j>=<uint>]*`.
pub fn parse_colors(text: &str) -> Result<ColorWeights, Error> {
    let err = |pos: usize, msg: &str| Error::ColorSpec { pos, msg: msg.to_string() };
    let mut colors: Option<ColorWeights> = None;
    let mut seen = std::collections::BTreeSet::new();
    let mut pos = 0;
    for item in text.split(',') {
        let (key, value) = item.split_once('=').ok_or_else(|| err(pos, "expected key=value"))?;
        let value_pos = pos + key.len() + 1;
        let value: u64 = value.trim().parse().map_err(|_| err(value_pos, "expected an unsigned integer"))?;
        match (key.trim(), colors.take()) {
            ("default", None) if pos == 0 => colors = Some(ColorWeights::uniform(value)),
            ("default", _) => return Err(err(pos, "default must come first, once")),
            (_, None) => return Err(err(pos, "spec must start with default=<uint>")),
            (j, Some(c)) => {
                let j: usize = j.parse().map_err(|_| err(pos, "expected an index"))?;
                if j == 0 {
                    return Err(err(pos, "indices start at 1"));
                }
                if !seen.insert(j) {
                    return Err(err(pos, "duplicate index"));
                }
                colors = Some(c.with(j, value));
            }
        }
        pos += item.len() + 1;
    }
    colors.ok_or_else(|| err(0, "empty color spec"))
}

/// Parameters shared by `sequence` and batch requests.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(default)]
    pub q: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub colors: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BatchRequest {
    pub scenario: Scenario,
    #[serde(default)]
    pub params: Params,
    pub max_n: usize,
}

/// A named sequence with its parameters and `(n, a(n))` terms.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceRecord {
    pub scenario: Scenario,
    pub params: BTreeMap<String, String>,
    #[serde(serialize_with = "terms_as_strings")]
    pub terms: Vec<(usize, BigInt)>,
}

fn terms_as_strings<S: serde::Serializer>(terms: &[(usize, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (n, v) in terms {
        seq.serialize_element(&(n, v.to_string()))?;
    }
    seq.end()
}

impl SequenceRecord {
    pub fn to_bfile(&self) -> String {
        self.terms.iter().fold(String::new(), |mut out, (n, v)| {
            let _ = writeln!(out, "{n} {v}");
            out
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("# {}", self.scenario);
        for (k, v) in &self.params {
            let _ = write!(out, " {k}={v}");
        }
        out.push_str("\nn\ta(n)\n");
        for (n, v) in &self.terms {
            let _ = writeln!(out, "{n}\t{v}");
        }
        out
    }
}

/// Computes terms `1..=max_n` of a scenario.
pub fn sequence(scenario: Scenario, params: &Params, max_n: usize) -> anyhow::Result<SequenceRecord> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let colors = parse_colors(params.colors.as_deref().unwrap_or("default=1"))?;
    let mut shown = BTreeMap::new();
    let uses_colors = !matches!(scenario, Scenario::Schroeder | Scenario::BasedTriangle);
    if uses_colors {
        shown.insert("colors".to_string(), colors.to_string());
    }
    let need_q = || -> anyhow::Result<usize> {
        let q = params.q.with_context(|| format!("scenario {scenario} needs --q"))?;
        if q == 0 {
            bail!("--q must be at least 1");
        }
        Ok(q)
    };
    let q = match scenario {
        Scenario::SingleSize | Scenario::Adjacent | Scenario::MinSize | Scenario::Avoid => {
            let q = need_q()?;
            shown.insert("q".to_string(), q.to_string());
            q
        }
        _ => 0,
    };
    let d = if scenario == Scenario::BasedTotal {
        let d = params.d.unwrap_or(2);
        shown.insert("d".to_string(), d.to_string());
        d
    } else {
        0
    };
    let mut terms = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let value = match scenario {
            Scenario::ColoredTotal => scenarios::colored_total(&colors, n),
            Scenario::Schroeder => scenarios::schroeder(n),
            Scenario::SingleSize => scenarios::single_size(q, n, colors.weight(q)),
            Scenario::TriQuad => scenarios::triangles_and_quads(n, colors.weight(1), colors.weight(2)),
            Scenario::Adjacent => scenarios::two_adjacent_sizes(q, n, colors.weight(q), colors.weight(q + 1)),
            Scenario::Even => scenarios::even_gons_total(&colors, n),
            Scenario::OddEdges => scenarios::odd_gons_by_edges(&colors, n),
            Scenario::OddSides => scenarios::odd_gons_by_sides(&colors, n),
            Scenario::TriangleFree => scenarios::triangle_free(&colors, n),
            Scenario::MinSize => scenarios::min_part_size(q, &colors, n),
            Scenario::Avoid => scenarios::avoiding_size(q, &colors, n),
            Scenario::BasedTriangle => scenarios::based_triangle(n),
            Scenario::BasedTotal => census::based_total(d, &colors, n),
        }
        .with_context(|| format!("term n={n}"))?;
        terms.push((n, value));
    }
    Ok(SequenceRecord { scenario, params: shown, terms })
}

/// Result of a command: text for stdout and whether the process should
/// report success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, success: true }
    }
}

fn emit(text: String, out: Option<&PathBuf>) -> anyhow::Result<Outcome> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn render(records: &[SequenceRecord], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(records)? + "\n",
        Format::Bfile => records.iter().map(SequenceRecord::to_bfile).collect::<Vec<_>>().join("\n"),
        Format::Table => records.iter().map(SequenceRecord::to_table).collect::<Vec<_>>().join("\n"),
    })
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> anyhow::Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    execute(Cli::try_parse_from(args)?.command)
}

pub fn execute(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Phat { a, b, colors, n, k, recurrence } => {
            let shape = ModularShape::new(a, b)?;
            let colors = parse_colors(&colors)?;
            let value = if recurrence {
                if k == 0 {
                    bail!("the recurrence needs k >= 1");
                }
                census::phat_by_recurrence(shape, &colors, n, k)?
            } else {
                census::phat(shape, &colors, n, k)?
            };
            Ok(Outcome::ok(format!("{value}\n")))
        }
        Command::Sequence { scenario, max_n, q, d, colors, format, out } => {
            let record = sequence(scenario, &Params { q, d, colors: Some(colors) }, max_n)?;
            emit(render(&[record], format)?, out.as_ref())
        }
        Command::Batch { file, format, out } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let requests: Vec<BatchRequest> = serde_json::from_str(&text).context("parsing batch file")?;
            let records = requests
                .iter()
                .enumerate()
                .map(|(i, r)| sequence(r.scenario, &r.params, r.max_n).with_context(|| format!("request {i}")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            emit(render(&records, format)?, out.as_ref())
        }
        Command::Oracle { sides, a, b, colors, based, exactly_one, cap } => {
            let colors = parse_colors(&colors)?;
            if let Some(part) = exactly_one {
                let value = oracle::count_with_exactly_one(sides, part, &colors, cap)?;
                return Ok(Outcome::ok(format!("{value}\n")));
            }
            let table = match based {
                Some(d) => oracle::based_weighted_count(sides, d, &colors, cap)?,
                None => oracle::weighted_count(sides, ModularShape::new(a, b)?, &colors, cap)?,
            };
            let mut text = String::new();
            for (k, v) in table.iter() {
                writeln!(text, "{k} {v}")?;
            }
            writeln!(text, "total {}", table.total())?;
            Ok(Outcome::ok(text))
        }
        Command::Dissections { sides, cap, out } => {
            let text = oracle::enumerate_dissections(sides, cap)?
                .iter()
                .fold(String::new(), |mut acc, d| {
                    let _ = writeln!(acc, "{d}");
                    acc
                });
            emit(text, out.as_ref())
        }
        Command::Crosscheck { max_sides, seed, samples, cap } => {
            let config = crosscheck::Config { max_sides, seed, samples, cap };
            let report = crosscheck::run(&config, Counters::default());
            Ok(Outcome { stdout: report.to_string(), success: report.passed() })
        }
    }
}
