//! The `ppl` command line: counting, sequences, Wilf classification,
//! verification and single-object bijection evaluation.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ppl_core::bijections::{
    bij_class2_pairs, bij_class2_pairs_inv, bij_class3_triples, bij_class3_triples_inv, bij_f,
    bij_f_inv, bij_g, claesson_tau, g_inv, tau_inv, BijectionName, Class3Variant,
};
use ppl_core::checks::{self, CheckOutcome};
use ppl_core::enumerate::{pair_pattern_subsets, wilf_classify, WilfClassification};
use ppl_core::formulas::{closed_form, kcolor_count, lookup_formula};
use ppl_core::tables::Family;
use ppl_core::{
    avoidance_sequence, count_avoiders_with, ColoredPartition, CountOptions, Error, PatternSet,
    Permutation, Sense,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_NMAX_CAP: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "ppl", version, about = "Pattern avoidance in colored set partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of colors.
    #[arg(short = 'k', long = "colors", default_value_t = 2)]
    pub k: u32,
    /// pattern, eq or lt.
    #[arg(long, default_value = "pattern")]
    pub sense: Sense,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Enumerate everything instead of pruning (oracle mode).
    #[arg(long)]
    pub naive: bool,
}

impl Common {
    fn options(&self) -> CountOptions {
        CountOptions {
            naive: self.naive,
            jobs: self.jobs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the colored partitions of [n] avoiding a pattern set.
    Count {
        /// Comma-separated patterns in word notation, e.g. "1^11^2,1^21^1".
        #[arg(short = 'p', long = "patterns", allow_hyphen_values = true)]
        patterns: String,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Avoider counts for n = 1..nmax, compared with a closed form when one is known.
    Sequence {
        #[arg(short = 'p', long = "patterns", allow_hyphen_values = true)]
        patterns: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Group all subsets of the six 2-colored pair patterns into Wilf classes.
    Classify {
        /// Subset size, 1 to 6.
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run consistency checks; exits 1 if any fails.
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        formulas: bool,
        #[arg(long)]
        recurrence: bool,
        #[arg(long)]
        symmetries: bool,
        #[arg(long)]
        identities: bool,
        #[arg(long)]
        kcolor: bool,
        /// Check one bijection (f, tau, g, class2, class3a, class3b).
        #[arg(long)]
        bijection: Option<BijectionName>,
        /// Largest size for bijection checks.
        #[arg(short = 'n', long = "n")]
        n: Option<usize>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Apply one bijection (or its inverse, e.g. f-inv) to a single input.
    Bijection {
        /// f, tau, g, class2, class3a, class3b, optionally with -inv.
        map: String,
        /// A partition in block notation (1^24^1/2^1), or a permutation.
        input: String,
        /// Read partition input in word notation (1^12^21^1) instead.
        #[arg(long)]
        word: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// One avoider count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPayload {
    pub patterns: PatternSet,
    pub sense: Sense,
    pub k: u32,
    pub n: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaMatch {
    pub id: String,
    pub label: String,
    pub statement: String,
    /// Closed-form values aligned with `counts`; `None` below the validity range.
    pub values: Vec<Option<u64>>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequencePayload {
    pub patterns: PatternSet,
    pub sense: Sense,
    pub k: u32,
    pub counts: Vec<u64>,
    pub formula: Option<FormulaMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionPayload {
    pub map: String,
    pub input: String,
    /// Block notation for partitions, one-line notation for permutations.
    pub output: String,
    /// Word notation, for partition outputs.
    pub output_word: Option<String>,
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    pattern_set: &'a PatternSet,
    sense: Sense,
    k: u32,
    n: usize,
    count: u64,
    formula_value: Option<u64>,
    agrees: Option<bool>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Resource(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow(_) | Error::ThreadPool(_) => Failure::Resource(e.to_string()),
            Error::Verification(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Resource(m) => (EXIT_RESOURCE, m),
                Failure::Verify(m) => (EXIT_VERIFY, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn nmax_cap() -> std::result::Result<usize, Failure> {
    match std::env::var("PPL_NMAX_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("PPL_NMAX_CAP must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_NMAX_CAP),
    }
}

fn check_size(n: usize) -> std::result::Result<(), Failure> {
    let cap = nmax_cap()?;
    if n > cap {
        return Err(Failure::Resource(format!(
            "n = {n} exceeds the enumeration cap {cap} (set PPL_NMAX_CAP to raise it)"
        )));
    }
    Ok(())
}

fn check_colors(k: u32) -> std::result::Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Usage("the number of colors must be at least 1".into()));
    }
    Ok(())
}

fn parse_set(text: &str) -> std::result::Result<PatternSet, Failure> {
    text.parse()
        .map_err(|e: Error| Failure::Usage(format!("bad pattern set {text:?}: {e}")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Count { patterns, n, common } => cmd_count(&patterns, n, &common, out),
        Command::Sequence {
            patterns,
            nmax,
            common,
        } => cmd_sequence(&patterns, nmax, &common, out),
        Command::Classify { size, nmax, common } => cmd_classify(size, nmax, &common, out),
        Command::Verify {
            all,
            tables,
            formulas,
            recurrence,
            symmetries,
            identities,
            kcolor,
            bijection,
            n,
            nmax,
            common,
        } => {
            let selection = Selection {
                tables: all || tables,
                formulas: all || formulas,
                recurrence: all || recurrence,
                symmetries: all || symmetries,
                identities: all || identities,
                kcolor: all || kcolor,
                bijections: if all {
                    BijectionName::ALL.to_vec()
                } else {
                    bijection.into_iter().collect()
                },
            };
            cmd_verify(&selection, n, nmax, &common, out)
        }
        Command::Bijection {
            map,
            input,
            word,
            format,
        } => cmd_bijection(&map, &input, word, format, out),
    }
}

fn cmd_count(patterns: &str, n: usize, common: &Common, out: &mut dyn Write) -> Outcome {
    check_size(n)?;
    check_colors(common.k)?;
    let set = parse_set(patterns)?;
    let count = count_avoiders_with(n, common.k, &set, common.sense, &common.options())?;
    let payload = CountPayload {
        patterns: set,
        sense: common.sense,
        k: common.k,
        n,
        count,
    };
    match common.format {
        Format::Table => writeln!(out, "{count}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(CsvRow {
                pattern_set: &payload.patterns,
                sense: payload.sense,
                k: payload.k,
                n,
                count,
                formula_value: None,
                agrees: None,
            })?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// The closed form matching `set` for `k` colors in the pattern sense, if any.
fn formula_for(
    set: &PatternSet,
    sense: Sense,
    k: u32,
    counts: &[u64],
) -> std::result::Result<Option<FormulaMatch>, Failure> {
    if sense != Sense::Pattern {
        return Ok(None);
    }
    let kcolor_set = parse_set("1^11^2,1^12^2,1^21^1")?;
    if k != 2 {
        if set.normalized() != kcolor_set {
            return Ok(None);
        }
        let values = (1..=counts.len())
            .map(|n| kcolor_count(n, k).map(Some))
            .collect::<ppl_core::Result<Vec<_>>>()?;
        let agrees = values.iter().zip(counts).all(|(v, c)| *v == Some(*c));
        return Ok(Some(FormulaMatch {
            id: "kcolor".into(),
            label: format!("{k} colors"),
            statement: "sum over weak compositions i_1+...+i_k = n of B(i_1)...B(i_k)".into(),
            values,
            agrees,
        }));
    }
    let Some(entry) = lookup_formula(set) else {
        return Ok(None);
    };
    let values = (1..=counts.len())
        .map(|n| {
            if n < entry.min_n {
                Ok(None)
            } else {
                closed_form(entry, n).map(Some)
            }
        })
        .collect::<ppl_core::Result<Vec<_>>>()?;
    let agrees = values
        .iter()
        .zip(counts)
        .all(|(v, c)| v.is_none_or(|v| v == *c));
    Ok(Some(FormulaMatch {
        id: entry.id.clone(),
        label: entry.label(),
        statement: entry.statement.to_string(),
        values,
        agrees,
    }))
}

fn write_sequence_csv(payloads: &[SequencePayload], out: &mut dyn Write) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for p in payloads {
        for (i, &count) in p.counts.iter().enumerate() {
            let value = p.formula.as_ref().and_then(|f| f.values[i]);
            w.serialize(CsvRow {
                pattern_set: &p.patterns,
                sense: p.sense,
                k: p.k,
                n: i + 1,
                count,
                formula_value: value,
                agrees: value.map(|v| v == count),
            })?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_sequence(patterns: &str, nmax: usize, common: &Common, out: &mut dyn Write) -> Outcome {
    if nmax == 0 {
        return Err(Failure::Usage("--nmax must be at least 1".into()));
    }
    check_size(nmax)?;
    check_colors(common.k)?;
    let set = parse_set(patterns)?;
    let seq = avoidance_sequence(&set, common.sense, common.k, nmax, &common.options())?;
    let formula = formula_for(&set, common.sense, common.k, &seq.counts)?;
    let payload = SequencePayload {
        patterns: set,
        sense: common.sense,
        k: common.k,
        counts: seq.counts,
        formula,
    };
    match common.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?,
        Format::Csv => return write_sequence_csv(std::slice::from_ref(&payload), out),
        Format::Table => {
            let set_text = if payload.patterns.is_empty() {
                "{}".to_string()
            } else {
                format!("{{{}}}", payload.patterns)
            };
            writeln!(out, "{set_text}, {} sense, k = {}", payload.sense, payload.k)?;
            writeln!(out, "{:>3}  {:>20}  {:>20}", "n", "count", "formula")?;
            for (i, c) in payload.counts.iter().enumerate() {
                let f = payload
                    .formula
                    .as_ref()
                    .and_then(|f| f.values[i])
                    .map_or_else(|| "-".to_string(), |v| v.to_string());
                writeln!(out, "{:>3}  {:>20}  {:>20}", i + 1, c, f)?;
            }
            match &payload.formula {
                Some(f) => writeln!(
                    out,
                    "{}: {} ({})",
                    f.label,
                    f.statement,
                    if f.agrees { "formula agrees" } else { "formula DISAGREES" }
                )?,
                None => writeln!(out, "no registered formula")?,
            }
        }
    }
    Ok(if payload.formula.as_ref().is_none_or(|f| f.agrees) {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_classify(size: usize, nmax: usize, common: &Common, out: &mut dyn Write) -> Outcome {
    if !(1..=6).contains(&size) {
        return Err(Failure::Usage(format!("--size must be between 1 and 6, got {size}")));
    }
    if nmax == 0 {
        return Err(Failure::Usage("--nmax must be at least 1".into()));
    }
    check_size(nmax)?;
    check_colors(common.k)?;
    let family = pair_pattern_subsets(size);
    let found: WilfClassification =
        wilf_classify(&family, common.sense, common.k, nmax, &common.options())?;
    match common.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&found)?)?,
        Format::Csv => {
            let payloads = found
                .classes
                .iter()
                .flat_map(|c| {
                    c.members.iter().map(|m| {
                        formula_for(m, found.sense, found.k, &c.counts).map(|formula| SequencePayload {
                            patterns: m.clone(),
                            sense: found.sense,
                            k: found.k,
                            counts: c.counts.clone(),
                            formula,
                        })
                    })
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            return write_sequence_csv(&payloads, out);
        }
        Format::Table => {
            writeln!(
                out,
                "{} classes over {} sets of size {size}, n <= {nmax}",
                found.classes.len(),
                family.len()
            )?;
            for (i, c) in found.classes.iter().enumerate() {
                let counts: Vec<String> = c.counts.iter().map(u64::to_string).collect();
                writeln!(out, "class {}: {}", i + 1, counts.join(", "))?;
                for m in &c.members {
                    writeln!(out, "    {{{m}}}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

struct Selection {
    tables: bool,
    formulas: bool,
    recurrence: bool,
    symmetries: bool,
    identities: bool,
    kcolor: bool,
    bijections: Vec<BijectionName>,
}

fn cmd_verify(
    sel: &Selection,
    n: Option<usize>,
    nmax: usize,
    common: &Common,
    out: &mut dyn Write,
) -> Outcome {
    check_size(nmax)?;
    if let Some(n) = n {
        check_size(n)?;
    }
    let opts = common.options();
    let mut results = Vec::new();
    if sel.tables {
        for family in [Family::Pairs, Family::Triples, Family::Quadruples] {
            results.push(checks::check_table(family, nmax, &opts)?);
        }
    }
    if sel.formulas {
        results.push(checks::check_formulas(nmax, &opts)?);
    }
    if sel.recurrence {
        results.push(checks::check_recurrence(12, nmax, &opts)?);
    }
    if sel.symmetries {
        results.push(checks::check_color_symmetries(nmax, &opts)?);
    }
    if sel.identities {
        results.push(checks::check_eq_identities(nmax));
    }
    if sel.kcolor {
        results.push(checks::check_kcolor(&opts)?);
    }
    for &name in &sel.bijections {
        let bound = n.unwrap_or_else(|| nmax.min(checks::bijection_bound(name)));
        results.push(checks::check_bijection(name, bound));
    }
    if results.is_empty() {
        return Err(Failure::Usage(
            "nothing to verify: pass --all or pick checks such as --tables or --bijection f".into(),
        ));
    }
    let payload = VerifyPayload {
        passed: results.iter().all(|r| r.passed),
        checks: results,
    };
    match common.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for c in &payload.checks {
                w.serialize(c)?;
            }
            w.flush()?;
        }
        Format::Table => {
            for c in &payload.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                writeln!(out, "{mark}  {}: {}", c.name, c.detail)?;
            }
        }
    }
    Ok(if payload.passed { EXIT_OK } else { EXIT_VERIFY })
}

enum Value {
    Partition(ColoredPartition),
    Perm(Permutation),
}

fn cmd_bijection(map: &str, input: &str, word: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let (base, inverse) = match map.strip_suffix("-inv") {
        Some(b) => (b, true),
        None => (map, false),
    };
    let name: BijectionName = base.parse()?;
    let partition = |k: Option<u32>| -> std::result::Result<ColoredPartition, Failure> {
        let parsed = if word {
            ColoredPartition::parse_word(input, k)
        } else if name == BijectionName::Tau && !input.contains('^') {
            ColoredPartition::parse_plain_blocks(input)
        } else {
            ColoredPartition::parse_blocks(input, k)
        };
        parsed.map_err(|e| Failure::Usage(format!("bad partition {input:?}: {e}")))
    };
    let perm = || -> std::result::Result<Permutation, Failure> {
        input
            .parse()
            .map_err(|e: Error| Failure::Usage(format!("bad permutation {input:?}: {e}")))
    };
    let variant = |n| {
        if n == BijectionName::Class3a {
            Class3Variant::Structural
        } else {
            Class3Variant::ColorSwap
        }
    };
    let result = match (name, inverse) {
        (BijectionName::F, false) => Value::Perm(bij_f(&partition(Some(2))?)?),
        (BijectionName::F, true) => Value::Partition(bij_f_inv(&perm()?)?),
        (BijectionName::Tau, false) => Value::Perm(claesson_tau(&partition(None)?)),
        (BijectionName::Tau, true) => Value::Partition(tau_inv(&perm()?)?),
        (BijectionName::G, false) => Value::Perm(bij_g(&partition(Some(2))?)?),
        (BijectionName::G, true) => Value::Partition(g_inv(&perm()?)?),
        (BijectionName::Class2, false) => Value::Partition(bij_class2_pairs(&partition(Some(2))?)?),
        (BijectionName::Class2, true) => {
            Value::Partition(bij_class2_pairs_inv(&partition(Some(2))?)?)
        }
        (n, false) => Value::Partition(bij_class3_triples(&partition(Some(2))?, variant(n))?),
        (n, true) => Value::Partition(bij_class3_triples_inv(&partition(Some(2))?, variant(n))?),
    };
    let payload = match &result {
        Value::Perm(q) => BijectionPayload {
            map: map.to_string(),
            input: input.to_string(),
            output: q.to_string(),
            output_word: None,
        },
        Value::Partition(p) => BijectionPayload {
            map: map.to_string(),
            input: input.to_string(),
            output: p.to_block_notation(),
            output_word: Some(p.to_string()),
        },
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(&payload)?;
            w.flush()?;
        }
        Format::Table => {
            writeln!(out, "{}", payload.output)?;
            if let Some(wd) = &payload.output_word {
                if !wd.is_empty() {
                    writeln!(out, "{wd}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}
