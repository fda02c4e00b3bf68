use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wreath_core::decomp::{basic_set, block_partition, middle, DecompositionMatrix};
use wreath_core::lr::lr_coefficient;
use wreath_core::partitions::{generate_partitions, p_core_and_quotient};
use wreath_core::verify::{run_suite, Report, Status};
use wreath_core::Partition;

const MAX_P: usize = 17;
const MAX_W: usize = 6;
const MAX_N: usize = 40;

/// Exit code when no claim failed but some were skipped.
const EXIT_SKIPPED: u8 = 2;

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Restriction multiplicities for wreath products Z_p ⋊ Z_{p-1} ≀ S_w and related S_n combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix of restriction multiplicities k(α, γ).
    Kmatrix(PW),
    /// Gram matrix of the restricted characters, with its determinant.
    Gram(PW),
    /// Partitions of n with block keys and basic-set membership.
    Basicset(NP),
    /// p-blocks of S_n.
    Blocks(NP),
    /// A single Littlewood-Richardson coefficient c^outer_{left,right}.
    Lr {
        /// Partitions written as [3,2,1].
        outer: Partition,
        left: Partition,
        right: Partition,
    },
    /// Run every verification claim for (p, w).
    Verify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        w: usize,
    },
}

#[derive(Args)]
struct PW {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    w: usize,
}

#[derive(Args)]
struct NP {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
}

fn check_p(p: usize) -> Result<()> {
    if p > MAX_P {
        bail!("p = {p} exceeds the limit {MAX_P}");
    }
    Ok(())
}

fn check_w(w: usize) -> Result<()> {
    if w > MAX_W {
        bail!("w = {w} exceeds the limit {MAX_W}");
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        bail!("n = {n} exceeds the limit {MAX_N}");
    }
    Ok(())
}

#[derive(Serialize)]
struct KMatrixOut {
    p: usize,
    w: usize,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<(usize, usize, u64)>,
}

#[derive(Serialize)]
struct GramOut {
    p: usize,
    w: usize,
    labels: Vec<String>,
    matrix: Vec<Vec<u64>>,
    /// Decimal string; the value can exceed 64 bits.
    determinant: String,
    /// Whether the principal submatrix on labels with empty middle component is the identity.
    hat_submatrix_is_identity: bool,
}

#[derive(Serialize)]
struct PartitionRow {
    partition: String,
    core: String,
    weight: usize,
    in_basic_set: bool,
}

#[derive(Serialize)]
struct BasicSetOut {
    n: usize,
    p: usize,
    basic_set_size: usize,
    partitions: Vec<PartitionRow>,
}

#[derive(Serialize)]
struct BlocksOut {
    n: usize,
    p: usize,
    blocks: Vec<wreath_core::decomp::Block>,
}

#[derive(Serialize)]
struct LrOut {
    outer: String,
    left: String,
    right: String,
    value: u64,
}

/// Rendered output plus an exit code.
struct Output {
    body: String,
    summary: String,
    code: u8,
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn kmatrix(p: usize, w: usize, format: Format) -> Result<Output> {
    check_p(p)?;
    check_w(w)?;
    let m = DecompositionMatrix::build(p, w)?;
    let out = KMatrixOut {
        p,
        w,
        rows: m.rows.iter().map(ToString::to_string).collect(),
        cols: m.cols.iter().map(ToString::to_string).collect(),
        entries: m.triples().collect(),
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["row_label", "col_label", "value"],
            out.entries
                .iter()
                .map(|&(r, c, v)| [out.rows[r].clone(), out.cols[c].clone(), v.to_string()]),
        )?,
    };
    Ok(Output {
        body,
        summary: format!(
            "{} x {} matrix, {} nonzero entries",
            out.rows.len(),
            out.cols.len(),
            out.entries.len()
        ),
        code: 0,
    })
}

fn gram(p: usize, w: usize, format: Format) -> Result<Output> {
    check_p(p)?;
    check_w(w)?;
    let g = DecompositionMatrix::build(p, w)?.gram();
    let hat: Vec<usize> = (0..g.labels.len())
        .filter(|&i| g.labels[i].middle().is_empty())
        .collect();
    let sub = g.submatrix(&hat);
    let hat_identity = sub
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u64::from(i == j)));
    debug_assert!(g.is_symmetric());
    let out = GramOut {
        p,
        w,
        labels: g.labels.iter().map(ToString::to_string).collect(),
        determinant: g.determinant().to_string(),
        matrix: g.values,
        hat_submatrix_is_identity: hat_identity,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["row_label", "col_label", "value"],
            out.matrix.iter().enumerate().flat_map(|(i, row)| {
                let labels = &out.labels;
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(move |(j, v)| [labels[i].clone(), labels[j].clone(), v.to_string()])
            }),
        )?,
    };
    Ok(Output {
        body,
        summary: format!(
            "{0} x {0} Gram matrix, determinant {1}",
            out.labels.len(),
            out.determinant
        ),
        code: 0,
    })
}

fn basicset(n: usize, p: usize, format: Format) -> Result<Output> {
    check_p(p)?;
    check_n(n)?;
    let members = basic_set(n, p)?;
    let partitions = generate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let pq = p_core_and_quotient(&lambda, p)?;
            Ok(PartitionRow {
                in_basic_set: members.contains(&lambda),
                partition: lambda.to_string(),
                core: pq.core.to_string(),
                weight: pq.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = BasicSetOut {
        n,
        p,
        basic_set_size: members.len(),
        partitions,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["partition", "core", "weight", "in_basic_set"],
            out.partitions.iter().map(|r| {
                [
                    r.partition.clone(),
                    r.core.clone(),
                    r.weight.to_string(),
                    r.in_basic_set.to_string(),
                ]
            }),
        )?,
    };
    Ok(Output {
        body,
        summary: format!(
            "{} of {} partitions of {n} have empty component {} in their {p}-quotient",
            out.basic_set_size,
            out.partitions.len(),
            middle(p)
        ),
        code: 0,
    })
}

fn blocks(n: usize, p: usize, format: Format) -> Result<Output> {
    check_p(p)?;
    check_n(n)?;
    let out = BlocksOut {
        n,
        p,
        blocks: block_partition(n, p)?,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["core", "weight", "partition"],
            out.blocks.iter().flat_map(|b| {
                b.members
                    .iter()
                    .map(move |m| [b.core.to_string(), b.weight.to_string(), m.to_string()])
            }),
        )?,
    };
    Ok(Output {
        body,
        summary: format!("{} blocks", out.blocks.len()),
        code: 0,
    })
}

fn lr(outer: &Partition, left: &Partition, right: &Partition, format: Format) -> Result<Output> {
    if outer.size() > MAX_N {
        bail!("|outer| = {} exceeds the limit {MAX_N}", outer.size());
    }
    let out = LrOut {
        outer: outer.to_string(),
        left: left.to_string(),
        right: right.to_string(),
        value: lr_coefficient(outer, left, right),
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            &["outer", "left", "right", "value"],
            [[
                out.outer.clone(),
                out.left.clone(),
                out.right.clone(),
                out.value.to_string(),
            ]],
        )?,
    };
    Ok(Output {
        summary: format!("c = {}", out.value),
        body,
        code: 0,
    })
}

fn verify(p: usize, w: usize, format: Format) -> Result<Output> {
    check_w(w)?;
    let report: Report = run_suite(p, w);
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => csv_rows(
            &[
                "claim", "p", "w", "status", "expected", "computed", "detail",
            ],
            report.claims.iter().map(|c| {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                [
                    c.claim.to_string(),
                    c.p.to_string(),
                    c.w.to_string(),
                    status.to_string(),
                    c.expected.clone(),
                    c.computed.clone(),
                    c.detail.clone().unwrap_or_default(),
                ]
            }),
        )?,
    };
    let failures = report.failures();
    let skipped = report.skipped();
    let code = if failures > 0 {
        1
    } else if skipped > 0 {
        EXIT_SKIPPED
    } else {
        0
    };
    Ok(Output {
        body,
        summary: format!(
            "{} claims: {} passed, {failures} failed, {skipped} skipped",
            report.claims.len(),
            report.claims.len() - failures - skipped
        ),
        code,
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let output = match &cli.command {
        Command::Kmatrix(a) => kmatrix(a.p, a.w, cli.format)?,
        Command::Gram(a) => gram(a.p, a.w, cli.format)?,
        Command::Basicset(a) => basicset(a.n, a.p, cli.format)?,
        Command::Blocks(a) => blocks(a.n, a.p, cli.format)?,
        Command::Lr { outer, left, right } => lr(outer, left, right, cli.format)?,
        Command::Verify { p, w } => verify(*p, *w, cli.format)?,
    };
    match &cli.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            w.write_all(output.body.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(output.body.as_bytes())?,
    }
    if !cli.quiet {
        eprintln!("{}", output.summary);
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
