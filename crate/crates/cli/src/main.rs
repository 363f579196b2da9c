//! `catalan`: count, sample, rank and unrank Catalan structures from the
//! command line.

mod selftest;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use catalan_core::mountain::{self, DyckWord};
use catalan_core::oracle;
use catalan_core::random::{BitSource, ReplayBitSource, SeededBitSource};
use catalan_core::triangulation::{self, PolygonContext, Triangulation, TriangulationRecord};
use catalan_core::walker::{self, Code, NodeState};
use catalan_core::{BcTable, Error, Natural, DEFAULT_MAX_N};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "catalan",
    version,
    about = "Exact counting, uniform sampling and optimal coding of Catalan structures"
)]
struct Cli {
    /// Largest table size built without complaint.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    /// Directory holding a cached table (`bc-table.json`), reused across runs.
    #[arg(long, global = true, env = "CATALAN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the table up to `--n` and export it.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an exact count.
    Count {
        #[command(subcommand)]
        family: Family,
    },
    /// Draw uniform samples, one JSON object per line.
    Sample {
        #[command(subcommand)]
        family: Family,
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Print the code of a structure (read from a flag or stdin).
    Rank {
        #[command(subcommand)]
        family: RankFamily,
        /// Print the fixed-width codeword instead of the decimal code.
        #[arg(long, global = true)]
        as_bits: bool,
    },
    /// Print the structure with a given code.
    Unrank {
        #[command(subcommand)]
        family: UnrankFamily,
    },
    /// Brute-force enumeration (small sizes only), one JSON object per line.
    Enumerate {
        #[command(subcommand)]
        family: Family,
    },
    /// Check the generating function against the table.
    VerifyGf {
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Run the invariant suite.
    Selftest {
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum Family {
    /// Triangulations of a convex polygon, optionally with forbidden ears.
    #[command(alias = "triangulation")]
    Triangulations(PolygonArgs),
    /// Dyck words / mountain ranges of semilength `--n`.
    Dyck(DyckArgs),
}

#[derive(Subcommand, Debug, Clone)]
enum UnrankFamily {
    #[command(alias = "triangulation")]
    Triangulations {
        #[command(flatten)]
        polygon: PolygonArgs,
        #[command(flatten)]
        code: CodeArg,
    },
    Dyck {
        #[command(flatten)]
        dyck: DyckArgs,
        #[command(flatten)]
        code: CodeArg,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum RankFamily {
    #[command(alias = "triangulation")]
    Triangulations {
        #[command(flatten)]
        polygon: PolygonArgs,
        /// JSON list of pairs, e.g. `[[1,3],[0,3]]`, or a full record.
        #[arg(long)]
        diagonals: Option<String>,
    },
    Dyck {
        /// Word over U/D or a parenthesis string.
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct PolygonArgs {
    #[arg(long)]
    vertices: usize,
    /// Number of consecutive forbidden ears e_0..e_{m-1}.
    #[arg(long, default_value_t = 0)]
    missing: usize,
}

#[derive(Args, Debug, Clone)]
struct DyckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = WordFormat::Ud)]
    format: WordFormat,
}

#[derive(Args, Debug, Clone)]
struct SampleOpts {
    #[arg(long, default_value_t = 1, global = true)]
    count: u64,
    #[arg(long, global = true, conflicts_with = "bits")]
    seed: Option<u64>,
    /// Replay these bits (hex) instead of a pseudorandom stream.
    #[arg(long, global = true)]
    bits: Option<String>,
    /// Report bits consumed and branch-path length per sample.
    #[arg(long, global = true)]
    stats: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct CodeArg {
    /// Decimal code.
    #[arg(long)]
    code: Option<String>,
    /// Fixed-width binary codeword.
    #[arg(long)]
    code_bits: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum WordFormat {
    /// U/D string.
    Ud,
    /// Balanced parentheses.
    Parens,
    /// JSON list of RIGHT/UP lattice steps.
    Json,
}

/// Failure classes mapped to exit codes 1 and 2.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(format!("i/o: {e}"))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

struct Context {
    max_n: usize,
    cache_dir: Option<PathBuf>,
}

impl Context {
    /// A table covering `n`, from the cache when one is configured and large enough.
    fn table(&self, n: usize) -> CliResult<BcTable> {
        let Some(dir) = &self.cache_dir else {
            return Ok(BcTable::build_with_cap(n, self.max_n)?);
        };
        let path = dir.join("bc-table.json");
        if let Ok(text) = fs::read_to_string(&path) {
            match BcTable::from_json(&text) {
                Ok(t) if t.n_max() >= n => return Ok(t),
                Ok(_) => {}
                Err(e) => {
                    return Err(Failure::Internal(format!(
                        "corrupt cache {}: {e}",
                        path.display()
                    )))
                }
            }
        }
        let t = BcTable::build_with_cap(n, self.max_n)?;
        fs::create_dir_all(dir)?;
        write_atomically(&path, t.to_json().as_bytes())?;
        Ok(t)
    }
}

fn write_atomically(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}

fn polygon(args: &PolygonArgs) -> CliResult<PolygonContext> {
    Ok(PolygonContext::new(args.vertices, args.missing)?)
}

fn parse_code(table: &BcTable, root: NodeState, arg: &CodeArg) -> CliResult<Natural> {
    match (&arg.code, &arg.code_bits) {
        (Some(dec), _) => {
            let v = Natural::from_str(dec.trim()).map_err(|_| {
                Failure::Invalid(format!("--code {dec:?} is not a non-negative decimal"))
            })?;
            Ok(Code::new(table, root, v)?.value)
        }
        (None, Some(bits)) => Ok(Code::from_bit_string(table, root, bits.trim())?.value),
        (None, None) => Err(Failure::Invalid(
            "one of --code or --code-bits is required".into(),
        )),
    }
}

fn render_word(w: &DyckWord, format: WordFormat) -> serde_json::Value {
    match format {
        WordFormat::Ud => json!(w.to_string()),
        WordFormat::Parens => json!(w.to_parentheses()),
        WordFormat::Json => json!(w.to_lattice_path()),
    }
}

fn parse_word(text: &str) -> CliResult<DyckWord> {
    let text = text.trim();
    if text.starts_with('(') {
        return Ok(DyckWord::from_parentheses(text)?);
    }
    if text.starts_with('[') {
        let steps: Vec<catalan_core::LatticeStep> = serde_json::from_str(text)
            .map_err(|e| Failure::Invalid(format!("lattice path JSON: {e}")))?;
        return Ok(DyckWord::from_lattice_path(&steps)?);
    }
    Ok(text.parse()?)
}

fn parse_triangulation(vertices: usize, text: &str) -> CliResult<Triangulation> {
    let text = text.trim();
    if text.starts_with('{') {
        let rec: TriangulationRecord = serde_json::from_str(text)
            .map_err(|e| Failure::Invalid(format!("triangulation JSON: {e}")))?;
        if rec.n != vertices {
            return Err(Failure::Invalid(format!(
                "record is for n = {}, --vertices is {vertices}",
                rec.n
            )));
        }
        return Ok(rec.into_parts().0);
    }
    let pairs: Vec<[usize; 2]> = serde_json::from_str(text)
        .map_err(|e| Failure::Invalid(format!("diagonal list JSON: {e}")))?;
    Ok(Triangulation::new(
        vertices,
        pairs.into_iter().map(Into::into),
    ))
}

fn flag_or_stdin(flag: Option<String>) -> CliResult<String> {
    match flag {
        Some(s) => Ok(s),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(out: &mut impl Write, v: &serde_json::Value) -> CliResult {
    writeln!(
        out,
        "{}",
        serde_json::to_string(v).expect("json value serializes")
    )?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult {
    let ctx = Context {
        max_n: cli.max_n,
        cache_dir: cli.cache_dir,
    };
    match cli.command {
        Command::Table {
            n,
            format,
            out: path,
        } => {
            let t = ctx.table(n)?;
            // A cached table may be larger than requested.
            let t = if t.n_max() == n {
                t
            } else {
                BcTable::build_with_cap(n, usize::MAX)?
            };
            let mut buf = Vec::new();
            match format {
                TableFormat::Csv => t.write_csv(&mut buf)?,
                TableFormat::Json => {
                    buf.extend_from_slice(t.to_json().as_bytes());
                    buf.push(b'\n');
                }
            }
            match path {
                Some(p) => fs::write(p, buf)?,
                None => out.write_all(&buf)?,
            }
        }
        Command::Count { family } => {
            let count = match family {
                Family::Triangulations(p) => {
                    let pc = polygon(&p)?;
                    triangulation::count_triangulations(
                        &ctx.table(pc.vertices - 2)?,
                        pc.vertices,
                        pc.forbidden,
                    )?
                }
                Family::Dyck(d) => ctx.table(d.n)?.lookup(d.n, 0)?.clone(),
            };
            writeln!(out, "{count}")?;
        }
        Command::Sample { family, opts } => {
            let mut src: Box<dyn BitSource> = match (&opts.bits, opts.seed) {
                (Some(hex), _) => Box::new(ReplayBitSource::from_hex(hex)?),
                (None, seed) => Box::new(SeededBitSource::new(seed.unwrap_or(0))),
            };
            for _ in 0..opts.count {
                let before = src.bits_consumed();
                let mut v = match &family {
                    Family::Triangulations(p) => {
                        let pc = polygon(p)?;
                        let t = ctx.table(pc.vertices - 2)?;
                        let (code, tr) =
                            triangulation::sample_triangulation(&t, &pc, src.as_mut())?;
                        let mut v =
                            serde_json::to_value(tr.to_record(pc.forbidden)).expect("serializable");
                        v["code"] = json!(code.value.to_string());
                        if opts.stats {
                            let path = walker::unrank(&t, code.root, &code.value)?;
                            v["path_length"] = json!(path.len());
                        }
                        v
                    }
                    Family::Dyck(d) => {
                        let t = ctx.table(d.n)?;
                        let (code, w) = mountain::sample_dyck(&t, d.n, src.as_mut())?;
                        let mut v = json!({"n": d.n, "code": code.value.to_string(), "word": render_word(&w, d.format)});
                        if opts.stats {
                            v["path_length"] = json!(mountain::encode_dyck(&w).len());
                        }
                        v
                    }
                };
                if opts.stats {
                    v["bits_consumed"] = json!(src.bits_consumed() - before);
                }
                emit(out, &v)?;
            }
        }
        Command::Rank { family, as_bits } => {
            let (t, code) = match family {
                RankFamily::Triangulations {
                    polygon: p,
                    diagonals,
                } => {
                    let pc = polygon(&p)?;
                    let tr = parse_triangulation(pc.vertices, &flag_or_stdin(diagonals)?)?;
                    let t = ctx.table(pc.vertices - 2)?;
                    let code = triangulation::rank_triangulation(&t, &pc, &tr)?;
                    (t, code)
                }
                RankFamily::Dyck { word } => {
                    let w = parse_word(&flag_or_stdin(word)?)?;
                    let t = ctx.table(w.semilength())?;
                    let code = mountain::rank_dyck(&t, &w)?;
                    (t, code)
                }
            };
            if as_bits {
                writeln!(out, "{}", code.to_bit_string(&t)?)?;
            } else {
                writeln!(out, "{}", code.value)?;
            }
        }
        Command::Unrank { family } => match family {
            UnrankFamily::Triangulations { polygon: p, code } => {
                let pc = polygon(&p)?;
                let t = ctx.table(pc.vertices - 2)?;
                let root = pc.root().ok_or(Error::EmptyClass(NodeState {
                    n: pc.vertices - 2,
                    m: pc.vertices - 2,
                }))?;
                let value = parse_code(&t, root, &code)?;
                let tr = triangulation::unrank_triangulation(&t, &pc, &value)?;
                emit(
                    out,
                    &serde_json::to_value(tr.to_record(pc.forbidden)).expect("serializable"),
                )?;
            }
            UnrankFamily::Dyck { dyck: d, code } => {
                let t = ctx.table(d.n)?;
                let value = parse_code(&t, NodeState { n: d.n, m: 0 }, &code)?;
                let w = mountain::unrank_dyck(&t, d.n, &value)?;
                match render_word(&w, d.format) {
                    serde_json::Value::String(s) => writeln!(out, "{s}")?,
                    other => emit(out, &other)?,
                }
            }
        },
        Command::Enumerate { family } => match family {
            Family::Triangulations(p) => {
                let pc = polygon(&p)?;
                let forbidden: Vec<_> = pc.forbidden_ears().collect();
                for tr in oracle::enumerate_triangulations(pc.vertices)? {
                    if tr.diagonals.iter().all(|d| !forbidden.contains(d)) {
                        emit(
                            out,
                            &serde_json::to_value(tr.to_record(pc.forbidden))
                                .expect("serializable"),
                        )?;
                    }
                }
            }
            Family::Dyck(d) => {
                for w in oracle::enumerate_dyck(d.n)? {
                    emit(out, &json!({"n": d.n, "word": render_word(&w, d.format)}))?;
                }
            }
        },
        Command::VerifyGf { degree } => {
            let report = catalan_core::verify_generating_function(degree);
            for m in &report.mismatches {
                writeln!(
                    out,
                    "mismatch x^{} y^{}: expected {}, found {}",
                    m.i, m.j, m.expected, m.found
                )?;
            }
            writeln!(
                out,
                "degree {degree}: {} coefficients, {} mismatches",
                report.checked,
                report.mismatches.len()
            )?;
            if !report.is_clean() {
                return Err(Failure::Internal(
                    "generating function disagrees with the table".into(),
                ));
            }
        }
        Command::Selftest { nmax, degree } => {
            if nmax > ctx.max_n {
                return Err(Error::TableTooLarge {
                    requested: nmax,
                    cap: ctx.max_n,
                }
                .into());
            }
            selftest::run(nmax, degree, out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Squash clap's report into one line, without the usage block.
            let msg = e.to_string();
            let line: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
