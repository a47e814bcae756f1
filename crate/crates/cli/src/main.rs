//! `stern-bsd` — command line access to Stern polynomials, non-adjacent
//! forms, exhaustive signed-digit enumeration, and the linear-time
//! M/Z/deg/lc tables.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
//! 3 arithmetic overflow, 4 enumeration or memory budget exceeded,
//! 5 table verification mismatch.

use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stern_bsd::naf;
use stern_bsd::oracle::{self, DEFAULT_ENUM_LIMIT};
use stern_bsd::stern;
use stern_bsd::tables::{self, DegLcTables, OptTables};
use stern_bsd::Error;

#[derive(Parser)]
#[command(
    name = "stern-bsd",
    version,
    about = "Stern polynomials and optimal binary signed-digit representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Stern polynomial B_n.
    Stern {
        n: u64,
        /// Also evaluate the polynomial at this point.
        #[arg(long)]
        eval: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the non-adjacent form of n and its interval coordinates.
    Naf {
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate all representations of n with the given number of
    /// signed digits, with their weight distribution.
    Enum {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        bits: u32,
        /// Cap on the number of representations (default from
        /// STERN_BSD_LIMIT or 1000000).
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build the M/Z/deg/lc tables up to NAF length k_max and emit CSV.
    Table {
        k_max: u32,
        /// Which columns to compute and emit.
        #[arg(long, value_enum, default_value_t = TableWhat::All)]
        what: TableWhat,
        /// Write atomically to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-derive entries from the polynomial recursion up to this NAF
        /// length (default min(k_max, 12)) and fail on any mismatch.
        #[arg(long, value_name = "DEPTH")]
        verify: Option<Option<u32>>,
        /// Fill each interval with parallel workers (same output).
        #[arg(long)]
        parallel: bool,
    },
    /// Print one statistic over the interval I_k, one row per n.
    Dist {
        k: u32,
        /// Which statistic to tabulate.
        #[arg(long, value_enum, default_value_t = DistWhat::M)]
        what: DistWhat,
        /// Write atomically to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableWhat {
    #[value(name = "M")]
    M,
    #[value(name = "Z")]
    Z,
    Deg,
    Lc,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistWhat {
    #[value(name = "M")]
    M,
    #[value(name = "Z")]
    Z,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 1,
        Error::Domain(_) | Error::ZeroPolynomial => 2,
        Error::Overflow => 3,
        Error::Capacity { .. } => 4,
        Error::Mismatch { .. } => 5,
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Stern { n, eval, format } => emit(None, |w| cmd_stern(n, eval, format, w)),
        Command::Naf { n, format } => emit(None, |w| cmd_naf(n, format, w)),
        Command::Enum {
            n,
            bits,
            limit,
            format,
        } => {
            let limit = effective_limit(limit)?;
            emit(None, |w| cmd_enum(n, bits, limit, format, w))
        }
        Command::Table {
            k_max,
            what,
            out,
            verify,
            parallel,
        } => cmd_table(k_max, what, out, verify, parallel),
        Command::Dist { k, what, out } => cmd_dist(k, what, out),
    }
}

/// The enumeration cap: `--limit` wins, then `STERN_BSD_LIMIT`, then the
/// library default.
fn effective_limit(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var("STERN_BSD_LIMIT") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("STERN_BSD_LIMIT is not a number: {value:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

/// Runs `body` against stdout or, with a path, against a temporary file in
/// the destination directory that is atomically renamed into place only
/// after every byte is written.
fn emit<F>(out: Option<&Path>, body: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> Result<(), Error>,
{
    match out {
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let result = body(&mut w).and_then(|()| w.flush().map_err(Error::from));
            match result {
                // A closed pipe downstream (e.g. `| head`) is not a failure.
                Err(Error::Io(msg)) if msg.contains("Broken pipe") => Ok(()),
                other => other,
            }
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
            {
                let mut w = BufWriter::new(tmp.as_file_mut());
                body(&mut w)?;
                w.flush()?;
            }
            tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
            Ok(())
        }
    }
}

fn render_list(values: &[u64]) -> String {
    let mut out = String::from("[");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v}");
    }
    out.push(']');
    out
}

#[derive(Serialize)]
struct SternReport {
    n: u64,
    coeffs: Vec<u64>,
    degree: Option<usize>,
    lc: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
}

fn cmd_stern(n: u64, eval: Option<u64>, format: Format, w: &mut dyn Write) -> Result<(), Error> {
    let poly = stern::stern_of(n)?;
    let report = SternReport {
        n,
        coeffs: poly.coeffs().to_vec(),
        degree: poly.degree().ok(),
        lc: poly.leading_coefficient().ok(),
        t0: eval,
        value: match eval {
            Some(t0) => Some(poly.evaluate(t0)?),
            None => None,
        },
    };
    match format {
        Format::Text => {
            writeln!(w, "n: {}", report.n)?;
            writeln!(w, "coeffs: {}", render_list(&report.coeffs))?;
            match report.degree {
                Some(d) => writeln!(w, "degree: {d}")?,
                None => writeln!(w, "degree: undefined")?,
            }
            match report.lc {
                Some(l) => writeln!(w, "lc: {l}")?,
                None => writeln!(w, "lc: undefined")?,
            }
            if let (Some(t0), Some(v)) = (report.t0, report.value) {
                writeln!(w, "eval({t0}): {v}")?;
            }
        }
        Format::Csv => {
            let coeffs = report
                .coeffs
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(";");
            let degree = report.degree.map(|d| d.to_string()).unwrap_or_default();
            let lc = report.lc.map(|l| l.to_string()).unwrap_or_default();
            if let (Some(t0), Some(v)) = (report.t0, report.value) {
                writeln!(w, "n,coeffs,degree,lc,t0,value")?;
                writeln!(w, "{},{},{},{},{},{}", report.n, coeffs, degree, lc, t0, v)?;
            } else {
                writeln!(w, "n,coeffs,degree,lc")?;
                writeln!(w, "{},{},{},{}", report.n, coeffs, degree, lc)?;
            }
        }
        Format::Json => write_json(w, &report)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct NafReport {
    n: u64,
    naf: String,
    k: Option<u32>,
    block: Option<String>,
    sibling: Option<u64>,
}

fn cmd_naf(n: u64, format: Format, w: &mut dyn Write) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Domain(
            "n must be positive; 0 has the empty NAF".to_string(),
        ));
    }
    let digits = naf::naf_encode(n);
    let k = naf::naf_bitlength(n)?;
    let block = if k >= 3 {
        Some(naf::partition(k)?.block_of(n)?.to_string())
    } else {
        None
    };
    let report = NafReport {
        n,
        naf: digits.to_string(),
        k: Some(k),
        block,
        sibling: naf::sibling(n, k).ok(),
    };
    match format {
        Format::Text => {
            writeln!(w, "n: {}", report.n)?;
            writeln!(w, "naf: {}", report.naf)?;
            writeln!(w, "k: {k}")?;
            writeln!(w, "block: {}", report.block.as_deref().unwrap_or("none"))?;
            match report.sibling {
                Some(s) => writeln!(w, "sibling: {s}")?,
                None => writeln!(w, "sibling: none")?,
            }
        }
        Format::Csv => {
            writeln!(w, "n,naf,k,block,sibling")?;
            writeln!(
                w,
                "{},{},{},{},{}",
                report.n,
                report.naf,
                k,
                report.block.as_deref().unwrap_or_default(),
                report.sibling.map(|s| s.to_string()).unwrap_or_default()
            )?;
        }
        Format::Json => write_json(w, &report)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumRep {
    rep: String,
    zeros: u32,
    weight: u32,
}

#[derive(Serialize)]
struct EnumReport {
    n: i64,
    bits: u32,
    count: u64,
    reps: Vec<EnumRep>,
    distribution: std::collections::BTreeMap<u32, u64>,
    stern_index: Option<u64>,
    stern_coeffs: Option<Vec<u64>>,
    cross_check: Option<String>,
}

fn cmd_enum(n: i64, bits: u32, limit: u64, format: Format, w: &mut dyn Write) -> Result<(), Error> {
    let reps = oracle::enumerate_bsd(n, bits, limit)?;
    let wd = oracle::weight_distribution(n, bits, limit)?;
    // The distribution is a Stern polynomial whenever 0 <= n <= 2^bits.
    let stern_index = if n >= 0 && bits < 63 && (n as u64) <= (1u64 << bits) {
        Some((1u64 << bits) - n as u64)
    } else {
        None
    };
    let (stern_coeffs, cross_check) = match stern_index {
        Some(q) => {
            let poly = stern::stern_of(q)?;
            let verdict = if wd.to_polynomial() == poly {
                "PASS"
            } else {
                "FAIL"
            };
            (Some(poly.coeffs().to_vec()), Some(verdict.to_string()))
        }
        None => (None, None),
    };
    let report = EnumReport {
        n,
        bits,
        count: reps.len() as u64,
        reps: reps
            .iter()
            .map(|r| EnumRep {
                rep: r.to_string(),
                zeros: r.zeros() as u32,
                weight: r.weight() as u32,
            })
            .collect(),
        distribution: wd.counts().clone(),
        stern_index,
        stern_coeffs,
        cross_check,
    };
    match format {
        Format::Text => {
            writeln!(w, "n: {}", report.n)?;
            writeln!(w, "bits: {}", report.bits)?;
            writeln!(w, "count: {}", report.count)?;
            for rep in &report.reps {
                writeln!(w, "{}", rep.rep)?;
            }
            writeln!(
                w,
                "distribution: {}",
                render_distribution(&report.distribution)
            )?;
            if let (Some(q), Some(coeffs), Some(verdict)) = (
                report.stern_index,
                &report.stern_coeffs,
                &report.cross_check,
            ) {
                writeln!(w, "stern_index: {q}")?;
                writeln!(w, "stern_coeffs: {}", render_list(coeffs))?;
                writeln!(w, "cross_check: {verdict}")?;
            }
        }
        Format::Csv => {
            writeln!(w, "# n={} bits={}", report.n, report.bits)?;
            writeln!(w, "rep,zeros,weight")?;
            for rep in &report.reps {
                writeln!(w, "{},{},{}", rep.rep, rep.zeros, rep.weight)?;
            }
            writeln!(
                w,
                "# distribution {}",
                render_distribution(&report.distribution)
            )?;
            if let (Some(q), Some(coeffs), Some(verdict)) = (
                report.stern_index,
                &report.stern_coeffs,
                &report.cross_check,
            ) {
                writeln!(w, "# stern_index {q}")?;
                writeln!(w, "# stern_coeffs {}", render_list(coeffs))?;
                writeln!(w, "# cross_check {verdict}")?;
            }
        }
        Format::Json => write_json(w, &report)?,
    }
    Ok(())
}

fn render_distribution(counts: &std::collections::BTreeMap<u32, u64>) -> String {
    let mut out = String::from("{");
    for (i, (zeros, count)) in counts.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{zeros}: {count}");
    }
    out.push('}');
    out
}

fn cmd_table(
    k_max: u32,
    what: TableWhat,
    out: Option<PathBuf>,
    verify: Option<Option<u32>>,
    parallel: bool,
) -> Result<(), Error> {
    let opt = match (what, parallel) {
        (TableWhat::Deg | TableWhat::Lc, _) => None,
        (_, true) => Some(OptTables::build_parallel(k_max)?),
        (TableWhat::M, false) => Some(OptTables::build_num_opt(k_max)?),
        (TableWhat::Z, false) => Some(OptTables::build_zeros(k_max)?),
        (TableWhat::All, false) => Some(OptTables::build(k_max)?),
    };
    let deg_lc = match what {
        TableWhat::Deg | TableWhat::Lc | TableWhat::All => Some(DegLcTables::build(k_max)?),
        _ => None,
    };
    if let Some(depth) = verify {
        let depth = depth.unwrap_or_else(|| k_max.min(12));
        tables::verify_tables(opt.as_ref(), deg_lc.as_ref(), depth)?;
    }
    emit(out.as_deref(), |w| {
        writeln!(w, "# k_max={k_max}")?;
        let len = opt
            .as_ref()
            .map(OptTables::len)
            .or_else(|| deg_lc.as_ref().map(DegLcTables::len))
            .unwrap_or(0);
        // deg and lc are undefined at n = 0, so any selection containing
        // them starts at n = 1; pure M/Z output starts at n = 0.
        let start = match what {
            TableWhat::M | TableWhat::Z => 0,
            _ => 1,
        };
        let columns: &[&str] = match what {
            TableWhat::M => &["M"],
            TableWhat::Z => &["Z"],
            TableWhat::Deg => &["deg"],
            TableWhat::Lc => &["lc"],
            TableWhat::All => &["M", "Z", "deg", "lc"],
        };
        writeln!(w, "n,{}", columns.join(","))?;
        let mut row = String::new();
        for n in start..len {
            row.clear();
            let _ = write!(row, "{n}");
            for &col in columns {
                let v = match col {
                    "M" => opt.as_ref().unwrap().m()[n],
                    "Z" => opt.as_ref().unwrap().z()[n],
                    "deg" => deg_lc.as_ref().unwrap().deg()[n],
                    _ => deg_lc.as_ref().unwrap().lc()[n],
                };
                let _ = write!(row, ",{v}");
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    })
}

fn cmd_dist(k: u32, what: DistWhat, out: Option<PathBuf>) -> Result<(), Error> {
    if k < 3 {
        return Err(Error::Domain(format!("k must be >= 3, got {k}")));
    }
    let tables = match what {
        DistWhat::M => OptTables::build_num_opt(k)?,
        DistWhat::Z => OptTables::build_zeros(k)?,
    };
    let (lo, hi) = naf::interval(k)?;
    let column = match what {
        DistWhat::M => tables.m(),
        DistWhat::Z => tables.z(),
    };
    let (mut n_star, mut max) = (lo, column[lo as usize]);
    for n in lo..hi {
        let v = column[n as usize];
        if v > max {
            (n_star, max) = (n, v);
        }
    }
    emit(out.as_deref(), |w| {
        writeln!(w, "n,value")?;
        for n in lo..hi {
            writeln!(w, "{},{}", n, column[n as usize])?;
        }
        match what {
            DistWhat::M => {
                let index = k.div_ceil(2) + 1;
                let predicted = tables::fibonacci(index)?;
                writeln!(
                    w,
                    "# max={max} at n={n_star}, predicted F_{index}={predicted}"
                )?;
            }
            DistWhat::Z => writeln!(w, "# max={max} at n={n_star}")?,
        }
        Ok(())
    })
}

fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), Error> {
    serde_json::to_writer(&mut *w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}
