//! `bidio` command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (or a failed check), 2 usage,
//! I/O or input-format error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certificates::{self, CaseId, ImpossibilityCertificate};
use crate::constructors;
use crate::error::{Error, Result};
use crate::exactmath::Integer;
use crate::families::{self, realize, Side};
use crate::geometry::{certify, LatticePoint};
use crate::io::PolygonFile;
use crate::pell;
use crate::reproduce;
use crate::search::{self, SearchReport};

#[derive(Debug, Parser)]
#[command(
    name = "bidio",
    version,
    about = "Exact search and certification of lattice polygons with integer distances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Triangle,
    Rectangle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SearchKind {
    Triangles,
    Pairs,
    Ngon,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify a polygon or point set read from a JSON file.
    Certify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Solutions of x^2 - d*y^2 = n in increasing order.
    Pell {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Members of the k = 3 or k = 4 triangle family with b <= limit.
    Family {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        limit: Integer,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Explicit polygon with a side of length k.
    Construct {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        k: u64,
        /// Largest rectangle width; all widths up to it are emitted.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Exhaustive searches.
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 60)]
        radius: u64,
        #[arg(long, default_value = "1000000")]
        limit: Integer,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Apex source for ngon searches: family (bound = --limit) or
        /// lattice (bound = --radius).
        #[arg(long, default_value = "family")]
        source: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Impossibility certificates: parity cases, or k = 1, 2 lattice scans.
    CertifyImpossible {
        /// Case id, or `all`.
        #[arg(long, conflicts_with = "k")]
        case: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 30)]
        radius: u64,
    },
    /// Re-derive every headline result and print the ledger.
    Reproduce {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Format(_)
        | Error::Parameter(_)
        | Error::UnknownCase(_)
        | Error::UnknownSource(_) => 2,
        _ => 1,
    }
}

pub fn run(argv: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(
    argv: impl IntoIterator<Item = OsString>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn emit_csv(
    out: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(&r).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(io_err)?;
    out.write_all(&bytes).map_err(io_err)
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Certify { file, k } => {
            let f = PolygonFile::read(&file)?;
            let report = certify(&f.vertices, k.map(Integer::from).as_ref(), f.mode)?;
            emit_json(out, &report)?;
        }
        Command::Pell {
            d,
            n,
            count,
            format,
        } => {
            let sols = pell::generate(d, n, count)?;
            match format {
                Format::Json => emit_json(out, &sols)?,
                Format::Csv => emit_csv(
                    out,
                    &["x", "y", "d", "n"],
                    sols.iter().map(|s| {
                        vec![
                            s.x.to_string(),
                            s.y.to_string(),
                            d.to_string(),
                            n.to_string(),
                        ]
                    }),
                )?,
            }
        }
        Command::Family { k, limit, format } => {
            let bs = families::admissible_b_values(k, &limit)?;
            let members = bs
                .iter()
                .map(|b| families::member(k, b))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => emit_json(out, &members)?,
                Format::Csv => emit_csv(
                    out,
                    &[
                        "b",
                        "h",
                        "side_short",
                        "side_long",
                        "p_x",
                        "p_y",
                        "k_x",
                        "k_y",
                        "apex_x",
                        "apex_y",
                    ],
                    members.iter().map(|m| {
                        let mut row = vec![
                            m.b.to_string(),
                            m.h.to_string(),
                            m.side_short.to_string(),
                            m.side_long.to_string(),
                        ];
                        for p in realize(m, &LatticePoint::origin(), Side::Above) {
                            row.push(p.x.to_string());
                            row.push(p.y.to_string());
                        }
                        row
                    }),
                )?,
            }
        }
        Command::Construct { shape, k, limit } => match shape {
            Shape::Triangle => {
                if limit.is_some() {
                    return Err(Error::Parameter(
                        "--limit applies to rectangles only".into(),
                    ));
                }
                emit_json(
                    out,
                    &PolygonFile::polygon(constructors::triangle_with_side(k)?.to_vec()),
                )?;
            }
            Shape::Rectangle => {
                let rects = constructors::rectangle_with_side(k, limit)?;
                if limit.is_none() {
                    emit_json(out, &PolygonFile::polygon(rects[0].to_vec()))?;
                } else {
                    let files: Vec<_> = rects
                        .iter()
                        .map(|r| PolygonFile::polygon(r.to_vec()))
                        .collect();
                    emit_json(out, &files)?;
                }
            }
        },
        Command::Search {
            kind,
            k,
            radius,
            limit,
            n,
            source,
            format,
            jobs,
        } => {
            let task = || -> Result<SearchReport> {
                match kind {
                    SearchKind::Triangles => search::brute_force_triangles(k, radius),
                    SearchKind::Pairs => search::scan_apex_pairs(k, &limit),
                    SearchKind::Ngon => {
                        let bound = if source == "lattice" {
                            Integer::from(radius)
                        } else {
                            limit.clone()
                        };
                        let src = search::sources().create(&source, &bound)?;
                        search::extend_to_ngon_with(k, n, src.as_ref())
                    }
                }
            };
            let report = match jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Error::Parameter(e.to_string()))?
                    .install(task)?,
                None => task()?,
            };
            let _ = writeln!(err, "elapsed: {:.3} s", report.elapsed.as_secs_f64());
            write_search(out, &report, format)?;
        }
        Command::CertifyImpossible {
            case,
            limit,
            k,
            radius,
        } => {
            let certs: Vec<ImpossibilityCertificate> = match (case, k) {
                (_, Some(k)) => vec![certificates::nonexistence_k12(k, radius)?],
                (Some(c), None) if c.eq_ignore_ascii_case("all") => CaseId::ALL
                    .iter()
                    .map(|&id| certificates::verify_parity_case(id, limit))
                    .collect::<Result<_>>()?,
                (Some(c), None) => vec![certificates::verify_parity_case(c.parse()?, limit)?],
                (None, None) => {
                    return Err(Error::Parameter("one of --case or --k is required".into()))
                }
            };
            if certs.len() == 1 {
                emit_json(out, &certs[0])?;
            } else {
                emit_json(out, &certs)?;
            }
            if let Some(bad) = certs.iter().find(|c| !c.holds()) {
                let _ = writeln!(
                    err,
                    "certificate {} has {} witnesses",
                    bad.subject, bad.witness_count
                );
                return Ok(1);
            }
        }
        Command::Reproduce { format } => {
            let ledger = reproduce::run_all();
            match format {
                Format::Json => emit_json(out, &ledger)?,
                Format::Csv => {
                    write!(out, "{}", reproduce::render_table(&ledger)).map_err(io_err)?
                }
            }
            if !reproduce::all_passed(&ledger) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn write_search(out: &mut dyn Write, report: &SearchReport, format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(out, report),
        Format::Csv if !report.pair_hits.is_empty() => emit_csv(
            out,
            &["b", "d", "arrangement", "c"],
            report.pair_hits.iter().map(|h| {
                vec![
                    h.b.to_string(),
                    h.d.to_string(),
                    h.arrangement.to_string(),
                    h.c.to_string(),
                ]
            }),
        ),
        Format::Csv => emit_csv(
            out,
            &["witness", "vertices", "distances", "convex"],
            report.witnesses.iter().enumerate().map(|(i, w)| {
                vec![
                    i.to_string(),
                    w.vertices
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    w.distances
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    w.convex.map_or_else(String::new, |c| c.to_string()),
                ]
            }),
        ),
    }
}
