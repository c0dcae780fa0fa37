//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 validation
//! failure, 4 I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::frames::{sic_frame, validate_nqpr, wootters_frame, FrameKind, NqprFrame, SicSign};
use crate::hw::weyl_pair;
use crate::negativity::{closed_forms, NegativityReport};
use crate::report::{csv_line, fmt_f64, to_json, to_json_string};
use crate::sic::{load_fiducial, sic_from_fiducial, validate_sic, SicSet};
use crate::suite::{
    available_sic, run_suite, scan_d3, SuiteConfig, SuiteReport, Which, SCAN_CSV_HEADER,
};
use crate::symmetry::summarize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qprlab",
    version,
    about = "Negativity of normal quasiprobability representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    SicMinus,
    SicPlus,
    Wootters,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Lemmas,
    Born,
    All,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Thm1 => Which::Thm1,
            WhichArg::Thm2 => Which::Thm2,
            WhichArg::Thm3 => Which::Thm3,
            WhichArg::Thm4 => Which::Thm4,
            WhichArg::Thm5 => Which::Thm5,
            WhichArg::Thm6 => Which::Thm6,
            WhichArg::Lemmas => Which::Lemmas,
            WhichArg::Born => Which::Born,
            WhichArg::All => Which::All,
        }
    }
}

/// Where the SIC behind a SIC frame comes from.
#[derive(Args, Debug, Clone)]
pub struct SicSource {
    /// Member of the qutrit fiducial family (d = 3 only).
    #[arg(long, default_value_t = 0.0)]
    pub fiducial_t: f64,
    /// Fiducial vector file (text or JSON).
    #[arg(long)]
    pub fiducial_file: Option<PathBuf>,
    /// Directory holding `sic_d{d}.json` / `sic_d{d}.txt` fixtures.
    #[arg(long, env = "QPRLAB_DATA")]
    pub data_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FrameSpec {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum)]
    pub frame: FrameArg,
    #[command(flatten)]
    pub source: SicSource,
    /// Override the frame validation tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frame, unitary and channel negativity of one frame with bounds.
    Analyze(FrameSpec),
    /// Numerical verification suites; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, env = "QPRLAB_DATA")]
        data_dir: Option<PathBuf>,
    },
    /// Negativities along the qutrit SIC family; always CSV.
    ScanD3 {
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Closed-form reference values in one dimension.
    Bounds {
        #[arg(long)]
        dim: usize,
    },
    /// Builds and validates a SIC from a fiducial.
    ValidateSic {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        source: SicSource,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Writes a frame's elements.
    ExportFrame(FrameSpec),
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::InvalidDimension { .. } | Error::IndexOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn check_dim(dim: usize) -> CliResult<()> {
    if dim < 2 {
        return Err(Failure::usage(format!(
            "--dim must be at least 2, got {dim}"
        )));
    }
    Ok(())
}

fn load_sic(dim: usize, source: &SicSource, tol: Option<f64>) -> CliResult<SicSet> {
    if !source.fiducial_t.is_finite() {
        return Err(Failure::usage("--fiducial-t must be finite"));
    }
    if let Some(path) = &source.fiducial_file {
        let mut record = load_fiducial(path).map_err(|e| match e {
            Error::Io(io) => Failure {
                code: EXIT_IO,
                message: format!("{}: {io}", path.display()),
            },
            other => Failure::validation(format!("{}: {other}", path.display())),
        })?;
        if record.dim != dim {
            return Err(Failure::validation(format!(
                "{} holds a d = {} fiducial, expected {dim}",
                path.display(),
                record.dim
            )));
        }
        if let Some(t) = tol {
            record.tolerance = t;
        }
        return Ok(sic_from_fiducial(&record)?);
    }
    if dim != 3 && source.fiducial_t != 0.0 {
        return Err(Failure::usage("--fiducial-t only applies to d = 3"));
    }
    available_sic(dim, source.fiducial_t, source.data_dir.as_deref())?.ok_or_else(|| {
        Failure::usage(format!(
            "no SIC available for d = {dim}: pass --fiducial-file or a --data-dir with sic_d{dim}.json"
        ))
    })
}

fn build_frame(spec: &FrameSpec) -> CliResult<NqprFrame> {
    check_dim(spec.dim)?;
    let frame = match spec.frame {
        FrameArg::Wootters => wootters_frame(spec.dim)?,
        FrameArg::SicMinus | FrameArg::SicPlus => {
            let sign = if spec.frame == FrameArg::SicMinus {
                SicSign::Minus
            } else {
                SicSign::Plus
            };
            sic_frame(&load_sic(spec.dim, &spec.source, spec.tol)?, sign)?
        }
    };
    let tol = spec.tol.unwrap_or(frame.tolerance());
    let report = validate_nqpr(&frame, tol);
    if !report.passed {
        return Err(Failure::validation(format!(
            "frame fails validation: trace {:.3e}, orthogonality {:.3e}, resolution {:.3e}",
            report.trace_deviation, report.orthogonality_deviation, report.resolution_deviation
        )));
    }
    Ok(frame)
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(&row));
    }
    out
}

fn analyze(spec: &FrameSpec, format: Format) -> CliResult<String> {
    let frame = build_frame(spec)?;
    let symmetry = summarize(&frame, &weyl_pair(frame.dim())?);
    let report = NegativityReport::new(&frame, Some(symmetry));
    Ok(match format {
        Format::Json => to_json(&report)?,
        Format::Csv => csv_table(NegativityReport::CSV_HEADER, [report.csv_fields()]),
    })
}

fn suite_csv(r: &SuiteReport) -> String {
    csv_table(
        SuiteReport::CSV_HEADER,
        r.checks.iter().map(|c| {
            vec![
                c.name.clone(),
                c.passed.to_string(),
                fmt_f64(c.measured),
                c.expected.map(fmt_f64).unwrap_or_default(),
            ]
        }),
    )
}

fn bounds(dim: usize, format: Format) -> CliResult<String> {
    check_dim(dim)?;
    let cf = closed_forms(dim);
    Ok(match format {
        Format::Json => to_json(&cf)?,
        Format::Csv => {
            let value = serde_json::to_value(cf)?;
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            csv_table("quantity,value", rows)
        }
    })
}

fn flatten(prefix: &str, v: &serde_json::Value, rows: &mut Vec<Vec<String>>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, item) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, item, rows);
            }
        }
        serde_json::Value::Number(n) if n.is_f64() => rows.push(vec![
            prefix.to_string(),
            fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
        ]),
        other => rows.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn export_frame(spec: &FrameSpec, format: Format) -> CliResult<String> {
    let frame = build_frame(spec)?;
    Ok(match format {
        Format::Json => to_json_string(&frame.to_json_value()),
        Format::Csv => {
            let d = frame.dim();
            let rows = frame.elements().iter().enumerate().flat_map(|(i, q)| {
                let m = q.matrix();
                (0..d * d).map(move |rc| {
                    let z = m[(rc / d, rc % d)];
                    vec![
                        i.to_string(),
                        (rc / d).to_string(),
                        (rc % d).to_string(),
                        fmt_f64(z.re),
                        fmt_f64(z.im),
                    ]
                })
            });
            csv_table("element,row,col,re,im", rows)
        }
    })
}

fn write_output(text: &str, output: Option<&Path>) -> CliResult<()> {
    let result = match output {
        Some(path) => fs::write(path, text).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| ("stdout".to_string(), e)),
    };
    result.map_err(|(target, e)| Failure {
        code: EXIT_IO,
        message: format!("{target}: {e}"),
    })
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_USAGE;
        }
        // fails only if a pool already exists, which then stays in use
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli) {
        Ok((text, code)) => match write_output(&text, cli.output.as_deref()) {
            Ok(()) => code,
            Err(f) => {
                eprintln!("error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> CliResult<(String, i32)> {
    match &cli.command {
        Command::Analyze(spec) => Ok((analyze(spec, cli.format)?, EXIT_OK)),
        Command::Verify {
            which,
            dim,
            samples,
            seed,
            tol,
            data_dir,
        } => {
            check_dim(*dim)?;
            if *samples == 0 {
                return Err(Failure::usage("--samples must be at least 1"));
            }
            let mut cfg = SuiteConfig::new(*dim, *samples, *seed);
            cfg.tol = *tol;
            cfg.data_dir = data_dir.clone();
            let report = run_suite((*which).into(), &cfg)?;
            let text = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Csv => suite_csv(&report),
            };
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            Ok((text, code))
        }
        Command::ScanD3 { steps } => {
            if *steps < 2 {
                return Err(Failure::usage("--steps must be at least 2"));
            }
            let rows = scan_d3(*steps)?.into_iter().map(|r| {
                vec![
                    fmt_f64(r.t),
                    fmt_f64(r.n),
                    fmt_f64(r.nu),
                    fmt_f64(r.nc),
                    r.sic_ok.to_string(),
                    r.hw_covariant.to_string(),
                    r.label,
                ]
            });
            Ok((csv_table(SCAN_CSV_HEADER, rows), EXIT_OK))
        }
        Command::Bounds { dim } => Ok((bounds(*dim, cli.format)?, EXIT_OK)),
        Command::ValidateSic { dim, source, tol } => {
            check_dim(*dim)?;
            let sic = load_sic(*dim, source, *tol)?;
            let report = validate_sic(&sic, tol.unwrap_or(sic.tolerance()));
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            };
            let text = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Csv => csv_table(
                    "dim,label,rank_one_deviation,fidelity_deviation,resolution_deviation,passed",
                    [vec![
                        report.dim.to_string(),
                        report.label.clone(),
                        fmt_f64(report.rank_one_deviation),
                        fmt_f64(report.fidelity_deviation),
                        fmt_f64(report.resolution_deviation),
                        report.passed.to_string(),
                    ]],
                ),
            };
            Ok((text, code))
        }
        Command::ExportFrame(spec) => Ok((export_frame(spec, cli.format)?, EXIT_OK)),
    }
}

impl FrameArg {
    pub fn kind(self) -> FrameKind {
        match self {
            FrameArg::SicMinus => FrameKind::SicMinus,
            FrameArg::SicPlus => FrameKind::SicPlus,
            FrameArg::Wootters => FrameKind::Wootters,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("qprlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn analyze_hesse_minus() {
        let cli = parse(&[
            "analyze",
            "--dim",
            "3",
            "--frame",
            "sic-minus",
            "--fiducial-t",
            "0",
        ]);
        let (text, code) = execute(&cli).unwrap();
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!((v["N"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!((v["N_U"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!((v["N_C"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-9);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["symmetry"]["hw_covariant"], true);
    }

    #[test]
    fn sic_without_source_is_usage_error() {
        let cli = parse(&["analyze", "--dim", "5", "--frame", "sic-plus"]);
        assert_eq!(execute(&cli).unwrap_err().code, EXIT_USAGE);
        let cli = parse(&["bounds", "--dim", "1"]);
        assert_eq!(execute(&cli).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn bounds_csv_is_flat() {
        let cli = parse(&["bounds", "--dim", "3", "--format", "csv"]);
        let (text, _) = execute(&cli).unwrap();
        assert!(text.starts_with("quantity,value\n"));
        assert!(text.contains("\nNU_upper,2.3333333333333335e0\n"));
        assert!(text.contains("\nwootters.N_U,"));
    }

    #[test]
    fn which_maps_to_suite() {
        assert_eq!(Which::from(WhichArg::Lemmas), Which::Lemmas);
        assert_eq!(FrameArg::SicMinus.kind(), FrameKind::SicMinus);
    }
}
