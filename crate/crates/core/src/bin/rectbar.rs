use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rectbar::barcode::{
    bars_document, bars_text, derive_rectangles, rectangle_barcode, sublevel_barcode,
    verify_decomposition, BarcodeError, RectangleBarcode,
};
use rectbar::complex::{parse, ComplexError, FilteredComplex};
use rectbar::distance::{bottleneck_by_degree, stability_experiment, ShiftMode};
use rectbar::extended::fmt_ext;
use rectbar::interlevel::exactness_sweep;
use rectbar::invariants::InvariantReport;
use rectbar::plot::{render_ascii, render_svg};

#[derive(Parser)]
#[command(
    name = "rectbar",
    version,
    about = "Rectangle barcodes of filtered GF(2) chain complexes"
)]
struct Cli {
    /// Directory for relative output paths.
    #[arg(long, global = true, env = "RECTBAR_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Doc,
}

#[derive(Subcommand)]
enum Command {
    /// Check the chain-complex and filtration axioms.
    Validate { input: PathBuf },
    /// Print the verified rectangle barcode.
    Barcode {
        input: PathBuf,
        #[arg(long)]
        degree: Option<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the sublevel barcode.
    Sublevel {
        input: PathBuf,
        #[arg(long)]
        degree: Option<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare a barcode against brute-force interlevel homology and sweep the exactness checks.
    Verify {
        input: PathBuf,
        /// Barcode document to check instead of the computed one.
        #[arg(long)]
        barcode: Option<PathBuf>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Print spectral invariants as JSON.
    Invariants { input: PathBuf },
    /// Bottleneck distance between two rectangle barcodes.
    Distance { first: PathBuf, second: PathBuf },
    /// Random perturbations against the 3δ bound.
    Stability {
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0.2)]
        magnitude: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shift every generator by the same amount.
        #[arg(long)]
        constant: bool,
        /// Write the trial records as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the rectangle diagram.
    Plot {
        input: PathBuf,
        #[arg(long, conflicts_with = "ascii")]
        out: Option<PathBuf>,
        #[arg(long)]
        ascii: bool,
    },
}

enum Failure {
    Invariant(String),
    Parse(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invariant(m) | Failure::Parse(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Invalid(_) => Failure::Invariant(e.to_string()),
            other => Failure::Parse(other.to_string()),
        }
    }
}

impl From<BarcodeError> for Failure {
    fn from(e: BarcodeError) -> Self {
        match e {
            BarcodeError::Complex(c) => c.into(),
            BarcodeError::Verification(_) => Failure::Verification(e.to_string()),
            BarcodeError::Document(_) => Failure::Parse(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FilteredComplex, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<FilteredComplex, Failure> {
    Ok(load(path)?.validated()?)
}

fn output_path(out_dir: Option<&Path>, path: &Path) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| Failure::Parse(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    let out_dir = cli.out_dir.as_deref();
    match cli.command {
        Command::Validate { input } => {
            let report = load(&input)?.validate();
            if report.is_ok() {
                out.push_str("ok\n");
                return Ok(());
            }
            let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            Err(Failure::Invariant(format!(
                "{} violation(s):\n{}",
                lines.len(),
                lines.join("\n")
            )))
        }
        Command::Barcode {
            input,
            degree,
            format,
        } => {
            let rb = rectangle_barcode(&load(&input)?)?;
            out.push_str(&match format {
                Format::Text => rb.to_text(degree),
                Format::Doc => rb.to_json(degree),
            });
            Ok(())
        }
        Command::Sublevel {
            input,
            degree,
            format,
        } => {
            let bars = sublevel_barcode(&load_valid(&input)?);
            out.push_str(&match format {
                Format::Text => bars_text(&bars, degree),
                Format::Doc => {
                    let mut s = serde_json::to_string_pretty(&bars_document(&bars, degree))
                        .expect("documents serialize");
                    s.push('\n');
                    s
                }
            });
            Ok(())
        }
        Command::Verify {
            input,
            barcode,
            seed,
        } => {
            let c = load_valid(&input)?;
            let rb = match barcode {
                Some(path) => RectangleBarcode::from_json(&read(&path)?)?,
                None => derive_rectangles(&sublevel_barcode(&c)),
            };
            let report = verify_decomposition(&c, &rb);
            let sweep = exactness_sweep(&c, seed);
            out.push_str(&format!(
                "degrees checked: {}\n\
                 window dimensions checked: {}\n\
                 structure-map ranks checked: {}\n\
                 weak exactness squares checked: {}\n\
                 middle exactness squares checked: {}\n\
                 failures: {}\n",
                report.degrees_checked,
                report.dims_checked,
                report.maps_checked,
                sweep.weak_checked,
                sweep.middle_checked,
                report.failures.len() + sweep.failures.len()
            ));
            let mut lines: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
            lines.extend(sweep.failures.iter().map(|f| {
                format!(
                    "{} exactness fails in degree {} at quad {}",
                    f.condition, f.degree, f.quad
                )
            }));
            if lines.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(lines.join("\n")))
            }
        }
        Command::Invariants { input } => {
            let rb = rectangle_barcode(&load(&input)?)?;
            out.push_str(&InvariantReport::new(&rb).to_json());
            Ok(())
        }
        Command::Distance { first, second } => {
            let b1 = rectangle_barcode(&load(&first)?)?;
            let b2 = rectangle_barcode(&load(&second)?)?;
            let by_degree = bottleneck_by_degree(&b1, &b2);
            for (k, d) in &by_degree {
                out.push_str(&format!("deg {k}: {}\n", fmt_ext(*d)));
            }
            let total = by_degree.values().copied().fold(0.0, f64::max);
            out.push_str(&format!("total: {}\n", fmt_ext(total)));
            Ok(())
        }
        Command::Stability {
            input,
            trials,
            magnitude,
            seed,
            constant,
            out: records,
        } => {
            let c = load_valid(&input)?;
            let mode = if constant {
                ShiftMode::Constant
            } else {
                ShiftMode::PerGenerator
            };
            let report = stability_experiment(&c, trials, magnitude, seed, mode)?;
            if let Some(path) = records {
                write_file(&output_path(out_dir, &path), &report.to_json())?;
            }
            let worst = report
                .trials
                .iter()
                .map(|t| {
                    if t.delta > 0.0 {
                        t.d_bot / t.delta
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max);
            let violations = report.trials.iter().filter(|t| !t.bound_3delta_ok).count();
            out.push_str(&format!(
                "trials: {}\nwithin delta: {}\nworst ratio d_bot/delta: {worst:.6}\n3delta violations: {violations}\n",
                report.trials.len(),
                report.within_delta
            ));
            if violations == 0 {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "{violations} trial(s) exceed the 3delta bound"
                )))
            }
        }
        Command::Plot {
            input,
            out: svg,
            ascii,
        } => {
            let c = load(&input)?;
            let rb = rectangle_barcode(&c)?;
            if ascii {
                out.push_str(&render_ascii(&rb));
                return Ok(());
            }
            let path = match svg {
                Some(p) => output_path(out_dir, &p),
                None => {
                    let stem = input
                        .file_stem()
                        .map(PathBuf::from)
                        .unwrap_or_else(|| "barcode".into());
                    output_path(out_dir, &stem.with_extension("svg"))
                }
            };
            write_file(&path, &render_svg(&rb, &sublevel_barcode(&c)))?;
            out.push_str(&format!("wrote {}\n", path.display()));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
