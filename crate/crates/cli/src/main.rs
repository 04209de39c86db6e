//! `texturematrix` — grey-level co-occurrence texture analysis from the
//! command line.

mod chart;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use texturematrix_core::{
    AnalyzeOptions, Direction, Error, PixelGrid, SymmetricAxis, analyze_corpus_lenient,
    compute_stats, directional_glcm, gldv, group_gldv, load_image, normalize, symmetric_glcm,
    to_fixture_csv,
};

use report::ReportDocument;

#[derive(Parser)]
#[command(
    name = "texturematrix",
    version,
    about = "Grey-level co-occurrence matrices, difference vectors, and texture statistics",
    after_help = "Exit codes: 0 success, 1 input/IO failure, 2 degenerate geometry, 64 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report statistics and difference groups for one image
    Analyze {
        /// Image file (PGM, PPM, or PNG)
        image: PathBuf,
        /// Axis to analyze; default is the three standard axes
        /// (horizontal, vertical, diagonal), `all` adds diagonal-anti
        #[arg(long, value_enum)]
        axis: Option<AxisSelection>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Collapse colour input to one luma plane instead of pooling channels
        #[arg(long)]
        luma: bool,
        /// Round JSON values to report precision (CSV always is)
        #[arg(long)]
        rounded: bool,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze image files or directories into corpus CSV
    Batch {
        /// Image files and/or directories to scan
        inputs: Vec<PathBuf>,
        /// Collapse colour inputs to one luma plane
        #[arg(long)]
        luma: bool,
        /// Worker threads for the batch
        #[arg(long)]
        workers: Option<usize>,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit an SVG bar chart of the 13 difference groups for one axis
    Chart {
        /// Image file (PGM, PPM, or PNG)
        image: PathBuf,
        /// Axis to chart; `diagonal` means the south-east plus north-west
        /// axis, `diagonal-anti` the other one
        #[arg(long, value_enum, default_value_t = Axis::H)]
        axis: Axis,
        /// Collapse colour input to one luma plane
        #[arg(long)]
        luma: bool,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a matrix or difference vector as CSV
    Export {
        /// Image file (PGM, PPM, or PNG)
        image: PathBuf,
        /// What to export
        #[arg(value_enum)]
        what: ExportKind,
        /// Symmetric axis (default: h); `diagonal` means the south-east
        /// plus north-west axis, `diagonal-anti` the other one
        #[arg(long, value_enum, conflicts_with = "direction")]
        axis: Option<Axis>,
        /// Single direction instead of a symmetric axis (glcm only)
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        /// Collapse colour input to one luma plane
        #[arg(long)]
        luma: bool,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    H,
    V,
    Diagonal,
    #[value(name = "diagonal-anti")]
    DiagonalAnti,
}

impl From<Axis> for SymmetricAxis {
    fn from(axis: Axis) -> SymmetricAxis {
        match axis {
            Axis::H => SymmetricAxis::Horizontal,
            Axis::V => SymmetricAxis::Vertical,
            Axis::Diagonal => SymmetricAxis::DiagonalMain,
            Axis::DiagonalAnti => SymmetricAxis::DiagonalAnti,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisSelection {
    H,
    V,
    Diagonal,
    #[value(name = "diagonal-anti")]
    DiagonalAnti,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Glcm,
    Nglcm,
    Gldv,
    #[value(name = "group-gldv")]
    GroupGldv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    E,
    Ne,
    N,
    Nw,
    W,
    Sw,
    S,
    Se,
}

impl From<DirectionArg> for Direction {
    fn from(arg: DirectionArg) -> Direction {
        match arg {
            DirectionArg::E => Direction::East,
            DirectionArg::Ne => Direction::NorthEast,
            DirectionArg::N => Direction::North,
            DirectionArg::Nw => Direction::NorthWest,
            DirectionArg::W => Direction::West,
            DirectionArg::Sw => Direction::SouthWest,
            DirectionArg::S => Direction::South,
            DirectionArg::Se => Direction::SouthEast,
        }
    }
}

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        CliError::Core(err)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(64);
        }
    };

    match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("texturematrix: {message}");
            ExitCode::from(64)
        }
        Err(CliError::Core(err)) => {
            eprintln!("texturematrix: {err}");
            match err {
                Error::DegenerateGeometry(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Analyze {
            image,
            axis,
            format,
            luma,
            rounded,
            out,
        } => {
            let grid = load(&image, luma)?;
            let axes: Vec<SymmetricAxis> = match axis {
                None => SymmetricAxis::STANDARD.to_vec(),
                Some(AxisSelection::All) => SymmetricAxis::ALL.to_vec(),
                Some(AxisSelection::H) => vec![SymmetricAxis::Horizontal],
                Some(AxisSelection::V) => vec![SymmetricAxis::Vertical],
                Some(AxisSelection::Diagonal) => vec![SymmetricAxis::DiagonalMain],
                Some(AxisSelection::DiagonalAnti) => vec![SymmetricAxis::DiagonalAnti],
            };
            let report = ReportDocument::build(&image.display().to_string(), &grid, &axes)?;
            let text = match format {
                Format::Json => report.to_json(rounded),
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Batch {
            inputs,
            luma,
            workers,
            out,
        } => {
            let paths = collect_inputs(&inputs)?;
            let options = AnalyzeOptions { luma, workers };
            let (table, load_failures) = analyze_corpus_lenient(&paths, &options)?;
            for failure in &load_failures {
                eprintln!("texturematrix: skipping {}: {}", failure.path.display(), failure.message);
            }
            for failure in &table.failures {
                eprintln!(
                    "texturematrix: {}: no {} record: {}",
                    failure.image_label,
                    failure.axis.label(),
                    failure.message
                );
            }
            emit(&to_fixture_csv(&table), out.as_deref())?;
            let succeeded = paths.len() - load_failures.len();
            if succeeded == 0 {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Chart {
            image,
            axis,
            luma,
            out,
        } => {
            let grid = load(&image, luma)?;
            let axis = SymmetricAxis::from(axis);
            let glcm = symmetric_glcm(&grid, axis).map_err(CliError::Core)?;
            let stats = compute_stats(&normalize(&glcm)?)?;
            let grouped = group_gldv(&gldv(&glcm)?);
            let svg = chart::chart_svg(&image.display().to_string(), axis, &grouped, stats.contrast);
            emit(&svg, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Export {
            image,
            what,
            axis,
            direction,
            luma,
            out,
        } => {
            let grid = load(&image, luma)?;
            let text = export_csv(&grid, what, axis, direction)?;
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &Path, luma: bool) -> Result<PixelGrid, CliError> {
    let grid = load_image(path)?;
    Ok(if luma { grid.to_luma() } else { grid })
}

fn export_csv(
    grid: &PixelGrid,
    what: ExportKind,
    axis: Option<Axis>,
    direction: Option<DirectionArg>,
) -> Result<String, CliError> {
    if direction.is_some() && !matches!(what, ExportKind::Glcm) {
        return Err(CliError::Usage(
            "--direction only applies to glcm exports; normalized and difference \
             exports need a symmetric --axis"
                .into(),
        ));
    }
    let axis = SymmetricAxis::from(axis.unwrap_or(Axis::H));

    let mut out = String::new();
    match what {
        ExportKind::Glcm => {
            let glcm = match direction {
                Some(direction) => directional_glcm(grid, direction.into())?,
                None => symmetric_glcm(grid, axis)?,
            };
            out.push_str("i,j,count\n");
            for (i, j, count) in glcm.nonzero() {
                out.push_str(&format!("{i},{j},{count}\n"));
            }
        }
        ExportKind::Nglcm => {
            let probs = normalize(&symmetric_glcm(grid, axis)?)?;
            out.push_str("i,j,prob\n");
            for (i, j, p) in probs.nonzero() {
                out.push_str(&format!("{i},{j},{p}\n"));
            }
        }
        ExportKind::Gldv => {
            let vector = gldv(&symmetric_glcm(grid, axis)?)?;
            out.push_str("difference,count,probability\n");
            for (difference, count, p) in vector.entries() {
                out.push_str(&format!("{difference},{count},{p}\n"));
            }
        }
        ExportKind::GroupGldv => {
            let grouped = group_gldv(&gldv(&symmetric_glcm(grid, axis)?)?);
            out.push_str("range_lo,range_hi,count,probability\n");
            for (lo, hi, count, p) in grouped.entries() {
                out.push_str(&format!("{lo},{hi},{count},{p}\n"));
            }
        }
    }
    Ok(out)
}

/// Expand directories into their image files (sorted by name); plain file
/// arguments are kept in the order given.
fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    const EXTENSIONS: [&str; 4] = ["pgm", "ppm", "pnm", "png"];
    let mut paths = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|source| Error::Io {
                    path: input.clone(),
                    source,
                })?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|path| {
                    path.extension()
                        .and_then(|e| e.to_str())
                        .is_some_and(|e| EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
                })
                .collect();
            entries.sort();
            paths.append(&mut entries);
        } else {
            paths.push(input.clone());
        }
    }
    Ok(paths)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            CliError::Core(Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
