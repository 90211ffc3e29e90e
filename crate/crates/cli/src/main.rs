use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qrips::bottleneck::multiplicative_bottleneck;
use qrips::metric::{enclosing_radius, pairwise_distances, sorted_edges, Threshold};
use qrips::persistence::{
    compute_persistence_with, flag_filtration, rips_filtration, PersistenceOptions,
};
use qrips::scalar::fmt_scalar;
use qrips::stats::{graph_counts, growth_exponent, rips_counts, SimplexCounts};
use qrips::tower::build_quotient;
use qrips::{synth, Barcode, DistanceMatrix, FilteredComplex, PointCloud};

/// Largest point count accepted before refusing to build a dense matrix.
const MAX_POINTS: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "qrips", version, about = "Quotient Vietoris-Rips filtrations and their barcodes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the filtered 1-skeleton of the quotient tower.
    Build {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        scale: Scale,
        /// Write the filtered graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the graph as "i j d" lines.
        #[arg(long)]
        sparse_out: Option<PathBuf>,
    },
    /// Barcode of the quotient flag filtration (or of Vietoris-Rips with --vr).
    Persistence {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        scale: Scale,
        /// Highest homology degree reported.
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        /// Use the exact Vietoris-Rips filtration instead.
        #[arg(long)]
        vr: bool,
        /// Keep bars with birth equal to death.
        #[arg(long)]
        keep_zero: bool,
        /// Write the barcode here instead of stdout.
        #[arg(long)]
        barcode_out: Option<PathBuf>,
    },
    /// Multiplicative bottleneck ratios between the quotient and
    /// Vietoris-Rips barcodes, per degree.
    Compare {
        #[command(flatten)]
        source: Source,
        /// Filtration threshold; without it both filtrations run to the end.
        #[arg(long, conflicts_with = "enclosing")]
        threshold: Option<f64>,
        /// Use the enclosing radius as threshold.
        #[arg(long)]
        enclosing: bool,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Largest point count for the exact Vietoris-Rips barcode.
        #[arg(long, default_value_t = 60)]
        cap: usize,
    },
    /// Simplex counts up to dimension 2 and, for two inputs, growth exponents.
    Stats {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        scale: Scale,
        /// Also count the Vietoris-Rips complex at the same threshold.
        #[arg(long)]
        vr: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// CSV, one point per row.
    Points,
    /// Lower-triangular distance matrix.
    LowerDistance,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Shape {
    Circle,
    Torus,
    Sphere,
}

#[derive(Args, Debug)]
struct Source {
    /// Input file; repeat to give `stats` two datasets.
    #[arg(long, required_unless_present = "generate", conflicts_with = "generate")]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Points)]
    format: Format,
    /// Sample points from a built-in shape instead of reading a file.
    #[arg(long, value_enum, requires = "n")]
    generate: Option<Shape>,
    /// Sample size for --generate; repeat for several samples.
    #[arg(long)]
    n: Vec<usize>,
    /// Seed for --generate; sample k uses seed + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct Scale {
    /// Filtration threshold (default: the enclosing radius).
    #[arg(long, conflicts_with = "enclosing")]
    threshold: Option<f64>,
    /// Use the enclosing radius as threshold (the default).
    #[arg(long)]
    enclosing: bool,
}

#[derive(Debug)]
enum CliError {
    Open(PathBuf, io::Error),
    Usage(String),
    Core(qrips::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Open(..) | CliError::Usage(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Open(p, e) => write!(f, "cannot open {}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qrips::Error> for CliError {
    fn from(e: qrips::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(e.into())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

struct Dataset {
    label: String,
    dm: DistanceMatrix,
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Open(path.to_path_buf(), e))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Open(path.to_path_buf(), e))
}

fn check_size(n: usize) -> CliResult {
    if n > MAX_POINTS {
        return Err(CliError::Usage(format!(
            "{n} points exceeds the limit of {MAX_POINTS}; subsample the input"
        )));
    }
    Ok(())
}

fn load(source: &Source) -> CliResult<Vec<Dataset>> {
    if let Some(shape) = source.generate {
        return source
            .n
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                check_size(n)?;
                let seed = source.seed + k as u64;
                let pc: PointCloud = match shape {
                    Shape::Circle => synth::circle(n, seed),
                    Shape::Torus => synth::torus(n, seed),
                    Shape::Sphere => synth::sphere(n, seed),
                };
                Ok(Dataset {
                    label: format!("{shape:?}-{n}-seed{seed}").to_lowercase(),
                    dm: pairwise_distances(&pc),
                })
            })
            .collect();
    }
    source
        .input
        .iter()
        .map(|path| {
            let reader = open(path)?;
            let dm = match source.format {
                Format::Points => {
                    let pc = PointCloud::read_csv(reader)?;
                    check_size(pc.len())?;
                    pairwise_distances(&pc)
                }
                Format::LowerDistance => {
                    let dm = DistanceMatrix::read_lower_triangular(reader)?;
                    check_size(dm.len())?;
                    dm
                }
            };
            Ok(Dataset {
                label: path.display().to_string(),
                dm,
            })
        })
        .collect()
}

fn single(source: &Source) -> CliResult<Dataset> {
    let mut data = load(source)?;
    if data.len() != 1 {
        return Err(CliError::Usage(format!(
            "expected exactly one dataset, got {}",
            data.len()
        )));
    }
    Ok(data.remove(0))
}

fn explicit(threshold: Option<f64>) -> CliResult<Option<Threshold<f64>>> {
    match threshold {
        Some(t) if t > 0.0 && t.is_finite() => Ok(Some(Threshold::Finite(t))),
        Some(t) => Err(CliError::Usage(format!(
            "threshold must be positive and finite, got {t}"
        ))),
        None => Ok(None),
    }
}

fn resolve(scale: &Scale, dm: &DistanceMatrix) -> CliResult<Threshold<f64>> {
    Ok(explicit(scale.threshold)?.unwrap_or_else(|| Threshold::Finite(enclosing_radius(dm))))
}

fn write_to<F>(path: Option<&Path>, f: F) -> CliResult
where
    F: FnOnce(&mut dyn Write) -> qrips::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Flag filtration of the quotient graph, or the Vietoris-Rips filtration,
/// with simplices one dimension above the top reported degree.
fn filtration(dm: &DistanceMatrix, th: Threshold<f64>, max_dim: usize, vr: bool) -> CliResult<FilteredComplex> {
    if vr {
        return Ok(rips_filtration(dm, th, max_dim + 1)?);
    }
    let g = build_quotient(dm.len(), &sorted_edges(dm, th))?.graph;
    Ok(flag_filtration(&g, max_dim + 1))
}

fn cmd_build(source: &Source, scale: &Scale, out: Option<&Path>, sparse: Option<&Path>) -> CliResult {
    let data = single(source)?;
    let th = resolve(scale, &data.dm)?;
    let start = Instant::now();
    let g = build_quotient(data.dm.len(), &sorted_edges(&data.dm, th))?.graph;
    eprintln!("built {} edges in {:.3?}", g.edges().len(), start.elapsed());
    if let Some(p) = sparse {
        write_to(Some(p), |w| g.write_sparse(w))?;
        if out.is_none() {
            return Ok(());
        }
    }
    write_to(out, |w| g.write_text(w))
}

fn cmd_persistence(
    source: &Source,
    scale: &Scale,
    max_dim: usize,
    vr: bool,
    keep_zero: bool,
    out: Option<&Path>,
) -> CliResult {
    let data = single(source)?;
    let th = resolve(scale, &data.dm)?;
    let start = Instant::now();
    let fc = filtration(&data.dm, th, max_dim, vr)?;
    let bc = compute_persistence_with(&fc, PersistenceOptions { keep_zero_length: keep_zero })?;
    eprintln!("{} simplices, {} bars in {:.3?}", fc.len(), bc.len(), start.elapsed());
    write_to(out, |w| bc.write_text(w))
}

fn cmd_compare(source: &Source, threshold: Option<f64>, enclosing: bool, max_dim: usize, cap: usize) -> CliResult {
    let data = single(source)?;
    let n = data.dm.len();
    if n > cap {
        return Err(CliError::Usage(format!(
            "{n} points exceeds the Vietoris-Rips comparison cap of {cap}; compare a subsample or raise --cap"
        )));
    }
    let th = match explicit(threshold)? {
        Some(t) => t,
        None if enclosing => Threshold::Finite(enclosing_radius(&data.dm)),
        None => Threshold::Unbounded,
    };
    let opts = PersistenceOptions::default();
    let quotient: Barcode = compute_persistence_with(&filtration(&data.dm, th, max_dim, false)?, opts)?;
    let rips: Barcode = compute_persistence_with(&filtration(&data.dm, th, max_dim, true)?, opts)?;
    let mut w = io::stdout().lock();
    for k in 0..=max_dim {
        let ratio = multiplicative_bottleneck(&quotient, &rips, k)?;
        let flag = if ratio > 3.0 { "exceeds 3" } else { "ok" };
        writeln!(w, "degree {k} ratio {} {flag}", fmt_scalar(ratio))?;
    }
    Ok(())
}

fn counts_line(w: &mut dyn Write, name: &str, c: &SimplexCounts) -> io::Result<()> {
    writeln!(
        w,
        "{name} vertices {} edges {} triangles {} total {}",
        c.vertices,
        c.edges,
        c.triangles,
        c.total()
    )
}

fn cmd_stats(source: &Source, scale: &Scale, vr: bool) -> CliResult {
    let data = load(source)?;
    if data.is_empty() || data.len() > 2 {
        return Err(CliError::Usage(format!("stats takes one or two datasets, got {}", data.len())));
    }
    let mut rows = Vec::new();
    let mut w = io::stdout().lock();
    for d in &data {
        let th = resolve(scale, &d.dm)?;
        let start = Instant::now();
        let g = build_quotient(d.dm.len(), &sorted_edges(&d.dm, th))?.graph;
        let q = graph_counts(&g);
        eprintln!("{}: quotient built in {:.3?}", d.label, start.elapsed());
        let r = vr.then(|| {
            let start = Instant::now();
            let r = rips_counts(&d.dm, th);
            eprintln!("{}: Vietoris-Rips counted in {:.3?}", d.label, start.elapsed());
            r
        });
        writeln!(
            w,
            "input {} points {} threshold {}",
            d.label,
            d.dm.len(),
            th.value().map_or_else(|| "inf".to_string(), fmt_scalar)
        )?;
        counts_line(&mut w, "quotient", &q)?;
        if let Some(r) = &r {
            counts_line(&mut w, "vr", r)?;
        }
        rows.push((d.dm.len(), q, r));
    }
    if let [(n1, q1, r1), (n2, q2, r2)] = rows.as_slice() {
        let alpha = growth_exponent(*n1, q1.total(), *n2, q2.total())?;
        writeln!(w, "alpha quotient {}", fmt_scalar(alpha))?;
        if let (Some(r1), Some(r2)) = (r1, r2) {
            let alpha = growth_exponent(*n1, r1.total(), *n2, r2.total())?;
            writeln!(w, "alpha vr {}", fmt_scalar(alpha))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Build {
            source,
            scale,
            out,
            sparse_out,
        } => cmd_build(source, scale, out.as_deref(), sparse_out.as_deref()),
        Command::Persistence {
            source,
            scale,
            max_dim,
            vr,
            keep_zero,
            barcode_out,
        } => cmd_persistence(source, scale, *max_dim, *vr, *keep_zero, barcode_out.as_deref()),
        Command::Compare {
            source,
            threshold,
            enclosing,
            max_dim,
            cap,
        } => cmd_compare(source, *threshold, *enclosing, *max_dim, *cap),
        Command::Stats { source, scale, vr } => cmd_stats(source, scale, *vr),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qrips: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
