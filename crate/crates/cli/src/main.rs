use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use widthlab::{
    build_grid, ecdf, histogram_density, mean_square_width_analytic, moment_monte_carlo,
    moment_quadrature, reference_moment, sample_widths, tetra, width_extremes, CanonicalBody,
    MomentEstimate, Polytope, UnitDirection,
};
use widthlab_cli::output::{fmt_f64, to_json, write_csv};
use widthlab_cli::polytope_file::PolytopeFile;
use widthlab_cli::verify;

const THREADS_ENV: &str = "WIDTHLAB_THREADS";

#[derive(Parser)]
#[command(name = "widthlab", version, about = "Width moments and width distributions of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce every reference constant; exits 1 if any row fails.
    Verify {
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Estimate E[w^k].
    Moments(MomentsArgs),
    /// Sample widths and write histogram.csv and ecdf.csv.
    Density(DensityArgs),
    /// Width in one direction.
    Width {
        #[command(flatten)]
        source: Source,
        /// Direction components, comma separated; normalized internally.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        dir: Vec<f64>,
    },
    /// Minimum width and diameter.
    Extremes {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 128)]
        coarse: usize,
        #[arg(long, default_value_t = 60)]
        refine_iters: usize,
    },
    /// Sector decomposition of the tetrahedron's mean square width.
    AnalyticTetra,
    /// Grid of (theta, phi, sqrt(3g/8), active term) for the tetrahedron.
    RegionMap {
        #[arg(long, default_value_t = 181)]
        n_theta: usize,
        #[arg(long, default_value_t = 91)]
        n_phi: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Reference body: triangle, square, tetra or cube.
    #[arg(long, value_parser = parse_body)]
    body: Option<CanonicalBody>,
    /// Polytope JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

fn parse_body(s: &str) -> Result<CanonicalBody, String> {
    s.parse().map_err(|e: widthlab::Error| e.to_string())
}

impl Source {
    fn load(&self) -> Result<(Polytope, String, Option<CanonicalBody>)> {
        match (&self.body, &self.file) {
            (Some(body), None) => Ok((body.polytope(), body.name().to_string(), Some(*body))),
            (None, Some(path)) => {
                let p = PolytopeFile::load(path)?.to_polytope()?;
                Ok((p, path.display().to_string(), None))
            }
            _ => bail!("exactly one of --body or --file is required"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Quad,
    Mc,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value_t = Method::Quad)]
    method: Method,
    /// Azimuth nodes (default 2048 in 3D, 65536 in 2D).
    #[arg(long)]
    n_theta: Option<usize>,
    /// Polar (Gauss–Legendre) nodes, 3D only.
    #[arg(long, default_value_t = 1024)]
    n_phi: usize,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    bins: usize,
    /// Explicit histogram range `lo,hi`; samples outside are tallied.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    range: Option<Vec<f64>>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct MomentsOutput<'a> {
    source: &'a str,
    #[serde(flatten)]
    estimate: MomentEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<f64>,
}

#[derive(Serialize)]
struct DensitySummary<'a> {
    source: &'a str,
    n: usize,
    seed: u64,
    bins: usize,
    overflow: usize,
    mean: f64,
    mean_stderr: f64,
    mean_square: f64,
    mean_square_stderr: f64,
    min_sample: f64,
    max_sample: f64,
    histogram: String,
    ecdf: String,
}

#[derive(Serialize)]
struct WidthOutput<'a> {
    source: &'a str,
    direction: UnitDirection,
    #[serde(flatten)]
    evaluation: widthlab::WidthEvaluation,
}

#[derive(Serialize)]
struct ExtremesOutput<'a> {
    source: &'a str,
    #[serde(flatten)]
    extremes: widthlab::WidthExtremes,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("cannot configure the thread pool")
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", to_json(value)?);
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Verify { json } => {
            let report = verify::run()?;
            if json {
                print_json(&report)?;
            } else {
                println!("{report}");
            }
            return Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Moments(args) => moments(args)?,
        Command::Density(args) => density(args)?,
        Command::Width { source, dir } => {
            let (p, label, _) = source.load()?;
            let u = UnitDirection::normalize(&dir).context("invalid --dir")?;
            let evaluation = p.width(&u)?;
            print_json(&WidthOutput {
                source: &label,
                direction: u,
                evaluation,
            })?;
        }
        Command::Extremes {
            source,
            coarse,
            refine_iters,
        } => {
            let (p, label, _) = source.load()?;
            let extremes = width_extremes(&p, coarse, refine_iters)?;
            print_json(&ExtremesOutput {
                source: &label,
                extremes,
            })?;
        }
        Command::AnalyticTetra => print_json(&mean_square_width_analytic()?)?,
        Command::RegionMap {
            n_theta,
            n_phi,
            out,
        } => region_map(n_theta, n_phi, &out)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn moments(args: MomentsArgs) -> Result<()> {
    let (p, label, body) = args.source.load()?;
    let estimate = match args.method {
        Method::Quad => {
            let n_theta = args
                .n_theta
                .unwrap_or(if p.dimension() == 2 { 65_536 } else { 2048 });
            let grid = build_grid(p.dimension(), n_theta, args.n_phi)?;
            moment_quadrature(&p, args.k, &grid)?
        }
        Method::Mc => moment_monte_carlo(&p, args.k, args.n, args.seed)?,
    };
    let reference = body.and_then(|b| reference_moment(b, args.k).ok()).map(|r| r.value);
    print_json(&MomentsOutput {
        source: &label,
        estimate,
        reference,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn density(args: DensityArgs) -> Result<()> {
    let (p, label, _) = args.source.load()?;
    if args.n == 0 {
        bail!("empty sample: --n must be at least 1");
    }
    let range = args.range.map(|r| (r[0], r[1]));
    let samples = sample_widths(&p, args.n, args.seed)?;
    let hist = histogram_density(&samples, args.bins, range)?;
    let steps = ecdf(&samples)?;

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let hist_path = args.out.join("histogram.csv");
    let ecdf_path = args.out.join("ecdf.csv");
    write_csv(
        create(&hist_path)?,
        &["bin_left", "bin_right", "mass"],
        hist.masses
            .iter()
            .enumerate()
            .map(|(j, &m)| vec![hist.bin_edges[j], hist.bin_edges[j + 1], m]),
    )
    .with_context(|| format!("cannot write {}", hist_path.display()))?;
    write_csv(
        create(&ecdf_path)?,
        &["sorted_width", "ecdf"],
        steps.steps().map(|(x, f)| vec![x, f]),
    )
    .with_context(|| format!("cannot write {}", ecdf_path.display()))?;

    let (mean, mean_stderr) = samples.moment(1);
    let (mean_square, mean_square_stderr) = samples.moment(2);
    print_json(&DensitySummary {
        source: &label,
        n: samples.len(),
        seed: args.seed,
        bins: hist.bins(),
        overflow: hist.overflow,
        mean,
        mean_stderr,
        mean_square,
        mean_square_stderr,
        min_sample: steps.sorted()[0],
        max_sample: *steps.sorted().last().unwrap(),
        histogram: hist_path.display().to_string(),
        ecdf: ecdf_path.display().to_string(),
    })
}

fn region_map(n_theta: usize, n_phi: usize, out: &Path) -> Result<()> {
    if n_theta < 16 || n_phi < 16 {
        bail!("region map needs --n-theta and --n-phi of at least 16");
    }
    let theta_step = std::f64::consts::TAU / (n_theta - 1) as f64;
    let phi_step = std::f64::consts::PI / (n_phi - 1) as f64;
    let mut w = create(out)?;
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "theta,phi,surface,active_term")?;
        for i in 0..n_theta {
            let theta = i as f64 * theta_step;
            for j in 0..n_phi {
                let phi = j as f64 * phi_step;
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_f64(theta),
                    fmt_f64(phi),
                    fmt_f64(tetra::surface_height(theta, phi)),
                    tetra::active_term(theta, phi).index()
                )?;
            }
        }
        w.flush()
    };
    body().with_context(|| format!("cannot write {}", out.display()))?;
    Ok(())
}
