use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gridconvex::io::{read_points, render_svg, write_points, write_report};
use gridconvex::{
    analyze, default_min_pts, generate, reduce_dims, select_eps, subsample_cluster, Cluster,
    Error, ScanMode, Shape, ShapeSpec, GENERATOR,
};

const RING_CONFIG: &str = include_str!("../configs/ring.toml");
const CRESCENT_CONFIG: &str = include_str!("../configs/crescent.toml");

#[derive(Parser)]
#[command(name = "gridconvex", version, about = "Grid-based convexity analysis of a density-based cluster")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the cluster in a point file is convex.
    Analyze(AnalyzeArgs),
    /// Write a synthetic 2-D cluster as a point file.
    Generate(GenerateArgs),
    /// Print the smallest DBSCAN radius giving one cluster and no noise.
    SelectEps(SelectEpsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    First,
    Exhaustive,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("accuracy").required(true).args(["eps", "auto_eps"])))]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Grid accuracy (lattice spacing and neighborhood radius).
    #[arg(long)]
    eps: Option<f64>,
    /// Choose eps with DBSCAN: the smallest radius giving one cluster, no noise.
    #[arg(long)]
    auto_eps: bool,
    /// DBSCAN density threshold for --auto-eps [default: 2 * dimensions]
    #[arg(long)]
    min_pts: Option<usize>,
    /// Relative step of the --auto-eps candidate ladder.
    #[arg(long, default_value_t = 0.02)]
    resolution: f64,
    /// Grid sampling rate in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::First)]
    mode: Mode,
    /// Randomly project the points to this many dimensions first.
    #[arg(long)]
    project_dims: Option<usize>,
    /// Analyze a uniform subsample of the points at this rate.
    #[arg(long)]
    subsample: Option<f64>,
    #[arg(long)]
    out: PathBuf,
    /// Also write a layered SVG figure (2-D input only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeKind {
    Ring,
    Crescent,
    Disk,
    Rectangle,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, required_unless_present = "config")]
    shape: Option<ShapeKind>,
    /// Shape description in TOML; geometry flags override its values.
    #[arg(long, conflicts_with = "shape")]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', num_args = 2, allow_negative_numbers = true)]
    center: Option<Vec<f64>>,
    #[arg(long)]
    r_inner: Option<f64>,
    #[arg(long)]
    r_outer: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, value_delimiter = ',', num_args = 2, allow_negative_numbers = true)]
    cutter_center: Option<Vec<f64>>,
    #[arg(long)]
    cutter_radius: Option<f64>,
    #[arg(long, value_delimiter = ',', num_args = 2, allow_negative_numbers = true)]
    min: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', num_args = 2, allow_negative_numbers = true)]
    max: Option<Vec<f64>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SelectEpsArgs {
    #[arg(long)]
    input: PathBuf,
    /// DBSCAN density threshold [default: 2 * dimensions]
    #[arg(long)]
    min_pts: Option<usize>,
    #[arg(long, default_value_t = 0.02)]
    resolution: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GridTooLarge { .. } => 3,
            Error::NoUniqueClusterEps => 4,
            _ => 2,
        };
        let message = match &e {
            Error::InvalidParameter { name, reason } => {
                format!("--{}: {reason}", name.replace('_', "-"))
            }
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn fail(flag: &str, message: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("{flag}: {message}"),
    }
}

fn load(input: &Path) -> Result<Cluster, Failure> {
    read_points(input).map_err(|e| fail("--input", format!("{}: {e}", input.display())))
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let mut cluster = load(&args.input)?;
    let mut warnings = Vec::new();

    if let Some(rate) = args.subsample {
        let before = cluster.len();
        cluster = subsample_cluster(&cluster, rate, args.seed)?;
        warnings.push(format!(
            "cluster subsampled from {before} to {} points; an over-sparse cluster may not be \
             reliable for convexity analysis",
            cluster.len()
        ));
    }
    if let Some(dims) = args.project_dims {
        let before = cluster.dims();
        cluster = reduce_dims(&cluster, dims, args.seed.wrapping_add(1))?;
        if dims != before {
            warnings.push(format!(
                "points randomly projected from {before} to {dims} dimensions; distances are approximate"
            ));
        }
    }

    let eps = match args.eps {
        Some(eps) => eps,
        None => {
            let min_pts = args.min_pts.unwrap_or_else(|| default_min_pts(cluster.dims()));
            select_eps(&cluster, min_pts, args.resolution)?
        }
    };
    let mode = match args.mode {
        Mode::First => ScanMode::FirstWitness,
        Mode::Exhaustive => ScanMode::Exhaustive,
    };

    let mut report = analyze(&cluster, eps, args.eta, args.seed, mode)?;
    warnings.append(&mut report.warnings);
    report.warnings = warnings;

    if let Some(svg_path) = &args.svg {
        if cluster.dims() == 2 {
            let svg = render_svg(&cluster, &report)?;
            std::fs::write(svg_path, svg).map_err(|e| fail("--svg", e))?;
        } else {
            eprintln!(
                "note: --svg skipped, figures are only drawn for 2-D input (got {} dimensions)",
                cluster.dims()
            );
        }
    }
    write_report(&args.out, &report).map_err(|e| fail("--out", e))?;
    Ok(())
}

fn pair(v: &Option<Vec<f64>>, default: [f64; 2]) -> [f64; 2] {
    v.as_ref().map_or(default, |v| [v[0], v[1]])
}

fn shape_spec(args: &GenerateArgs) -> Result<ShapeSpec, Failure> {
    let mut spec = match (&args.config, args.shape) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| fail("--config", e))?;
            ShapeSpec::from_toml(&text).map_err(|e| fail("--config", e))?
        }
        (None, Some(ShapeKind::Ring)) => ShapeSpec::from_toml(RING_CONFIG)?,
        (None, Some(ShapeKind::Crescent)) => ShapeSpec::from_toml(CRESCENT_CONFIG)?,
        (None, Some(ShapeKind::Disk)) => ShapeSpec {
            shape: Shape::Disk { center: [0.0, 0.0], radius: 1.0 },
            n: 2000,
            seed: 0,
        },
        (None, Some(ShapeKind::Rectangle)) => ShapeSpec {
            shape: Shape::Rectangle { min: [0.0, 0.0], max: [1.0, 1.0] },
            n: 2000,
            seed: 0,
        },
        (None, None) => return Err(fail("--shape", "either --shape or --config is required")),
    };
    spec.shape = match spec.shape {
        Shape::Ring { center, r_inner, r_outer } => Shape::Ring {
            center: pair(&args.center, center),
            r_inner: args.r_inner.unwrap_or(r_inner),
            r_outer: args.r_outer.unwrap_or(r_outer),
        },
        Shape::Crescent { center, radius, cutter_center, cutter_radius } => Shape::Crescent {
            center: pair(&args.center, center),
            radius: args.radius.unwrap_or(radius),
            cutter_center: pair(&args.cutter_center, cutter_center),
            cutter_radius: args.cutter_radius.unwrap_or(cutter_radius),
        },
        Shape::Disk { center, radius } => Shape::Disk {
            center: pair(&args.center, center),
            radius: args.radius.unwrap_or(radius),
        },
        Shape::Rectangle { min, max } => Shape::Rectangle {
            min: pair(&args.min, min),
            max: pair(&args.max, max),
        },
    };
    if let Some(n) = args.n {
        spec.n = n;
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    Ok(spec)
}

fn run_generate(args: GenerateArgs) -> Result<(), Failure> {
    let spec = shape_spec(&args)?;
    if spec.n == 0 {
        return Err(fail("--n", "point count must be positive"));
    }
    let cluster = generate(&spec).map_err(|e| fail("--shape", e))?;
    let comments = vec![
        format!("shape: {}", spec.shape),
        format!("n={} seed={} generator={GENERATOR} area={}", spec.n, spec.seed, spec.shape.area()),
    ];
    write_points(&args.out, &cluster, &comments).map_err(|e| fail("--out", e))?;
    Ok(())
}

fn run_select_eps(args: SelectEpsArgs) -> Result<(), Failure> {
    let cluster = load(&args.input)?;
    let min_pts = args.min_pts.unwrap_or_else(|| default_min_pts(cluster.dims()));
    let eps = select_eps(&cluster, min_pts, args.resolution)?;
    println!("{eps}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Generate(g) => run_generate(g),
        Command::SelectEps(s) => run_select_eps(s),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
