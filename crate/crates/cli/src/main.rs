mod io;
mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvball::exact2d::ArcPolygon;
use curvball::kp::{self, KPParams, Verdict};
use curvball::measure::{ball_volume, ball_volume_inverse, closed_form_ball_volume, estimate_volume, VolumeEstimate};
use curvball::oracle::{dual_of_points, symmetrize, Emptiness, UnionOfBalls};
use curvball::{Curvature, GeomError, RngSpec, Space};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use io::PointSetFile;
use report::{Report, TOOL, VERSION};
use svg::{Panel, Style};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: {1}")]
    Json(String, serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "curvball", version, about = "Dual sets, symmetrization and Kneser-Poulsen checks in E^d, S^d and H^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume of a geodesic ball, or the radius for a given volume.
    BallVolume(BallVolumeArgs),
    /// Monte Carlo volume of the r-dual of a point set.
    DualVolume(DualVolumeArgs),
    /// Statistical verification runs.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw a planar instance as SVG.
    Render(RenderArgs),
    /// Rerun the command stored in a JSON report and compare the bytes.
    Replay(ReplayArgs),
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Random unions of balls against the ball of equal volume.
    Main(MainArgs),
    /// Refutation search for the symmetrized dual inclusion.
    CoreLemma(CoreLemmaArgs),
    /// Uniform-contraction instance: separated P against contracted Q.
    Kp(KpArgs),
    /// Packing propositions behind the curved thresholds.
    Props(PropsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Add wall-clock time to the report (breaks byte-identical reruns).
    #[arg(long)]
    #[serde(skip)]
    timing: bool,
}

fn parse_curvature(s: &str) -> Result<Curvature, String> {
    s.parse().map_err(|e: GeomError| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
struct SpaceArgs {
    #[arg(long, value_parser = parse_curvature)]
    space: Curvature,
    #[arg(short = 'd', long = "dim", default_value_t = 2)]
    dim: usize,
    /// Hyperbolic working scale.
    #[arg(short = 'k')]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<f64>,
}

impl SpaceArgs {
    fn space(&self) -> Result<Space, CliError> {
        Ok(Space::new(self.space, self.dim)?)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
struct BallVolumeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    space: SpaceArgs,
    #[arg(short = 'r', conflicts_with = "inverse", required_unless_present = "inverse")]
    r: Option<f64>,
    #[arg(long)]
    inverse: Option<f64>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
struct DualVolumeArgs {
    /// PointSetFile (JSON).
    #[arg(long)]
    points: PathBuf,
    #[arg(short = 'r')]
    r: f64,
    #[arg(long = "n-mc", default_value_t = 1_000_000)]
    n_mc: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples spent looking for a witness when emptiness is undecided.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
struct MainArgs {
    #[command(flatten)]
    #[serde(flatten)]
    space: SpaceArgs,
    #[arg(short = 'r')]
    r: f64,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long = "n-mc", default_value_t = 50_000)]
    n_mc: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
struct CoreLemmaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    space: SpaceArgs,
    #[arg(short = 'r')]
    r: f64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Boundary points y per trial.
    #[arg(long, default_value_t = 100)]
    samples: u64,
    /// Members of the symmetrized set tested against each y.
    #[arg(long, default_value_t = 1000)]
    inner: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
struct KpArgs {
    #[command(flatten)]
    #[serde(flatten)]
    space: SpaceArgs,
    #[arg(short = 'N')]
    n: u64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long = "n-mc", default_value_t = 1_000_000)]
    n_mc: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Separated configuration P (generated when absent).
    #[arg(long = "p-file")]
    #[serde(skip_serializing_if = "Option::is_none")]
    p_file: Option<PathBuf>,
    /// Contracted configuration Q (generated when absent).
    #[arg(long = "q-file")]
    #[serde(skip_serializing_if = "Option::is_none")]
    q_file: Option<PathBuf>,
    /// Write the P configuration used as a PointSetFile.
    #[arg(long = "save-p")]
    #[serde(skip)]
    save_p: Option<PathBuf>,
    /// Write the Q configuration used as a PointSetFile.
    #[arg(long = "save-q")]
    #[serde(skip)]
    save_q: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
struct PropsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    space: SpaceArgs,
    #[arg(short = 'N')]
    n: u64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RenderKind {
    /// Balls around the points and their common intersection.
    Dual,
    /// A union of balls before and after two-point symmetrization.
    Symmetrize,
    /// Separated P, contracted Q and both duals.
    Kp,
}

#[derive(Debug, Clone, Args, Serialize)]
struct RenderArgs {
    #[arg(long, value_enum)]
    kind: RenderKind,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<PathBuf>,
    /// Dual radius, or ball radius for `symmetrize`.
    #[arg(short = 'r')]
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    /// Hyperplane normal (comma separated, ambient coordinates).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    normal: Vec<f64>,
    /// Euclidean hyperplane offset.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    offset: f64,
    #[arg(long, value_parser = parse_curvature)]
    #[serde(skip_serializing_if = "Option::is_none")]
    space: Option<Curvature>,
    #[arg(short = 'k')]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<f64>,
    #[arg(short = 'N')]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// SVG destination.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
struct ReplayArgs {
    /// A JSON report written by this tool.
    report: PathBuf,
}

/// Result of one command before it is wrapped in a [`Report`].
struct Outcome {
    parameters: Value,
    seed: Option<u64>,
    results: Value,
    verdict: String,
    exit_code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ok_outcome<P: Serialize>(params: &P, seed: Option<u64>, results: Value) -> Outcome {
    Outcome { parameters: to_value(params), seed, results, verdict: "ok".into(), exit_code: 0 }
}

fn cmd_ball_volume(a: &BallVolumeArgs) -> Result<Outcome, CliError> {
    let s = a.space.space()?;
    let (radius, volume) = match (a.r, a.inverse) {
        (Some(r), _) => (r, ball_volume(&s, r)?),
        (None, Some(v)) => (ball_volume_inverse(&s, v)?, v),
        (None, None) => return Err(CliError::Usage("give -r or --inverse".into())),
    };
    let closed = closed_form_ball_volume(&s, radius);
    let results = json!({
        "space": s.to_string(),
        "radius": radius,
        "volume": volume,
        "closed_form": closed,
        "closed_form_abs_diff": closed.map(|c| (c - ball_volume(&s, radius).unwrap_or(f64::NAN)).abs()),
    });
    Ok(ok_outcome(a, None, results))
}

fn cmd_dual_volume(a: &DualVolumeArgs) -> Result<Outcome, CliError> {
    let (s, pts) = PointSetFile::load(&a.points)?.resolve()?;
    let rng = RngSpec::new(a.seed, 0);
    let dual = dual_of_points(&s, &pts, a.r)?;
    let emptiness = dual.is_empty(a.budget, &rng.derive(1));
    let (state, witness) = match &emptiness {
        Emptiness::EmptyCertified => ("empty-certified", None),
        Emptiness::NonemptyWitness(p) => ("nonempty", Some(p.clone())),
        Emptiness::Unknown => ("unknown", None),
    };
    let estimate = match emptiness {
        Emptiness::EmptyCertified => VolumeEstimate::from_counts(0, a.n_mc, 0.0),
        _ => {
            let oracle = dual.to_oracle();
            let sampling = oracle.bound().expect("nonempty").clone();
            estimate_volume(&oracle, &sampling, a.n_mc, &rng)?
        }
    };
    let exact = if s.curvature == Curvature::Euclidean && s.dim == 2 {
        let poly = ArcPolygon::from_intersection(&dual)?;
        let area = poly.area();
        let z = if estimate.std_err > 0.0 { (estimate.value - area) / estimate.std_err } else { 0.0 };
        Some(json!({ "area": area, "shape": poly.shape, "arcs": poly.arcs.len(), "z": z }))
    } else {
        None
    };
    let results = json!({
        "space": s.to_string(),
        "n_points": pts.len(),
        "emptiness": state,
        "witness": witness,
        "estimate": estimate,
        "exact": exact,
    });
    Ok(ok_outcome(a, Some(a.seed), results))
}

fn load_points(path: &Path, s: &Space) -> Result<Vec<curvball::Point>, CliError> {
    let (fs, pts) = PointSetFile::load(path)?.resolve()?;
    if fs.curvature != s.curvature || fs.dim != s.dim {
        return Err(CliError::Usage(format!("{} holds points of {fs}, expected {s}", path.display())));
    }
    Ok(pts)
}

fn kp_params(space: &SpaceArgs, n: u64, lambda: f64, delta: f64) -> Result<KPParams, CliError> {
    Ok(KPParams::new(space.space()?, n, lambda, delta, space.k)?)
}

fn cmd_kp(a: &KpArgs, write: bool) -> Result<Outcome, CliError> {
    let p = kp_params(&a.space, a.n, a.lambda, a.delta)?;
    let rng = RngSpec::new(a.seed, 0);
    let pp = match &a.p_file {
        Some(f) => load_points(f, &p.space)?,
        None => kp::gen_separated(&p, &rng.derive(10))?,
    };
    let qq = match &a.q_file {
        Some(f) => load_points(f, &p.space)?,
        None => kp::gen_contracted(&p, &rng.derive(11))?,
    };
    if write {
        for (path, pts) in [(&a.save_p, &pp), (&a.save_q, &qq)] {
            if let Some(path) = path {
                PointSetFile::new(&p.space, pts).save(path)?;
            }
        }
    }
    let report = kp::verify_kp_instance(&p, &pp, &qq, a.n_mc, &rng)?;
    Ok(Outcome {
        parameters: to_value(a),
        seed: Some(a.seed),
        results: to_value(&report),
        verdict: to_value(&report.verdict).as_str().unwrap_or_default().to_string(),
        exit_code: report.verdict.exit_code(),
    })
}

fn cmd_main(a: &MainArgs) -> Result<Outcome, CliError> {
    let s = a.space.space()?;
    let report = kp::verify_main_random(&s, a.r, a.trials, a.n_mc, &RngSpec::new(a.seed, 0))?;
    let (verdict, code) = if report.violations == 0 { ("no-violation", 0) } else { ("violation", Verdict::Violated.exit_code()) };
    Ok(Outcome { parameters: to_value(a), seed: Some(a.seed), results: to_value(&report), verdict: verdict.into(), exit_code: code })
}

fn cmd_core_lemma(a: &CoreLemmaArgs) -> Result<Outcome, CliError> {
    let s = a.space.space()?;
    let report = kp::verify_core_lemma(&s, a.r, a.trials, a.samples, a.inner, &RngSpec::new(a.seed, 0))?;
    let (verdict, code) = if report.refutations == 0 { ("no-violation", 0) } else { ("violation", Verdict::Violated.exit_code()) };
    Ok(Outcome { parameters: to_value(a), seed: Some(a.seed), results: to_value(&report), verdict: verdict.into(), exit_code: code })
}

fn cmd_props(a: &PropsArgs) -> Result<Outcome, CliError> {
    let check = match a.space.space {
        Curvature::Spherical => kp::check_prop_spherical(a.space.dim, a.n, a.lambda),
        Curvature::Hyperbolic => {
            let delta = a.delta.ok_or_else(|| CliError::Usage("hyperbolic props need --delta".into()))?;
            let k = a.space.k.unwrap_or_else(|| (delta * 1.0001).max(1.0));
            kp::check_prop_hyperbolic(a.space.dim, k, a.n, a.lambda, delta)
        }
        Curvature::Euclidean => return Err(CliError::Usage("props are defined for spherical and hyperbolic space".into())),
    };
    let (results, verdict, code) = match check {
        Ok(c) => {
            let (v, code) = if c.holds { ("true", 0) } else { ("false", Verdict::Violated.exit_code()) };
            (to_value(&c), v, code)
        }
        Err(e @ GeomError::PreconditionUnmet(_)) => (json!({ "precondition": e.to_string() }), "precondition-unmet", Verdict::Inconclusive.exit_code()),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { parameters: to_value(a), seed: None, results, verdict: verdict.into(), exit_code: code })
}

fn view_half(s: &Space, pts: &[curvball::Point], pad: f64) -> f64 {
    let reach = pts.iter().map(|p| p.coords()[0].abs().max(p.coords()[1].abs())).fold(0.0, f64::max);
    if s.curvature == Curvature::Euclidean { reach + pad } else { 1.0 }
}

fn cmd_render(a: &RenderArgs, write: bool) -> Result<Outcome, CliError> {
    let mut summary = json!({ "svg": a.out.display().to_string(), "kind": a.kind });
    let panels = match a.kind {
        RenderKind::Dual | RenderKind::Symmetrize => {
            let file = a.points.as_ref().ok_or_else(|| CliError::Usage("render needs --points".into()))?;
            let (s, pts) = PointSetFile::load(file)?.resolve()?;
            if s.dim != 2 {
                return Err(CliError::Usage("render draws planar instances (dim 2)".into()));
            }
            let r = a.r.ok_or_else(|| CliError::Usage("render needs -r".into()))?;
            let half = view_half(&s, &pts, 1.2 * r);
            if a.kind == RenderKind::Dual {
                let dual = dual_of_points(&s, &pts, r)?;
                let mut panel = Panel::new(s, half, "dual");
                for p in &pts {
                    panel.ball(&s.ball(p.clone(), r), &Style::line("#4a7bd0"));
                }
                if s.curvature == Curvature::Euclidean {
                    let poly = ArcPolygon::from_intersection(&dual)?;
                    panel.arc_polygon(&poly, &Style { stroke: "#b03030", fill: "#e07070", width: 1.5, opacity: 0.6 });
                    summary["area"] = json!(poly.area());
                    summary["arcs"] = json!(poly.arcs.len());
                } else {
                    panel.region(&dual.to_oracle(), &Style::area("#e07070", 0.6));
                }
                for p in &pts {
                    panel.point(p, "#000");
                }
                vec![panel]
            } else {
                let h = s.hyperplane(a.normal.clone(), a.offset)?;
                let k = UnionOfBalls::congruent(s, &pts, r)?.to_oracle();
                let t = symmetrize(&k, &h);
                let mut before = Panel::new(s, half, "before");
                let mut after = Panel::new(s, half, "after");
                before.region(&k, &Style::area("#5a9", 0.7));
                after.region(&t, &Style::area("#5a9", 0.7));
                for panel in [&mut before, &mut after] {
                    panel.hyperplane(&h, &Style::line("#333"));
                }
                vec![before, after]
            }
        }
        RenderKind::Kp => {
            let curvature = a.space.ok_or_else(|| CliError::Usage("render kp needs --space".into()))?;
            let sa = SpaceArgs { space: curvature, dim: 2, k: a.k };
            let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("render kp needs --{name}")));
            let p = kp_params(&sa, a.n.unwrap_or(1), need(a.lambda, "lambda")?, need(a.delta, "delta")?)?;
            let rng = RngSpec::new(a.seed, 0);
            let pp = kp::gen_separated(&p, &rng.derive(10))?;
            let qq = kp::gen_contracted(&p, &rng.derive(11))?;
            let s = p.space;
            let all: Vec<_> = pp.iter().chain(&qq).cloned().collect();
            let mut panel = Panel::new(s, view_half(&s, &all, 1.2 * p.delta), "P (red) and Q (blue)");
            let dp = dual_of_points(&s, &pp, p.delta)?.to_oracle();
            let dq = dual_of_points(&s, &qq, p.delta)?.to_oracle();
            panel.region(&dq, &Style::area("#3060d0", 0.35));
            panel.region(&dp, &Style::area("#d03030", 0.5));
            for x in &pp {
                panel.point(x, "#d03030");
            }
            for x in &qq {
                panel.point(x, "#3060d0");
            }
            vec![panel]
        }
    };
    let doc = svg::document(&panels);
    summary["panels"] = json!(panels.len());
    summary["bytes"] = json!(doc.len());
    if write {
        fs::write(&a.out, &doc).map_err(|e| CliError::Io(a.out.display().to_string(), e))?;
    }
    Ok(ok_outcome(a, Some(a.seed), summary))
}

/// Parses and runs one command line. With `write == false` no files are
/// written (used by `replay`).
fn execute(argv: &[String], write: bool) -> Result<(Report, Format, Option<PathBuf>), CliError> {
    let cli = Cli::try_parse_from(std::iter::once(TOOL.to_string()).chain(argv.iter().cloned()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let (outcome, output) = match &cli.command {
        Command::BallVolume(a) => (cmd_ball_volume(a)?, a.output.clone()),
        Command::DualVolume(a) => (cmd_dual_volume(a)?, a.output.clone()),
        Command::Verify(VerifyCommand::Main(a)) => (cmd_main(a)?, a.output.clone()),
        Command::Verify(VerifyCommand::CoreLemma(a)) => (cmd_core_lemma(a)?, a.output.clone()),
        Command::Verify(VerifyCommand::Kp(a)) => (cmd_kp(a, write)?, a.output.clone()),
        Command::Verify(VerifyCommand::Props(a)) => (cmd_props(a)?, a.output.clone()),
        Command::Render(a) => (cmd_render(a, write)?, Output { format: a.format, out: None, timing: false }),
        Command::Replay(_) => return Err(CliError::Usage("replay cannot be replayed".into())),
    };
    let report = Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: argv.to_vec(),
        parameters: outcome.parameters,
        seed: outcome.seed,
        results: outcome.results,
        verdict: outcome.verdict,
        exit_code: outcome.exit_code,
        wall_clock_s: output.timing.then(|| start.elapsed().as_secs_f64()),
    };
    Ok((report, output.format, output.out))
}

fn replay(path: &Path) -> Result<(String, i32), CliError> {
    let original = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let stored: Report = serde_json::from_str(&original).map_err(|e| CliError::Json(path.display().to_string(), e))?;
    let (mut rerun, _, _) = execute(&stored.command, false)?;
    let identical = if stored.wall_clock_s.is_some() {
        rerun.wall_clock_s = None;
        let mut s = stored.clone();
        s.wall_clock_s = None;
        s.to_json() == rerun.to_json()
    } else {
        original == rerun.to_json()
    };
    let text = serde_json::to_string_pretty(&json!({
        "tool": TOOL,
        "version": VERSION,
        "replayed": path.display().to_string(),
        "command": stored.command,
        "identical": identical,
        "verdict": if identical { "identical" } else { "differs" },
    }))
    .expect("serializable")
        + "\n";
    Ok((text, if identical { 0 } else { 1 }))
}

fn run(argv: Vec<String>) -> Result<i32, CliError> {
    if let Some(Command::Replay(a)) = Cli::try_parse_from(std::iter::once(TOOL.to_string()).chain(argv.iter().cloned()))
        .ok()
        .map(|c| c.command)
    {
        let (text, code) = replay(&a.report)?;
        print!("{text}");
        return Ok(code);
    }
    let (report, format, out) = execute(&argv, true)?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code)
}

fn configure_threads() {
    if let Some(n) = std::env::var("CURVBALL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    // Let clap handle --help and --version itself.
    if let Err(e) = Cli::try_parse_from(std::iter::once(TOOL.to_string()).chain(argv.iter().cloned())) {
        let code = if e.use_stderr() { 1 } else { 0 };
        let _ = e.print();
        return ExitCode::from(code);
    }
    configure_threads();
    match run(argv) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
