use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqlab::conjugacy::{verify_conjugacy, verify_fundamental_lemma, ChainConfiguration, ChainSpec, VerificationReport};
use eqlab::hyp::{HPoint, MoebiusTransform};
use eqlab::lamination::{earthquake_many, earthquaked};
use eqlab::surface::{earthquake_flow, shear_across_cuff, PantsModel, TruncationBudget};
use eqlab::transport::{ordered_product, CrossingFactor, TailPolicy};
use eqlab::triangle::{develop, pants_boundary_holonomies, pants_boundary_lengths, shears_from_cuffs};

mod dto;
mod emit;
mod render;

use dto::*;

#[derive(Parser, Debug)]
#[command(name = "eqlab", version, about = "Shear coordinates, transport products and earthquakes on hyperbolic surfaces")]
struct Cli {
    /// Tolerance for verifiers (defaults depend on the command).
    #[arg(long, global = true, env = "EQLAB_TOL")]
    tol: Option<f64>,
    /// Horocycle depth up to which spiral crossings are multiplied out; for
    /// factor lists, the number of leading factors kept.
    #[arg(long, global = true)]
    truncation_depth: Option<f64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pants from two ideal triangles: shears, cuff lengths and traces.
    Pants(PantsArgs),
    /// Place the triangles reached by crossing words.
    Develop(ConfigArg),
    /// Ordered products of crossing factors, or the shear across a cuff.
    Transport(ConfigArg),
    /// Earthquake a lamination on the plane, or twist an FN surface.
    Earthquake(EarthquakeArgs),
    #[command(subcommand)]
    Verify(Verify),
    /// Draw a developed complex and lamination as SVG.
    Render(ConfigArg),
}

#[derive(Args, Debug)]
struct PantsArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, group = "input")]
    shears: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', group = "input")]
    lengths: Option<Vec<f64>>,
    /// Spiral direction per cuff, used with --lengths.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Option<Vec<i8>>,
    /// Check the trace formula on this many random shear triples.
    #[arg(long, group = "input")]
    random: Option<usize>,
}

#[derive(Args, Debug)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args, Debug)]
struct EarthquakeArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Shear along a chain moves by t times the crossed fault mass.
    FundamentalLemma {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        ts: Vec<f64>,
    },
    /// Shears across cuffs follow the unipotent flow under twisting.
    Conjugacy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        ts: Vec<f64>,
        /// Gluings whose cuffs the arcs cross; all of them by default.
        #[arg(long, value_delimiter = ',')]
        arcs: Option<Vec<usize>>,
    },
}

/// Bad input; exits with code 2. Failed checks still write their report
/// and exit with 1 through [`Output::failed`].
enum Failure {
    Input(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<eqlab::Error> for Failure {
    fn from(e: eqlab::Error) -> Self {
        match e {
            eqlab::Error::Schema { pointer, message } => Failure::Input(InputError::at(pointer, message).to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    failed: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, failed: None }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn three<T: Copy>(name: &str, v: &[T]) -> Result<[T; 3], Failure> {
    <[T; 3]>::try_from(v).map_err(|_| Failure::Input(format!("--{name} needs exactly three values")))
}

fn pants_report(shears: [f64; 3]) -> Result<PantsReport, Failure> {
    let h = pants_boundary_holonomies(shears[0], shears[1], shears[2])?;
    Ok(PantsReport {
        shears,
        lengths: pants_boundary_lengths(shears[0], shears[1], shears[2]),
        traces: h.map(|m| m.trace().abs()),
    })
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Input(format!("--format {f:?} is not available for this command").to_lowercase()))
    }
}

fn pants(cli: &Cli, a: &PantsArgs) -> Result<Output, Failure> {
    let fmt = format_or(cli, Format::Json, &[Format::Json, Format::Csv])?;
    let reports = if let Some(n) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        (0..n)
            .map(|_| pants_report([(); 3].map(|_| rng.random_range(-2.0..=2.0))))
            .collect::<Result<Vec<_>, _>>()?
    } else if let Some(s) = &a.shears {
        vec![pants_report(three("shears", s)?)?]
    } else if let Some(l) = &a.lengths {
        let l = three("lengths", l)?;
        let signs = match &a.signs {
            Some(s) => three("signs", s)?,
            None => [1, 1, 1],
        };
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Failure::Input("--signs must be ±1".into()));
        }
        PantsModel::new(l, signs)?;
        vec![pants_report(shears_from_cuffs(l, signs))?]
    } else {
        return Err(Failure::Input("pants needs --shears, --lengths or --random".into()));
    };
    if fmt == Format::Csv {
        let rows = reports
            .iter()
            .map(|r| r.shears.iter().chain(&r.lengths).chain(&r.traces).map(|x| emit::float(*x)).collect())
            .collect::<Vec<_>>();
        return Ok(Output::ok(emit::csv(
            &["s1", "s2", "s3", "l1", "l2", "l3", "tr1", "tr2", "tr3"],
            &rows,
        )));
    }
    if a.random.is_none() {
        return Ok(Output::ok(emit::json(&reports[0])));
    }
    let tolerance = cli.tol.unwrap_or(1e-9);
    let max_residual = reports
        .iter()
        .flat_map(|r| r.lengths.iter().zip(&r.traces).map(|(l, t)| (t - 2.0 * (0.5 * l).cosh()).abs()))
        .fold(0.0, f64::max);
    let report = PantsSampleReport {
        seed: cli.seed,
        samples: reports,
        max_residual,
        tolerance,
        passed: max_residual <= tolerance,
    };
    Ok(Output {
        text: emit::json(&report),
        failed: (!report.passed).then(|| format!("trace residual {max_residual:e} exceeds {tolerance:e}")),
    })
}

fn develop_cmd(cli: &Cli, c: &ConfigArg) -> Result<Output, Failure> {
    format_or(cli, Format::Json, &[Format::Json])?;
    let cfg: DevelopConfig = parse(&read(&c.config)?)?;
    let dev = develop(&cfg.triangulation, &cfg.words).map_err(|e| InputError::at("/words", e))?;
    let placements = dev
        .placements()
        .iter()
        .map(|(w, p)| PlacementDto {
            word: w.clone(),
            triangle: cfg.triangulation.triangles()[p.triangle],
            vertices: p.placed.vertices().map(|v| Endpoint::from_point(&v)),
        })
        .collect();
    Ok(Output::ok(emit::json(&DevelopReport { placements })))
}

fn transport_cmd(cli: &Cli, c: &ConfigArg) -> Result<Output, Failure> {
    format_or(cli, Format::Json, &[Format::Json])?;
    let cfg: TransportConfig = parse(&read(&c.config)?)?;
    match (&cfg.factors, &cfg.spiral) {
        (Some(list), None) => {
            let mut factors = Vec::with_capacity(list.len());
            for (k, f) in list.iter().enumerate() {
                let [a, b, cc, d] = f.matrix;
                let m = MoebiusTransform::new(a, b, cc, d).map_err(|e| InputError::at(format!("/factors/{k}/matrix"), e))?;
                factors.push(CrossingFactor::new(m, f.order_key));
            }
            let mut tail = cfg.tail_mass;
            if let Some(depth) = cli.truncation_depth {
                let keep = (depth.max(0.0) as usize).min(factors.len());
                tail += factors[keep..].iter().map(|f| f.deviation).sum::<f64>();
                factors.truncate(keep);
            }
            let policy = TailPolicy {
                tail_mass: tail,
                ..TailPolicy::default()
            };
            let p = ordered_product(&factors, &policy).map_err(|e| InputError::at("/factors", e))?;
            Ok(Output::ok(emit::json(&ProductReport {
                value: p.value.entries(),
                error_bound: p.error_bound,
                retained: p.factors.len(),
                dropped: p.dropped,
            })))
        }
        (None, Some(sp)) => {
            let s = sp.surface.surface("/spiral/surface")?;
            let budget = TruncationBudget {
                max_depth: cli.truncation_depth,
                ..TruncationBudget::default()
            };
            let r = shear_across_cuff(&s, sp.gluing, &budget).map_err(|e| InputError::at("/spiral/gluing", e))?;
            Ok(Output::ok(emit::json(&SpiralReport {
                shear: r.value,
                error_bound: r.error_bound,
                factors: r.factors,
                depth_budget: r.depth_budget,
            })))
        }
        _ => Err(InputError::at("", "exactly one of \"factors\" and \"spiral\" is required").into()),
    }
}

fn earthquake_cmd(cli: &Cli, a: &EarthquakeArgs) -> Result<Output, Failure> {
    format_or(cli, Format::Json, &[Format::Json])?;
    let cfg: EarthquakeConfig = parse(&read(&a.config)?)?;
    match (&cfg.lamination, &cfg.surface) {
        (Some(l), None) => {
            let lam = l.build("/lamination")?;
            let base = match &cfg.base {
                Some(b) => b.tangent("/base")?,
                None => eqlab::hyp::UnitTangent::reference(),
            };
            let pts = cfg
                .points
                .iter()
                .enumerate()
                .map(|(k, p)| HPoint::new(p[0], p[1]).map_err(|e| InputError::at(format!("/points/{k}"), e)))
                .collect::<Result<Vec<_>, _>>()?;
            let images = earthquake_many(&lam, a.t, &base, &pts).map_err(|e| InputError::at("/points", e))?;
            let moved = earthquaked(&lam, a.t, &base).map_err(|e| InputError::at("/base", e))?;
            Ok(Output::ok(emit::json(&EarthquakeReport {
                t: a.t,
                images: images.iter().map(|z| [z.x(), z.y()]).collect(),
                lamination: LaminationDto::from_lamination(&moved),
            })))
        }
        (None, Some(sd)) => {
            let s = sd.surface("/surface")?;
            let mc = sd
                .multicurve("/surface", &s)?
                .ok_or_else(|| InputError::at("/surface/weights", "an FN earthquake needs cuff weights"))?;
            let moved = earthquake_flow(&s, &mc, a.t)?;
            Ok(Output::ok(emit::json(&SurfaceDto::from_surface(&moved, Some(&mc)))))
        }
        _ => Err(InputError::at("", "exactly one of \"lamination\" and \"surface\" is required").into()),
    }
}

fn report_output(cli: &Cli, r: &VerificationReport) -> Result<Output, Failure> {
    let fmt = format_or(cli, Format::Json, &[Format::Json, Format::Csv])?;
    let text = if fmt == Format::Csv {
        let rows = r
            .samples
            .iter()
            .map(|s| {
                vec![
                    s.arc.map(|a| a.to_string()).unwrap_or_default(),
                    emit::float(s.t),
                    emit::float(s.measured[0]),
                    emit::float(s.measured[1]),
                    emit::float(s.predicted[0]),
                    emit::float(s.predicted[1]),
                    emit::float(s.residual()),
                ]
            })
            .collect::<Vec<_>>();
        emit::csv(&["arc", "t", "measured_x", "measured_y", "predicted_x", "predicted_y", "residual"], &rows)
    } else {
        emit::json(r)
    };
    Ok(Output {
        text,
        failed: (!r.passed).then(|| format!("max residual {:e} exceeds tolerance {:e}", r.max_residual, r.tolerance)),
    })
}

fn verify_cmd(cli: &Cli, v: &Verify) -> Result<Output, Failure> {
    match v {
        Verify::FundamentalLemma { config, ts } => {
            let spec: ChainSpec = parse(&read(config)?)?;
            let chain = ChainConfiguration::from_spec(&spec).map_err(|e| InputError::at("", e))?;
            let r = verify_fundamental_lemma(&chain, ts, cli.tol.unwrap_or(1e-9))?;
            report_output(cli, &r)
        }
        Verify::Conjugacy { config, ts, arcs } => {
            let sd: SurfaceDto = parse(&read(config)?)?;
            let s = sd.surface("")?;
            let mc = sd
                .multicurve("", &s)?
                .ok_or_else(|| InputError::at("/weights", "conjugacy needs cuff weights"))?;
            let arcs: Vec<usize> = match arcs {
                Some(a) => a.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
                None => (0..s.gluings().len()).collect(),
            };
            let budget = TruncationBudget {
                max_depth: cli.truncation_depth,
                ..TruncationBudget::default()
            };
            let r = verify_conjugacy(&s, &mc, &arcs, ts, &budget, cli.tol.unwrap_or(1e-6))?;
            report_output(cli, &r)
        }
    }
}

fn render_cmd(cli: &Cli, c: &ConfigArg) -> Result<Output, Failure> {
    format_or(cli, Format::Svg, &[Format::Svg])?;
    let cfg: DevelopConfig = parse(&read(&c.config)?)?;
    let spec = cfg.render.clone().unwrap_or_default();
    spec.validate().map_err(|m| InputError::at("/render", m))?;
    let mut words = cfg.words.clone();
    if words.is_empty() {
        words.push(Vec::new());
    }
    let dev = develop(&cfg.triangulation, &words).map_err(|e| InputError::at("/words", e))?;
    let mut scene = render::Scene::default();
    let mut seen = BTreeSet::new();
    for w in &words {
        let (reduced, _) = cfg.triangulation.reduce(w).map_err(|e| InputError::at("/words", e))?;
        for k in 0..=reduced.len() {
            if !seen.insert(reduced[..k].to_vec()) {
                continue;
            }
            let p = dev.get(&reduced[..k]).expect("prefixes are developed");
            scene.triangle_sides.extend((0..3).map(|i| p.placed.side(i)));
            scene.points.extend((0..3).map(|i| p.placed.tangency_point(i)));
            if k > 0 {
                let prev = dev.get(&reduced[..k - 1]).expect("prefixes are developed");
                scene.segments.push((prev.placed.center(), p.placed.center()));
            }
        }
    }
    if let Some(l) = &cfg.lamination {
        scene.leaves = l.build("/lamination")?.leaves().iter().map(|l| l.geodesic).collect();
    }
    Ok(Output::ok(render::svg(&scene, &spec)))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Pants(a) => pants(cli, a),
        Command::Develop(c) => develop_cmd(cli, c),
        Command::Transport(c) => transport_cmd(cli, c),
        Command::Earthquake(a) => earthquake_cmd(cli, a),
        Command::Verify(v) => verify_cmd(cli, v),
        Command::Render(c) => render_cmd(cli, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            eprintln!("error: --tol must be positive");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(m) = written {
        eprintln!("error: {m}");
        return ExitCode::from(2);
    }
    match out.failed {
        Some(m) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
