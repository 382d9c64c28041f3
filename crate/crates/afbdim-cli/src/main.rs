//! Command line surface. Every subcommand reads explicit files (`--in -`
//! for stdin), writes machine-readable JSON to stdout (SVG goes to `--out`),
//! and exits 0 on success, 1 when a checked property fails, 2 on invalid
//! input or usage.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use afbdim::corpus::{self, CorpusSpec, Shape};
use afbdim::diagram::PlaneDiagram;
use afbdim::dimension::DimensionBound;
use afbdim::embedding::EmbeddedDiagram;
use afbdim::error::Error;
use afbdim::paths::PathSide;
use afbdim::poset::{LinearExtension, Poset, PosetJson, Realizer};
use afbdim::realizer::CoverMode;
use afbdim::svg::{render_svg, Overlays};

#[derive(Parser)]
#[command(name = "afbdim", version, about = "plane order diagrams: validation, accessibility, small realizers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Five,
    Seven,
}

impl From<ModeArg> for CoverMode {
    fn from(m: ModeArg) -> CoverMode {
        match m {
            ModeArg::Five => CoverMode::Five,
            ModeArg::Seven => CoverMode::Seven,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Stacked,
    Grid,
    Wraparound,
    Adversarial,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Stacked => Shape::Stacked,
            ShapeArg::Grid => Shape::Grid,
            ShapeArg::Wraparound => Shape::Wraparound,
            ShapeArg::Adversarial => Shape::Adversarial,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check all drawing invariants of a diagram
    Validate {
        #[arg(long, value_name = "FILE")]
        r#in: String,
    },
    /// Decide whether every minimal element is accessible from below
    AfbCheck {
        #[arg(long, value_name = "FILE")]
        r#in: String,
    },
    /// The counter-clockwise order of minimal elements on the outer face
    Envelope {
        #[arg(long, value_name = "FILE")]
        r#in: String,
    },
    /// Label incomparable pairs: four-way inside an up-set with --z, or the
    /// eight minimal-pair labels plus the reversible cover without it
    Classify {
        #[arg(long, value_name = "FILE")]
        r#in: String,
        /// classify inside the up-set of this element
        #[arg(long)]
        z: Option<String>,
        #[arg(long, value_enum, default_value = "five")]
        mode: ModeArg,
    },
    /// Construct a verified realizer (at most six extensions in five mode)
    Realize {
        #[arg(long, value_name = "FILE")]
        r#in: String,
        #[arg(long, value_enum, default_value = "five")]
        mode: ModeArg,
    },
    /// Exact dimension by brute force; optionally verify a realizer file
    Dimension {
        #[arg(long, value_name = "FILE")]
        r#in: String,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        #[arg(long, default_value_t = 60)]
        oracle_limit: usize,
        /// verify that the given realizer JSON (`-` for stdin) realizes the input
        #[arg(long, value_name = "FILE")]
        verify_realizer: Option<String>,
    },
    /// Rewrite the diagram so every pair gains a minimal proxy where possible
    Reduce {
        #[arg(long, value_name = "FILE")]
        r#in: String,
    },
    /// Alternating down-set/up-set layering from a minimal element
    Unfold {
        #[arg(long, value_name = "FILE")]
        r#in: String,
        #[arg(long)]
        x0: String,
    },
    /// Render the diagram (and overlays) as SVG
    Render {
        #[arg(long, value_name = "FILE")]
        r#in: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// draw the envelope as a dashed closed curve
        #[arg(long)]
        envelope: bool,
        /// extremal path overlays, e.g. --path a,t,left (repeatable)
        #[arg(long, value_name = "X,Y,SIDE")]
        path: Vec<String>,
    },
    /// Emit a deterministic diagram for a (seed, n, shape) specification
    Generate {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Differential checks: constructions against the brute-force oracle
    CrossCheck {
        /// a diagram or replay file
        #[arg(long, value_name = "FILE")]
        r#in: Option<String>,
        /// run a generated corpus of this many instances instead
        #[arg(long)]
        corpus: Option<usize>,
        #[arg(long, default_value = "stacked,grid,wraparound")]
        shapes: String,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long, default_value_t = 24)]
        n_max: usize,
        #[arg(long, default_value_t = 60)]
        oracle_limit: usize,
        /// where to write replay artifacts for failures
        #[arg(long, value_name = "DIR")]
        replay_dir: Option<PathBuf>,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Internal(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Internal(format!("{path}: {e}")))
    }
}

fn load_diagram(path: &str) -> Result<PlaneDiagram, Error> {
    PlaneDiagram::from_json_str(&read_input(path)?)
}

/// Accepts either a diagram (with "vertices") or a bare poset (with
/// "elements").
fn load_poset(path: &str) -> Result<Poset, Error> {
    let text = read_input(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Internal(format!("json: {e}")))?;
    if value.get("vertices").is_some() {
        let d = PlaneDiagram::from_json_str(&text)?;
        Ok(d.poset()?.clone())
    } else {
        let pj: PosetJson = serde_json::from_value(value)
            .map_err(|e| Error::Internal(format!("poset json: {e}")))?;
        Poset::from_json(&pj)
    }
}

fn embed(path: &str) -> Result<EmbeddedDiagram, Error> {
    EmbeddedDiagram::build(load_diagram(path)?)
}

fn emit(value: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // tolerate a closed pipe (e.g. piping into head)
    let _ = writeln!(std::io::stdout(), "{text}");
}

const OK: u8 = 0;
const PROPERTY_FAILED: u8 = 1;
const INVALID_INPUT: u8 = 2;

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { r#in } => {
            let d = load_diagram(&r#in)?;
            let report = d.validate();
            emit(&serde_json::to_value(&report).unwrap());
            Ok(if report.ok { OK } else { INVALID_INPUT })
        }
        Command::AfbCheck { r#in } => {
            let e = embed(&r#in)?;
            let (afb, violators) = e.afb_check();
            let names: Vec<&str> = violators.iter().map(|&v| e.poset().id(v)).collect();
            emit(&json!({ "afb": afb, "violators": names }));
            Ok(if afb { OK } else { PROPERTY_FAILED })
        }
        Command::Envelope { r#in } => {
            let e = embed(&r#in)?;
            let env = e.envelope_order()?;
            let names: Vec<&str> = env.order.iter().map(|&v| e.poset().id(v)).collect();
            emit(&json!({ "order": names }));
            Ok(OK)
        }
        Command::Classify { r#in, z, mode } => {
            let e = embed(&r#in)?;
            let p = e.poset();
            match z {
                Some(zid) => {
                    let z = p.rank(&zid)?;
                    let mut labels = BTreeMap::new();
                    for (x, y) in p.incomparable_pairs() {
                        if p.leq(z, x) && p.leq(z, y) {
                            let label = e.classify_in_upset(z, x, y)?;
                            labels.insert(format!("({},{})", p.id(x), p.id(y)), label.to_string());
                        }
                    }
                    emit(&json!({ "z": zid, "labels": labels }));
                }
                None => {
                    let env = e.envelope_order()?;
                    let family = e.cover_min_pairs(&env, mode.into())?;
                    let order: Vec<&str> = env.order.iter().map(|&v| p.id(v)).collect();
                    let mut labels = BTreeMap::new();
                    let mut biased = BTreeMap::new();
                    for l in &family.labels {
                        let key = format!("({},{})", p.id(l.x), p.id(l.y));
                        labels.insert(key.clone(), l.label.to_string());
                        if l.left_biased || l.right_biased {
                            biased.insert(
                                key,
                                json!({ "left": l.left_biased, "right": l.right_biased }),
                            );
                        }
                    }
                    let cover: BTreeMap<String, Vec<String>> = family
                        .sets
                        .iter()
                        .map(|s| {
                            (
                                s.name.clone(),
                                s.pairs
                                    .iter()
                                    .map(|&(x, y)| format!("({},{})", p.id(x), p.id(y)))
                                    .collect(),
                            )
                        })
                        .collect();
                    emit(&json!({
                        "envelope": order,
                        "labels": labels,
                        "biased": biased,
                        "cover": cover,
                    }));
                }
            }
            Ok(OK)
        }
        Command::Realize { r#in, mode } => {
            let e = embed(&r#in)?;
            let out = e.realize_afb(mode.into())?;
            emit(&serde_json::to_value(out.to_json(e.poset())).unwrap());
            Ok(OK)
        }
        Command::Dimension { r#in, max_k, oracle_limit, verify_realizer } => {
            let p = load_poset(&r#in)?;
            let mut result = json!({});
            let mut code = OK;
            match p.dimension_exact(max_k, oracle_limit)? {
                DimensionBound::Exact(d) => {
                    result["dimension"] = json!(d);
                }
                DimensionBound::MoreThan(k) => {
                    result["dimension_exceeds"] = json!(k);
                }
            }
            if let Some(rpath) = verify_realizer {
                let text = read_input(&rpath)?;
                let value: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Internal(format!("realizer json: {e}")))?;
                let exts = value
                    .get("extensions")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::Internal("realizer json lacks extensions".into()))?;
                let mut extensions = Vec::new();
                for ext in exts {
                    let ids: Vec<String> = ext
                        .as_array()
                        .ok_or_else(|| Error::Internal("extension is not an array".into()))?
                        .iter()
                        .map(|v| v.as_str().unwrap_or_default().to_owned())
                        .collect();
                    let mut order = Vec::with_capacity(ids.len());
                    for id in &ids {
                        order.push(p.rank(id)?);
                    }
                    extensions.push(LinearExtension::new(&p, order)?);
                }
                let verified = p.is_realizer(&Realizer { extensions })?;
                result["realizer_verified"] = json!(verified);
                if !verified {
                    code = PROPERTY_FAILED;
                }
            }
            emit(&result);
            Ok(code)
        }
        Command::Reduce { r#in } => {
            let e = embed(&r#in)?;
            let out = e.reduce_to_min_covered()?;
            let proxy: BTreeMap<String, serde_json::Value> = out
                .proxy
                .iter()
                .map(|((x, y), outcome)| {
                    let v = match outcome {
                        afbdim::reduce::ProxyOutcome::Minimal(id) => json!({ "minimal": id }),
                        afbdim::reduce::ProxyOutcome::Enclosed => json!("enclosed"),
                        afbdim::reduce::ProxyOutcome::Unproxied => json!("unproxied"),
                    };
                    (format!("({x},{y})"), v)
                })
                .collect();
            emit(&json!({
                "diagram": serde_json::to_value(out.embedded.diagram().to_json()).unwrap(),
                "proxy": proxy,
                "grafts": out.grafts,
            }));
            Ok(OK)
        }
        Command::Unfold { r#in, x0 } => {
            let p = load_poset(&r#in)?;
            let x0 = p.rank(&x0)?;
            let unfolding = p.unfold(x0)?;
            let layers: Vec<Vec<&str>> = unfolding
                .layers
                .iter()
                .map(|l| l.iter().map(|&v| p.id(v)).collect())
                .collect();
            emit(&json!({ "layers": layers }));
            Ok(OK)
        }
        Command::Render { r#in, out, envelope, path } => {
            let d = load_diagram(&r#in)?;
            let mut overlays = Overlays { envelope, ..Default::default() };
            if !path.is_empty() {
                let e = EmbeddedDiagram::build(d.clone())?;
                let p = e.poset();
                for spec in path {
                    let parts: Vec<&str> = spec.split(',').collect();
                    let [x, y, side] = parts.as_slice() else {
                        return Err(Error::Internal(format!("bad --path {spec:?}")));
                    };
                    let side = match *side {
                        "left" => PathSide::LeftMost,
                        "right" => PathSide::RightMost,
                        other => return Err(Error::Internal(format!("bad side {other:?}"))),
                    };
                    overlays.paths.push(e.extremal_path(p.rank(x)?, p.rank(y)?, side)?);
                }
            }
            let svg = render_svg(&d, &overlays)?;
            std::fs::write(&out, svg).map_err(|e| Error::Internal(format!("write: {e}")))?;
            eprintln!("wrote {}", out.display());
            Ok(OK)
        }
        Command::Generate { shape, seed, n, out } => {
            let spec = CorpusSpec { seed, n, shape: shape.into() };
            let d = corpus::generate(&spec);
            let value = serde_json::to_value(d.to_json()).unwrap();
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap())
                        .map_err(|e| Error::Internal(format!("write: {e}")))?;
                    eprintln!("wrote {}", path.display());
                }
                None => emit(&value),
            }
            Ok(OK)
        }
        Command::CrossCheck {
            r#in,
            corpus: corpus_count,
            shapes,
            seed_base,
            n_max,
            oracle_limit,
            replay_dir,
        } => {
            let mut inputs: Vec<(String, PlaneDiagram)> = Vec::new();
            if let Some(path) = r#in {
                let text = read_input(&path)?;
                // replay files carry a "certificates" object next to the diagram
                let d = PlaneDiagram::from_json_str(&text)?;
                inputs.push((path, d));
            } else if let Some(count) = corpus_count {
                let shapes: Vec<Shape> = shapes
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, _>>()?;
                if shapes.is_empty() {
                    return Err(Error::Internal("no shapes given".into()));
                }
                for i in 0..count {
                    let shape = shapes[i % shapes.len()];
                    let spec = CorpusSpec {
                        seed: seed_base + i as u64,
                        n: 3 + (i % n_max.max(4)),
                        shape,
                    };
                    inputs.push((format!("{:?}#{}", shape, spec.seed), corpus::generate(&spec)));
                }
            } else {
                return Err(Error::Internal("pass --in FILE or --corpus N".into()));
            }

            let reports: Vec<(String, PlaneDiagram, corpus::CrossCheckReport)> = inputs
                .into_par_iter()
                .map(|(name, d)| {
                    let report = corpus::cross_check(&d, oracle_limit);
                    (name, d, report)
                })
                .collect();
            let mut failures = 0usize;
            let mut summaries = Vec::new();
            for (name, d, report) in &reports {
                if !report.consistent() {
                    failures += 1;
                    if let Some(dir) = &replay_dir {
                        std::fs::create_dir_all(dir)
                            .map_err(|e| Error::Internal(format!("replay dir: {e}")))?;
                        let file = dir.join(format!("replay_{}.json", sanitize(name)));
                        std::fs::write(
                            &file,
                            serde_json::to_string_pretty(&corpus::replay_json(d, report))
                                .unwrap(),
                        )
                        .map_err(|e| Error::Internal(format!("replay write: {e}")))?;
                        eprintln!("replay written to {}", file.display());
                    }
                }
                summaries.push(json!({
                    "instance": name,
                    "report": serde_json::to_value(report).unwrap(),
                }));
            }
            emit(&json!({
                "instances": summaries.len(),
                "failures": failures,
                "reports": summaries,
            }));
            Ok(if failures == 0 { OK } else { PROPERTY_FAILED })
        }
    }
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_alphanumeric() { c } else { '_' }).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::NotAfb(_) | Error::VerificationFailed(_) => PROPERTY_FAILED,
                _ => INVALID_INPUT,
            };
            ExitCode::from(code)
        }
    }
}
