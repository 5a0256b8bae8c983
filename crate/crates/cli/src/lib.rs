//! Command-line front end for `kmx-core`.
//!
//! Exit codes: 0 success, 1 domain error, 2 invariant violation, 64 usage.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kmx_core::diagram::{self, catalog};
use kmx_core::geometry::{self, FacetReport};
use kmx_core::matrixcheck::{self, VerifyOptions};
use kmx_core::pairs;
use kmx_core::par::{self, Execution};
use kmx_core::presentation::{self, Convention, EmitOptions, Format, PairOrder};
use kmx_core::{Diagram, Error, LatticeVector, RingSpec, RootLattice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "kmx", version, about = "Simply-laced hyperbolic Kac-Moody computations")]
struct Cli {
    /// Machine-readable JSON output (errors included).
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct DiagramArgs {
    /// Catalog name (`rankN-k`, or `E10`).
    #[arg(long, conflicts_with = "edges")]
    diagram: Option<String>,
    /// Inline edge list such as `0-1,1-2,2-3`; needs `--rank`.
    #[arg(long, requires = "rank")]
    edges: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Root coordinates, e.g. `1,0,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the 18 hyperbolic diagrams of rank at least 4.
    Catalog,
    /// Classify a diagram: finite, affine, or indefinite; hyperbolicity and signature.
    Classify(DiagramArgs),
    /// Enumerate hyperbolic diagrams of a rank up to isomorphism.
    Enumerate {
        #[arg(long)]
        rank: usize,
    },
    /// Real roots up to a height.
    Roots {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value_t = 4)]
        height: i64,
    },
    /// Distances from facet points to their ridges, bounded by 4/3.
    FacetCheck {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Every catalog diagram.
        #[arg(long)]
        all: bool,
    },
    /// Prenilpotency of a pair of real roots, with an optional Weyl search.
    Prenilpotent {
        #[command(flatten)]
        pair: PairArgs,
        /// Word length bound for the Weyl search; 0 skips it.
        #[arg(long, default_value_t = 16)]
        bound: usize,
    },
    /// Reduction certificate for a prenilpotent pair.
    Reduce {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Emit a Steinberg or Kac-Moody presentation.
    Emit {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Add torus relations at `--node`.
        #[arg(long)]
        kac_moody: bool,
        #[arg(long, default_value_t = 0)]
        node: usize,
        /// json, text or gap.
        #[arg(long, default_value = "text")]
        format: String,
        /// Emit the asymmetric families for both (i, j) and (j, i).
        #[arg(long)]
        both_orders: bool,
    },
    /// Evaluate every relation in explicit matrix groups.
    VerifyMatrix {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Parameter window `[-B, B]` over Z.
        #[arg(long, default_value_t = matrixcheck::Z_WINDOW)]
        bound: i64,
        /// Expand commutators as `bab^-1a^-1` (negative control).
        #[arg(long)]
        flipped: bool,
    },
    /// Closed-form cosh² for the (k, m) Gram model.
    PqFormula {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
}

/// Failure of a command: a library error, or a broken invariant.
enum Failure {
    Domain(Error),
    Invariant { message: String, output: Option<(String, Value)> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant { message: e.to_string(), output: None }
        } else {
            Failure::Domain(e)
        }
    }
}

/// Text and JSON renderings of a result.
struct Output {
    text: String,
    json: Value,
}

fn resolve_diagram(a: &DiagramArgs) -> Result<Diagram, Error> {
    match (&a.diagram, &a.edges, a.rank) {
        (Some(name), _, _) => diagram::find(name)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("unknown diagram {name:?}"))),
        (None, Some(edges), Some(rank)) => Diagram::new(rank, &parse_edges(edges)?),
        (None, None, Some(rank)) => Diagram::new(rank, &[]),
        _ => Err(Error::Parse("give --diagram NAME or --edges LIST --rank N".into())),
    }
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|e| {
            let (i, j) = e.split_once('-').ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
            let n = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad edge {e:?}")));
            Ok((n(i)?, n(j)?))
        })
        .collect()
}

fn diagram_json(d: &Diagram) -> Value {
    serde_json::to_value(d).expect("diagram serializes")
}

fn facet_table(reports: &[FacetReport]) -> String {
    let mut s = format!("{:<10} {:>3} {:>3} {:>8}  {}\n", "diagram", "i", "j", "cosh²", "equality");
    for r in reports {
        for e in &r.entries {
            let _ = writeln!(
                s,
                "{:<10} {:>3} {:>3} {:>8}  {}",
                r.diagram,
                e.facet,
                e.neighbor,
                e.cosh2.to_string(),
                if e.equality { "=" } else { "" }
            );
        }
    }
    let max = reports.iter().map(|r| r.max).max();
    let eq: usize = reports.iter().map(|r| r.equality_count).sum();
    if let Some(max) = max {
        let _ = writeln!(s, "max cosh² = {max} (distance {:.6}), equalities: {eq}", max.distance());
    }
    s
}

fn run_command(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Catalog => {
            let mut text = String::new();
            for d in catalog() {
                let _ = writeln!(text, "{d}");
            }
            Ok(Output { text, json: json!(catalog()) })
        }
        Command::Classify(a) => {
            let d = resolve_diagram(a)?;
            let ty = d.classify()?;
            let sig = d.inertia();
            let hyp = d.is_hyperbolic();
            let name = catalog().iter().find(|c| c.is_isomorphic(&d)).map(|c| c.label());
            let text = format!(
                "{d}\ntype: {ty}\nhyperbolic: {hyp}\nsignature: ({}, {}, {})\ncatalog: {}\n",
                sig.positive,
                sig.negative,
                sig.null,
                name.as_deref().unwrap_or("-")
            );
            let json = json!({
                "diagram": diagram_json(&d),
                "type": ty,
                "hyperbolic": hyp,
                "signature": sig,
                "catalog_match": name,
            });
            Ok(Output { text, json })
        }
        Command::Enumerate { rank } => {
            let found = diagram::enumerate_hyperbolic(*rank, Execution::default())?;
            let mut text = String::new();
            let mut entries = Vec::new();
            for d in &found {
                let name = catalog().iter().find(|c| c.is_isomorphic(d)).map(|c| c.label());
                let _ = writeln!(text, "{d}  [{}]", name.as_deref().unwrap_or("-"));
                entries.push(json!({"diagram": diagram_json(d), "catalog_match": name}));
            }
            let _ = writeln!(text, "{} diagram(s)", found.len());
            Ok(Output { text, json: json!({"rank": rank, "count": found.len(), "diagrams": entries}) })
        }
        Command::Roots { diagram, height } => {
            let d = resolve_diagram(diagram)?;
            let l = RootLattice::new(&d);
            let roots = l.real_roots_up_to_height(*height);
            let mut text = String::new();
            for r in &roots {
                let _ = writeln!(text, "{:>4}  {r}", r.height());
            }
            let _ = writeln!(text, "{} real root(s) of height ≤ {height}", roots.len());
            Ok(Output {
                text,
                json: json!({"diagram": d.label(), "height": height, "count": roots.len(), "roots": roots}),
            })
        }
        Command::FacetCheck { diagram, all } => {
            let reports = if *all {
                geometry::facet_check_catalog(Execution::default())?
            } else {
                vec![geometry::facet_check(&resolve_diagram(diagram)?)?]
            };
            Ok(Output { text: facet_table(&reports), json: json!(reports) })
        }
        Command::Prenilpotent { pair, bound } => {
            let d = resolve_diagram(&pair.diagram)?;
            let l = RootLattice::new(&d);
            let a = LatticeVector::parse(&pair.alpha)?;
            let b = LatticeVector::parse(&pair.beta)?;
            let criterion = pairs::criterion_verdict(&l, &a, &b)?;
            let k = l.inner(&a, &b);
            let oracle = (*bound > 0).then(|| pairs::oracle_weyl(&l, &a, &b, *bound));
            if let Some(o) = &oracle {
                if let (Some(x), Some(y)) = (o.answer(), criterion.answer()) {
                    if x != y {
                        return Err(Failure::Invariant {
                            message: format!("criterion and Weyl search disagree for {a}, {b}"),
                            output: None,
                        });
                    }
                }
            }
            let span = (k >= -1).then(|| pairs::roots_in_nonneg_span(&l, &a, &b, 1));
            let mut text = format!("α·β = {k}\ncriterion: {:?}\n", criterion.verdict);
            if let Some(o) = &oracle {
                let _ = writeln!(text, "weyl search (L = {bound}): {:?}", o.verdict);
            }
            if let Some(Ok(s)) = &span {
                let list: Vec<String> = s.roots.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(text, "roots in the nonnegative span: {}", list.join(" "));
            }
            let json = json!({
                "diagram": d.label(),
                "alpha": a,
                "beta": b,
                "inner_product": k,
                "criterion": criterion,
                "weyl_search": oracle,
                "nonneg_span": span.and_then(|s| s.ok()),
            });
            Ok(Output { text, json })
        }
        Command::Reduce { pair } => {
            let d = resolve_diagram(&pair.diagram)?;
            let l = RootLattice::new(&d);
            let a = LatticeVector::parse(&pair.alpha)?;
            let b = LatticeVector::parse(&pair.beta)?;
            let cert = pairs::reduce_to_certificate(&l, &a, &b)?;
            let json = json!(cert);
            if let Err(v) = pairs::verify_certificate(&l, &cert) {
                return Err(Failure::Invariant {
                    message: format!("certificate check failed at {v}"),
                    output: Some((cert.render_tree(), json)),
                });
            }
            Ok(Output { text: cert.render_tree(), json })
        }
        Command::Emit { diagram, ring, kac_moody, node, format, both_orders } => {
            let d = resolve_diagram(diagram)?;
            let r = RingSpec::parse(ring)?;
            let fmt: Format = format.parse()?;
            let opts = EmitOptions {
                pair_order: if *both_orders { PairOrder::Both } else { PairOrder::Canonical },
                ..Default::default()
            };
            let p = if *kac_moody {
                presentation::kac_moody_presentation_with(&d, &r, *node, opts)?
            } else {
                presentation::steinberg_presentation_with(&d, &r, opts)?
            };
            if !presentation::check_locality(&p) {
                return Err(Failure::Invariant { message: "relation touches three nodes".into(), output: None });
            }
            let json: Value = serde_json::from_str(&p.to_json()).expect("valid json");
            Ok(Output { text: p.serialize(fmt), json })
        }
        Command::VerifyMatrix { diagram, ring, bound, flipped } => {
            let d = resolve_diagram(diagram)?;
            let r = RingSpec::parse(ring)?;
            let opts = VerifyOptions {
                window: *bound,
                convention: if *flipped { Convention::Flipped } else { Convention::Standard },
                exec: Execution::default(),
            };
            let rep = matrixcheck::verify_all_with(&d, &r, opts)?;
            let mut text = format!("{} over {}: {}/{} relations hold\n", rep.diagram, rep.ring, rep.passed, rep.instances);
            if let Some(b) = rep.window {
                let _ = writeln!(text, "windowed: parameters in [-{b}, {b}]");
            }
            for s in &rep.schemas {
                let _ = writeln!(text, "  {:<20} {:>6}/{:<6}", s.schema.tag(), s.passed, s.instances);
                for f in &s.failed {
                    let _ = writeln!(text, "    fails: {f}");
                }
            }
            let json = json!(rep);
            if !rep.all_passed() {
                return Err(Failure::Invariant {
                    message: format!("{} relation instance(s) fail", rep.failures()),
                    output: Some((text, json)),
                });
            }
            Ok(Output { text, json })
        }
        Command::PqFormula { k, m } => {
            let c = geometry::pq_cosh2(*k, *m)?;
            let direct = geometry::pq_cosh2_direct(*k, *m)?;
            let text = format!("cosh² = {c} ≈ {:.6}\ndistance = {:.6}\ndirect = {direct}\n", num_f64(&c), c.distance());
            let json = json!({"k": k, "m": m, "cosh2": c, "direct": direct, "distance": c.distance()});
            Ok(Output { text, json })
        }
    }
}

fn num_f64(c: &geometry::Cosh2) -> f64 {
    kmx_core::rational::to_f64(&c.value())
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn emit(json_mode: bool, out: &Option<PathBuf>, text: &str, json: &Value, stdout: &mut dyn Write) -> std::io::Result<()> {
    let body = if json_mode {
        serde_json::to_string_pretty(json).expect("json renders") + "\n"
    } else if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match out {
        Some(path) => std::fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    if let Some(n) = std::env::var("KMX_THREADS").ok().and_then(|v| v.parse().ok()) {
        par::configure_threads(n);
    }
    let result = run_command(&cli.command);
    let io = |r: std::io::Result<()>, stderr: &mut dyn Write| {
        if let Err(e) = r {
            let _ = writeln!(stderr, "error: {e}");
            return false;
        }
        true
    };
    match result {
        Ok(o) => {
            if io(emit(cli.json, &cli.out, &o.text, &o.json, stdout), stderr) {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            }
        }
        Err(Failure::Domain(e)) => {
            if cli.json {
                let v = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("json renders"));
            }
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Invariant { message, output }) => {
            if let Some((text, json)) = output {
                io(emit(cli.json, &cli.out, &text, &json, stdout), stderr);
            } else if cli.json {
                let v = json!({"error": {"kind": "InvariantViolation", "message": message}});
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("json renders"));
            }
            let _ = writeln!(stderr, "invariant violation: {message}");
            EXIT_INVARIANT
        }
    }
}
