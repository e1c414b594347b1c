use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclotrace_core::free_trace::{FreeTraceElement, GeneralFreeTraceElement};
use cyclotrace_core::intervals::ConfigFile;
use cyclotrace_core::loops::pl::LoopJson;
use cyclotrace_core::loops::{c1_action, j1_trace, PlSpace};
use cyclotrace_core::operad::{trial_rng, AxiomReport};
use cyclotrace_core::polytopes::{
    compose_k, compose_w, enumerate_faces_k, enumerate_faces_w, euler_characteristic, f_vector, Face, FaceJson,
};
use cyclotrace_core::suites::{
    diagram_report, loop_basepoint, random_loops, run_suite, FVectorRow, Suite, SuiteConfig, SuiteOutcome, EVAL_POINTS,
};
use cyclotrace_core::{CircleConfig, PlLoop};

use crate::emit::{loop_csv, parse_csv, suspension_csv, svg_from_rows};
use crate::eval::{evaluate, Bindings, Value};
use crate::term::parse;

#[derive(Debug, Parser)]
#[command(name = "cyclotrace", version, about = "Little intervals, cyclohedra and traces on free loop spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the f-vector and Euler characteristic of K_n or W_n.
    Fvector {
        family: Family,
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// List every face of K_n or W_n.
    Faces {
        family: Family,
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compose two faces (W∘K or K∘K) at a position.
    ComposeFace {
        /// Face JSON, inline or a path.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        at: usize,
    },
    /// Act on loops with a configuration.
    #[command(subcommand)]
    Trace(TraceCommand),
    /// Loop file conversions.
    #[command(subcommand)]
    Loop(LoopCommand),
    /// Free trace elements.
    #[command(subcommand)]
    Freetrace(FreetraceCommand),
    /// Run a verification suite.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Override every per-instance tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an operadic term.
    Eval {
        expr: String,
        /// `name=path` to a JSON configuration, face or loop.
        #[arg(long = "bind", value_name = "NAME=PATH")]
        bind: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "W", alias = "w")]
    W,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
}

#[derive(Debug, Subcommand)]
enum TraceCommand {
    /// Glue loops into the arcs (circle) or intervals (unit) of a configuration.
    Eval {
        #[arg(long)]
        module: PathBuf,
        /// JSON array of based loops.
        #[arg(long)]
        loops: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace random loops through a random circle configuration.
    Random {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum LoopCommand {
    /// Draw a loop CSV as SVG.
    Svg { input: PathBuf, output: PathBuf },
    /// Convert loop JSON to CSV.
    Csv {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum FreetraceCommand {
    /// Print the normal form.
    Normalize { input: PathBuf },
    /// Decide equality in the quotient; exits 1 when unequal.
    Equal {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Cohen's loop in the suspension, as CSV.
    H {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the approximation square on random elements.
    Diagram {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

/// Whether the command's checks held.
enum Verdict {
    Pass,
    Fail,
}

pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("invalid JSON in {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes()).context("cannot write to stdout")?;
            Ok(())
        }
    }
}

fn face_arg(arg: &str) -> Result<Face> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read(Path::new(arg))? };
    let j: FaceJson = serde_json::from_str(&text).context("invalid face JSON")?;
    Ok(Face::try_from(j)?)
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}

fn faces_of(family: Family, n: usize) -> Result<Vec<Face>> {
    Ok(match family {
        Family::K => enumerate_faces_k(n)?.into_iter().map(Face::K).collect(),
        Family::W => enumerate_faces_w(n)?.into_iter().map(Face::W).collect(),
    })
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::K => "K",
        Family::W => "W",
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Fvector { family, n, json } => {
            let faces = faces_of(family, n)?;
            let f = f_vector(faces.iter().map(Face::dimension));
            let chi = euler_characteristic(&f);
            let name = family_name(family);
            if json {
                let row = FVectorRow { polytope: name.into(), n, f_vector: f, euler_characteristic: chi };
                println!("{}", serde_json::to_string_pretty(&row)?);
            } else {
                println!("{name}{n}: f = {}, euler characteristic = {chi}", tuple(&f));
            }
        }
        Command::Faces { family, n, json } => {
            let faces = faces_of(family, n)?;
            if json {
                let all: Vec<FaceJson> = faces.iter().map(FaceJson::from).collect();
                println!("{}", serde_json::to_string_pretty(&all)?);
            } else {
                for f in &faces {
                    println!("{}  dim {}", f, f.dimension());
                }
            }
        }
        Command::ComposeFace { left, right, at } => {
            let (l, r) = (face_arg(&left)?, face_arg(&right)?);
            let out = match (&l, &r) {
                (Face::K(x), Face::K(y)) => Face::K(compose_k(x, y, at)?),
                (Face::W(m), Face::K(y)) => Face::W(compose_w(m, y, at)?),
                _ => bail!("only K∘K and W∘K compositions exist"),
            };
            println!("{}", serde_json::to_string(&FaceJson::from(&out))?);
        }
        Command::Trace(TraceCommand::Eval { module, loops, out }) => {
            let config: ConfigFile = read_json(&module)?;
            let raw: Vec<LoopJson> = read_json(&loops)?;
            let ls = raw.iter().map(PlLoop::from_json).collect::<Result<Vec<_>, _>>()?;
            let b = ls.first().map(|l| l.basepoint().to_vec()).ok_or_else(|| anyhow!("need at least one loop"))?;
            let space = PlSpace::new(b);
            let result = match config {
                ConfigFile::Circle(d) => j1_trace(&space, &d, &ls)?,
                ConfigFile::Unit(c) => c1_action(&space, &c, &ls)?,
            };
            write_or_print(out.as_deref(), &loop_csv(&result))?;
        }
        Command::Trace(TraceCommand::Random { seed, arity, out }) => {
            let mut rng = trial_rng(seed, 0);
            let d = CircleConfig::random(&mut rng, arity);
            let ls = random_loops(&mut rng, arity);
            let result = j1_trace(&PlSpace::new(loop_basepoint()), &d, &ls)?;
            write_or_print(out.as_deref(), &loop_csv(&result))?;
        }
        Command::Loop(LoopCommand::Svg { input, output }) => {
            let rows = parse_csv(&read(&input)?).map_err(|e| anyhow!("{}: {e}", input.display()))?;
            let svg = svg_from_rows(&rows).map_err(|e| anyhow!("{}: {e}", input.display()))?;
            write_or_print(Some(&output), &svg)?;
        }
        Command::Loop(LoopCommand::Csv { input, out }) => {
            let l = PlLoop::from_json(&read_json(&input)?)?;
            write_or_print(out.as_deref(), &loop_csv(&l))?;
        }
        Command::Freetrace(FreetraceCommand::Normalize { input }) => {
            let e: FreeTraceElement = read_json(&input)?;
            println!("{}", serde_json::to_string_pretty(&e.normalize())?);
        }
        Command::Freetrace(FreetraceCommand::Equal { a, b, tol }) => {
            let (x, y): (FreeTraceElement, FreeTraceElement) = (read_json(&a)?, read_json(&b)?);
            if x.x != y.x {
                bail!("the elements live over different pointed sets");
            }
            let same = x.equals(&y, tol);
            println!("{}", if same { "equal" } else { "not equal" });
            return Ok(if same { Verdict::Pass } else { Verdict::Fail });
        }
        Command::Freetrace(FreetraceCommand::H { input, out }) => {
            let text = read(&input)?;
            let e: FreeTraceElement = match serde_json::from_str(&text) {
                Ok(e) => e,
                Err(_) => {
                    let g: GeneralFreeTraceElement = serde_json::from_str(&text)
                        .with_context(|| format!("invalid element in {}", input.display()))?;
                    g.flatten()?
                }
            };
            write_or_print(out.as_deref(), &suspension_csv(&e.cohen_h()))?;
        }
        Command::Freetrace(FreetraceCommand::Diagram { run, tol, json }) => {
            let report = diagram_report(run.seed, run.trials, tol, EVAL_POINTS)?;
            let passed = report.passed();
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report_text(&report));
            }
            return Ok(if passed { Verdict::Pass } else { Verdict::Fail });
        }
        Command::Check { suite, run, tol, out, json } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig { seed: run.seed, trials: run.trials, tol };
            let outcome = run_suite(suite, &cfg)?;
            let encoded = serde_json::to_string_pretty(&outcome)?;
            if let Some(p) = &out {
                fs::write(p, format!("{encoded}\n")).with_context(|| format!("cannot write {}", p.display()))?;
            }
            if json {
                println!("{encoded}");
            } else {
                print!("{}", outcome_text(&outcome));
            }
            return Ok(if outcome.passed { Verdict::Pass } else { Verdict::Fail });
        }
        Command::Eval { expr, bind } => {
            let mut bindings = Bindings::new();
            for b in &bind {
                let (name, path) = b.split_once('=').ok_or_else(|| anyhow!("--bind expects NAME=PATH, got `{b}`"))?;
                let json: serde_json::Value = read_json(Path::new(path))?;
                let v = Value::from_json(&json).map_err(|e| anyhow!("{path}: {e}"))?;
                bindings.insert(name.to_string(), v);
            }
            let term = parse(&expr)?;
            let value = evaluate(&expr, &term, &bindings)?;
            println!("{value}");
        }
    }
    Ok(Verdict::Pass)
}

fn report_text(r: &AxiomReport) -> String {
    let mut s = format!(
        "{}  {}  [{} checks, max residual {:.3e}]\n",
        if r.passed() { "PASS" } else { "FAIL" },
        r.instance,
        r.records.len(),
        r.max_residual()
    );
    for a in r.summary() {
        s += &format!(
            "      {:<34} checked {:>5}  failures {:>4}  max residual {:.3e}\n",
            a.axiom, a.checked, a.failures, a.max_residual
        );
    }
    for f in r.failures().take(3) {
        s += &format!(
            "      first failures: {} arities {:?} seed {} trial {}{}\n",
            f.axiom,
            f.arities,
            f.seed,
            f.trial,
            f.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
        );
    }
    s
}

fn outcome_text(o: &SuiteOutcome) -> String {
    let mut s = format!("suite {} (seed {}, trials {})\n", o.suite, o.seed, o.trials);
    for r in &o.reports {
        s += &report_text(r);
    }
    if !o.f_vectors.is_empty() {
        s += "f-vectors:\n";
        for row in &o.f_vectors {
            s += &format!(
                "  {}{}  {}  euler characteristic {}\n",
                row.polytope,
                row.n,
                tuple(&row.f_vector),
                row.euler_characteristic
            );
        }
    }
    s += &format!("result: {}\n", if o.passed { "PASS" } else { "FAIL" });
    s
}
