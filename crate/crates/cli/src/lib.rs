//! `pcm` command-line front end.
//!
//! Exit status: 0 when the command completed, 1 on usage, input or domain
//! errors, 2 when the fast and recursive classifications disagree.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pcm_core::classifier::{self, NamedComplex};
use pcm_core::generators::{self, GeneratorSpec, Instance};
use pcm_core::poset::{parse_hasse, write_hasse};
use pcm_core::simplicial::{parse_facets, write_facets};
use pcm_core::{Classification, Error, Poset, Recognizer, SimplicialComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pcm", version, about = "Discrete surfaces, PCMs and normal pseudomanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an instance as surface, PCM or neither.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Evaluation path; defaults to fast for facet lists, recursive for Hasse input.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        json: bool,
    },
    /// Print the border as a Hasse diagram with a component report.
    Border {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run a single recognizer.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        which: CheckKind,
        #[arg(long)]
        json: bool,
    },
    /// Generate a named instance.
    Gen {
        /// simplex, sphere, disk, annulus, pinched-sphere, pinched-box, khalimsky, random-pure
        name: String,
        params: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Time the fast and recursive paths over spheres and the generator corpus.
    Bench {
        /// Largest sphere dimension.
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Number of random pure complexes added to the corpus.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for facet files of disagreeing instances.
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, `-` or absent for stdin.
    file: Option<PathBuf>,
    /// Input format; detected from the content when absent.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CheckKind {
    #[arg(long)]
    surface: bool,
    #[arg(long)]
    pcm: bool,
    #[arg(long)]
    smooth: bool,
    #[arg(long)]
    pseudomanifold: bool,
    #[arg(long)]
    normal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Facets,
    Hasse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fast,
    Recursive,
    Both,
}

enum Loaded {
    Complex(SimplicialComplex),
    Poset(Poset),
}

impl Loaded {
    fn poset(&self) -> Poset {
        match self {
            Loaded::Complex(k) => k.face_poset(),
            Loaded::Poset(p) => p.clone(),
        }
    }
}

/// Instance metadata included in every report.
#[derive(Debug, Serialize)]
pub struct InstanceInfo {
    pub format: &'static str,
    pub faces: usize,
    pub faces_per_rank: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
}

/// JSON report of `classify` and `check`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance: InstanceInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckResult>,
    pub timings: Timing,
    pub exit_status: i32,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub recognizer: &'static str,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub parse_ms: f64,
    pub run_ms: f64,
}

enum Failure {
    Usage(String),
    Domain(String),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement { .. } => Failure::Disagreement(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Entry point shared by the binary and the tests.
pub fn run(argv: &[String], stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let result = match cli.command {
        Command::Classify { input, mode, json } => classify(&command, &input, mode, json, stdin, out),
        Command::Border { input } => border(&input, stdin, out),
        Command::Check { input, which, json } => check(&command, &input, &which, json, stdin, out),
        Command::Gen { name, params, output, format } => gen(&name, &params, output, format, out),
        Command::Bench { max_n, random, seed, dump_dir, json } => {
            bench(max_n, random, seed, &dump_dir, json, out)
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) | Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_ERROR
        }
        Err(Failure::Disagreement(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DISAGREEMENT
        }
    }
}

fn read_input(input: &InputArgs, stdin: &mut dyn Read) -> std::result::Result<(Loaded, f64), Failure> {
    let text = match &input.file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let t = Instant::now();
    let format = input.format.unwrap_or_else(|| detect_format(&text));
    let loaded = match format {
        Format::Facets => Loaded::Complex(parse_facets(&text)?),
        Format::Hasse => Loaded::Poset(parse_hasse(&text)?),
    };
    Ok((loaded, ms(t)))
}

/// Hasse files consist of `f` and `rank` records; anything else is a facet list.
fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with("f ") || l == "f" || l.starts_with("rank") => Format::Hasse,
        _ => Format::Facets,
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn info(loaded: &Loaded) -> InstanceInfo {
    match loaded {
        Loaded::Complex(k) => InstanceInfo {
            format: "facets",
            faces: k.len(),
            faces_per_rank: k.f_vector(),
            vertices: Some(k.vertices().len()),
        },
        Loaded::Poset(p) => InstanceInfo {
            format: "hasse",
            faces: p.len(),
            faces_per_rank: p.rank_profile(),
            vertices: None,
        },
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> CmdResult {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Domain(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn classify(
    command: &[String],
    input: &InputArgs,
    mode: Option<Mode>,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> CmdResult {
    let (loaded, parse_ms) = read_input(input, stdin)?;
    let t = Instant::now();
    let name = input
        .file
        .as_ref()
        .map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string());
    let c = match (&loaded, mode) {
        (Loaded::Complex(k), None | Some(Mode::Fast)) => classifier::classify_fast(k),
        (Loaded::Complex(k), Some(Mode::Recursive)) => classifier::classify_recursive(k),
        (Loaded::Complex(k), Some(Mode::Both)) => classifier::classify_both(&name, k)?,
        (Loaded::Poset(p), None | Some(Mode::Recursive)) => classifier::classify_recursive_poset(p),
        (Loaded::Poset(_), Some(_)) => {
            return Err(Failure::Domain(
                "the fast path needs a simplicial complex; use --mode recursive for Hasse input".into(),
            ))
        }
    };
    let run_ms = ms(t);
    if json {
        let report = RunReport {
            command: command.to_vec(),
            instance: info(&loaded),
            classification: Some(c),
            check: None,
            timings: Timing { parse_ms, run_ms },
            exit_status: EXIT_OK,
        };
        return json_line(out, &report);
    }
    let i = info(&loaded);
    writeln!(out, "faces: {} {:?}", i.faces, i.faces_per_rank)?;
    writeln!(out, "rank: {}", c.rank)?;
    writeln!(out, "verdict: {}", c.verdict())?;
    writeln!(out, "surface: {}", c.is_surface)?;
    writeln!(out, "pcm: {}", c.is_pcm)?;
    writeln!(out, "smooth-pcm: {}", c.is_smooth_pcm)?;
    if let Some(b) = c.is_pseudomanifold {
        writeln!(out, "pseudomanifold: {b}")?;
    }
    if let Some(b) = c.is_normal_pseudomanifold {
        writeln!(out, "normal-pseudomanifold: {b}")?;
    }
    if let Some(b) = c.border_empty {
        writeln!(out, "border-empty: {b}")?;
    }
    if let Some(n) = c.border_face_count {
        writeln!(out, "border-faces: {n}")?;
    }
    if let Some(b) = c.condition_c {
        writeln!(out, "condition-c: {b}")?;
    }
    writeln!(out, "path: {}", c.path)?;
    writeln!(out, "time-ms: {run_ms:.3}")?;
    Ok(())
}

fn border(input: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let (loaded, _) = read_input(input, stdin)?;
    let p = loaded.poset();
    let rec = Recognizer::from_env();
    let view = p.view();
    let decomposition = rec.border(&view)?;
    let (bp, _) = view.restrict(&decomposition.border_faces).to_poset();
    write!(out, "{}", write_hasse(&bp))?;
    writeln!(out, "# border faces: {}", decomposition.border_len())?;
    writeln!(out, "# components: {}", decomposition.components.len())?;
    for (i, (faces, verdict)) in decomposition.components.iter().enumerate() {
        let kind = match verdict.rank_if_surface {
            Some(k) => format!("{k}-surface"),
            None => "not a surface".to_string(),
        };
        writeln!(out, "# component {i}: {} faces, {kind}", faces.count_ones(..))?;
    }
    Ok(())
}

fn check(
    command: &[String],
    input: &InputArgs,
    which: &CheckKind,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> CmdResult {
    let (loaded, parse_ms) = read_input(input, stdin)?;
    let t = Instant::now();
    let complex = |what: &str| match &loaded {
        Loaded::Complex(k) => Ok(k),
        Loaded::Poset(_) => Err(Failure::Domain(format!("--{what} needs a facet list"))),
    };
    let (recognizer, holds) = if which.pseudomanifold {
        ("pseudomanifold", complex("pseudomanifold")?.is_pseudomanifold())
    } else if which.normal {
        ("normal-pseudomanifold", complex("normal")?.is_normal_pseudomanifold())
    } else {
        let p = loaded.poset();
        let rec = Recognizer::from_env();
        let view = p.view();
        if which.surface {
            ("surface", rec.surface_rank(&view).is_some())
        } else if which.pcm {
            ("pcm", rec.pcm_rank(&view).is_some())
        } else {
            ("smooth-pcm", rec.smooth_pcm_rank(&view).is_some())
        }
    };
    let run_ms = ms(t);
    if json {
        let report = RunReport {
            command: command.to_vec(),
            instance: info(&loaded),
            classification: None,
            check: Some(CheckResult { recognizer, holds }),
            timings: Timing { parse_ms, run_ms },
            exit_status: EXIT_OK,
        };
        return json_line(out, &report);
    }
    writeln!(out, "{recognizer}: {holds}")?;
    Ok(())
}

fn gen(
    name: &str,
    params: &[u64],
    output: Option<PathBuf>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> CmdResult {
    let spec = GeneratorSpec::parse(name, params)?;
    let instance = spec.generate()?;
    let text = match (&instance, format) {
        (Instance::Complex(k), None | Some(Format::Facets)) => write_facets(k),
        (Instance::Complex(k), Some(Format::Hasse)) => write_hasse(&k.face_poset()),
        (Instance::Poset(p), None | Some(Format::Hasse)) => write_hasse(p),
        (Instance::Poset(_), Some(Format::Facets)) => {
            return Err(Failure::Usage(format!("`{name}` produces a poset; use --format hasse")))
        }
    };
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchReport {
    entries: Vec<classifier::CrossCheckEntry>,
    mix: classifier::InstanceMix,
}

fn bench(max_n: u32, random: usize, seed: u64, dump_dir: &std::path::Path, json: bool, out: &mut dyn Write) -> CmdResult {
    if max_n > 6 {
        return Err(Failure::Usage(format!("--max-n {max_n}: need max-n ≤ 6")));
    }
    let mut corpus: Vec<NamedComplex> = (1..=max_n)
        .map(|n| NamedComplex { name: format!("sphere {n}"), complex: generators::sphere(n) })
        .collect();
    corpus.extend(classifier::generator_corpus());
    corpus.extend(classifier::random_corpus(random, seed));
    let report = classifier::cross_check(&corpus, dump_dir)?;
    if json {
        return json_line(out, &BenchReport { entries: report.entries, mix: report.mix });
    }
    writeln!(
        out,
        "{:<28} {:>6} {:>5} {:<10} {:>10} {:>13} {:>8}",
        "instance", "faces", "rank", "verdict", "fast ms", "recursive ms", "speedup"
    )?;
    for e in &report.entries {
        writeln!(
            out,
            "{:<28} {:>6} {:>5} {:<10} {:>10.3} {:>13.3} {:>7.1}x",
            e.name,
            e.faces,
            e.rank,
            e.verdict.to_string(),
            e.fast_ms,
            e.recursive_ms,
            e.speedup()
        )?;
    }
    let m = &report.mix;
    writeln!(
        out,
        "# {} instances, 0 disagreements: {} surfaces, {} pcms ({} smooth), {} neither; {} pseudomanifolds, {} normal",
        m.total, m.surfaces, m.pcms, m.smooth_pcms, m.neither, m.pseudomanifolds, m.normal_pseudomanifolds
    )?;
    Ok(())
}
