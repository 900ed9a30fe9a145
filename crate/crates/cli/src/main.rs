use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sepstab::group::{cyclic_reduce, GroupSpec, Word};
use sepstab::ingest::{emit_rep, gallery, parse_rep, RepFile, SchottkyFamily, GALLERY_NAMES};
use sepstab::separability::{is_separable, Omitted, SeparabilityVerdict};
use sepstab::stability::{
    ping_pong_verify, stability_margin, sweep, write_sweep_csv, RepFamily, StabilityParams,
};
use sepstab::whitehead::{
    is_certificate, is_strongly_connected, strong_cutpoints, to_dot, whitehead_graph_combinatorial,
    whitehead_graph_sampled, AxisSampler, WhiteheadError, WhiteheadGraph,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Separability and separable-stability experiments for free products of
/// surface groups.
#[derive(Parser, Debug)]
#[command(name = "sepstab", version)]
struct Cli {
    /// Seed for sampled randomness. Every current command is deterministic
    /// without it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a word lies in a proper free factor (exit 0 separable,
    /// 1 not separable, 2 unknown).
    Separable {
        word: String,
        #[arg(long, default_value = "F2")]
        group: String,
    },
    /// Whitehead graph of a word over the standard meridians.
    Whitehead {
        word: String,
        #[arg(long, default_value = "F2")]
        group: String,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Build the graph from sampled limit-set geometry of this
        /// representation instead (file or gallery name).
        #[arg(long)]
        rep: Option<String>,
        /// Conjugator length for the sampled construction.
        #[arg(long, default_value_t = 3)]
        sample_depth: usize,
    },
    /// Depth-bounded separable-stability check (exit 0 Pass, 1 Fail,
    /// 2 Inconclusive).
    CheckStability {
        /// Representation file or gallery name.
        rep: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Write per-element measurements as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Stability over a one-parameter family, one CSV row per grid point.
    Sweep {
        #[arg(long, default_value = "schottky")]
        family: String,
        #[arg(long, default_value_t = 2.0)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[command(flatten)]
        params: ParamArgs,
        /// Output file; standard output when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the built-in representations.
    Examples {
        /// Write each one as `<name>.rep` into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Largest cyclic length (default 8 for free groups, 5 otherwise).
    #[arg(long)]
    depth: Option<usize>,
    /// Powers of each element traced.
    #[arg(long)]
    powers: Option<usize>,
    /// Window of the quasi-geodesic fit.
    #[arg(long)]
    window: Option<usize>,
    /// Threshold on translation length per letter.
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    k_max: Option<f64>,
    #[arg(long)]
    a_max: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self, group: &GroupSpec) -> StabilityParams {
        let d = StabilityParams::for_group(group);
        StabilityParams {
            depth: self.depth.unwrap_or(d.depth),
            powers: self.powers.unwrap_or(d.powers),
            window: self.window.unwrap_or(d.window),
            margin: self.margin.unwrap_or(d.margin),
            k_max: self.k_max.unwrap_or(d.k_max),
            a_max: self.a_max.unwrap_or(d.a_max),
            basepoint: d.basepoint,
        }
    }
}

/// A failure with its exit code.
struct Failure(u8, String);

fn data<E: std::fmt::Display>(e: E) -> Failure {
    Failure(EXIT_DATA, e.to_string())
}

fn load_rep(arg: &str) -> Result<RepFile, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| data(format!("{arg}: {e}")))?;
        return parse_rep(&text).map_err(|e| data(format!("{arg}: {e}")));
    }
    gallery(arg)
        .map(RepFile::from)
        .ok_or_else(|| data(format!("`{arg}` is neither a file nor a gallery name ({})", GALLERY_NAMES.join(", "))))
}

fn parse_input(group: &str, word: &str) -> Result<(GroupSpec, Word), Failure> {
    let g: GroupSpec = group.parse().map_err(data)?;
    let w = g.parse_word(word).map_err(data)?;
    Ok((g, w))
}

fn separable(group: &str, word: &str) -> Result<u8, Failure> {
    let (g, w) = parse_input(group, word)?;
    let verdict = is_separable(&w, &g).map_err(data)?;
    let (form, _) = cyclic_reduce(&g, &w).map_err(data)?;
    let mut out = String::new();
    let _ = writeln!(out, "group: {g}");
    let _ = writeln!(out, "cyclic form: {}", g.format_word(&form.to_word()));
    let _ = writeln!(out, "verdict: {}", verdict.label());
    match &verdict {
        SeparabilityVerdict::Separable(wit) => {
            let moves: Vec<String> = wit.moves.iter().map(|m| m.describe(&g)).collect();
            let _ = writeln!(out, "moves: {}", if moves.is_empty() { "none".to_string() } else { moves.join(" ") });
            let _ = writeln!(out, "image: {}", g.format_word(&wit.image));
            match wit.omitted {
                Omitted::Generator(i) => {
                    let name = g.letter_name(sepstab::group::Letter::new(i, false));
                    let _ = writeln!(out, "omits generator: {name}");
                }
                Omitted::Factor(f) => {
                    let _ = writeln!(out, "omits factor: {f}");
                }
            }
        }
        SeparabilityVerdict::NotSeparable(graph) => {
            let _ = writeln!(out, "certificate: strongly connected, no strong cutpoints");
            out.push_str(&graph.to_string());
        }
        SeparabilityVerdict::Unknown => {
            let _ = writeln!(out, "certificate: none either way");
        }
    }
    print!("{out}");
    Ok(verdict.exit_code() as u8)
}

fn describe_graph(graph: &WhiteheadGraph) -> String {
    let mut out = graph.to_string();
    for c in is_strongly_connected(graph) {
        let _ = writeln!(out, "component {}: strongly connected: {}", c.component, c.strongly_connected);
    }
    for c in strong_cutpoints(graph) {
        let names: Vec<String> = c.vertices.iter().map(|v| graph.vertex_name(*v)).collect();
        let _ = writeln!(out, "component {}: strong cutpoints: {{{}}}", c.component, names.join(", "));
    }
    let _ = writeln!(out, "certificate: {}", if is_certificate(graph) { "yes" } else { "no" });
    out
}

fn whitehead(
    group: &str,
    word: &str,
    dot: Option<&Path>,
    rep: Option<&str>,
    sample_depth: usize,
) -> Result<u8, Failure> {
    let graph = match rep {
        None => {
            let (g, w) = parse_input(group, word)?;
            let (form, _) = cyclic_reduce(&g, &w).map_err(data)?;
            whitehead_graph_combinatorial(&form, &g).map_err(data)?
        }
        Some(r) => {
            let file = load_rep(r)?;
            let g = file.rep.group().clone();
            let w = g.parse_word(word).map_err(data)?;
            let (form, _) = cyclic_reduce(&g, &w).map_err(data)?;
            let disks = file.disks.ok_or_else(|| data(WhiteheadError::UnverifiedDisks))?;
            let report = ping_pong_verify(&file.rep, &disks).map_err(data)?;
            let verified = report.into_certificate().ok_or_else(|| data(WhiteheadError::UnverifiedDisks))?;
            let axes = AxisSampler::new(&verified, sample_depth).sample(&form).map_err(data)?;
            whitehead_graph_sampled(&axes, &verified, sample_depth).map_err(data)?
        }
    };
    print!("{}", describe_graph(&graph));
    if let Some(path) = dot {
        fs::write(path, to_dot(&graph)).map_err(|e| data(format!("{}: {e}", path.display())))?;
    }
    Ok(0)
}

fn check_stability(rep: &str, args: &ParamArgs, csv: Option<&Path>) -> Result<u8, Failure> {
    let file = load_rep(rep)?;
    let params = args.resolve(file.rep.group());
    match &file.disks {
        None => println!("ping-pong: no disks"),
        Some(d) => {
            let report = ping_pong_verify(&file.rep, d).map_err(data)?;
            if report.is_verified() {
                println!("ping-pong: verified");
            } else {
                println!("ping-pong: failed ({})", report.failures.join("; "));
            }
        }
    }
    let report = stability_margin(&file.rep, &params).map_err(data)?;
    print!("{report}");
    if let Some(path) = csv {
        let f = fs::File::create(path).map_err(|e| data(format!("{}: {e}", path.display())))?;
        report.write_csv(f).map_err(data)?;
    }
    Ok(report.verdict.exit_code() as u8)
}

fn run_sweep(family: &str, from: f64, to: f64, step: f64, args: &ParamArgs, csv: Option<&Path>) -> Result<u8, Failure> {
    let fam: Box<dyn RepFamily> = match family {
        "schottky" => Box::new(SchottkyFamily),
        other => return Err(Failure(EXIT_USAGE, format!("unknown family `{other}` (known: schottky)"))),
    };
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() {
        return Err(Failure(EXIT_USAGE, "need finite bounds and a positive step".into()));
    }
    let count = if to < from { 0 } else { ((to - from) / step + 1e-9).floor() as usize + 1 };
    let grid: Vec<f64> = (0..count).map(|i| from + i as f64 * step).collect();
    let group = GroupSpec::free(2).map_err(data)?;
    let rows = sweep(fam.as_ref(), &grid, &args.resolve(&group));
    let mut buf = Vec::new();
    write_sweep_csv(fam.parameter(), &rows, &mut buf).map_err(data)?;
    match csv {
        Some(path) => fs::write(path, &buf).map_err(|e| data(format!("{}: {e}", path.display())))?,
        None => print!("{}", String::from_utf8_lossy(&buf)),
    }
    Ok(0)
}

fn examples(write: Option<&Path>) -> Result<u8, Failure> {
    for name in GALLERY_NAMES {
        let e = gallery(name).expect("listed name");
        let status = match &e.disks {
            None => "no disks".to_string(),
            Some(d) => match ping_pong_verify(&e.rep, d) {
                Ok(r) if r.is_verified() => "ping-pong verified".to_string(),
                Ok(_) => "ping-pong not verified".to_string(),
                Err(err) => err.to_string(),
            },
        };
        println!("{name}\t{}\t{status}", e.description);
        if let Some(dir) = write {
            fs::create_dir_all(dir).map_err(|e| data(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{name}.rep"));
            fs::write(&path, emit_rep(&RepFile::from(e))).map_err(|e| data(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Separable { word, group } => separable(group, word),
        Command::Whitehead { word, group, dot, rep, sample_depth } => {
            whitehead(group, word, dot.as_deref(), rep.as_deref(), *sample_depth)
        }
        Command::CheckStability { rep, params, csv } => check_stability(rep, params, csv.as_deref()),
        Command::Sweep { family, from, to, step, params, csv } => {
            run_sweep(family, *from, *to, *step, params, csv.as_deref())
        }
        Command::Examples { write } => examples(write.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
