use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use tdkern::calculus::{self, Prohibition};
use tdkern::gen::{self, GeneratorConfig};
use tdkern::io::{self, GraphData, GraphFile};
use tdkern::kernel::{self, PruneMode};
use tdkern::minor::{self, Folio};
use tdkern::{oracle, solver, treedepth};
use tdkern::{BoundariedGraph, Caps, ForbiddenFamily, Graph, Instance, LabeledGraph};

#[derive(Parser)]
#[command(name = "tdkern", version, about = "Kernelization and minor tools for F-Deletion with a treedepth modulator")]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CapArgs {
    #[arg(long, default_value_t = 512)]
    max_fragment_universe: usize,
    #[arg(long, default_value_t = 3)]
    max_subset_gamma: usize,
    #[arg(long, default_value_t = 16)]
    max_bruteforce_vertices: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_fragment_universe: self.max_fragment_universe,
            max_subset_gamma: self.max_subset_gamma,
            max_bruteforce_vertices: self.max_bruteforce_vertices,
            ..Caps::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an instance and write the kernel and a per-level report.
    Kernelize {
        #[arg(long = "in")]
        input: PathBuf,
        /// K2, K3, K5+K33, or a JSON file with an array of graphs.
        #[arg(long)]
        family: String,
        #[arg(long)]
        eta: usize,
        #[arg(long, default_value_t = 3)]
        gamma: usize,
        /// Remove components only after checking additivity of the optimum exactly.
        #[arg(long)]
        verified: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Minimum deletion set of a graph.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        family: String,
        /// List every minimum solution.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Compare optima of an instance and its kernel exhaustively.
    Verify {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, conflicts_with = "delta")]
        delta_from: Option<PathBuf>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        family: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Generate instances and gadgets.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Test whether one graph is a (labeled, boundaried) minor of another.
    Minor {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
    },
    /// Treedepth of a graph.
    Td {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Operations on boundaried labeled graphs.
    Algebra {
        #[command(subcommand)]
        op: AlgebraCommand,
    },
}

#[derive(Args, Clone)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    modulator_size: usize,
    #[arg(long, default_value_t = 4)]
    components: usize,
    #[arg(long, default_value_t = 1)]
    size_min: usize,
    #[arg(long, default_value_t = 3)]
    size_max: usize,
    #[arg(long, default_value_t = 2)]
    eta: usize,
    #[arg(long, default_value_t = 0.3)]
    p_modulator: f64,
    #[arg(long, default_value_t = 0.3)]
    p_cross: f64,
    #[arg(long, default_value_t = 0.5)]
    p_component: f64,
    #[arg(long)]
    k: Option<usize>,
}

impl RandomArgs {
    fn config(&self, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            seed,
            modulator_size: self.modulator_size,
            components: self.components,
            component_size_min: self.size_min,
            component_size_max: self.size_max,
            eta: self.eta,
            p_modulator: self.p_modulator,
            p_cross: self.p_cross,
            p_component: self.p_component,
            k: self.k,
        }
    }
}

#[derive(Subcommand)]
enum GenCommand {
    Random {
        #[command(flatten)]
        args: RandomArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Path of `t` triangles.
    Triangles {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Path of `t` triangles closed by one extra vertex.
    Clause {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Clause gadgets as components around a random modulator.
    Layout {
        #[arg(long)]
        n_mod: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        comps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Many random instances with consecutive seeds plus a manifest.
    Corpus {
        #[command(flatten)]
        args: RandomArgs,
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    Pcs {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Mpcs {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use the removal closure instead of piece subsets.
        #[arg(long)]
        by_removal: bool,
    },
    Ext {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        steps: u32,
    },
    MpcsPlus {
        /// JSON array of unboundaried graphs.
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        t: u32,
    },
    Folio {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
    },
    FolioStar {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        t: u32,
    },
    Oplus {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    Forget {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: u32,
    },
    Merge {
        #[arg(long)]
        pi1: PathBuf,
        #[arg(long)]
        pi2: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long)]
        t: u32,
    },
    Split {
        #[arg(long)]
        pi: PathBuf,
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        family: String,
    },
    Count {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: usize,
    },
    Saturated {
        /// JSON array of labeled graphs.
        #[arg(long)]
        q: PathBuf,
        /// Comma-separated label names.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        #[arg(long)]
        theta: usize,
    },
}

/// Marks a failed check so it maps to exit status 1.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<VerificationFailed>().is_some() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<tdkern::Error>() {
            if e.is_cap() {
                return 1;
            }
        }
    }
    2
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph_file(path: &Path) -> anyhow::Result<GraphFile> {
    Ok(io::from_json_str(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?)
}

fn read_graph_list(path: &Path) -> anyhow::Result<Vec<GraphFile>> {
    let v: Value = serde_json::from_str(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let items = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|g| serde_json::from_value(g).with_context(|| format!("parsing {}", path.display())))
        .collect()
}

fn family(spec: &str) -> anyhow::Result<ForbiddenFamily> {
    if let Ok(f) = ForbiddenFamily::from_preset(spec) {
        return Ok(f);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("family {spec:?} is neither a preset (K2, K3, K5+K33) nor a file");
    }
    let graphs = read_graph_list(path)?
        .iter()
        .map(|g| Ok(g.parse()?.graph.graph))
        .collect::<anyhow::Result<Vec<Graph>>>()?;
    Ok(ForbiddenFamily::new(graphs)?)
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serialisable")
}

fn graph_set(set: &Folio, names: Option<&[String]>) -> Value {
    Value::Array(
        set.graphs()
            .map(|g| serde_json::to_value(GraphFile::with_canonical(g, names)).expect("serialisable"))
            .collect(),
    )
}

fn graph_list(gs: &[BoundariedGraph], names: Option<&[String]>) -> Value {
    Value::Array(
        gs.iter()
            .map(|g| serde_json::to_value(GraphFile::with_canonical(g, names)).expect("serialisable"))
            .collect(),
    )
}

fn load_instance(path: &Path, eta: usize, caps: &Caps) -> anyhow::Result<Instance> {
    let file = read_graph_file(path)?;
    let d = file.parse()?;
    let k = d.k.ok_or_else(|| anyhow!("instance has no budget k"))?;
    let x = match d.modulator {
        Some(x) => x,
        None => kernel::find_modulator(&d.graph.graph, eta, caps)?,
    };
    Ok(Instance::new(d.graph.graph, x, k, eta)?)
}

/// Loads a graph with budget for verification, where no treedepth bound is needed.
fn load_budgeted(path: &Path) -> anyhow::Result<Instance> {
    let d = read_graph_file(path)?.parse()?;
    let k = d.k.ok_or_else(|| anyhow!("{} has no budget k", path.display()))?;
    let n = d.graph.n();
    Ok(Instance {
        graph: d.graph.graph,
        modulator: d.modulator.unwrap_or(0),
        k,
        eta: n,
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Kernelize {
            input,
            family: fam,
            eta,
            gamma,
            verified,
            out,
            report,
            caps,
        } => {
            let caps = caps.caps();
            let f = family(&fam)?;
            let inst = load_instance(&input, eta, &caps)?;
            let mode = if verified {
                PruneMode::Verified
            } else {
                PruneMode::Marking { gamma }
            };
            let (kern, rep) = kernel::kernelize(&inst, &f, mode, &caps)?;
            let kernel_json = to_json(&GraphFile::from_instance(&kern));
            let report_json = to_json(&rep);
            write_atomic(&out, &kernel_json)?;
            match report {
                Some(p) => write_atomic(&p, &report_json)?,
                None => println!("{report_json}"),
            }
        }
        Command::Solve {
            input,
            family: fam,
            all,
            caps,
        } => {
            let caps = caps.caps();
            let f = family(&fam)?;
            let g = read_graph_file(&input)?.parse()?.graph.graph;
            if all {
                let sols = solver::optsol_enum(&g, &f, &caps)?;
                let size = sols.first().map_or(0, |s| s.size());
                let lists: Vec<&Vec<usize>> = sols.iter().map(|s| &s.vertices).collect();
                println!("{}", to_json(&json!({"opt": size, "solutions": lists})));
            } else {
                let (size, y) = solver::opt_f(&g, &f, &caps)?;
                println!("{}", to_json(&json!({"opt": size, "solution": y.vertices})));
            }
        }
        Command::Verify {
            original,
            kernel: kpath,
            delta_from,
            delta,
            family: fam,
            caps,
        } => {
            let caps = caps.caps();
            let f = family(&fam)?;
            let orig = load_budgeted(&original)?;
            let kern = load_budgeted(&kpath)?;
            let (delta, decided) = match (delta_from, delta) {
                (Some(p), _) => {
                    let rep: Value = serde_json::from_str(&read_text(&p)?).context("parsing report")?;
                    let d = rep
                        .get("total_delta")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| anyhow!("report has no total_delta"))?;
                    let decided = rep.get("answer").and_then(Value::as_str) == Some("no");
                    (d as usize, decided)
                }
                (None, Some(d)) => (d, false),
                (None, None) => bail!("one of --delta-from or --delta is required"),
            };
            let report = if decided {
                oracle::verify_answer(&orig, &kern, &f, &caps)?
            } else {
                oracle::verify_kernel_equiv(&orig, &kern, delta, &f, &caps)?
            };
            println!("{}", to_json(&report));
            if !report.passed() {
                return Err(VerificationFailed.into());
            }
        }
        Command::Gen { what } => run_gen(what)?,
        Command::Minor { pattern, host } => {
            let (data, _) = io::parse_shared(&[read_graph_file(&pattern)?, read_graph_file(&host)?])?;
            let (h, g) = (&data[0].graph, &data[1].graph);
            let t = h.t.max(g.t);
            let m = minor::find_boundaried_labeled_minor_model(&h.widened(t), &g.widened(t))?;
            let out = match m {
                Some(m) => json!({
                    "minor": true,
                    "branch_sets": m.branch.iter().map(|&b| tdkern::graph::bits(b).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                None => json!({"minor": false}),
            };
            println!("{}", to_json(&out));
        }
        Command::Td { input } => {
            let g = read_graph_file(&input)?.parse()?.graph.graph;
            println!("{{\"treedepth\": {}}}", treedepth::treedepth_value(&g));
        }
        Command::Algebra { op } => run_algebra(op)?,
    }
    Ok(())
}

fn run_gen(what: GenCommand) -> anyhow::Result<()> {
    match what {
        GenCommand::Random { args, out } => {
            let inst = gen::random_modulated(&args.config(args.seed))?;
            write_atomic(&out, &to_json(&GraphFile::from_instance(&inst)))?;
        }
        GenCommand::Triangles { t, out } => {
            let g = gen::path_of_triangles(t)?;
            write_atomic(&out, &to_json(&GraphFile::from_boundaried(&g.into(), None)))?;
        }
        GenCommand::Clause { t, out } => {
            let g = gen::clause_gadget(t)?;
            write_atomic(&out, &to_json(&GraphFile::from_boundaried(&g.into(), None)))?;
        }
        GenCommand::Layout {
            n_mod,
            q,
            comps,
            seed,
            out,
        } => {
            let inst = gen::lowerbound_layout(n_mod, q, comps, seed)?;
            write_atomic(&out, &to_json(&GraphFile::from_instance(&inst)))?;
        }
        GenCommand::Corpus { args, count, dir } => {
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut entries = Vec::new();
            let mut files = Vec::new();
            for i in 0..count {
                let cfg = args.config(args.seed + i);
                let inst = gen::random_modulated(&cfg)?;
                let name = format!("instance-{:05}.json", cfg.seed);
                files.push((dir.join(&name), to_json(&GraphFile::from_instance(&inst))));
                entries.push(json!({"file": name, "config": cfg}));
            }
            for (p, s) in files {
                write_atomic(&p, &s)?;
            }
            write_atomic(&dir.join("manifest.json"), &to_json(&json!({"instances": entries})))?;
        }
    }
    Ok(())
}

fn single(path: &Path) -> anyhow::Result<GraphData> {
    Ok(read_graph_file(path)?.parse()?)
}

fn labeled_list(path: &Path) -> anyhow::Result<(Vec<LabeledGraph>, Vec<String>)> {
    let (data, names) = io::parse_shared(&read_graph_list(path)?)?;
    Ok((data.into_iter().map(|d| d.graph.labeled()).collect(), names))
}

fn prohibition(data: &[GraphData]) -> Prohibition {
    data.iter().map(|d| d.graph.clone()).collect()
}

fn run_algebra(op: AlgebraCommand) -> anyhow::Result<()> {
    let caps = Caps::default();
    let out = match op {
        AlgebraCommand::Pcs { input } => {
            let d = single(&input)?;
            graph_list(&calculus::pcs(&d.graph), Some(&d.label_names))
        }
        AlgebraCommand::Mpcs { input, by_removal } => {
            let d = single(&input)?;
            let set = if by_removal {
                calculus::mpcs_by_removal(&d.graph, &caps)?
            } else {
                calculus::mpcs(&d.graph, &caps)?
            };
            graph_set(&set, Some(&d.label_names))
        }
        AlgebraCommand::Ext { input, steps } => {
            let d = single(&input)?;
            graph_set(&calculus::ext_plus(&d.graph, steps, &caps)?, Some(&d.label_names))
        }
        AlgebraCommand::MpcsPlus { q, t } => {
            let (q, names) = labeled_list(&q)?;
            graph_set(&calculus::mpcs_plus(&q, t, &caps)?, Some(&names))
        }
        AlgebraCommand::Folio { input, max_vertices } => {
            let d = single(&input)?;
            graph_set(&minor::folio(&d.graph, max_vertices), Some(&d.label_names))
        }
        AlgebraCommand::FolioStar { input, q, t } => {
            let mut files = vec![read_graph_file(&input)?];
            files.extend(read_graph_list(&q)?);
            let (data, names) = io::parse_shared(&files)?;
            let qs: Vec<LabeledGraph> = data[1..].iter().map(|d| d.graph.labeled()).collect();
            graph_set(&minor::folio_star(&data[0].graph, &qs, t, &caps)?, Some(&names))
        }
        AlgebraCommand::Oplus { a, b } => {
            let (data, names) = io::parse_shared(&[read_graph_file(&a)?, read_graph_file(&b)?])?;
            let s = calculus::oplus(&data[0].graph, &data[1].graph)?;
            serde_json::to_value(GraphFile::with_canonical(&s, Some(&names)))?
        }
        AlgebraCommand::Forget { input, k } => {
            let d = single(&input)?;
            let s = calculus::forget(&d.graph, k)?;
            serde_json::to_value(GraphFile::with_canonical(&s, Some(&d.label_names)))?
        }
        AlgebraCommand::Merge { pi1, pi2, family: fam, t } => {
            let f = family(&fam)?;
            let a = read_graph_list(&pi1)?;
            let na = a.len();
            let mut all = a;
            all.extend(read_graph_list(&pi2)?);
            let (data, names) = io::parse_shared(&all)?;
            let (p1, p2) = (prohibition(&data[..na]), prohibition(&data[na..]));
            graph_set(&calculus::merge_odot(&p1, &p2, &f, t, &caps)?, Some(&names))
        }
        AlgebraCommand::Split { pi, g1, g2, family: fam } => {
            let f = family(&fam)?;
            let mut all = vec![read_graph_file(&g1)?, read_graph_file(&g2)?];
            all.extend(read_graph_list(&pi)?);
            let (data, names) = io::parse_shared(&all)?;
            let p = prohibition(&data[2..]);
            let (p1, p2) = calculus::split_against(&p, &data[0].graph, &data[1].graph, &f, &caps)?;
            json!({"pi1": graph_set(&p1, Some(&names)), "pi2": graph_set(&p2, Some(&names))})
        }
        AlgebraCommand::Count { l, t, n, theta } => json!({"count": calculus::count_n(l, t, n, theta, &caps)?}),
        AlgebraCommand::Saturated { q, labels, theta } => {
            let files = read_graph_list(&q)?;
            let mut names: Vec<String> = files.iter().flat_map(|f| f.label_set()).collect();
            names.extend(labels.iter().cloned());
            names.sort();
            names.dedup();
            let gs = files
                .iter()
                .map(|f| Ok(f.parse_with(&names)?.graph.labeled()))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let x = labels
                .iter()
                .map(|l| 1u64 << names.binary_search(l).expect("inserted"))
                .fold(0, |a, b| a | b);
            json!({"saturated": calculus::is_saturated(&gs, x, theta)})
        }
    };
    println!("{}", to_json(&out));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
