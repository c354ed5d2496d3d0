use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flowkit::apps::{
    max_disjoint_chains, neighborhood, perfect_matching, segment_image, write_pbm, BipartiteGraph,
    MatchingOutcome, PixelImage, Poset,
};
use flowkit::decompose::{decompose, min_cut_from_flow};
use flowkit::lp::{build_dual, is_totally_unimodular, simplex_solve, LPStatus, LinearProgram, TuVerdict};
use flowkit::network::{cut_capacity, dimacs, net_flow, Network};
use flowkit::numeric::parse_rational;
use flowkit::simplicial::{
    conjecture_probe, hcut_capacity, hmaxflow_augment_with, hmaxflow_lp, min_hcut_exhaustive, HNetwork,
    DEFAULT_AUGMENT_LIMIT,
};
use flowkit::solvers::{solve, Algorithm, SolverOptions};
use flowkit::IntMatrix;

const FORMATS: &str = "\
FORMATS
  network (DIMACS, 1-based ids, capacities are integers or p/q):
    c <comment>
    p max <n> <m>
    n <id> s
    n <id> t
    a <u> <v> <cap>
  flow output:      f <u> <v> <value> per positive arc, then s <|f|>
  components:       path <a> v1 .. vk | cycle <a> v1 .. vk v1
  linear program:   max|min, objective row, rows `a1 .. an | b`, optional `nonneg 1 0 ..`
                    (max means Ax <= b, min means Ax >= b; # starts a comment)
  matrix:           whitespace-separated integer rows
  bipartite graph:  bip <n>, then e <v> <w> per edge (1-based on both sides)
  poset:            el <name>, cover <lo> <hi>, bottom <name>, top <name>
  image:            PGM P2 in, PBM P1 out (1 = foreground)
  complex (.hnet):
    hnet dim <d>
    t <v0> .. <vd>          source facet, orientation as written
    f <v0> .. <vd> <cap>    capacitated facet
    r <v0> .. <v(d-1)>      optional face with its reference orientation
  hflow output:     hf <facet> <value> per facet (1-based, in file order), then s <f(T)>

EXIT STATUS
  0 success, 1 infeasible result or violation found, 2 input error";

#[derive(Parser)]
#[command(name = "flowkit", version, about = "Exact maximum flow, LP duality and simplicial flow tools", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Ek,
    Pr,
    Hoch,
    All,
}

impl Algo {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            Algo::Ek => vec![Algorithm::EdmondsKarp],
            Algo::Pr => vec![Algorithm::PushRelabel],
            Algo::Hoch => vec![Algorithm::Pseudoflow],
            Algo::All => Algorithm::ALL.to_vec(),
        }
    }
}

#[derive(clap::Args)]
struct NetArgs {
    /// DIMACS network file
    input: PathBuf,
    /// Subdivide antiparallel arc pairs instead of rejecting them
    #[arg(long)]
    split_antiparallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HflowMethod {
    Lp,
    Augment,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum flow of a DIMACS network
    Maxflow {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_enum, default_value = "ek")]
        algo: Algo,
        /// Check solver invariants after every step
        #[arg(long)]
        instrumented: bool,
    },
    /// Minimum cut read off a maximum flow; prints `cut` (source side) and `capacity`
    Mincut {
        #[command(flatten)]
        net: NetArgs,
    },
    /// Path and cycle decomposition of a flow (a maximum flow if --flow is absent)
    Decompose {
        #[command(flatten)]
        net: NetArgs,
        /// Flow file to decompose
        #[arg(long)]
        flow: Option<PathBuf>,
    },
    /// Print the dual of a linear program and solve both
    LpDual {
        input: PathBuf,
    },
    /// Total unimodularity of an integer matrix
    TuCheck {
        input: PathBuf,
        /// Read a complex and test its boundary matrix instead
        #[arg(long)]
        complex: bool,
        /// Maximum number of square submatrices to examine
        #[arg(long, default_value_t = flowkit::lp::DEFAULT_TU_BUDGET)]
        budget: u128,
    },
    /// Perfect matching or a Hall violation; prints `match v w` or `violation`/`neighbors`
    Matching {
        input: PathBuf,
    },
    /// Maximum family of cover-disjoint maximal chains; prints `chain ..` lines
    Chains {
        input: PathBuf,
    },
    /// Foreground/background segmentation of a grayscale image
    ///
    /// Likelihoods are the heuristic a = g/maxval, b = 1 - a.
    Segment {
        input: PathBuf,
        /// Penalty between neighbouring pixels (integer or p/q)
        #[arg(long, default_value = "0")]
        lambda: String,
        /// Write the PBM mask here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Maximum flow on a simplicial network
    Hflow {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "lp")]
        method: HflowMethod,
        /// Augmentation step limit
        #[arg(long, default_value_t = DEFAULT_AUGMENT_LIMIT)]
        limit: usize,
    },
    /// Minimum cut on a simplicial network by exhaustive search over face partitions
    Hcut {
        input: PathBuf,
        /// Refuse complexes with more faces than this
        #[arg(long, default_value_t = 20)]
        max_faces: usize,
    },
    /// Compare augmentation fixpoints with LP optima on random dimension-2 networks
    ConjectureProbe {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Run trials one at a time
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Result text for stdout, `key=value` stats for stderr, and the exit code.
#[derive(Default)]
struct Output {
    stdout: String,
    stats: Vec<(String, String)>,
    violation: bool,
}

impl Output {
    fn stat(&mut self, key: impl Into<String>, value: impl ToString) {
        self.stats.push((key.into(), value.to_string()));
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_network(args: &NetArgs) -> Result<Network, Failure> {
    let text = read(&args.input)?;
    dimacs::read_network(&text, args.split_antiparallel).map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))
}

fn load_hnet(path: &Path) -> Result<HNetwork, Failure> {
    HNetwork::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn maxflow(args: &NetArgs, algo: Algo, instrumented: bool) -> Result<Output, Failure> {
    let net = load_network(args)?;
    let options = SolverOptions { instrumented };
    let mut out = Output::default();
    let mut values = Vec::new();
    let algorithms = algo.algorithms();
    for a in &algorithms {
        let report = solve(&net, *a, options)?;
        values.push(net_flow(&net, &report.flow)?);
        if algorithms.len() == 1 {
            out.stdout = dimacs::write_flow(&net, &report.flow)?;
        } else {
            writeln!(out.stdout, "c algo {}", a.name()).unwrap();
            writeln!(out.stdout, "s {}", values.last().unwrap()).unwrap();
        }
        for (k, v) in report.stats {
            out.stat(format!("{}.{k}", a.name()), v);
        }
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        out.violation = true;
        out.stat("agreement", "false");
    }
    Ok(out)
}

fn mincut(args: &NetArgs) -> Result<Output, Failure> {
    let net = load_network(args)?;
    let flow = solve(&net, Algorithm::EdmondsKarp, SolverOptions::default())?.flow;
    let cut = min_cut_from_flow(&net, &flow)?;
    let mut out = Output::default();
    let side: Vec<String> = cut.source_side().iter().map(|v| (v + 1).to_string()).collect();
    writeln!(out.stdout, "cut {}", side.join(" ")).unwrap();
    writeln!(out.stdout, "capacity {}", cut_capacity(&net, &cut)).unwrap();
    out.stat("value", net_flow(&net, &flow)?);
    Ok(out)
}

fn decompose_cmd(args: &NetArgs, flow: Option<&Path>) -> Result<Output, Failure> {
    let net = load_network(args)?;
    let flow = match flow {
        Some(path) => dimacs::read_flow(&net, &read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => solve(&net, Algorithm::EdmondsKarp, SolverOptions::default())?.flow,
    };
    let comps = decompose(&net, &flow)?;
    let mut out = Output::default();
    for c in &comps {
        writeln!(out.stdout, "{c}").unwrap();
    }
    out.stat("components", comps.len());
    out.stat("arcs", net.arc_count());
    Ok(out)
}

fn status_name(s: LPStatus) -> &'static str {
    match s {
        LPStatus::Optimal => "optimal",
        LPStatus::Unbounded => "unbounded",
        LPStatus::Infeasible => "infeasible",
    }
}

fn lp_dual(path: &Path) -> Result<Output, Failure> {
    let lp = LinearProgram::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let dual = build_dual(&lp)?;
    let mut out = Output { stdout: dual.to_string(), ..Output::default() };
    for (name, program) in [("primal", &lp), ("dual", &dual)] {
        let r = simplex_solve(program)?;
        out.stat(format!("{name}.status"), status_name(r.status));
        if r.status == LPStatus::Optimal {
            out.stat(format!("{name}.value"), &r.value);
        } else {
            out.violation = true;
        }
    }
    Ok(out)
}

fn tu_check(path: &Path, complex: bool, budget: u128) -> Result<Output, Failure> {
    let m = if complex {
        load_hnet(path)?.complex().boundary_matrix()
    } else {
        IntMatrix::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let mut out = Output::default();
    out.stat("rows", m.rows());
    out.stat("cols", m.cols());
    match is_totally_unimodular(&m, budget)? {
        TuVerdict::Unimodular => out.stdout.push_str("tu yes\n"),
        TuVerdict::NotUnimodular { rows, cols, determinant } => {
            out.violation = true;
            let ids = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
            writeln!(out.stdout, "tu no\nrows {}\ncols {}\ndet {determinant}", ids(&rows), ids(&cols)).unwrap();
        }
    }
    Ok(out)
}

fn matching(path: &Path) -> Result<Output, Failure> {
    let g = BipartiteGraph::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut out = Output::default();
    let ids = |v: &mut dyn Iterator<Item = usize>| v.map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
    match perfect_matching(&g)? {
        MatchingOutcome::Perfect(partner) => {
            for (v, w) in partner.iter().enumerate() {
                writeln!(out.stdout, "match {} {}", v + 1, w + 1).unwrap();
            }
        }
        MatchingOutcome::HallViolation(s) => {
            out.violation = true;
            let n = neighborhood(&g, &s);
            writeln!(out.stdout, "violation {}", ids(&mut s.iter().copied())).unwrap();
            writeln!(out.stdout, "neighbors {}", ids(&mut n.iter().copied())).unwrap();
        }
    }
    Ok(out)
}

fn chains(path: &Path) -> Result<Output, Failure> {
    let p = Poset::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let found = max_disjoint_chains(&p)?;
    let mut out = Output::default();
    for c in &found {
        let names: Vec<&str> = c.iter().map(|&x| p.name(x)).collect();
        writeln!(out.stdout, "chain {}", names.join(" ")).unwrap();
    }
    out.stat("chains", found.len());
    Ok(out)
}

fn segment(path: &Path, lambda: &str, output: Option<&Path>) -> Result<Output, Failure> {
    let lambda = parse_rational(lambda).ok_or_else(|| Failure::Input(format!("bad --lambda `{lambda}`")))?;
    let img = PixelImage::from_pgm(&read(path)?, lambda).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let seg = segment_image(&img)?;
    let pbm = write_pbm(img.width(), img.height(), &seg.foreground);
    let mut out = Output::default();
    match output {
        Some(dest) => fs::write(dest, pbm).map_err(|e| Failure::Input(format!("{}: {e}", dest.display())))?,
        None => out.stdout = pbm,
    }
    out.stat("foreground", seg.foreground.iter().filter(|&&x| x).count());
    out.stat("score", &seg.score);
    out.stat("cost", &seg.cost);
    out.stat("total", &seg.total);
    Ok(out)
}

fn hflow(path: &Path, method: HflowMethod, limit: usize) -> Result<Output, Failure> {
    let hnet = load_hnet(path)?;
    let mut out = Output::default();
    match method {
        HflowMethod::Lp => {
            let r = hmaxflow_lp(&hnet);
            out.stat("status", status_name(r.status));
            match r.flow {
                Some(f) => out.stdout = f.to_text(&hnet),
                None => {
                    out.violation = true;
                    out.stdout = format!("s {}\n", status_name(r.status));
                }
            }
        }
        HflowMethod::Augment => {
            let r = hmaxflow_augment_with(&hnet, limit);
            out.stdout = r.flow.to_text(&hnet);
            out.stat("augmentations", r.trace.len());
            out.stat("fixpoint", r.fixpoint);
            out.violation = !r.fixpoint;
        }
    }
    Ok(out)
}

fn hcut(path: &Path, max_faces: usize) -> Result<Output, Failure> {
    let hnet = load_hnet(path)?;
    let (cut, value) = min_hcut_exhaustive(&hnet, max_faces)?;
    debug_assert_eq!(hcut_capacity(&hnet, &cut), value);
    let mut out = Output::default();
    for (face, &inside) in hnet.complex().faces().iter().zip(&cut.s_prime) {
        if inside {
            let labels: Vec<String> = face.iter().map(|v| v.to_string()).collect();
            writeln!(out.stdout, "side {}", labels.join(" ")).unwrap();
        }
    }
    writeln!(out.stdout, "capacity {}", value.capacity).unwrap();
    out.stat("faces", cut.s_prime.len());
    Ok(out)
}

fn probe(seed: u64, trials: usize, sequential: bool) -> Output {
    let report = conjecture_probe(seed, trials, !sequential);
    let mut out = Output { stdout: report.to_string(), ..Output::default() };
    out.stat("discrepancies", report.discrepancies().count());
    out.stat("unfinished", report.unfinished().count());
    out
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Maxflow { net, algo, instrumented } => maxflow(&net, algo, instrumented),
        Command::Mincut { net } => mincut(&net),
        Command::Decompose { net, flow } => decompose_cmd(&net, flow.as_deref()),
        Command::LpDual { input } => lp_dual(&input),
        Command::TuCheck { input, complex, budget } => tu_check(&input, complex, budget),
        Command::Matching { input } => matching(&input),
        Command::Chains { input } => chains(&input),
        Command::Segment { input, lambda, output } => segment(&input, &lambda, output.as_deref()),
        Command::Hflow { input, method, limit } => hflow(&input, method, limit),
        Command::Hcut { input, max_faces } => hcut(&input, max_faces),
        Command::ConjectureProbe { seed, trials, sequential } => Ok(probe(seed, trials, sequential)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            let mut err = std::io::stderr().lock();
            for (k, v) in &out.stats {
                let _ = writeln!(err, "{k}={v}");
            }
            ExitCode::from(u8::from(out.violation))
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
