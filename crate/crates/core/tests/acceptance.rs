//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use flowkit::apps::*;
use flowkit::decompose::{decompose, min_cut_from_flow, recompose};
use flowkit::lp::{
    build_dual, build_primal, build_reduced_dual, cut_from_dual, dual_from_cut,
    dual_point_from_solution, is_totally_unimodular, lp_maxflow, simplex_solve, LPStatus,
    DEFAULT_TU_BUDGET,
};
use flowkit::network::{cut_capacity, net_flow, Capacity, Cut, Network};
use flowkit::numeric::int;
use flowkit::simplicial::fixtures::{double_tetrahedron, tetrahedron};
use flowkit::simplicial::*;
use flowkit::solvers::{edmonds_karp, hochbaum_maxflow, push_relabel, solve, Algorithm, SolverOptions};
use flowkit::IntMatrix;
use rand::Rng;

/// Push-relabel operations per `n² m`.
const C1: usize = 8;
/// Pseudoflow iterations per `n · min{M⁺, M⁻}`.
const C2: i64 = 1;
const CROSS_SOLVER_BUDGET: Duration = Duration::from_secs(60);
const PROBE_SEED: u64 = 2024;
const PROBE_TRIALS: usize = 500;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cross_solver_agreement(nets: &[Network]) -> Check {
    let start = Instant::now();
    for (i, net) in nets.iter().enumerate() {
        let expected = brute_force_min_cut(net);
        for algo in Algorithm::ALL {
            let flow = solve(net, algo, SolverOptions::default()).map_err(|e| e.to_string())?.flow;
            let value = net_flow(net, &flow).map_err(|e| e.to_string())?;
            ensure(value == expected, || format!("net {i}: {} gave {value}, min cut {expected}", algo.name()))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CROSS_SOLVER_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} networks x 3 solvers, {:.2}s", nets.len(), elapsed.as_secs_f64()))
}

fn maxflow_mincut(nets: &[Network]) -> Check {
    for (i, net) in nets.iter().enumerate() {
        for algo in Algorithm::ALL {
            let flow = solve(net, algo, SolverOptions::default()).map_err(|e| e.to_string())?.flow;
            let value = net_flow(net, &flow).map_err(|e| e.to_string())?;
            let cut = min_cut_from_flow(net, &flow).map_err(|e| e.to_string())?;
            ensure(cut_capacity(net, &cut) == Capacity::Finite(value), || format!("net {i} {}", algo.name()))?;
        }
    }
    Ok(format!("{} networks", nets.len()))
}

fn lp_duality() -> Check {
    for seed in 0..50 {
        let net = random_network(&mut rng(2000 + seed), 7, 10);
        let (_, ek) = edmonds_karp(&net).map_err(|e| e.to_string())?;
        let primal = lp_maxflow(&net).map_err(|e| e.to_string())?;
        let reduced = simplex_solve(&build_reduced_dual(&net)).map_err(|e| e.to_string())?;
        let dual = build_dual(&build_primal(&net)).map_err(|e| e.to_string())?;
        let mechanical = simplex_solve(&dual).map_err(|e| e.to_string())?;
        ensure(primal.status == LPStatus::Optimal, || format!("seed {seed}: primal {:?}", primal.status))?;
        for (what, v) in [("primal", &primal.value), ("dual", &reduced.value), ("mechanical dual", &mechanical.value)] {
            ensure(*v == ek.value, || format!("seed {seed}: {what} {v} vs maxflow {}", ek.value))?;
        }
    }
    Ok("50 instances".into())
}

fn cut_dual_round_trips() -> Check {
    let mut cuts = 0;
    for seed in 0..40 {
        let net = random_network(&mut rng(4000 + seed), 7, 9);
        for mask in all_cut_masks(&net) {
            let cut = Cut::from_mask(&net, mask).map_err(|e| e.to_string())?;
            let point = dual_from_cut(&net, &cut);
            point.check(&net).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(point.objective(&net) == cut_capacity(&net, &cut), || format!("seed {seed} cut {cut:?}"))?;
            cuts += 1;
        }
        let (_, ek) = edmonds_karp(&net).map_err(|e| e.to_string())?;
        let solution = simplex_solve(&build_reduced_dual(&net)).map_err(|e| e.to_string())?;
        let point = dual_point_from_solution(&net, &solution.point);
        let cut = cut_from_dual(&net, &point).map_err(|e| e.to_string())?;
        ensure(cut_capacity(&net, &cut) == Capacity::Finite(ek.value), || format!("seed {seed}: optimal dual"))?;
    }
    Ok(format!("40 networks, {cuts} cuts"))
}

fn integrality(nets: &[Network]) -> Check {
    for (i, net) in nets.iter().enumerate() {
        for algo in Algorithm::ALL {
            let flow = solve(net, algo, SolverOptions::default()).map_err(|e| e.to_string())?.flow;
            ensure(flow.is_integral(), || format!("net {i} {}", algo.name()))?;
        }
    }
    Ok(format!("{} networks x 3 solvers", nets.len()))
}

fn flow_decomposition(nets: &[Network]) -> Check {
    let mut most = 0;
    for (i, net) in nets.iter().enumerate() {
        for algo in Algorithm::ALL {
            let flow = solve(net, algo, SolverOptions::default()).map_err(|e| e.to_string())?.flow;
            let comps = decompose(net, &flow).map_err(|e| e.to_string())?;
            ensure(comps.len() <= net.arc_count(), || format!("net {i}: {} components", comps.len()))?;
            ensure(recompose(net, &comps).as_ref() == Some(&flow), || format!("net {i} {}", algo.name()))?;
            most = most.max(comps.len());
        }
    }
    Ok(format!("at most {most} components"))
}

fn complexity_guards(nets: &[Network]) -> Check {
    let (mut pr_ratio, mut h_ratio) = (0f64, 0f64);
    for (i, net) in nets.iter().enumerate() {
        let (n, m) = (net.vertex_count(), net.arc_count());
        let (_, pr) = push_relabel(net).map_err(|e| e.to_string())?;
        let pr_bound = C1 * n * n * m.max(1);
        ensure(pr.operations() <= pr_bound, || format!("net {i}: {} ops > {pr_bound}", pr.operations()))?;
        pr_ratio = pr_ratio.max(pr.operations() as f64 / (n * n * m.max(1)) as f64);
        let (_, h) = hochbaum_maxflow(net).map_err(|e| e.to_string())?;
        let (plus, minus) = terminal_capacities(net);
        let h_bound = int(C2) * int(n as i64) * plus.min(minus);
        ensure(int(h.iterations as i64) <= h_bound, || format!("net {i}: {} iterations > {h_bound}", h.iterations))?;
        if h_bound > int(0) {
            let b: f64 = h_bound.to_string().parse().unwrap_or(f64::INFINITY);
            h_ratio = h_ratio.max(h.iterations as f64 / b);
        }
    }
    Ok(format!("C1={C1} worst {pr_ratio:.4}, C2={C2} worst {h_ratio:.4}"))
}

fn hall() -> Check {
    let mut r = rng(31);
    let mut violations = 0;
    for trial in 0..100 {
        let n = r.gen_range(1..=6);
        let density = r.gen_range(0.2..0.9);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (0..n).map(move |w| (v, w))).filter(|_| r.gen_bool(density)).collect();
        let g = BipartiteGraph::new(n, edges.iter().copied()).map_err(|e| e.to_string())?;
        let expected = brute_force_has_perfect_matching(n, &edges);
        match perfect_matching(&g).map_err(|e| e.to_string())? {
            MatchingOutcome::Perfect(partner) => {
                ensure(expected, || format!("graph {trial}: spurious matching"))?;
                ensure((0..n).all(|v| g.has_edge(v, partner[v])), || format!("graph {trial}: non-edge"))?;
            }
            MatchingOutcome::HallViolation(s) => {
                violations += 1;
                ensure(!expected, || format!("graph {trial}: missed matching"))?;
                ensure(neighborhood(&g, &s).len() < s.len(), || format!("graph {trial}: {s:?} is no violation"))?;
            }
        }
    }
    Ok(format!("100 graphs, {violations} violations"))
}

fn poset_chains() -> Check {
    let mut r = rng(32);
    for trial in 0..50 {
        let inner = r.gen_range(1..=7);
        let top = inner + 1;
        let mut pairs = Vec::new();
        for x in 1..=inner {
            pairs.push((0, x));
            pairs.push((x, top));
            for y in x + 1..=inner {
                if r.gen_bool(0.35) {
                    pairs.push((x, y));
                }
            }
        }
        let names = (0..=top).map(|i| format!("x{i}")).collect();
        let p = Poset::from_relation(names, &pairs, 0, top).map_err(|e| e.to_string())?;
        let mut covers = vec![Vec::new(); p.len()];
        for (a, b) in p.cover_pairs() {
            covers[a].push(b);
        }
        let expected = brute_force_max_disjoint(&cover_paths(&covers, 0, top));
        let chains = max_disjoint_chains(&p).map_err(|e| e.to_string())?;
        ensure(chains.len() == expected, || format!("poset {trial}: {} vs {expected}", chains.len()))?;
        ensure(chains.iter().all(|c| p.is_maximal_chain(c)), || format!("poset {trial}: non-maximal chain"))?;
    }
    Ok("50 posets".into())
}

fn segmentation() -> Check {
    let mut r = rng(33);
    for trial in 0..50 {
        let raw = random_image(&mut r, 3, 3);
        let img = PixelImage::new(3, 3, raw.a.clone(), raw.b.clone(), raw.right.concat(), raw.down.concat())
            .map_err(|e| e.to_string())?;
        let seg = segment_image(&img).map_err(|e| e.to_string())?;
        let best = brute_force_segmentation(&raw);
        ensure(seg.score == best, || format!("image {trial}: {} vs {best}", seg.score))?;
        ensure(&seg.score + &seg.cost == img.total(), || format!("image {trial}: s + s' != Q"))?;
    }
    Ok("50 images".into())
}

fn tetrahedron_fixture() -> Check {
    let expected = IntMatrix::from_rows(vec![
        vec![0, 1, 0, -1],
        vec![0, -1, 1, 0],
        vec![-1, 1, 0, 0],
        vec![0, 0, -1, 1],
        vec![1, 0, -1, 0],
        vec![1, 0, 0, -1],
    ]);
    let hnet = tetrahedron();
    let b = hnet.complex().boundary_matrix();
    ensure(b == expected, || format!("boundary matrix\n{b}"))?;
    let bad = check_source_condition(hnet.complex(), hnet.source());
    ensure(bad.is_empty(), || format!("source condition fails at {bad:?}"))?;
    let tu = is_totally_unimodular(&b, DEFAULT_TU_BUDGET).map_err(|e| e.to_string())?;
    ensure(tu.is_unimodular(), || "not TU".into())?;
    Ok("6x4 exact, source condition, TU".into())
}

fn double_tetrahedron_fixture() -> Check {
    let hnet = double_tetrahedron();
    let b = hnet.complex().boundary_matrix();
    ensure((b.rows(), b.cols()) == (9, 7), || format!("{}x{}", b.rows(), b.cols()))?;
    let tu = is_totally_unimodular(&b, DEFAULT_TU_BUDGET).map_err(|e| e.to_string())?;
    ensure(tu.is_unimodular(), || "not TU".into())?;
    let lp = hmaxflow_lp(&hnet).value(&hnet);
    let aug = hmaxflow_augment(&hnet);
    ensure(lp == Some(int(2)), || format!("lp {lp:?}"))?;
    ensure(aug.fixpoint && *aug.flow.value(&hnet) == int(2), || format!("augment {}", aug.flow.value(&hnet)))?;
    ensure(aug.trace.len() == 2, || format!("{} augmenting cycles", aug.trace.len()))?;
    Ok("9x7 TU, lp = augment = 2 in 2 cycles".into())
}

fn dimension_one_reduction() -> Check {
    for seed in 0..50 {
        let net = random_network(&mut rng(6000 + seed), 7, 9);
        let (_, ek) = edmonds_karp(&net).map_err(|e| e.to_string())?;
        let g = graph_complex(&net).map_err(|e| e.to_string())?;
        let lp = hmaxflow_lp(&g.hnet).value(&g.hnet);
        ensure(lp.as_ref() == Some(&ek.value), || format!("seed {seed}: {lp:?} vs {}", ek.value))?;
    }
    Ok("50 graphs".into())
}

fn conjecture_probe_run() -> Check {
    let report = conjecture_probe(PROBE_SEED, PROBE_TRIALS, true);
    ensure(report.trials.len() == PROBE_TRIALS, || format!("{} trials", report.trials.len()))?;
    let unfinished = report.unfinished().count();
    ensure(unfinished == 0, || format!("{unfinished} trials hit the augmentation limit"))?;
    let mut discrepancies = 0;
    for t in report.discrepancies() {
        discrepancies += 1;
        let again = replay(&t.instance.to_text()).map_err(|e| e.to_string())?;
        ensure(again == t.outcome, || format!("trial {} does not replay", t.index))?;
    }
    Ok(format!("{PROBE_TRIALS} trials, {discrepancies} discrepancies (all replayed)"))
}

fn tu_oracle() -> Check {
    let mut r = rng(9);
    let mut non_tu = 0;
    for i in 0..100 {
        let m = random_sign_matrix(&mut r, 6);
        let verdict = is_totally_unimodular(&m, DEFAULT_TU_BUDGET).map_err(|e| e.to_string())?;
        ensure(verdict.is_unimodular() == ghouila_houri_tu(&m), || format!("matrix {i}\n{m}"))?;
        non_tu += usize::from(!verdict.is_unimodular());
    }
    for hnet in [tetrahedron(), double_tetrahedron()] {
        let m = hnet.complex().boundary_matrix();
        let verdict = is_totally_unimodular(&m, DEFAULT_TU_BUDGET).map_err(|e| e.to_string())?;
        ensure(verdict.is_unimodular() && ghouila_houri_tu(&m), || format!("fixture\n{m}"))?;
    }
    Ok(format!("102 matrices, {non_tu} not TU"))
}

fn main() -> ExitCode {
    let nets = criterion_networks();
    let criteria: Vec<Criterion> = vec![
        ("cross-solver agreement", Box::new(|| cross_solver_agreement(&nets))),
        ("maxflow equals min cut", Box::new(|| maxflow_mincut(&nets))),
        ("LP duality", Box::new(lp_duality)),
        ("cut/dual round trips", Box::new(cut_dual_round_trips)),
        ("integrality", Box::new(|| integrality(&nets))),
        ("flow decomposition", Box::new(|| flow_decomposition(&nets))),
        ("complexity guards", Box::new(|| complexity_guards(&nets))),
        ("Hall violations", Box::new(hall)),
        ("poset chains", Box::new(poset_chains)),
        ("segmentation", Box::new(segmentation)),
        ("tetrahedron fixture", Box::new(tetrahedron_fixture)),
        ("double tetrahedron fixture", Box::new(double_tetrahedron_fixture)),
        ("dimension-1 reduction", Box::new(dimension_one_reduction)),
        ("conjecture probe", Box::new(conjecture_probe_run)),
        ("TU oracle agreement", Box::new(tu_oracle)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
