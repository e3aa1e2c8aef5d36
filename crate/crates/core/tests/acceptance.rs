//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed or overran its time limit.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use kdesign::bounds::{e_of_n, evans_block_bound, thm2_edge_bound};
use kdesign::clique::{find_clique, find_clique_factor, hajnal_szemeredi_forces_factor, turan_forces_clique};
use kdesign::constructions::{
    construct_k3_tight_graph, construct_thm2_tight_graph, construct_thm3_tight_graph,
    construct_uncompletable_design, verify_certificate, K3Case, Target,
};
use kdesign::decomp::{exact_decompose, inductive_decompose, sigma, ExactTerminal, InductiveOutcome, SearchOutcome};
use kdesign::design::is_k_admissible;
use kdesign::equicolor::{
    equitable_color, lemma_colouring2_hypothesis, lemma_colouring3_hypothesis, lemma_colouring_hypothesis,
    union_of_cliques,
};
use kdesign::graph::DenseGraph;
use kdesign::pipeline::complete_design;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const BIG_BUDGET: u64 = 1 << 40;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `e(n)` read off the four-branch table, doubled so every branch is an
/// integer.
fn e_table_doubled(n: i64) -> i64 {
    match n.rem_euclid(6) {
        1 | 3 => 3 * n - 9,
        5 => 3 * n - 7,
        2 | 4 => 2 * (n + 2),
        0 => 2 * n,
        _ => unreachable!(),
    }
}

fn criterion_1() -> Check {
    let mut orders = 0;
    for n in 7..=100usize {
        if n % 6 != 1 && n % 6 != 3 {
            continue;
        }
        ensure!(is_k_admissible(n, 3), "{n} should be 3-admissible");
        orders += 1;
        let tight = construct_uncompletable_design(n, 3).map_err(|e| e.to_string())?;
        let d = &tight.design;
        ensure!(is_partial_design(n, 3, d.blocks()), "n = {n}: not a partial design");
        ensure!(d.blocks().len() == (n - 1) / 2 - 1, "n = {n}: {} blocks", d.blocks().len());
        let g = construct_thm2_tight_graph(n, 3).map_err(|e| e.to_string())?.graph;
        let missing = binom2(n) - g.edge_count();
        ensure!(missing == ((n - 1) / 2 - 1) * 3, "n = {n}: complement has {missing} edges");
        let bound = thm2_edge_bound(n, 3).map_err(|e| e.to_string())?;
        ensure!(bound == binom2(n) as i64 - e_of_n(n).unwrap(), "n = {n}: thm2 bound {bound} vs e(n)");
    }
    for n in 7..=1000i64 {
        let e = e_of_n(n as usize).map_err(|e| e.to_string())?;
        ensure!(2 * e == e_table_doubled(n), "e({n}) = {e}");
    }
    // Each branch is attained by a tight construction at small orders.
    let mut tight = 0;
    for n in 7..=60usize {
        let g = match K3Case::for_order(n) {
            Some(_) => construct_k3_tight_graph(n).map_err(|e| e.to_string())?.graph,
            None if n % 6 == 1 || n % 6 == 3 => construct_thm2_tight_graph(n, 3).map_err(|e| e.to_string())?.graph,
            None => continue,
        };
        let missing = (binom2(n) - g.edge_count()) as i64;
        ensure!(2 * missing == e_table_doubled(n as i64), "n = {n}: tight graph misses {missing} edges");
        tight += 1;
    }
    Ok(format!("{orders} admissible orders, e(n) for 7..=1000, {tight} tight graphs"))
}

fn certify_graph(name: &str, g: &DenseGraph, k: usize, cert: &kdesign::constructions::ObstructionCertificate) -> Check {
    ensure!(verify_certificate(Target::Graph(g), k, cert).map_err(|e| e.to_string())?, "{name}: certificate rejected");
    let search = exact_decompose(g, k, BIG_BUDGET).map_err(|e| e.to_string())?;
    ensure!(search == SearchOutcome::Infeasible, "{name}: exact search gave {search:?}");
    ensure!(exact_cover_decomposition(g, k).is_none(), "{name}: exact-cover oracle found a decomposition");
    Ok(name.to_string())
}

fn criterion_2() -> Check {
    let mut done = Vec::new();
    for n in [7, 9, 13] {
        let tight = construct_uncompletable_design(n, 3).map_err(|e| e.to_string())?;
        let d = &tight.design;
        ensure!(
            verify_certificate(Target::Design(d), 3, &tight.certificate).map_err(|e| e.to_string())?,
            "evans ({n},3): certificate rejected"
        );
        let leave = d.leave().map_err(|e| e.to_string())?;
        let search = exact_decompose(&leave, 3, BIG_BUDGET).map_err(|e| e.to_string())?;
        ensure!(search == SearchOutcome::Infeasible, "evans ({n},3): exact search gave {search:?}");
        ensure!(exact_cover_decomposition(&leave, 3).is_none(), "evans ({n},3): oracle completed it");
        done.push(format!("evans({n},3)"));
    }
    for n in [12, 11, 8] {
        let t = construct_k3_tight_graph(n).map_err(|e| e.to_string())?;
        done.push(certify_graph(&format!("k3 n={n}"), &t.graph, 3, &t.certificate)?);
    }
    let t = construct_thm3_tight_graph(5, 3).map_err(|e| e.to_string())?;
    ensure!(t.graph.order() == 14, "thm3 k=5 has order {}", t.graph.order());
    done.push(certify_graph("thm3 k=5 n=14", &t.graph, 5, &t.certificate)?);
    Ok(done.join(", "))
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, size: usize, k: usize) -> Vec<Vec<usize>> {
    let points: Vec<usize> = (0..n).collect();
    let mut family: Vec<Vec<usize>> = Vec::new();
    let mut tries = 0;
    while family.len() < size && tries < 200 {
        tries += 1;
        let len = rng.gen_range(2..=k.min(n));
        let set: Vec<usize> = points.choose_multiple(rng, len).copied().collect();
        if family.iter().all(|t| t.iter().filter(|x| set.contains(x)).count() <= 1) {
            family.push(set);
        }
    }
    family
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DenseGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    DenseGraph::from_edges(n, &pairs).expect("pairs are in range")
}

fn colour_and_check(h: &DenseGraph, a: usize, k: usize, label: &str) -> Result<(), String> {
    match equitable_color(h, a, k) {
        Ok(c) => {
            ensure!(is_proper_equitable(h, &c.classes(), a, k), "{label}: output not proper and equitable");
            Ok(())
        }
        Err(e) => Err(format!("{label}: a = {a}, k = {k}, edges {:?}: {e:?}", h.edges())),
    }
}

fn criterion_3() -> Check {
    const WANT: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nontrivial = [0usize; 3];

    let mut got = 0;
    while got < WANT {
        let k = rng.gen_range(3..=6);
        let a = rng.gen_range(k - 1..=8);
        let n = a * (k - 1);
        let size = rng.gen_range(0..=a + 1 - k);
        let family = random_family(&mut rng, n, size, k);
        if !lemma_colouring_hypothesis(&family, a, k) {
            continue;
        }
        let h = union_of_cliques(n, &family);
        colour_and_check(&h, a, k, "first colouring hypothesis")?;
        got += 1;
        nontrivial[0] += usize::from(h.has_edges());
    }

    let mut got = 0;
    let mut attempts = 0;
    while got < WANT {
        attempts += 1;
        ensure!(attempts < 1_000_000, "colouring2: only {got} instances generated");
        let k = rng.gen_range(3..=6);
        // a > ℓ = (k²−k−2)/4
        let a_min = (k * k - k - 2) / 4 + 1;
        if a_min > 8 {
            continue;
        }
        let a = rng.gen_range(a_min..=8);
        let n = a * (k - 1);
        let m = rng.gen_range(0..=2 * a);
        let h = random_edges(&mut rng, n, m);
        if !lemma_colouring2_hypothesis(&h, a, k) {
            continue;
        }
        colour_and_check(&h, a, k, "second colouring hypothesis")?;
        got += 1;
        nontrivial[1] += usize::from(h.has_edges());
    }

    let mut got = 0;
    let mut attempts = 0;
    while got < WANT {
        attempts += 1;
        ensure!(attempts < 1_000_000, "colouring3: only {got} instances generated");
        let k = rng.gen_range(3..=6);
        let a = rng.gen_range(1..=8);
        let n = a * (k - 1);
        let m = rng.gen_range(0..=(3 * a).min(binom2(n)));
        let h = random_edges(&mut rng, n, m);
        if !lemma_colouring3_hypothesis(&h, a, k) {
            continue;
        }
        colour_and_check(&h, a, k, "third colouring hypothesis")?;
        got += 1;
        nontrivial[2] += usize::from(h.has_edges());
    }
    Ok(format!("3 x {WANT} instances coloured, with edges: {nontrivial:?}"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.4..0.95);
        let g = random_k3_divisible(&mut rng, n, p);
        let ours = exact_decompose(&g, 3, BIG_BUDGET).map_err(|e| e.to_string())?;
        let oracle = exact_cover_decomposition(&g, 3);
        match (&ours, &oracle) {
            (SearchOutcome::Found(d), Some(o)) => {
                ensure!(is_edge_partition(&g, 3, &d.cliques), "invalid decomposition of {:?}", g.edges());
                ensure!(is_edge_partition(&g, 3, o), "oracle produced an invalid decomposition");
                yes += 1;
            }
            (SearchOutcome::Infeasible, None) => no += 1,
            _ => return Err(format!("disagreement on {:?}: {ours:?} vs oracle {}", g.edges(), oracle.is_some())),
        }
    }
    Ok(format!("200 graphs agree ({yes} decomposable, {no} not)"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let terminal = ExactTerminal::new(BIG_BUDGET);
    let mut summary = Vec::new();
    for (n, k) in [(7, 3), (9, 3), (13, 3)] {
        let bound = evans_block_bound(n, k).map_err(|e| e.to_string())? as usize;
        let mut constructive = 0;
        for _ in 0..500 {
            let d = random_partial_design(&mut rng, n, k, bound);
            ensure!(d.blocks().len() <= bound, "generator overshot");
            let result = complete_design(&d, &terminal).map_err(|e| format!("({n},{k}) {:?}: {e}", d.blocks()))?;
            let Some(full) = result.solved() else {
                return Err(format!("({n},{k}) {:?} not completed: {:?}", d.blocks(), result.diagnostics));
            };
            ensure!(is_completion_of(full, &d), "({n},{k}) {:?}: bad completion", d.blocks());
            constructive += usize::from(result.path() == Some(kdesign::pipeline::PipelinePath::Constructive));
        }
        summary.push(format!("({n},{k}) 500/500 [{constructive} constructive]"));
    }
    Ok(summary.join(", "))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut turan = 0;
    while turan < 1000 {
        let r = rng.gen_range(3..=5);
        let n = rng.gen_range(r..=20);
        // Smallest m with m(2r−2) > (r−2)n².
        let m_min = (r - 2) * n * n / (2 * r - 2) + 1;
        if m_min > binom2(n) {
            continue;
        }
        let m = rng.gen_range(m_min..=binom2(n));
        let h = random_edges(&mut rng, n, m);
        ensure!(turan_forces_clique(&h, r), "n = {n}, m = {m}, r = {r}: not above Turán density");
        let Some(c) = find_clique(&h, r) else {
            return Err(format!("no K_{r} found in {:?}", h.edges()));
        };
        ensure!(c.len() == r && is_clique(&adjacency(&h), &c), "returned set {c:?} is not a K_{r}");
        turan += 1;
    }

    let mut factors = 0;
    while factors < 1000 {
        let r: usize = rng.gen_range(2..=3);
        let n = r * rng.gen_range(1..=18 / r);
        let need = ((r - 1) * n).div_ceil(r);
        let mut h = DenseGraph::complete(n);
        let mut pairs = h.edges();
        pairs.shuffle(&mut rng);
        let removals = rng.gen_range(0..=pairs.len());
        for &(u, v) in &pairs[..removals] {
            if h.degree(u) > need && h.degree(v) > need {
                h.remove_edge(u, v);
            }
        }
        ensure!(hajnal_szemeredi_forces_factor(&h, r), "generated graph below the degree threshold");
        let found = find_clique_factor(&h, r).map_err(|e| e.to_string())?;
        let Some(f) = found else {
            return Err(format!("no K_{r}-factor found in {:?}", h.edges()));
        };
        ensure!(is_clique_factor(&h, r, &f), "invalid K_{r}-factor {f:?}");
        factors += 1;
    }

    let mut compared = 0;
    for _ in 0..600 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.2..0.95);
        let h = random_graph(&mut rng, n, p);
        for r in 2..=5 {
            let ours = find_clique(&h, r);
            ensure!(ours.is_some() == has_clique(&h, r), "clique existence differs, r = {r}, {:?}", h.edges());
            if let Some(c) = ours {
                ensure!(c.len() == r && is_clique(&adjacency(&h), &c), "bad clique {c:?}");
            }
            if n % r == 0 {
                let ours = find_clique_factor(&h, r).map_err(|e| e.to_string())?;
                ensure!(
                    ours.is_some() == has_clique_factor(&h, r),
                    "factor existence differs, r = {r}, {:?}",
                    h.edges()
                );
                if let Some(f) = ours {
                    ensure!(is_clique_factor(&h, r, &f), "bad factor {f:?}");
                }
            }
            compared += 1;
        }
    }
    Ok(format!("{turan} Turán graphs, {factors} factor graphs, {compared} enumeration comparisons"))
}

fn is_k3_divisible(g: &DenseGraph) -> bool {
    g.edge_count().is_multiple_of(3) && (0..g.order()).all(|v| g.degree(v).is_multiple_of(2))
}

fn criterion_7() -> Check {
    let terminal = ExactTerminal::new(BIG_BUDGET);
    let cases: &[(usize, &[usize])] =
        &[(7, &[]), (7, &[0]), (7, &[0, 1]), (7, &[2, 5]), (13, &[]), (13, &[0]), (13, &[0, 1]), (13, &[4, 11])];
    let mut steps = 0;
    for &(n, s) in cases {
        let g = DenseGraph::complete(n);
        let outcome = inductive_decompose(&g, 3, s, &terminal).map_err(|e| e.to_string())?;
        let InductiveOutcome::Decomposed { decomposition, trace } = outcome else {
            return Err(format!("K_{n}, S = {s:?}: stalled"));
        };
        let mut state = g.clone();
        let mut previous = sigma(&g, s);
        for step in &trace {
            for c in &step.cliques {
                ensure!(c.len() == 3 && c.iter().enumerate().all(|(i, &u)| c[i + 1..].iter().all(|&v| state.has_edge(u, v))),
                    "K_{n}, S = {s:?}: removed {c:?} is not a triangle of the current graph");
                state.remove_clique(c);
            }
            let now: usize = s.iter().map(|&z| state.degree(z)).sum();
            ensure!(step.sigma_before == previous && step.sigma_after == now, "K_{n}, S = {s:?}: sigma bookkeeping off");
            ensure!(now < previous, "K_{n}, S = {s:?}: sigma did not decrease ({previous} -> {now})");
            ensure!(is_k3_divisible(&state), "K_{n}, S = {s:?}: not divisible after a removal");
            previous = now;
            steps += 1;
        }
        ensure!(previous == 0, "K_{n}, S = {s:?}: stopped with sigma = {previous}");
        ensure!(is_edge_partition(&g, 3, &decomposition.cliques), "K_{n}, S = {s:?}: output is not a partition");
    }
    Ok(format!("{} instances, {steps} removal steps", cases.len()))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kdesign"))
        .args(args)
        .env_remove("KDESIGN_BUDGET")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_8() -> Check {
    let dir = corpus_dir();
    let mut jobs: Vec<Vec<String>> = Vec::new();
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    entries.sort();
    for path in &entries {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let p = path.to_string_lossy().into_owned();
        if text.contains("\"blocks\"") {
            jobs.push(vec!["complete".into(), p]);
        } else {
            let ks: &[&str] = if path.ends_with("thm3_k5_14.json") {
                &["5"]
            } else if path.ends_with("complete_13.json") {
                &["3", "4"]
            } else {
                &["3"]
            };
            for k in ks {
                jobs.push(vec!["decompose".into(), p.clone(), "--k".into(), (*k).into()]);
            }
        }
    }
    ensure!(jobs.len() >= 10, "corpus too small: {} jobs", jobs.len());
    for job in &jobs {
        let mut reference: Option<(i32, Vec<u8>)> = None;
        for threads in ["1", "4"] {
            for _ in 0..3 {
                let mut args: Vec<&str> = job.iter().map(String::as_str).collect();
                args.extend(["--deterministic", "--threads", threads]);
                let got = run_cli(&args)?;
                ensure!(got.0 <= 3, "{job:?}: exit code {}", got.0);
                match &reference {
                    None => reference = Some(got),
                    Some(r) => ensure!(*r == got, "{job:?} differs with --threads {threads}"),
                }
            }
        }
        // The parallel search without --deterministic must agree as well.
        let mut args: Vec<&str> = job.iter().map(String::as_str).collect();
        args.extend(["--threads", "4"]);
        ensure!(reference.as_ref() == Some(&run_cli(&args)?), "{job:?}: parallel run differs");
    }
    Ok(format!("{} corpus jobs x 7 runs byte-identical", jobs.len()))
}

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored.
    let criteria: [Criterion; 8] = [
        ("tightness constructions, exact counts", criterion_1, Duration::from_secs(1)),
        ("certificate soundness vs oracle", criterion_2, Duration::from_secs(300)),
        ("equitable colouring guarantees", criterion_3, Duration::from_secs(60)),
        ("decomposition validity, two-oracle agreement", criterion_4, Duration::from_secs(300)),
        ("desk-scale completion of small partial designs", criterion_5, Duration::from_secs(600)),
        ("clique and factor extraction", criterion_6, Duration::from_secs(300)),
        ("inductive procedure mechanics", criterion_7, Duration::from_secs(60)),
        ("determinism across runs and threads", criterion_8, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
