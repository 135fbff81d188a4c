//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use copnum::drawing::CrossingKind;
use copnum::fixtures::{bowtie_c4, petersen_star};
use copnum::graph::Graph;
use copnum::par::Execution;
use copnum::solver::{best_response, cop_number, cop_win, Certificate, CopNumber, GameConfig, SolverError};
use copnum::strategy::{orchestrate, Alpha, Kind};
use copnum::transform::{gen_far_crossings, gen_large_x_drawing};
use copnum::verify::{check_many, gen_corpus, CheckId, CorpusParams, EntryKind, Status, VerifyOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SOLVER_LIMIT: Duration = Duration::from_secs(60);
const CORPUS_LIMIT: Duration = Duration::from_secs(30 * 60);
const STRATEGY_LIMIT: Duration = Duration::from_secs(30 * 60);
const RANDOM_GRAPHS: usize = 200;
const RANDOM_N_MAX: usize = 15;
const CORPUS_SIZE: usize = 100;
const CORPUS_N_MAX: usize = 12;
const KITE_DRAWINGS: usize = 50;
const KITE_N_MAX: usize = 25;
const FULL_DRAWINGS: usize = 20;
const FULL_N_MAX: usize = 15;
const MAP_WITNESSES: usize = 20;
const MAP_SIZE_MAX: usize = 14;
const BUDGET: usize = 5_000_000;
const GENERATOR_BUDGET: usize = 20_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(g: &Graph, d: u64, p_max: usize, budget: usize) -> Option<usize> {
    match cop_number(g, d, p_max, budget, Execution::Parallel) {
        Ok(CopNumber::Exactly(c)) => Some(c),
        _ => None,
    }
}

/// Repeatedly deletes a vertex whose closed neighbourhood lies inside
/// another's; one cop wins exactly when a single vertex remains.
fn dismantlable(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    for (v, row) in adj.iter_mut().enumerate() {
        row[v] = true;
    }
    let mut alive = vec![true; n];
    let mut left = n;
    'outer: while left > 1 {
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            for v in 0..n {
                if v != u && alive[v] && (0..n).all(|w| !alive[w] || !adj[u][w] || adj[v][w]) {
                    alive[u] = false;
                    left -= 1;
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::new(n, edges).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=RANDOM_N_MAX);
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn solver_ground_truth() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=RANDOM_N_MAX {
        let t = random_tree(&mut rng, n);
        ensure(exact(&t, 0, 3, BUDGET) == Some(1), || format!("tree on {n} vertices"))?;
    }
    for n in 4..=12 {
        let c = exact(&Graph::cycle(n), 0, 3, BUDGET);
        ensure(c == Some(2), || format!("c(C_{n}) = {c:?}"))?;
    }
    let pet = exact(&Graph::petersen(), 0, 4, BUDGET);
    ensure(pet == Some(3), || format!("c(Petersen) = {pet:?}"))?;
    let mut agree = 0;
    let mut wins = 0;
    for i in 0..RANDOM_GRAPHS {
        let g = random_graph(&mut rng);
        let (win, _) = cop_win(&GameConfig::new(&g, 1, 0).max_states(BUDGET)).map_err(|e| e.to_string())?;
        ensure(win == dismantlable(&g), || {
            format!("random graph {i}: solver {win}, oracle disagrees")
        })?;
        agree += 1;
        wins += win as usize;
    }
    let took = start.elapsed();
    ensure(took < SOLVER_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "trees, C_4..C_12, Petersen exact; {agree}/{RANDOM_GRAPHS} random graphs agree with dismantlability ({wins} cop-win); {:.1}s",
        took.as_secs_f64()
    ))
}

const CORPUS_CHECKS: [CheckId; 7] = [
    CheckId::Mono,
    CheckId::Subdiv,
    CheckId::TwoDPlus1,
    CheckId::Retract,
    CheckId::Boxtimes,
    CheckId::XxBounds,
    CheckId::Alpha,
];

fn corpus_checks() -> Outcome {
    let start = Instant::now();
    let params = CorpusParams {
        count: CORPUS_SIZE,
        ..CorpusParams::default()
    };
    let corpus = gen_corpus(2024, &params);
    ensure(corpus.entries.len() >= CORPUS_SIZE, || "corpus too small".into())?;
    for e in &corpus.entries {
        if e.kind != EntryKind::GeneratorDerived {
            ensure(e.drawing.n() <= CORPUS_N_MAX, || {
                format!("entry {} has n = {}", e.id, e.drawing.n())
            })?;
        }
    }
    let report = check_many(&corpus, &CORPUS_CHECKS, &VerifyOptions::default());
    ensure(report.accounts_for_all(), || "some entry has no record".into())?;
    if let Some(f) = report.failures().next() {
        return Err(format!(
            "{} failures, first: {} entry {} {}: {} vs {}",
            report.failed, f.check, f.instance, f.case, f.lhs, f.rhs
        ));
    }
    let mut per: BTreeMap<String, usize> = BTreeMap::new();
    for r in report.records.iter().filter(|r| r.status == Status::Pass) {
        *per.entry(r.check.to_string()).or_default() += 1;
    }
    for c in CORPUS_CHECKS {
        ensure(per.get(c.name()).copied().unwrap_or(0) > 0, || {
            format!("{c} never evaluated")
        })?;
    }
    let took = start.elapsed();
    ensure(took < CORPUS_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} entries, {} passed, 0 failed, {} skipped; per check {per:?}; {:.1}s",
        corpus.entries.len(),
        report.passed,
        report.skipped,
        took.as_secs_f64()
    ))
}

/// Flankers per side for each strategy row, with alpha = num/den.
fn beta_oracle(kind: Kind, num: u64, den: u64, d: u64) -> u64 {
    let alpha = num as f64 / den as f64;
    match (kind, num == den) {
        (Kind::Small, true) => d + 1,
        (Kind::Small, false) => (1.0 / (2.0 * (alpha - 1.0))).ceil() as u64 + 1,
        (Kind::Big, true) => d.saturating_sub(1),
        (Kind::Big, false) => (1.0 / (2.0 * (alpha - 1.0))).ceil() as u64,
    }
}

const ROWS: [(Kind, u64, u64); 6] = [
    (Kind::Big, 1, 1),
    (Kind::Small, 1, 1),
    (Kind::Big, 4, 3),
    (Kind::Small, 4, 3),
    (Kind::Big, 3, 2),
    (Kind::Small, 3, 2),
];

fn strategy_soundness() -> Outcome {
    let start = Instant::now();
    let params = CorpusParams {
        count: 120,
        kinds: vec![EntryKind::KiteAugmented],
        ..CorpusParams::default()
    };
    let corpus = gen_corpus(2024, &params);
    let (mut full, mut x_one, mut mixed, mut drawings, mut games) = (0, 0, 0, 0, 0);
    for e in &corpus.entries {
        let d = &e.drawing;
        if d.n() > KITE_N_MAX || d.crossings().is_empty() {
            continue;
        }
        ensure(d.profile().is_kite_augmented == Some(true), || {
            format!("entry {} not kite-augmented", e.id)
        })?;
        ensure(d.max_crossings_per_edge() <= 1, || {
            format!("entry {} not 1-plane", e.id)
        })?;
        let xx = d.xx_params();
        let (x, big_x) = (xx.x.finite().unwrap(), xx.big_x.finite().unwrap());
        let kinds: Vec<CrossingKind> = (0..d.crossings().len()).map(|c| d.classify_crossing(c)).collect();
        if kinds.iter().all(|&k| k == kinds[0]) {
            if big_x == 1 {
                full += 1;
            } else if x == 1 {
                x_one += 1;
            }
        } else {
            mixed += 1;
        }
        drawings += 1;
        for (kind, num, den) in ROWS {
            let alpha = Alpha::new(num, den).unwrap();
            let param = if kind == Kind::Big { big_x } else { x };
            let o = orchestrate(d, kind, alpha).map_err(|err| format!("entry {}: {err}", e.id))?;
            let size = 3 * (2 * beta_oracle(kind, num, den, param) as usize + 1);
            ensure(o.cop_count() == size, || {
                format!("entry {} {kind} {alpha}: {} cops, expected {size}", e.id, o.cop_count())
            })?;
            let radius = (param * num).div_ceil(den).saturating_sub(1);
            ensure(o.capture() == radius, || {
                format!("entry {} {kind} {alpha}: capture radius", e.id)
            })?;
            match best_response(d.graph(), &o, radius, BUDGET) {
                Ok(Certificate::Capture { .. }) => games += 1,
                Ok(Certificate::Escape { .. }) => return Err(format!("entry {} {kind} {alpha}: robber escapes", e.id)),
                Err(err) => return Err(format!("entry {} {kind} {alpha}: {err}", e.id)),
            }
        }
    }
    ensure(drawings >= KITE_DRAWINGS, || format!("only {drawings} drawings"))?;
    ensure(full > 0 && x_one > 0 && mixed > 0, || {
        format!("coverage X=1 {full}, x=1 {x_one}, mixed {mixed}")
    })?;
    let took = start.elapsed();
    ensure(took < STRATEGY_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{drawings} drawings (X=1: {full}, x=1: {x_one}, mixed: {mixed}), {games} games captured, 0 escapes; {:.1}s",
        took.as_secs_f64()
    ))
}

fn full_one_plane() -> Outcome {
    let params = CorpusParams {
        count: 40,
        n_min: 6,
        n_max: 12,
        crossing_density: 1.0,
        drop_rate: 0.0,
        kinds: vec![EntryKind::Random1Plane],
    };
    let mut checked = 0;
    for e in gen_corpus(5, &params).entries {
        let d = &e.drawing;
        if d.n() > FULL_N_MAX || d.crossings().is_empty() || !d.profile().all_full || d.max_crossings_per_edge() > 1 {
            continue;
        }
        let (win, _) = cop_win(&GameConfig::new(d.graph(), 3, 0).max_states(BUDGET)).map_err(|e| e.to_string())?;
        ensure(win, || format!("entry {}: three cops lose", e.id))?;
        checked += 1;
    }
    ensure(checked >= FULL_DRAWINGS, || {
        format!("only {checked} full 1-plane drawings")
    })?;
    Ok(format!("{checked} full 1-plane drawings, three cops win on all"))
}

fn map_graphs() -> Outcome {
    let params = CorpusParams {
        count: 30,
        kinds: vec![EntryKind::WitnessDerived],
        ..CorpusParams::default()
    };
    let mut checked = 0;
    let mut hist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in gen_corpus(9, &params).entries {
        let w = e.witness.as_ref().ok_or("witness missing")?;
        ensure(w.graph.n() <= MAP_SIZE_MAX, || {
            format!("entry {}: |V|+|F| = {}", e.id, w.graph.n())
        })?;
        let g = exact(e.drawing.graph(), 0, 3, BUDGET).ok_or_else(|| format!("entry {}: c(G) > 3", e.id))?;
        let h = exact(&w.graph, 0, 3, BUDGET).ok_or_else(|| format!("entry {}: c(H) > 3", e.id))?;
        ensure(g <= h, || format!("entry {}: c(G) = {g} > c(H) = {h}", e.id))?;
        *hist.entry((g, h)).or_default() += 1;
        checked += 1;
    }
    ensure(checked >= MAP_WITNESSES, || format!("only {checked} witnesses"))?;
    Ok(format!(
        "{checked} witnesses, c(G) <= c(H) <= 3; (c(G), c(H)) counts {hist:?}"
    ))
}

fn generators() -> Outcome {
    let mut structural = 0;
    let mut solved = Vec::new();
    let mut over_budget = Vec::new();
    for (name, base, m) in [("c4", bowtie_c4(), 2usize), ("petersen", petersen_star(), 3)] {
        for dist in 0..=1u64 {
            for f in 1..=4u64 {
                let d = gen_far_crossings(&base, dist, f).map_err(|e| e.to_string())?.drawing;
                let tag = format!("{name} d={dist} f={f}");
                ensure(d.validate().is_empty(), || format!("{tag}: invalid"))?;
                ensure(d.max_crossings_per_edge() <= 1, || format!("{tag}: not 1-plane"))?;
                let most = d.skeleton_regions().map_err(|e| e.to_string())?.crossings_per_region();
                ensure(most.iter().all(|&c| c <= 1), || {
                    format!("{tag}: two crossings in a skeleton face")
                })?;
                let fd = d.min_face_distance().map_err(|e| e.to_string())?;
                ensure(fd.is_none_or(|fd| fd >= f), || format!("{tag}: face distance {fd:?}"))?;
                structural += 1;
                match cop_win(&GameConfig::new(d.graph(), m - 1, dist).max_states(GENERATOR_BUDGET)) {
                    Ok((false, _)) => solved.push(tag),
                    Ok((true, _)) => return Err(format!("{tag}: {} cops win", m - 1)),
                    Err(SolverError::Budget { .. }) => over_budget.push(tag),
                    Err(e) => return Err(format!("{tag}: {e}")),
                }
            }
        }
    }
    ensure(solved.iter().filter(|t| t.starts_with("c4")).count() == 8, || {
        "c4 outputs not all solved".into()
    })?;
    for mu in [6usize, 7] {
        for (name, base) in [("c4", bowtie_c4()), ("petersen", petersen_star())] {
            let d = gen_large_x_drawing(&base, mu).map_err(|e| e.to_string())?.drawing;
            let x = d.xx_params().big_x.finite().ok_or("infinite X")?;
            let mu = mu as u64;
            ensure(mu <= x && x <= 3 * (mu + 1), || format!("{name} mu={mu}: X = {x}"))?;
        }
    }
    Ok(format!(
        "{structural} far-crossing outputs structurally sound; lower bound solved on {} ({}), over budget on {} ({}); large-X within [mu, 3(mu+1)] for mu in {{6, 7}}",
        solved.len(),
        solved.join(", "),
        over_budget.len(),
        over_budget.join(", ")
    ))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_copnum"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "copnum {}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let at = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let save = |name: &str, bytes: &[u8]| std::fs::write(Path::new(&at(name)), bytes).map_err(|e| e.to_string());
    let corpus = cli(&[
        "generate", "--gen", "corpus", "--seed", "11", "--count", "10", "--n-max", "7",
    ])?;
    save("corpus.json", &corpus)?;
    let kite = cli(&[
        "generate",
        "--gen",
        "corpus",
        "--seed",
        "3",
        "--count",
        "1",
        "--kinds",
        "kite-augmented",
    ])?;
    let doc: serde_json::Value = serde_json::from_slice(&kite).map_err(|e| e.to_string())?;
    save("kite.json", doc["entries"][0]["drawing"].to_string().as_bytes())?;
    let far = cli(&[
        "generate",
        "--gen",
        "far-crossings",
        "--base",
        "c4",
        "--dist",
        "0",
        "--f",
        "2",
    ])?;
    save("far.json", &far)?;
    let (corpus_p, kite_p, far_p) = (at("corpus.json"), at("kite.json"), at("far.json"));
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "generate", "--gen", "corpus", "--seed", "11", "--count", "10", "--n-max", "7",
        ],
        vec![
            "generate",
            "--gen",
            "far-crossings",
            "--base",
            "c4",
            "--dist",
            "0",
            "--f",
            "2",
        ],
        vec!["generate", "--gen", "large-X", "--base", "petersen", "--mu", "6"],
        vec!["params", &kite_p],
        vec!["solve", &kite_p, "--cops", "2", "--dist", "0"],
        vec!["solve", &far_p, "--dist", "0", "--p-max", "2"],
        vec!["transform", &kite_p, "--op", "subdivide", "2"],
        vec!["transform", &kite_p, "--op", "boxtimes"],
        vec!["transform", &far_p, "--op", "kite"],
        vec!["verify", &corpus_p, "--check", "all"],
        vec!["verify", &corpus_p, "--check", "RETRACT", "--table"],
        vec![
            "play",
            &kite_p,
            "--cop",
            "orchestrate",
            "X",
            "1",
            "--robber",
            "greedy",
            "--rounds",
            "60",
        ],
        vec!["play", &kite_p, "--cops", "3", "--robber", "optimal", "--rounds", "30"],
        vec!["export-dot", &kite_p],
    ];
    for args in &commands {
        let a = cli(args)?;
        let b = cli(args)?;
        ensure(!a.is_empty() && a == b, || {
            format!("`copnum {}` output differs between runs", args.join(" "))
        })?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("solver ground truth", solver_ground_truth),
        ("corpus inequalities", corpus_checks),
        ("strategy soundness", strategy_soundness),
        ("full 1-plane c(G) <= 3", full_one_plane),
        ("map graphs", map_graphs),
        ("generators", generators),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
