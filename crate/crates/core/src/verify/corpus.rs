use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drawing::{straight_line, Drawing};
use crate::fixtures;
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::transform::{boxtimes, gen_far_crossings, gen_large_x_drawing, map_from_witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    RandomPlanar,
    Random1Plane,
    KiteAugmented,
    WitnessDerived,
    GeneratorDerived,
}

impl EntryKind {
    pub const ALL: [EntryKind; 5] = [
        EntryKind::RandomPlanar,
        EntryKind::Random1Plane,
        EntryKind::KiteAugmented,
        EntryKind::WitnessDerived,
        EntryKind::GeneratorDerived,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntryKind::RandomPlanar => "random-planar",
            EntryKind::Random1Plane => "random-1-plane",
            EntryKind::KiteAugmented => "kite-augmented",
            EntryKind::WitnessDerived => "witness-derived",
            EntryKind::GeneratorDerived => "generator-derived",
        }
    }
}

impl std::str::FromStr for EntryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        EntryKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown corpus kind `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Probability that a candidate chord is inserted.
    pub crossing_density: f64,
    /// Probability that an uncrossed edge is dropped (connectivity kept).
    pub drop_rate: f64,
    pub kinds: Vec<EntryKind>,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            count: 100,
            n_min: 5,
            n_max: 9,
            crossing_density: 0.5,
            drop_rate: 0.3,
            kinds: EntryKind::ALL.to_vec(),
        }
    }
}

impl CorpusParams {
    pub fn check(&self) -> Result<(), String> {
        if self.n_min < 3 || self.n_min > self.n_max {
            return Err(format!("need 3 <= n_min <= n_max, got {}..={}", self.n_min, self.n_max));
        }
        if !(0.0..=1.0).contains(&self.crossing_density) || !(0.0..=1.0).contains(&self.drop_rate) {
            return Err("densities must lie in [0, 1]".into());
        }
        if self.kinds.is_empty() {
            return Err("no corpus kinds".into());
        }
        Ok(())
    }
}

/// A bipartite planar witness: `graph` with point vertices flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    pub is_face: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "from", rename_all = "snake_case")]
pub enum Origin {
    Triangulation {
        n: usize,
        chords: usize,
        dropped: usize,
    },
    Boxtimes {
        n: usize,
        chords: usize,
        dropped: usize,
        k: usize,
    },
    MapWitness {
        vertices: usize,
        faces: usize,
        removed: usize,
    },
    FarCrossings {
        seed: String,
        m: usize,
        dist: u64,
        f: u64,
    },
    LargeX {
        seed: String,
        m: usize,
        mu: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: usize,
    pub kind: EntryKind,
    pub origin: Origin,
    pub drawing: Drawing,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub seed: u64,
    pub params: CorpusParams,
    pub entries: Vec<CorpusEntry>,
}

struct Sketch {
    pos: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
    chords: usize,
    dropped: usize,
}

impl Sketch {
    fn drawing(&self) -> Drawing {
        let g = Graph::new(self.pos.len(), self.edges.clone()).expect("simple sketch");
        straight_line(g, &self.pos)
    }
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn connected_without(n: usize, edges: &[(usize, usize)], skip: usize) -> bool {
    let kept = edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e);
    Graph::from_edges_dedup(n, kept).is_connected()
}

/// A random stacked triangulation on `n` vertices, then chords across
/// shared edges of adjacent triangles, then random uncrossed edge drops.
fn sketch(rng: &mut ChaCha8Rng, n: usize, density: f64, drop_rate: f64) -> Sketch {
    let mut pos = vec![(0.0, 0.0), (1000.0, 0.0), (500.0, 866.0)];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..n {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        let w: [f64; 3] = [
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.5..4.0),
        ];
        let s = w[0] + w[1] + w[2];
        pos.push((
            (w[0] * pos[a].0 + w[1] * pos[b].0 + w[2] * pos[c].0) / s,
            (w[0] * pos[a].1 + w[1] * pos[b].1 + w[2] * pos[c].1) / s,
        ));
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }

    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    let mut shared: Vec<((usize, usize), Vec<usize>)> = by_edge.into_iter().filter(|(_, f)| f.len() == 2).collect();
    shared.sort();
    shared.shuffle(rng);
    let present: HashSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut used = vec![false; faces.len()];
    let mut crossed: HashSet<(usize, usize)> = HashSet::new();
    let mut chords = Vec::new();
    for ((a, b), fs) in shared {
        let (f1, f2) = (fs[0], fs[1]);
        if used[f1] || used[f2] || !rng.gen_bool(density) {
            continue;
        }
        let third = |f: usize| *faces[f].iter().find(|&&v| v != a && v != b).unwrap();
        let (c, d) = (third(f1), third(f2));
        if present.contains(&(c.min(d), c.max(d))) {
            continue;
        }
        let proper = orient(pos[a], pos[b], pos[c]) * orient(pos[a], pos[b], pos[d]) < 0.0
            && orient(pos[c], pos[d], pos[a]) * orient(pos[c], pos[d], pos[b]) < 0.0;
        if !proper {
            continue;
        }
        used[f1] = true;
        used[f2] = true;
        crossed.insert((a, b));
        crossed.insert((c.min(d), c.max(d)));
        chords.push((c, d));
    }
    let chord_count = chords.len();
    edges.extend(chords);

    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(rng);
    let mut gone = vec![false; edges.len()];
    let mut dropped = 0;
    for i in order {
        let (a, b) = edges[i];
        if crossed.contains(&(a.min(b), a.max(b))) || !rng.gen_bool(drop_rate) {
            continue;
        }
        let live: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| !gone[j])
            .map(|(_, &e)| e)
            .collect();
        let at = live.iter().position(|&e| e == (a, b)).unwrap();
        if connected_without(n, &live, at) {
            gone[i] = true;
            dropped += 1;
        }
    }
    let edges = edges
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| !gone[i])
        .map(|(_, e)| e)
        .collect();
    Sketch {
        pos,
        edges,
        chords: chord_count,
        dropped,
    }
}

/// A sketch whose straight-line drawing is valid and has exactly one
/// crossing per chord.
fn clean_sketch(rng: &mut ChaCha8Rng, n: usize, density: f64, drop_rate: f64) -> (Sketch, Drawing) {
    loop {
        let s = sketch(rng, n, density, drop_rate);
        let d = s.drawing();
        if d.validate().is_empty() && d.crossings().len() == s.chords {
            return (s, d);
        }
    }
}

fn planar_entry(rng: &mut ChaCha8Rng, p: &CorpusParams) -> (Origin, Drawing) {
    let n = rng.gen_range(p.n_min..=p.n_max);
    let (s, d) = clean_sketch(rng, n, 0.0, p.drop_rate);
    (
        Origin::Triangulation {
            n,
            chords: 0,
            dropped: s.dropped,
        },
        d,
    )
}

fn one_plane_entry(rng: &mut ChaCha8Rng, p: &CorpusParams) -> (Origin, Drawing) {
    let n = rng.gen_range(p.n_min..=p.n_max);
    let (s, d) = clean_sketch(rng, n, p.crossing_density, p.drop_rate);
    (
        Origin::Triangulation {
            n,
            chords: s.chords,
            dropped: s.dropped,
        },
        d,
    )
}

fn kite_entry(rng: &mut ChaCha8Rng, p: &CorpusParams) -> (Origin, Drawing) {
    for _ in 0..64 {
        let n = rng.gen_range(p.n_min..=p.n_max);
        let drop = [0.0, p.drop_rate / 2.0, p.drop_rate][rng.gen_range(0..3)];
        let (s, d) = clean_sketch(rng, n, p.crossing_density, drop);
        if let Ok(r) = boxtimes(&d) {
            return (
                Origin::Boxtimes {
                    n,
                    chords: s.chords,
                    dropped: s.dropped,
                    k: r.k_used.unwrap_or(1),
                },
                r.drawing,
            );
        }
    }
    let n = p.n_min;
    let (_, d) = clean_sketch(rng, n, 0.0, 0.0);
    (
        Origin::Boxtimes {
            n,
            chords: 0,
            dropped: 0,
            k: 1,
        },
        d,
    )
}

/// The vertex-face incidence graph of a random plane graph with some edges
/// removed, and the map graph it witnesses.
fn witness_entry(rng: &mut ChaCha8Rng, p: &CorpusParams) -> (Origin, Drawing, Witness) {
    let n = rng.gen_range(3..=6);
    let (_, plane) = clean_sketch(rng, n, 0.0, p.drop_rate);
    let faces = plane.faces().expect("plane sketch has faces");
    let f = faces.len();
    let mut edges = Vec::new();
    for i in 0..f {
        for v in faces.vertices(i) {
            edges.push((v, n + i));
        }
    }
    let mut h = Graph::from_edges_dedup(n + f, edges);
    let mut removed = 0;
    let mut order: Vec<(usize, usize)> = h.edges().to_vec();
    order.shuffle(rng);
    for target in order {
        if !rng.gen_bool(p.drop_rate / 2.0) {
            continue;
        }
        let live = h.edges().to_vec();
        let at = live.iter().position(|&x| x == target).unwrap();
        if connected_without(n + f, &live, at) {
            h = Graph::from_edges_dedup(
                n + f,
                live.iter().enumerate().filter(|&(i, _)| i != at).map(|(_, &x)| x),
            );
            removed += 1;
        }
    }
    let is_face: Vec<bool> = (0..n + f).map(|v| v >= n).collect();
    let (g, _) = map_from_witness(&h, &is_face).expect("bipartite witness");
    (
        Origin::MapWitness {
            vertices: n,
            faces: f,
            removed,
        },
        Drawing::plain(g),
        Witness { graph: h, is_face },
    )
}

const GENERATORS: [(&str, u64, u64); 6] = [
    ("c4", 0, 1),
    ("petersen", 0, 1),
    ("c4", 1, 2),
    ("petersen", 0, 2),
    ("c4", 0, 3),
    ("c4", 1, 4),
];

fn generator_entry(slot: usize) -> (Origin, Drawing) {
    let i = slot % (GENERATORS.len() + 2);
    if i >= GENERATORS.len() {
        let mu = 6 + (i - GENERATORS.len());
        let r = gen_large_x_drawing(&fixtures::petersen_star(), mu).expect("petersen has diameter 2");
        return (
            Origin::LargeX {
                seed: "petersen".into(),
                m: 3,
                mu,
            },
            r.drawing,
        );
    }
    let (seed, dist, f) = GENERATORS[i];
    let (base, m) = match seed {
        "c4" => (fixtures::bowtie_c4(), 2),
        _ => (fixtures::petersen_star(), 3),
    };
    let r = gen_far_crossings(&base, dist, f).expect("seed drawings are valid");
    (
        Origin::FarCrossings {
            seed: seed.into(),
            m,
            dist,
            f,
        },
        r.drawing,
    )
}

fn entry(seed: u64, p: &CorpusParams, id: usize) -> CorpusEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    let kind = p.kinds[id % p.kinds.len()];
    let slot = id / p.kinds.len();
    let (origin, drawing, witness) = match kind {
        EntryKind::RandomPlanar => {
            let (o, d) = planar_entry(&mut rng, p);
            (o, d, None)
        }
        EntryKind::Random1Plane => {
            let (o, d) = one_plane_entry(&mut rng, p);
            (o, d, None)
        }
        EntryKind::KiteAugmented => {
            let (o, d) = kite_entry(&mut rng, p);
            (o, d, None)
        }
        EntryKind::WitnessDerived => {
            let (o, d, w) = witness_entry(&mut rng, p);
            (o, d, Some(w))
        }
        EntryKind::GeneratorDerived => {
            let (o, d) = generator_entry(slot);
            (o, d, None)
        }
    };
    CorpusEntry {
        id,
        kind,
        origin,
        drawing,
        witness,
    }
}

/// A reproducible corpus: entry `i` draws from its own stream of the seed,
/// with kinds assigned round-robin.
pub fn gen_corpus(seed: u64, params: &CorpusParams) -> Corpus {
    gen_corpus_with(seed, params, Execution::Parallel)
}

pub fn gen_corpus_with(seed: u64, params: &CorpusParams, exec: Execution) -> Corpus {
    let entries = par::map_collect(exec, params.count, |i| entry(seed, params, i));
    Corpus {
        seed,
        params: params.clone(),
        entries,
    }
}
