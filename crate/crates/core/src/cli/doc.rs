use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use crate::drawing::{Crossing, Drawing};
use crate::graph::Graph;
use crate::verify::{Corpus, CorpusEntry, CorpusParams, EntryKind, Origin, Witness};

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingDoc {
    pub e1: usize,
    pub e2: usize,
}

/// The JSON form of a drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub version: u32,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub crossings: Vec<CrossingDoc>,
    /// Crossing ids along each crossed edge, from its first endpoint.
    #[serde(default)]
    pub edge_crossing_order: BTreeMap<usize, Vec<usize>>,
    /// Cyclic neighbour order per planarisation vertex (dummy `n + c` for
    /// crossing `c`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

impl DrawingDocument {
    pub fn from_drawing(d: &Drawing) -> Self {
        let g = d.graph();
        DrawingDocument {
            version: VERSION,
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingDoc { e1: c.e1, e2: c.e2 })
                .collect(),
            edge_crossing_order: d
                .edge_crossings()
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty())
                .map(|(e, l)| (e, l.clone()))
                .collect(),
            rotation: d.rotation().map(|r| r.to_vec()),
            weights: g.weights().map(|w| w.to_vec()),
        }
    }

    /// The drawing, rejected unless it validates. An edge missing from
    /// `edge_crossing_order` may carry at most one crossing.
    pub fn to_drawing(&self) -> Result<Drawing> {
        ensure!(
            self.version == VERSION,
            "unsupported document version {} (expected {VERSION})",
            self.version
        );
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = match &self.weights {
            Some(w) => Graph::with_weights(self.n, edges, w.clone()),
            None => Graph::new(self.n, edges),
        }
        .context("invalid graph")?;
        let m = graph.m();
        let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (c, x) in self.crossings.iter().enumerate() {
            for e in [x.e1, x.e2] {
                ensure!(e < m, "crossing {c} names edge {e}, only {m} edges");
                on_edge[e].push(c);
            }
        }
        let mut order = vec![Vec::new(); m];
        for (&e, list) in &self.edge_crossing_order {
            ensure!(e < m, "edge_crossing_order names edge {e}, only {m} edges");
            order[e] = list.clone();
        }
        for e in 0..m {
            if order[e].is_empty() && !on_edge[e].is_empty() {
                if on_edge[e].len() > 1 {
                    bail!("edge {e} has {} crossings but no order", on_edge[e].len());
                }
                order[e] = on_edge[e].clone();
            }
        }
        let crossings = self.crossings.iter().map(|x| Crossing { e1: x.e1, e2: x.e2 }).collect();
        Drawing::from_parts(graph, crossings, order, self.rotation.clone())
            .checked()
            .context("invalid drawing")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    /// The point (face) vertices.
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub id: usize,
    pub kind: EntryKind,
    pub origin: Origin,
    pub drawing: DrawingDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDocument {
    pub version: u32,
    pub seed: u64,
    pub params: CorpusParams,
    pub entries: Vec<EntryDoc>,
}

impl CorpusDocument {
    pub fn from_corpus(c: &Corpus) -> Self {
        CorpusDocument {
            version: VERSION,
            seed: c.seed,
            params: c.params.clone(),
            entries: c
                .entries
                .iter()
                .map(|e| EntryDoc {
                    id: e.id,
                    kind: e.kind,
                    origin: e.origin.clone(),
                    drawing: DrawingDocument::from_drawing(&e.drawing),
                    witness: e.witness.as_ref().map(|w| WitnessDoc {
                        n: w.graph.n(),
                        edges: w.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
                        faces: (0..w.graph.n()).filter(|&v| w.is_face[v]).collect(),
                    }),
                })
                .collect(),
        }
    }

    pub fn to_corpus(&self) -> Result<Corpus> {
        ensure!(self.version == VERSION, "unsupported corpus version {}", self.version);
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            ensure!(e.id == i, "entry ids must be 0, 1, 2, ... (entry {i} has id {})", e.id);
            let drawing = e.drawing.to_drawing().with_context(|| format!("entry {i}"))?;
            let witness = match &e.witness {
                Some(w) => {
                    let graph = Graph::new(w.n, w.edges.iter().map(|&[u, v]| (u, v)).collect())
                        .with_context(|| format!("witness of entry {i}"))?;
                    let mut is_face = vec![false; w.n];
                    for &f in &w.faces {
                        ensure!(f < w.n, "witness of entry {i}: face vertex {f} out of range");
                        is_face[f] = true;
                    }
                    Some(Witness { graph, is_face })
                }
                None => None,
            };
            entries.push(CorpusEntry {
                id: e.id,
                kind: e.kind,
                origin: e.origin.clone(),
                drawing,
                witness,
            });
        }
        Ok(Corpus {
            seed: self.seed,
            params: self.params.clone(),
            entries,
        })
    }
}
