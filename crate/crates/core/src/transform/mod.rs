//! Constructions on drawings: subdivision, 1-planarisation, kite
//! augmentation, map graphs from witnesses, retractions and generators.

mod generators;
mod kite;

use serde::Serialize;
use thiserror::Error;

use crate::drawing::{Crossing, Diagnostic, Drawing, DrawingError};
use crate::graph::{Graph, GraphError};

pub use generators::{
    check_retract, fold_corner, gen_far_crossings, gen_large_x, gen_large_x_drawing, large_x_subdivision,
    map_from_witness, CornerFold,
};
pub use kite::kite_augment;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("invalid input drawing: {0:?}")]
    InvalidDrawing(Vec<Diagnostic>),
    #[error("subdivision factor must be at least 1")]
    ZeroK,
    #[error("weighted graphs are not supported here")]
    Weighted,
    #[error("drawing is not 1-plane")]
    NotOnePlane,
    #[error("rotation system required")]
    RotationAbsent,
    #[error("crossing {crossing}: endpoints {u} and {w} are disconnected")]
    Disconnected { crossing: usize, u: usize, w: usize },
    #[error("crossing {crossing}: a kite between {u} and {w} would duplicate a crossed edge")]
    ParallelKite { crossing: usize, u: usize, w: usize },
    #[error("crossing {0} cannot be pinned to the requested endpoints")]
    PinUnavailable(usize),
    #[error("vertex parts do not form a bipartition of the witness")]
    NotBipartition,
    #[error("graph must have diameter 2, found {0:?}")]
    DiameterNotTwo(Option<u32>),
    #[error("mu must be at least 6")]
    MuTooSmall,
    #[error("map covers {found} vertices, graph has {expected}")]
    MapNotTotal { expected: usize, found: usize },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a vertex of a constructed drawing came from, relative to the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexOrigin {
    Original {
        vertex: usize,
    },
    /// `step`-th interior vertex on the path replacing input edge `edge`.
    Subdivision {
        edge: usize,
        step: usize,
    },
    /// `step`-th interior vertex of the kite path of `crossing` from
    /// `ends.0` to `ends.1`.
    Kite {
        crossing: usize,
        ends: (usize, usize),
        step: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum EdgeOrigin {
    Original {
        edge: usize,
    },
    Segment {
        edge: usize,
        step: usize,
    },
    Kite {
        crossing: usize,
        ends: (usize, usize),
        step: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub vertices: Vec<VertexOrigin>,
    pub edges: Vec<EdgeOrigin>,
}

impl Provenance {
    pub fn identity(g: &Graph) -> Self {
        Provenance {
            vertices: (0..g.n()).map(|vertex| VertexOrigin::Original { vertex }).collect(),
            edges: (0..g.m()).map(|edge| EdgeOrigin::Original { edge }).collect(),
        }
    }

    /// Expresses `self` (relative to an intermediate drawing) relative to the
    /// input that `earlier` started from.
    pub fn after(self, earlier: &Provenance) -> Provenance {
        Provenance {
            vertices: self
                .vertices
                .into_iter()
                .map(|o| match o {
                    VertexOrigin::Original { vertex } => earlier.vertices[vertex].clone(),
                    other => other,
                })
                .collect(),
            edges: self
                .edges
                .into_iter()
                .map(|o| match o {
                    EdgeOrigin::Original { edge } => earlier.edges[edge].clone(),
                    other => other,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub drawing: Drawing,
    pub provenance: Provenance,
    pub k_used: Option<usize>,
    /// For kite augmentation: a retraction of the output onto the input
    /// graph (input vertices keep their ids).
    pub retraction: Option<Vec<usize>>,
}

/// Which segment of a subdivided edge each crossing lands on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Placement {
    /// Crossing `i` of `j` on an edge goes to segment `floor((2i + 1) k / 2j)`,
    /// so crossings stay apart and away from the original endpoints.
    #[default]
    Centered,
    /// Crossing `crossing` sits on the segments touching `ends`, one endpoint
    /// of each of its edges; the rest are centered on the remaining segments.
    Pinned { crossing: usize, ends: (usize, usize) },
}

fn centered(j: usize, lo: usize, hi: usize) -> Vec<usize> {
    let k = hi - lo;
    (0..j).map(|i| lo + (2 * i + 1) * k / (2 * j)).collect()
}

pub(crate) fn require_valid(d: &Drawing) -> Result<(), TransformError> {
    let diags = d.validate();
    if diags.is_empty() {
        Ok(())
    } else {
        Err(TransformError::InvalidDrawing(diags))
    }
}

/// Replaces every edge by a path of `k` unit edges.
pub fn subdivide(d: &Drawing, k: usize) -> Result<TransformResult, TransformError> {
    subdivide_with(d, k, Placement::Centered)
}

pub fn subdivide_with(d: &Drawing, k: usize, placement: Placement) -> Result<TransformResult, TransformError> {
    if k == 0 {
        return Err(TransformError::ZeroK);
    }
    if !d.graph().is_unit() {
        return Err(TransformError::Weighted);
    }
    require_valid(d)?;
    let g = d.graph();
    let (n, m) = (g.n(), g.m());
    let mut seg: Vec<Vec<usize>> = d.edge_crossings().iter().map(|l| centered(l.len(), 0, k)).collect();
    if let Placement::Pinned { crossing, ends } = placement {
        if crossing >= d.crossings().len() {
            return Err(TransformError::PinUnavailable(crossing));
        }
        let Crossing { e1, e2 } = d.crossing(crossing);
        for (e, end) in [(e1, ends.0), (e2, ends.1)] {
            let list = &d.edge_crossings()[e];
            let (a, b) = g.edge(e);
            let j = list.len();
            if j > k {
                return Err(TransformError::PinUnavailable(crossing));
            }
            seg[e] = if end == a && list[0] == crossing {
                std::iter::once(0).chain(centered(j - 1, 1, k)).collect()
            } else if end == b && list[j - 1] == crossing {
                centered(j - 1, 0, k - 1)
                    .into_iter()
                    .chain(std::iter::once(k - 1))
                    .collect()
            } else {
                return Err(TransformError::PinUnavailable(crossing));
            };
        }
    }

    let sub = |e: usize, i: usize| n + e * (k - 1) + (i - 1);
    let chain = |e: usize| -> Vec<usize> {
        let (u, v) = g.edge(e);
        let mut c = vec![u];
        c.extend((1..k).map(|i| sub(e, i)));
        c.push(v);
        c
    };
    let n_new = n + m * (k - 1);
    let mut edges = Vec::with_capacity(m * k);
    let mut vertices: Vec<VertexOrigin> = (0..n).map(|vertex| VertexOrigin::Original { vertex }).collect();
    let mut edge_origin = Vec::with_capacity(m * k);
    for e in 0..m {
        let c = chain(e);
        for i in 0..k {
            edges.push((c[i], c[i + 1]));
            edge_origin.push(if k == 1 {
                EdgeOrigin::Original { edge: e }
            } else {
                EdgeOrigin::Segment { edge: e, step: i }
            });
        }
        vertices.extend((1..k).map(|step| VertexOrigin::Subdivision { edge: e, step }));
    }
    let graph = Graph::new(n_new, edges)?;
    let position = |e: usize, c: usize| d.edge_crossings()[e].iter().position(|&x| x == c).unwrap();
    let crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(c, cr)| Crossing {
            e1: cr.e1 * k + seg[cr.e1][position(cr.e1, c)],
            e2: cr.e2 * k + seg[cr.e2][position(cr.e2, c)],
        })
        .collect();
    let mut edge_crossings = vec![Vec::new(); m * k];
    for e in 0..m {
        for (j, &c) in d.edge_crossings()[e].iter().enumerate() {
            edge_crossings[e * k + seg[e][j]].push(c);
        }
    }
    let mut out = Drawing::from_parts(graph, crossings, edge_crossings, None);
    if let Some(rot) = d.rotation() {
        let rotation = remap_rotation(d, &out, rot, k)?;
        out = out.with_rotation(Some(rotation));
    }
    require_valid(&out)?;
    Ok(TransformResult {
        drawing: out,
        provenance: Provenance {
            vertices,
            edges: edge_origin,
        },
        k_used: Some(k),
        retraction: None,
    })
}

/// Carries the rotation of `old` over to its subdivision `new`: each old
/// planarisation dart is redirected to the first new vertex along the same
/// edge; subdivision vertices are degree 2.
fn remap_rotation(
    old: &Drawing,
    new: &Drawing,
    rot: &[Vec<usize>],
    k: usize,
) -> Result<Vec<Vec<usize>>, TransformError> {
    let p_old = old.planarise()?;
    let p_new = new.planarise_unchecked().map_err(TransformError::InvalidDrawing)?;
    let (n, n_new) = (old.n(), new.n());
    let map = |a: usize| if a < n { a } else { n_new + (a - n) };
    // full new chain of each old edge
    let full: Vec<Vec<usize>> = (0..old.graph().m())
        .map(|e| {
            let mut c: Vec<usize> = Vec::new();
            for i in 0..k {
                for &v in &p_new.chains[e * k + i] {
                    if c.last() != Some(&v) {
                        c.push(v);
                    }
                }
            }
            c
        })
        .collect();
    let mut out = vec![Vec::new(); p_new.graph.n()];
    for (a, nbrs) in rot.iter().enumerate() {
        out[map(a)] = nbrs
            .iter()
            .map(|&b| {
                let s = p_old.graph.edge_id(a, b).expect("rotation lists neighbours");
                let e = p_old.segment_of[s];
                let oc = &p_old.chains[e];
                let i = oc.iter().position(|&x| x == a).unwrap();
                let forward = i + 1 < oc.len() && oc[i + 1] == b;
                let nc = &full[e];
                let j = nc.iter().position(|&x| x == map(a)).unwrap();
                if forward {
                    nc[j + 1]
                } else {
                    nc[j - 1]
                }
            })
            .collect();
    }
    for (v, r) in out.iter_mut().enumerate().take(n_new).skip(n) {
        *r = p_new.graph.neighbors(v).to_vec();
    }
    Ok(out)
}

/// Subdivides so that every edge is crossed at most once, with `k` the
/// largest number of crossings on one edge.
pub fn one_planarise(d: &Drawing) -> Result<TransformResult, TransformError> {
    let k = d.max_crossings_per_edge().max(1);
    subdivide(d, k)
}

/// One-planarise, then kite-augment.
pub fn boxtimes(d: &Drawing) -> Result<TransformResult, TransformError> {
    let first = one_planarise(d)?;
    let second = kite_augment(&first.drawing)?;
    Ok(TransformResult {
        drawing: second.drawing,
        provenance: second.provenance.after(&first.provenance),
        k_used: first.k_used,
        retraction: second.retraction,
    })
}
