//! Combinatorial drawings of graphs on the sphere with declared crossings.
//!
//! A drawing is a graph, a list of crossing pairs of edges, the order in
//! which crossings occur along each edge (from the edge's first endpoint to
//! its second), and optionally a rotation system of the planarisation.
//!
//! Planarisation vertex ids: original vertices keep their ids `0..n`, and
//! crossing `c` becomes dummy vertex `n + c`.

mod faces;
mod geometry;
mod kites;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{pair_key, Graph, GraphError};

pub use faces::{FaceSet, Regions};
pub use geometry::straight_line;
pub use kites::{KiteSlot, Kites};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("invalid drawing: {0:?}")]
    Invalid(Vec<Diagnostic>),
    #[error("rotation system required")]
    RotationAbsent,
    #[error("crossing {0} out of range")]
    NoSuchCrossing(usize),
    #[error("drawing is not 1-plane")]
    NotOnePlane,
    #[error("face distance needs two distinct crossings")]
    SameCrossing,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A violated drawing invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    EdgeOutOfRange {
        crossing: usize,
        edge: usize,
    },
    DegenerateCrossing {
        crossing: usize,
    },
    AdjacentEdgesCross {
        crossing: usize,
    },
    OrderMismatch {
        edge: usize,
    },
    ParallelSegments {
        u: usize,
        v: usize,
    },
    RotationLength {
        expected: usize,
        found: usize,
    },
    RotationMismatch {
        vertex: usize,
    },
    NotAlternating {
        crossing: usize,
    },
    NotSpherical {
        v: usize,
        e: usize,
        f: usize,
        components: usize,
    },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::EdgeOutOfRange { crossing, edge } => {
                write!(f, "crossing {crossing} references missing edge {edge}")
            }
            Diagnostic::DegenerateCrossing { crossing } => {
                write!(f, "degenerate crossing {crossing}")
            }
            Diagnostic::AdjacentEdgesCross { crossing } => {
                write!(f, "crossing {crossing} joins edges sharing an endpoint")
            }
            Diagnostic::OrderMismatch { edge } => {
                write!(f, "crossing order of edge {edge} disagrees with the crossing list")
            }
            Diagnostic::ParallelSegments { u, v } => {
                write!(f, "planarisation has parallel segments between {u} and {v}")
            }
            Diagnostic::RotationLength { expected, found } => {
                write!(f, "rotation covers {found} vertices, expected {expected}")
            }
            Diagnostic::RotationMismatch { vertex } => {
                write!(f, "rotation at {vertex} is not a permutation of its neighbours")
            }
            Diagnostic::NotAlternating { crossing } => {
                write!(f, "rotation at crossing {crossing} does not alternate")
            }
            Diagnostic::NotSpherical {
                v,
                e,
                f: faces,
                components,
            } => write!(f, "not spherical: V - E + F = {v} - {e} + {faces} != 1 + {components}"),
        }
    }
}

/// A crossing between two edges, by edge id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub e1: usize,
    pub e2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    Full,
    XCrossing,
    Other,
    Degenerate,
}

/// A drawing parameter that may be infinite when endpoints are disconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Finite(u64),
    Infinite,
}

impl Param {
    pub fn finite(self) -> Option<u64> {
        match self {
            Param::Finite(v) => Some(v),
            Param::Infinite => None,
        }
    }
}

impl Serialize for Param {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

/// `(x, X)` of a drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XxParams {
    pub x: Param,
    #[serde(rename = "X")]
    pub big_x: Param,
}

/// The plane graph obtained by inserting a dummy vertex at every crossing.
#[derive(Clone, Debug)]
pub struct Planarisation {
    pub graph: Graph,
    /// Original edge of each planarisation edge.
    pub segment_of: Vec<usize>,
    /// Planarisation vertex chain of each original edge, endpoint to endpoint.
    pub chains: Vec<Vec<usize>>,
    /// Number of original vertices; dummies follow.
    pub n_original: usize,
}

impl Planarisation {
    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.n_original
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: Graph,
    crossings: Vec<Crossing>,
    edge_crossings: Vec<Vec<usize>>,
    rotation: Option<Vec<Vec<usize>>>,
}

impl Drawing {
    /// Assembles a drawing without validating it.
    pub fn from_parts(
        graph: Graph,
        crossings: Vec<Crossing>,
        edge_crossings: Vec<Vec<usize>>,
        rotation: Option<Vec<Vec<usize>>>,
    ) -> Self {
        Drawing {
            graph,
            crossings,
            edge_crossings,
            rotation,
        }
    }

    /// A crossing-free drawing with no rotation.
    pub fn plain(graph: Graph) -> Self {
        let m = graph.m();
        Drawing::from_parts(graph, Vec::new(), vec![Vec::new(); m], None)
    }

    /// Crossings in the given order; each edge lists its crossings by
    /// increasing crossing id.
    pub fn with_crossings(graph: Graph, pairs: &[(usize, usize)]) -> Self {
        let mut edge_crossings = vec![Vec::new(); graph.m()];
        let crossings: Vec<Crossing> = pairs.iter().map(|&(e1, e2)| Crossing { e1, e2 }).collect();
        for (i, c) in crossings.iter().enumerate() {
            for e in [c.e1, c.e2] {
                if e < edge_crossings.len() {
                    edge_crossings[e].push(i);
                }
            }
        }
        Drawing::from_parts(graph, crossings, edge_crossings, None)
    }

    /// Validates and returns the drawing, or the diagnostics.
    pub fn checked(self) -> Result<Self, DrawingError> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(self)
        } else {
            Err(DrawingError::Invalid(diags))
        }
    }

    pub fn with_rotation(mut self, rotation: Option<Vec<Vec<usize>>>) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> Crossing {
        self.crossings[c]
    }

    pub fn edge_crossings(&self) -> &[Vec<usize>] {
        &self.edge_crossings
    }

    pub fn rotation(&self) -> Option<&[Vec<usize>]> {
        self.rotation.as_deref()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn dummy(&self, c: usize) -> usize {
        self.graph.n() + c
    }

    pub fn is_crossed(&self, e: usize) -> bool {
        !self.edge_crossings[e].is_empty()
    }

    /// Edges crossing edge `e`, one entry per crossing.
    pub fn crossing_partners(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.edge_crossings[e].iter().map(move |&c| {
            let cr = self.crossings[c];
            if cr.e1 == e {
                cr.e2
            } else {
                cr.e1
            }
        })
    }

    pub fn max_crossings_per_edge(&self) -> usize {
        self.edge_crossings.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The four endpoints `[u, v, w, x]` where `e1 = (u, v)` and `e2 = (w, x)`.
    pub fn endpoints(&self, c: usize) -> [usize; 4] {
        let cr = self.crossings[c];
        let (u, v) = self.graph.edge(cr.e1);
        let (w, x) = self.graph.edge(cr.e2);
        [u, v, w, x]
    }

    /// The four consecutive endpoint pairs (one endpoint from each edge).
    pub fn consecutive_pairs(&self, c: usize) -> [(usize, usize); 4] {
        let [u, v, w, x] = self.endpoints(c);
        [(u, w), (u, x), (v, w), (v, x)]
    }

    /// All violated invariants; empty means valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let m = self.graph.m();
        let mut structural_ok = true;
        for (i, c) in self.crossings.iter().enumerate() {
            for e in [c.e1, c.e2] {
                if e >= m {
                    out.push(Diagnostic::EdgeOutOfRange { crossing: i, edge: e });
                    structural_ok = false;
                }
            }
            if c.e1 == c.e2 {
                out.push(Diagnostic::DegenerateCrossing { crossing: i });
                structural_ok = false;
            }
        }
        if self.edge_crossings.len() != m {
            out.push(Diagnostic::OrderMismatch { edge: m });
            return out;
        }
        if !structural_ok {
            return out;
        }
        for e in 0..m {
            let mut expected: Vec<usize> = self
                .crossings
                .iter()
                .enumerate()
                .filter(|(_, c)| c.e1 == e || c.e2 == e)
                .map(|(i, _)| i)
                .collect();
            let mut listed = self.edge_crossings[e].clone();
            expected.sort_unstable();
            listed.sort_unstable();
            if expected != listed {
                out.push(Diagnostic::OrderMismatch { edge: e });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let one_plane = self.max_crossings_per_edge() <= 1;
        if one_plane || self.rotation.is_some() {
            for c in 0..self.crossings.len() {
                let [u, v, w, x] = self.endpoints(c);
                if u == w || u == x || v == w || v == x {
                    out.push(Diagnostic::AdjacentEdgesCross { crossing: c });
                }
            }
        }
        if let Some(rot) = &self.rotation {
            let plan = match self.planarise_unchecked() {
                Ok(p) => p,
                Err(d) => {
                    out.extend(d);
                    return out;
                }
            };
            out.extend(faces::check_rotation(self, &plan, rot));
        }
        out
    }

    pub(crate) fn planarise_unchecked(&self) -> Result<Planarisation, Vec<Diagnostic>> {
        let n = self.graph.n();
        let mut edges = Vec::new();
        let mut segment_of = Vec::new();
        let mut chains = Vec::with_capacity(self.graph.m());
        let mut seen = BTreeSet::new();
        let mut diags = Vec::new();
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            let mut chain = vec![u];
            chain.extend(self.edge_crossings[e].iter().map(|&c| n + c));
            chain.push(v);
            for w in chain.windows(2) {
                if !seen.insert(pair_key(w[0], w[1])) {
                    diags.push(Diagnostic::ParallelSegments { u: w[0], v: w[1] });
                }
                edges.push((w[0], w[1]));
                segment_of.push(e);
            }
            chains.push(chain);
        }
        if !diags.is_empty() {
            return Err(diags);
        }
        let graph = Graph::new(n + self.crossings.len(), edges)
            .map_err(|_| vec![Diagnostic::ParallelSegments { u: 0, v: 0 }])?;
        Ok(Planarisation {
            graph,
            segment_of,
            chains,
            n_original: n,
        })
    }

    /// Splits every crossed edge at its crossings in stored order.
    pub fn planarise(&self) -> Result<Planarisation, DrawingError> {
        let diags: Vec<Diagnostic> = self
            .validate()
            .into_iter()
            .filter(|d| !matches!(d, Diagnostic::AdjacentEdgesCross { .. }))
            .collect();
        if !diags.is_empty() {
            return Err(DrawingError::Invalid(diags));
        }
        self.planarise_unchecked().map_err(DrawingError::Invalid)
    }

    /// Planarisation as a crossing-free drawing carrying this rotation.
    pub fn planarised_drawing(&self) -> Result<Drawing, DrawingError> {
        let p = self.planarise()?;
        Ok(Drawing::plain(p.graph).with_rotation(self.rotation.clone()))
    }

    /// The subgraph of uncrossed edges, on all vertices. Edge ids are
    /// renumbered in original order.
    pub fn skeleton(&self) -> Graph {
        let edges = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, _)| !self.is_crossed(e))
            .map(|(_, &uv)| uv)
            .collect::<Vec<_>>();
        let weights = (0..self.graph.m())
            .filter(|&e| !self.is_crossed(e))
            .map(|e| self.graph.weight(e))
            .collect();
        Graph::with_weights(self.graph.n(), edges, weights).expect("skeleton is a subgraph")
    }

    pub fn classify_crossing(&self, c: usize) -> CrossingKind {
        let ends = self.endpoints(c);
        let distinct: BTreeSet<usize> = ends.iter().copied().collect();
        if distinct.len() < 4 {
            return CrossingKind::Degenerate;
        }
        let mut induced = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.graph.has_edge(ends[i], ends[j]) {
                    induced += 1;
                }
            }
        }
        match induced {
            6 => CrossingKind::Full,
            2 => CrossingKind::XCrossing,
            _ => CrossingKind::Other,
        }
    }

    /// Distances between the four consecutive pairs of crossing `c`.
    pub fn pair_distances(&self, c: usize, dist: &[Vec<u32>]) -> [Param; 4] {
        self.consecutive_pairs(c).map(|(a, b)| {
            let d = dist[a][b];
            if d == crate::graph::UNREACHABLE {
                Param::Infinite
            } else {
                Param::Finite(d as u64)
            }
        })
    }

    /// `x` is the max over crossings of the closest consecutive pair, `X` the
    /// max over crossings of the farthest one. Crossing-free gives `(0, 0)`.
    pub fn xx_params(&self) -> XxParams {
        let dist = self.graph.all_pairs(crate::par::Execution::Sequential);
        self.xx_params_with(&dist)
    }

    pub fn xx_params_with(&self, dist: &[Vec<u32>]) -> XxParams {
        let mut x = Param::Finite(0);
        let mut big_x = Param::Finite(0);
        for c in 0..self.crossings.len() {
            let ds = self.pair_distances(c, dist);
            let lo = *ds.iter().min().unwrap();
            let hi = *ds.iter().max().unwrap();
            x = x.max(lo);
            big_x = big_x.max(hi);
        }
        XxParams { x, big_x }
    }

    pub fn faces(&self) -> Result<FaceSet, DrawingError> {
        let rot = self.rotation.as_ref().ok_or(DrawingError::RotationAbsent)?;
        let plan = self.planarise()?;
        Ok(FaceSet::trace(&plan.graph, rot))
    }

    /// Number of face-vertices on a shortest path between the two crossing
    /// points in the radial graph.
    pub fn face_distance(&self, c1: usize, c2: usize) -> Result<u64, DrawingError> {
        if c1 >= self.crossings.len() {
            return Err(DrawingError::NoSuchCrossing(c1));
        }
        if c2 >= self.crossings.len() {
            return Err(DrawingError::NoSuchCrossing(c2));
        }
        if c1 == c2 {
            return Err(DrawingError::SameCrossing);
        }
        let faces = self.faces()?;
        let n_plan = self.graph.n() + self.crossings.len();
        let radial = faces.radial_graph(n_plan);
        let d = radial.bfs(self.dummy(c1))[self.dummy(c2)];
        Ok(if d == crate::graph::UNREACHABLE {
            u64::MAX
        } else {
            d as u64 / 2
        })
    }

    /// Minimum pairwise face-distance over all crossing pairs (`None` with
    /// fewer than two crossings).
    pub fn min_face_distance(&self) -> Result<Option<u64>, DrawingError> {
        let k = self.crossings.len();
        if k < 2 {
            return Ok(None);
        }
        let faces = self.faces()?;
        let radial = faces.radial_graph(self.graph.n() + k);
        let mut best = u64::MAX;
        for c in 0..k {
            let dist = radial.bfs(self.dummy(c));
            for c2 in c + 1..k {
                let d = dist[self.dummy(c2)];
                if d != crate::graph::UNREACHABLE {
                    best = best.min(d as u64 / 2);
                }
            }
        }
        Ok(Some(best))
    }

    /// Regions of the sphere cut out by the skeleton, as unions of
    /// planarisation faces.
    pub fn skeleton_regions(&self) -> Result<Regions, DrawingError> {
        let rot = self.rotation.as_ref().ok_or(DrawingError::RotationAbsent)?;
        let plan = self.planarise()?;
        let faces = FaceSet::trace(&plan.graph, rot);
        Ok(Regions::build(self, &plan, &faces))
    }

    pub fn kites(&self) -> Result<Kites, DrawingError> {
        kites::find(self)
    }

    pub fn profile(&self) -> Profile {
        faces::profile(self)
    }
}

/// Structural summary of a drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    /// Minimal k with every edge crossed at most k times.
    pub is_k_plane: usize,
    /// Minimal k bounding skeleton face sizes; `None` when the skeleton is
    /// not simple, biconnected and spanning, or without rotation.
    pub is_k_framed: Option<usize>,
    /// `None` when a rotation would be needed to decide.
    pub is_kite_augmented: Option<bool>,
    pub all_full: bool,
    pub no_x_crossings: bool,
}

#[cfg(test)]
mod tests;
