//! Finite simple undirected graphs over dense vertex ids, with metric queries.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Execution};

/// Marker for "no path" in dense distance tables.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    InvalidVertex(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge weight must be at least 1 (edge {0})")]
    ZeroWeight(usize),
    #[error("weight list has {0} entries for {1} edges")]
    WeightCount(usize, usize),
    #[error("vertex {0} is forbidden")]
    ForbiddenStart(usize),
}

/// Normalised key of an unordered vertex pair.
#[inline]
pub fn pair_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite simple undirected graph. Edge ids are the positions in `edges`;
/// each edge keeps the orientation it was created with, which drawings use to
/// order crossings along the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<u32>>,
    adj: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        Self::build(n, edges, None)
    }

    pub fn with_weights(n: usize, edges: Vec<(usize, usize)>, weights: Vec<u32>) -> Result<Self, GraphError> {
        if weights.len() != edges.len() {
            return Err(GraphError::WeightCount(weights.len(), edges.len()));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(GraphError::ZeroWeight(i));
        }
        let weights = if weights.iter().all(|&w| w == 1) {
            None
        } else {
            Some(weights)
        };
        Self::build(n, edges, weights)
    }

    fn build(n: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<u32>>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n {
                return Err(GraphError::InvalidVertex(u, n));
            }
            if v >= n {
                return Err(GraphError::InvalidVertex(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if index.insert(pair_key(u, v), i).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            weights,
            adj,
            index,
        })
    }

    /// Builds a graph from an edge list, silently dropping loops and repeats.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u != v && seen.insert(pair_key(u, v)) {
                list.push((u, v));
            }
        }
        Self::new(n, list).expect("deduplicated edge list is valid")
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, Vec::new()).unwrap()
    }

    pub fn path_graph(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Self::new(n, e).unwrap()
    }

    /// Petersen graph: outer cycle 0..5, spokes i -- i+5, inner pentagram.
    pub fn petersen() -> Self {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            e.push((i, i + 5));
        }
        for i in 0..5 {
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, e).unwrap()
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let id = |r: usize, c: usize| r * cols + c;
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    e.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    e.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Self::new(rows * cols, e).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&pair_key(u, v)).copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&pair_key(u, v))
    }

    #[inline]
    pub fn weight(&self, id: usize) -> u32 {
        self.weights.as_ref().map_or(1, |w| w[id])
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_unit(&self) -> bool {
        self.weights.is_none()
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v, self.n))
        }
    }

    /// Exact shortest-path distances from `s`; `None` marks unreachable vertices.
    pub fn distances(&self, s: usize) -> Result<Vec<Option<u64>>, GraphError> {
        self.check(s)?;
        Ok(self
            .dist_from(s)
            .into_iter()
            .map(|d| (d != u64::MAX).then_some(d))
            .collect())
    }

    fn dist_from(&self, s: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.n];
        dist[s] = 0;
        if self.is_unit() {
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == u64::MAX {
                        dist[v] = dist[u] + 1;
                        q.push_back(v);
                    }
                }
            }
        } else {
            let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &v in &self.adj[u] {
                    let nd = d + self.weight(self.edge_id(u, v).unwrap()) as u64;
                    if nd < dist[v] {
                        dist[v] = nd;
                        heap.push(Reverse((nd, v)));
                    }
                }
            }
        }
        dist
    }

    /// Hop-count BFS distances (ignores weights), `UNREACHABLE` for no path.
    pub fn bfs(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Dense weighted distance table, row per source.
    pub fn all_pairs(&self, exec: Execution) -> Vec<Vec<u32>> {
        par::map_collect(exec, self.n, |s| {
            self.dist_from(s)
                .into_iter()
                .map(|d| if d == u64::MAX { UNREACHABLE } else { d as u32 })
                .collect()
        })
    }

    /// A minimum-length path; among equal-length options every vertex takes
    /// its lowest-id optimal predecessor.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Path> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let dist = self.dist_from(u);
        if dist[v] == u64::MAX {
            return None;
        }
        let mut rev = vec![v];
        let mut cur = v;
        while cur != u {
            let pred = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| {
                    dist[w] != u64::MAX && dist[w] + self.weight(self.edge_id(w, cur).unwrap()) as u64 == dist[cur]
                })
                .expect("a finite distance has an optimal predecessor");
            rev.push(pred);
            cur = pred;
        }
        rev.reverse();
        Some(Path {
            vertices: rev,
            length: dist[v],
        })
    }

    /// Maximal connected subgraph containing `v` that avoids the forbidden
    /// vertices and edge ids.
    pub fn component_of(
        &self,
        v: usize,
        forbidden_vertices: &BTreeSet<usize>,
        forbidden_edges: &BTreeSet<usize>,
    ) -> Result<Subgraph, GraphError> {
        self.check(v)?;
        if forbidden_vertices.contains(&v) {
            return Err(GraphError::ForbiddenStart(v));
        }
        let mut seen = vec![false; self.n];
        seen[v] = true;
        let mut q = VecDeque::from([v]);
        let mut edges = BTreeSet::new();
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if forbidden_vertices.contains(&w) {
                    continue;
                }
                let e = self.edge_id(u, w).unwrap();
                if forbidden_edges.contains(&e) {
                    continue;
                }
                edges.insert(e);
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        Ok(Subgraph {
            vertices: (0..self.n).filter(|&i| seen[i]).collect(),
            edges: edges.into_iter().collect(),
        })
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut q = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// Hop diameter; `None` when disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                if d == UNREACHABLE {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Induced subgraph on `keep` (sorted ascending in the result); returns
    /// the graph and the old id of each new vertex.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut ids: Vec<usize> = keep.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                edges.push((new_id[u], new_id[v]));
                weights.push(self.weight(e));
            }
        }
        let g = Graph::with_weights(ids.len(), edges, weights).expect("induced subgraph is valid");
        (g, ids)
    }

    /// Connected on at least three vertices with no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        (0..self.n).all(|cut| {
            let keep: Vec<usize> = (0..self.n).filter(|&v| v != cut).collect();
            self.induced(&keep).0.is_connected()
        })
    }

    /// Is the closed neighbourhood of `u` inside that of `v`?
    pub fn dominated_by(&self, u: usize, v: usize) -> bool {
        u != v && self.has_edge(u, v) && self.adj[u].iter().all(|&w| w == v || self.has_edge(w, v))
    }
}

/// A simple path with its weighted length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub length: u64,
}

impl Path {
    /// Checks simplicity and adjacency against `g` and recomputes the length.
    pub fn from_vertices(g: &Graph, vertices: Vec<usize>) -> Option<Path> {
        let mut seen = BTreeSet::new();
        let mut length = 0u64;
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() || !seen.insert(v) {
                return None;
            }
            if i > 0 {
                length += g.weight(g.edge_id(vertices[i - 1], v)?) as u64;
            }
        }
        if vertices.is_empty() {
            return None;
        }
        Some(Path { vertices, length })
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Edge ids of consecutive vertex pairs.
    pub fn edge_ids(&self, g: &Graph) -> Vec<usize> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]).expect("path edge exists"))
            .collect()
    }
}

/// A subgraph given by host vertex ids and host edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Subgraph {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Hop distances from `s` using only this subgraph's edges.
    pub fn bfs_within(&self, host: &Graph, s: usize) -> Vec<u32> {
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in &self.edges {
            let (u, v) = host.edge(e);
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        for a in adj.values_mut() {
            a.sort_unstable();
        }
        let mut dist = vec![UNREACHABLE; host.n()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if let Some(ns) = adj.get(&u) {
                for &w in ns {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Stand-alone copy with vertices renumbered in ascending host order.
    pub fn to_graph(&self, host: &Graph) -> (Graph, Vec<usize>) {
        let mut new_id = HashMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            new_id.insert(v, i);
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for &e in &self.edges {
            let (u, v) = host.edge(e);
            edges.push((new_id[&u], new_id[&v]));
            weights.push(host.weight(e));
        }
        (
            Graph::with_weights(self.vertices.len(), edges, weights).expect("valid subgraph"),
            self.vertices.clone(),
        )
    }
}
