use super::{kite_augment, one_planarise, subdivide, TransformError, TransformResult};
use crate::drawing::Drawing;
use crate::graph::{Graph, Subgraph};

/// The graph on the non-face vertices of `h`, two of them adjacent when they
/// share a face neighbour. Returns it with the `h` id of each new vertex.
pub fn map_from_witness(h: &Graph, is_face: &[bool]) -> Result<(Graph, Vec<usize>), TransformError> {
    if is_face.len() != h.n() {
        return Err(TransformError::NotBipartition);
    }
    if h.edges().iter().any(|&(a, b)| is_face[a] == is_face[b]) {
        return Err(TransformError::NotBipartition);
    }
    let ids: Vec<usize> = (0..h.n()).filter(|&v| !is_face[v]).collect();
    let mut new_id = vec![usize::MAX; h.n()];
    for (i, &v) in ids.iter().enumerate() {
        new_id[v] = i;
    }
    let mut edges = Vec::new();
    for f in (0..h.n()).filter(|&f| is_face[f]) {
        let nb = h.neighbors(f);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                edges.push((new_id[a], new_id[b]));
            }
        }
    }
    Ok((Graph::from_edges_dedup(ids.len(), edges), ids))
}

/// Does `f` fix `h` pointwise and send every edge of `g` to an edge of `h`
/// or to a single vertex?
pub fn check_retract(g: &Graph, h: &Subgraph, f: &[usize]) -> Result<bool, TransformError> {
    if f.len() != g.n() {
        return Err(TransformError::MapNotTotal {
            expected: g.n(),
            found: f.len(),
        });
    }
    if h.vertices.iter().any(|&v| f[v] != v) {
        return Ok(false);
    }
    if f.iter().any(|&x| !h.contains_vertex(x)) {
        return Ok(false);
    }
    Ok(g.edges().iter().all(|&(u, v)| {
        let (a, b) = (f[u], f[v]);
        a == b || g.edge_id(a, b).is_some_and(|e| h.contains_edge(e))
    }))
}

/// A retraction that folds corner `removed` onto a vertex `onto` whose
/// closed neighbourhood contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerFold {
    pub removed: usize,
    pub onto: usize,
    pub retract: Subgraph,
    pub map: Vec<usize>,
}

/// The lowest-id corner of `g`, folded onto its lowest-id dominator.
pub fn fold_corner(g: &Graph) -> Option<CornerFold> {
    if g.n() < 2 {
        return None;
    }
    for u in 0..g.n() {
        if let Some(v) = (0..g.n()).find(|&v| v != u && g.dominated_by(u, v)) {
            let vertices: Vec<usize> = (0..g.n()).filter(|&x| x != u).collect();
            let edges = (0..g.m())
                .filter(|&e| {
                    let (a, b) = g.edge(e);
                    a != u && b != u
                })
                .collect();
            let mut map: Vec<usize> = (0..g.n()).collect();
            map[u] = v;
            return Some(CornerFold {
                removed: u,
                onto: v,
                retract: Subgraph { vertices, edges },
                map,
            });
        }
    }
    None
}

fn chain(first: TransformResult, second: TransformResult) -> TransformResult {
    TransformResult {
        drawing: second.drawing,
        provenance: second.provenance.after(&first.provenance),
        k_used: first.k_used.or(second.k_used),
        retraction: None,
    }
}

/// Subdivide into `2d + 1`, 1-planarise, kite-augment, then `ceil(f / 2)`
/// times subdivide every edge twice and kite-augment again.
pub fn gen_far_crossings(d: &Drawing, dist: u64, f: u64) -> Result<TransformResult, TransformError> {
    let k = 2 * dist as usize + 1;
    let mut acc = subdivide(d, k)?;
    acc = chain(acc.clone(), one_planarise(&acc.drawing)?);
    acc = chain(acc.clone(), kite_augment(&acc.drawing)?);
    for _ in 0..f.div_ceil(2) {
        acc = chain(acc.clone(), subdivide(&acc.drawing, 3)?);
        acc = chain(acc.clone(), kite_augment(&acc.drawing)?);
    }
    acc.k_used = Some(k);
    Ok(acc)
}

/// `mu + 1` when that is odd, else `mu`.
pub fn large_x_subdivision(mu: usize) -> usize {
    if (mu + 1) % 2 == 1 {
        mu + 1
    } else {
        mu
    }
}

fn check_large_x(h: &Graph, mu: usize) -> Result<usize, TransformError> {
    match h.diameter() {
        Some(2) => {}
        other => return Err(TransformError::DiameterNotTwo(other)),
    }
    if mu < 6 {
        return Err(TransformError::MuTooSmall);
    }
    Ok(large_x_subdivision(mu))
}

/// Subdivides a diameter-2 graph by an odd factor `mu` or `mu + 1`.
pub fn gen_large_x(h: &Graph, mu: usize) -> Result<Graph, TransformError> {
    let k = check_large_x(h, mu)?;
    Ok(subdivide(&Drawing::plain(h.clone()), k)?.drawing.graph().clone())
}

/// As `gen_large_x`, keeping the crossings of a drawing of `h`.
pub fn gen_large_x_drawing(d: &Drawing, mu: usize) -> Result<TransformResult, TransformError> {
    let k = check_large_x(d.graph(), mu)?;
    subdivide(d, k)
}
