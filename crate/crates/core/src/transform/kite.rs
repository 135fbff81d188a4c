use super::{require_valid, EdgeOrigin, Provenance, TransformError, TransformResult, VertexOrigin};
use crate::drawing::{Drawing, KiteSlot};
use crate::graph::Graph;

struct Insertion {
    crossing: usize,
    /// Path runs from `from` to `to`; `from` follows the crossing in the
    /// rotation at the dummy.
    from: usize,
    to: usize,
    length: usize,
}

/// Adds a shortest-length uncrossed path in every crossing corner that lacks
/// one. Lengths are measured in the input graph before any insertion.
pub fn kite_augment(d: &Drawing) -> Result<TransformResult, TransformError> {
    let rot = d.rotation().ok_or(TransformError::RotationAbsent)?;
    if d.max_crossings_per_edge() > 1 {
        return Err(TransformError::NotOnePlane);
    }
    if !d.graph().is_unit() {
        return Err(TransformError::Weighted);
    }
    require_valid(d)?;
    let g = d.graph();
    let kites = d.kites()?;
    let mut todo = Vec::new();
    for (c, ck) in kites.per_crossing.iter().enumerate() {
        for (i, slot) in ck.slots.iter().enumerate() {
            if *slot != KiteSlot::Missing {
                continue;
            }
            let (from, to) = ck.corners[i];
            let len = g.distances(from)?[to].ok_or(TransformError::Disconnected {
                crossing: c,
                u: from,
                w: to,
            })?;
            if len == 1 {
                // the only shortest path is an existing edge, and it is crossed
                return Err(TransformError::ParallelKite {
                    crossing: c,
                    u: from,
                    w: to,
                });
            }
            todo.push(Insertion {
                crossing: c,
                from,
                to,
                length: len as usize,
            });
        }
    }

    let n = g.n();
    let added: usize = todo.iter().map(|t| t.length - 1).sum();
    let n_new = n + added;
    let remap = |a: usize| if a < n { a } else { a + added };
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n_new + d.crossings().len()];
    for (a, r) in rot.iter().enumerate() {
        rotation[remap(a)] = r.iter().map(|&b| remap(b)).collect();
    }
    let mut edges = g.edges().to_vec();
    let mut prov = Provenance::identity(g);
    let mut retraction: Vec<usize> = (0..n).collect();
    let mut next = n;
    for t in &todo {
        let dummy = n_new + t.crossing;
        let ends = (t.from, t.to);
        let mut path = vec![t.from];
        for step in 1..t.length {
            path.push(next);
            prov.vertices.push(VertexOrigin::Kite {
                crossing: t.crossing,
                ends,
                step,
            });
            next += 1;
        }
        path.push(t.to);
        let shortest = g.shortest_path(t.from, t.to).expect("endpoints connected");
        retraction.extend(&shortest.vertices[1..t.length]);
        for (step, w) in path.windows(2).enumerate() {
            edges.push((w[0], w[1]));
            prov.edges.push(EdgeOrigin::Kite {
                crossing: t.crossing,
                ends,
                step,
            });
        }
        for i in 1..t.length {
            rotation[path[i]] = vec![path[i - 1], path[i + 1]];
        }
        // new face: dummy -> from -> path ... -> to -> dummy
        let r = &mut rotation[t.from];
        let at = r.iter().position(|&x| x == dummy).unwrap();
        r.insert(at + 1, path[1]);
        let r = &mut rotation[t.to];
        let at = r.iter().position(|&x| x == dummy).unwrap();
        r.insert(at, path[t.length - 1]);
    }
    let graph = Graph::new(n_new, edges)?;
    let mut edge_crossings = d.edge_crossings().to_vec();
    edge_crossings.resize(graph.m(), Vec::new());
    let out = Drawing::from_parts(graph, d.crossings().to_vec(), edge_crossings, Some(rotation));
    require_valid(&out)?;
    Ok(TransformResult {
        drawing: out,
        provenance: prov,
        k_used: None,
        retraction: Some(retraction),
    })
}
