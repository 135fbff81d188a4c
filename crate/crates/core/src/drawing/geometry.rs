use super::{Crossing, Drawing};
use crate::graph::Graph;

/// The drawing with straight edges between the given points. Points are
/// assumed in general position: no vertex lies on a non-incident edge and no
/// three edges meet at one crossing point.
pub fn straight_line(graph: Graph, pos: &[(f64, f64)]) -> Drawing {
    let m = graph.m();
    let mut crossings = Vec::new();
    let mut points: Vec<(f64, f64)> = pos.to_vec();
    // (t along edge, crossing id) per edge
    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); m];
    for e1 in 0..m {
        for e2 in e1 + 1..m {
            let (u, v) = graph.edge(e1);
            let (w, x) = graph.edge(e2);
            if u == w || u == x || v == w || v == x {
                continue;
            }
            if let Some((t, s)) = intersect(pos[u], pos[v], pos[w], pos[x]) {
                let c = crossings.len();
                crossings.push(Crossing { e1, e2 });
                along[e1].push((t, c));
                along[e2].push((s, c));
                let (px, py) = pos[u];
                let (qx, qy) = pos[v];
                points.push((px + t * (qx - px), py + t * (qy - py)));
            }
        }
    }
    let edge_crossings: Vec<Vec<usize>> = along
        .into_iter()
        .map(|mut l| {
            l.sort_by(|a, b| a.0.total_cmp(&b.0));
            l.into_iter().map(|(_, c)| c).collect()
        })
        .collect();
    let base = Drawing::from_parts(graph, crossings, edge_crossings, None);
    let plan = base
        .planarise_unchecked()
        .expect("straight-line planarisation is simple");
    let rotation = (0..plan.graph.n())
        .map(|v| {
            let (ox, oy) = points[v];
            let mut nb = plan.graph.neighbors(v).to_vec();
            nb.sort_by(|&a, &b| {
                let ta = (points[a].1 - oy).atan2(points[a].0 - ox);
                let tb = (points[b].1 - oy).atan2(points[b].0 - ox);
                ta.total_cmp(&tb)
            });
            nb
        })
        .collect();
    base.with_rotation(Some(rotation))
}

fn intersect(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-12 {
        return None;
    }
    let q = (c.0 - a.0, c.1 - a.1);
    let t = (q.0 * s.1 - q.1 * s.0) / denom;
    let u = (q.0 * r.1 - q.1 * r.0) / denom;
    let eps = 1e-9;
    (t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps).then_some((t, u))
}
