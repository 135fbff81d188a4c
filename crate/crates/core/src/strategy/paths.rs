use std::collections::VecDeque;

use serde::Serialize;

use super::StrategyBuildError;
use crate::drawing::{Drawing, Kites};
use crate::graph::{Graph, Subgraph, UNREACHABLE};

/// The robber's component once guarded vertices and every edge crossing a
/// guarded edge are deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Territory {
    pub subgraph: Subgraph,
    pub guarded: Vec<Vec<usize>>,
}

/// Guarded vertex flags and blocked edge flags (guarded edges and the edges
/// crossing them).
pub(crate) fn blocked_sets(d: &Drawing, guarded: &[Vec<usize>]) -> Result<(Vec<bool>, Vec<bool>), StrategyBuildError> {
    let g = d.graph();
    let mut on = vec![false; g.n()];
    let mut blocked = vec![false; g.m()];
    for p in guarded {
        for &v in p {
            if v >= g.n() {
                return Err(StrategyBuildError::NotAPath);
            }
            on[v] = true;
        }
        for w in p.windows(2) {
            let e = g.edge_id(w[0], w[1]).ok_or(StrategyBuildError::NotAPath)?;
            blocked[e] = true;
            for f in d.crossing_partners(e) {
                blocked[f] = true;
            }
        }
    }
    Ok((on, blocked))
}

pub fn robber_territory(d: &Drawing, guarded: &[Vec<usize>], robber: usize) -> Result<Territory, StrategyBuildError> {
    let g = d.graph();
    let (on, blocked) = blocked_sets(d, guarded)?;
    if on[robber] {
        return Err(StrategyBuildError::RobberOnGuarded(robber));
    }
    let mut seen = vec![false; g.n()];
    seen[robber] = true;
    let mut queue = VecDeque::from([robber]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            let e = g.edge_id(u, w).unwrap();
            if !seen[w] && !on[w] && !blocked[e] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let vertices: Vec<usize> = (0..g.n()).filter(|&v| seen[v]).collect();
    let edges = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            seen[a] && seen[b] && !blocked[e]
        })
        .collect();
    Ok(Territory {
        subgraph: Subgraph { vertices, edges },
        guarded: guarded.to_vec(),
    })
}

/// Pairs `(i, j)`, `i < j`, of path edge positions whose edges cross.
pub fn self_crossings(d: &Drawing, path: &[usize]) -> Result<Vec<(usize, usize)>, StrategyBuildError> {
    let g = d.graph();
    let ids: Vec<usize> = path
        .windows(2)
        .map(|w| g.edge_id(w[0], w[1]).ok_or(StrategyBuildError::NotAPath))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (i, &e) in ids.iter().enumerate() {
        for (j, &f) in ids.iter().enumerate().skip(i + 1) {
            if d.crossing_partners(e).any(|x| x == f) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

fn adjacency(g: &Graph, h: &Subgraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for &e in &h.edges {
        let (a, b) = g.edge(e);
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

fn path_inside(g: &Graph, h: &Subgraph, p: &[usize]) -> bool {
    p.iter().all(|&v| h.contains_vertex(v))
        && p.windows(2)
            .all(|w| g.edge_id(w[0], w[1]).is_some_and(|e| h.contains_edge(e)))
}

/// Every kite path whose ends lie in `h`, other than one joining `s` and
/// `t`, lies entirely in `h`.
pub fn check_st_subgraph(
    d: &Drawing,
    kites: &Kites,
    h: &Subgraph,
    s: usize,
    t: usize,
) -> Result<(), StrategyBuildError> {
    let g = d.graph();
    for ck in &kites.per_crossing {
        for (i, &(a, b)) in ck.corners.iter().enumerate() {
            if !h.contains_vertex(a) || !h.contains_vertex(b) {
                continue;
            }
            if (a, b) == (s, t) || (a, b) == (t, s) {
                continue;
            }
            if let Some(p) = ck.slots[i].path() {
                if !path_inside(g, h, p) {
                    return Err(StrategyBuildError::Path(format!(
                        "kite path {a}-{b} leaves the subgraph"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn bfs_path(g: &Graph, h: &Subgraph, s: usize, t: usize) -> Result<Vec<usize>, StrategyBuildError> {
    let adj = adjacency(g, h);
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[s] == UNREACHABLE {
        return Err(StrategyBuildError::Path(format!("{t} unreachable from {s}")));
    }
    let mut path = vec![s];
    let mut at = s;
    while at != t {
        at = *adj[at].iter().find(|&&w| dist[w] + 1 == dist[at]).unwrap();
        path.push(at);
    }
    Ok(path)
}

/// A shortest `(s, t)`-path of `h` with no two of its edges crossing. Starts
/// from a breadth-first path and splices kite paths over self-crossings.
pub fn noncrossing_shortest_path(
    d: &Drawing,
    kites: &Kites,
    h: &Subgraph,
    s: usize,
    t: usize,
) -> Result<Vec<usize>, StrategyBuildError> {
    let g = d.graph();
    if !h.contains_vertex(s) || !h.contains_vertex(t) {
        return Err(StrategyBuildError::NotAPath);
    }
    let mut path = bfs_path(g, h, s, t)?;
    let length = path.len();
    let mut crosses = self_crossings(d, &path)?;
    while let Some(&(i, j)) = crosses.first() {
        let (u, v, w, x) = (path[i], path[i + 1], path[j], path[j + 1]);
        let e = g.edge_id(u, v).unwrap();
        let f = g.edge_id(w, x).unwrap();
        let c = d.edge_crossings()[e]
            .iter()
            .copied()
            .find(|&c| {
                let cr = d.crossing(c);
                (cr.e1, cr.e2) == (e, f) || (cr.e1, cr.e2) == (f, e)
            })
            .unwrap();
        let ux = kites.path(c, u, x).filter(|p| path_inside(g, h, p));
        let next = match ux {
            Some(k) => {
                let mut p = path[..i].to_vec();
                p.extend(k);
                p.extend(&path[j + 2..]);
                p
            }
            None if (u, x) == (s, t) => {
                let k = kites
                    .path(c, u, w)
                    .filter(|p| path_inside(g, h, p))
                    .ok_or_else(|| StrategyBuildError::Path(format!("no kite path {u}-{w}")))?;
                let mut p = k;
                p.push(x);
                p
            }
            None => return Err(StrategyBuildError::Path(format!("no kite path {u}-{x}"))),
        };
        let mut seen = next.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != next.len() || next.len() != length || !path_inside(g, h, &next) {
            return Err(StrategyBuildError::Path("splice broke the shortest path".into()));
        }
        path = next;
        let before = crosses.len();
        crosses = self_crossings(d, &path)?;
        if crosses.len() >= before {
            return Err(StrategyBuildError::Path("splice did not remove a crossing".into()));
        }
    }
    Ok(path)
}
