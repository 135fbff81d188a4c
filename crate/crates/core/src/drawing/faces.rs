use std::collections::HashMap;

use super::{CrossingKind, Diagnostic, Drawing, Planarisation, Profile};
use crate::graph::Graph;

/// Faces of a plane graph as closed dart walks. A dart `(a, b)` is followed
/// by `(b, succ_b(a))`, where `succ_b` is the cyclic successor in the
/// rotation at `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<(usize, usize)>>,
    face_of: HashMap<(usize, usize), usize>,
}

impl FaceSet {
    pub(crate) fn trace(g: &Graph, rot: &[Vec<usize>]) -> FaceSet {
        let succ = |b: usize, a: usize| -> usize {
            let r = &rot[b];
            let i = r.iter().position(|&x| x == a).expect("rotation covers neighbours");
            r[(i + 1) % r.len()]
        };
        let mut face_of = HashMap::new();
        let mut faces = Vec::new();
        for (a, around) in rot.iter().enumerate().take(g.n()) {
            for &b in around {
                if face_of.contains_key(&(a, b)) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut x, mut y) = (a, b);
                while !face_of.contains_key(&(x, y)) {
                    face_of.insert((x, y), id);
                    walk.push((x, y));
                    let z = succ(y, x);
                    x = y;
                    y = z;
                }
                faces.push(walk);
            }
        }
        FaceSet { faces, face_of }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_of(&self, a: usize, b: usize) -> Option<usize> {
        self.face_of.get(&(a, b)).copied()
    }

    /// Boundary vertices of face `f` in walk order.
    pub fn vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&(a, _)| a).collect()
    }

    /// Plane vertices `0..n_plan` plus one node per face, adjacent to the
    /// vertices on its boundary.
    pub fn radial_graph(&self, n_plan: usize) -> Graph {
        let edges = self
            .faces
            .iter()
            .enumerate()
            .flat_map(|(f, walk)| walk.iter().map(move |&(a, _)| (a, n_plan + f)));
        Graph::from_edges_dedup(n_plan + self.faces.len(), edges)
    }
}

pub(super) fn check_rotation(d: &Drawing, plan: &Planarisation, rot: &[Vec<usize>]) -> Vec<Diagnostic> {
    let g = &plan.graph;
    if rot.len() != g.n() {
        return vec![Diagnostic::RotationLength {
            expected: g.n(),
            found: rot.len(),
        }];
    }
    let mut out = Vec::new();
    for (v, r) in rot.iter().enumerate() {
        let mut sorted = r.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            out.push(Diagnostic::RotationMismatch { vertex: v });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let n = d.n();
    for (c, cr) in d.crossings().iter().enumerate() {
        let dummy = n + c;
        let chain = &plan.chains[cr.e1];
        let i = chain.iter().position(|&x| x == dummy).expect("dummy on its chain");
        let on_e1 = |x: usize| x == chain[i - 1] || x == chain[i + 1];
        let r = &rot[dummy];
        if on_e1(r[0]) != on_e1(r[2]) || on_e1(r[1]) != on_e1(r[3]) || on_e1(r[0]) == on_e1(r[1]) {
            out.push(Diagnostic::NotAlternating { crossing: c });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let faces = FaceSet::trace(g, rot);
    let components = g.component_count();
    let nontrivial = (0..g.n()).filter(|&v| g.degree(v) > 0).count();
    let isolated = g.n() - nontrivial;
    let big_components = components - isolated;
    // Each nontrivial component is traced separately, so its outer faces are
    // counted once per component; merge them into one.
    let f = if big_components == 0 {
        1
    } else {
        faces.len() + 1 - big_components
    };
    if g.n() + f != g.m() + 1 + components {
        out.push(Diagnostic::NotSpherical {
            v: g.n(),
            e: g.m(),
            f,
            components,
        });
    }
    out
}

/// Faces of the skeleton, each the union of the planarisation faces glued
/// across crossed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub face_region: Vec<usize>,
    /// Boundary length of each region counted in skeleton darts.
    pub size: Vec<usize>,
    pub crossing_region: Vec<usize>,
}

impl Regions {
    pub(super) fn build(d: &Drawing, plan: &Planarisation, faces: &FaceSet) -> Regions {
        let mut parent: Vec<usize> = (0..faces.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (s, &(a, b)) in plan.graph.edges().iter().enumerate() {
            if d.is_crossed(plan.segment_of[s]) {
                let f1 = find(&mut parent, faces.face_of(a, b).unwrap());
                let f2 = find(&mut parent, faces.face_of(b, a).unwrap());
                parent[f1.max(f2)] = f1.min(f2);
            }
        }
        let mut compact = HashMap::new();
        let mut face_region = Vec::with_capacity(faces.len());
        for f in 0..faces.len() {
            let root = find(&mut parent, f);
            let next = compact.len();
            face_region.push(*compact.entry(root).or_insert(next));
        }
        let mut size = vec![0; compact.len()];
        for (f, walk) in faces.faces.iter().enumerate() {
            for &(a, b) in walk {
                let s = plan.graph.edge_id(a, b).unwrap();
                if !d.is_crossed(plan.segment_of[s]) {
                    size[face_region[f]] += 1;
                }
            }
        }
        let rot = d.rotation().expect("regions need a rotation");
        let crossing_region = (0..d.crossings().len())
            .map(|c| {
                let dummy = d.dummy(c);
                face_region[faces.face_of(dummy, rot[dummy][0]).unwrap()]
            })
            .collect();
        Regions {
            face_region,
            size,
            crossing_region,
        }
    }

    pub fn count(&self) -> usize {
        self.size.len()
    }

    pub fn crossings_per_region(&self) -> Vec<usize> {
        let mut out = vec![0; self.count()];
        for &r in &self.crossing_region {
            out[r] += 1;
        }
        out
    }
}

pub(super) fn profile(d: &Drawing) -> Profile {
    let k_plane = d.max_crossings_per_edge();
    let kinds: Vec<CrossingKind> = (0..d.crossings().len()).map(|c| d.classify_crossing(c)).collect();
    let all_full = kinds.iter().all(|&k| k == CrossingKind::Full);
    let no_x_crossings = kinds.iter().all(|&k| k != CrossingKind::XCrossing);
    let is_k_framed = if d.rotation().is_some() && d.skeleton().is_biconnected() {
        d.skeleton_regions()
            .ok()
            .map(|r| r.size.iter().copied().max().unwrap_or(0))
    } else {
        None
    };
    let is_kite_augmented = if d.crossings().is_empty() {
        Some(true)
    } else if k_plane > 1 {
        Some(false)
    } else if d.rotation().is_none() {
        None
    } else {
        d.kites().ok().map(|k| k.complete())
    };
    Profile {
        is_k_plane: k_plane,
        is_k_framed,
        is_kite_augmented,
        all_full,
        no_x_crossings,
    }
}
