use super::{Drawing, DrawingError, FaceSet};

/// What fills one corner of a crossing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum KiteSlot {
    /// An uncrossed shortest path with degree-2 interior that bounds the face
    /// at this corner together with the two crossing half-edges.
    Face(Vec<usize>),
    /// No such face path, but the two endpoints are joined by an uncrossed
    /// edge of shortest length elsewhere in the drawing.
    Edge(Vec<usize>),
    #[default]
    Missing,
}

impl KiteSlot {
    pub fn path(&self) -> Option<&[usize]> {
        match self {
            KiteSlot::Face(p) | KiteSlot::Edge(p) => Some(p),
            KiteSlot::Missing => None,
        }
    }
}

/// Corner `i` of crossing `c` lies between `rot[c][i]` and `rot[c][i + 1]`;
/// its path runs from the latter to the former.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingKites {
    pub corners: [(usize, usize); 4],
    pub slots: [KiteSlot; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kites {
    pub per_crossing: Vec<CrossingKites>,
}

impl Kites {
    pub fn complete(&self) -> bool {
        self.per_crossing
            .iter()
            .all(|k| k.slots.iter().all(|s| *s != KiteSlot::Missing))
    }

    /// The kite path of crossing `c` between `u` and `w`, oriented `u` to `w`.
    pub fn path(&self, c: usize, u: usize, w: usize) -> Option<Vec<usize>> {
        let k = &self.per_crossing[c];
        for (i, &(a, b)) in k.corners.iter().enumerate() {
            let p = k.slots[i].path()?;
            if (a, b) == (u, w) {
                return Some(p.to_vec());
            }
            if (a, b) == (w, u) {
                return Some(p.iter().rev().copied().collect());
            }
        }
        None
    }
}

pub(super) fn find(d: &Drawing) -> Result<Kites, DrawingError> {
    let rot = d.rotation().ok_or(DrawingError::RotationAbsent)?;
    if d.max_crossings_per_edge() > 1 {
        return Err(DrawingError::NotOnePlane);
    }
    let plan = d.planarise()?;
    let faces = FaceSet::trace(&plan.graph, rot);
    let g = d.graph();
    let mut per_crossing = Vec::with_capacity(d.crossings().len());
    for c in 0..d.crossings().len() {
        let dummy = d.dummy(c);
        let r = &rot[dummy];
        let mut corners = [(0, 0); 4];
        let mut slots: [KiteSlot; 4] = Default::default();
        for i in 0..4 {
            let (a, b) = (r[i], r[(i + 1) % 4]);
            corners[i] = (b, a);
            let target = g.distances(a).map(|ds| ds[b]).ok().flatten();
            let f = faces.face_of(dummy, b).expect("dart exists");
            let walk = faces.vertices(f);
            let start = walk.iter().position(|&x| x == dummy).unwrap();
            let path: Vec<usize> = walk[start + 1..].iter().chain(&walk[..start]).copied().collect();
            slots[i] = if is_kite(d, &path, target) {
                KiteSlot::Face(path)
            } else if target == Some(1) && g.edge_id(a, b).is_some_and(|e| !d.is_crossed(e) && g.weight(e) == 1) {
                KiteSlot::Edge(vec![b, a])
            } else {
                KiteSlot::Missing
            };
        }
        per_crossing.push(CrossingKites { corners, slots });
    }
    Ok(Kites { per_crossing })
}

fn is_kite(d: &Drawing, path: &[usize], target: Option<u64>) -> bool {
    let g = d.graph();
    let n = d.n();
    if path.len() < 2 || path.iter().any(|&v| v >= n) {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    if !path.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    if path[1..path.len() - 1].iter().any(|&v| g.degree(v) != 2) {
        return false;
    }
    let mut len = 0u64;
    for w in path.windows(2) {
        match g.edge_id(w[0], w[1]) {
            Some(e) if !d.is_crossed(e) => len += g.weight(e) as u64,
            _ => return false,
        }
    }
    Some(len) == target
}
