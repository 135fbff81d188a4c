use super::*;
use crate::fixtures::{k4_square, petersen_star, two_squares};

#[test]
fn k4_square_has_one_full_crossing() {
    let d = k4_square();
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    assert_eq!(d.crossings().len(), 1);
    assert_eq!(d.classify_crossing(0), CrossingKind::Full);
    let p = d.xx_params();
    assert_eq!((p.x, p.big_x), (Param::Finite(1), Param::Finite(1)));
}

#[test]
fn k4_square_faces_follow_euler() {
    let d = k4_square();
    // V = 5, E = 8 in the planarisation, so F = 2 - 5 + 8.
    assert_eq!(d.faces().unwrap().len(), 5);
}

#[test]
fn k4_square_profile() {
    let p = k4_square().profile();
    assert_eq!(p.is_k_plane, 1);
    assert_eq!(p.is_k_framed, Some(4));
    assert_eq!(p.is_kite_augmented, Some(true));
    assert!(p.all_full);
    assert!(p.no_x_crossings);
}

#[test]
fn kite_paths_are_oriented() {
    let d = k4_square();
    let k = d.kites().unwrap();
    assert!(k.complete());
    assert_eq!(k.path(0, 0, 1), Some(vec![0, 1]));
    assert_eq!(k.path(0, 1, 0), Some(vec![1, 0]));
    assert_eq!(k.path(0, 3, 2), Some(vec![3, 2]));
    assert_eq!(k.path(0, 0, 2), None);
}

#[test]
fn disconnected_crossing_is_infinite() {
    let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 1)]);
    assert!(d.validate().is_empty());
    let p = d.xx_params();
    assert_eq!(p.x, Param::Infinite);
    assert_eq!(p.big_x, Param::Infinite);
    assert_eq!(d.classify_crossing(0), CrossingKind::XCrossing);
}

#[test]
fn crossing_free_params_are_zero() {
    let d = Drawing::plain(Graph::cycle(5));
    let p = d.xx_params();
    assert_eq!((p.x, p.big_x), (Param::Finite(0), Param::Finite(0)));
    assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"x":0,"X":0}"#);
}

#[test]
fn x_crossing_on_a_six_cycle() {
    // 0-1 crosses 2-3; the other four pairs are joined through 4 and 5.
    let g = Graph::new(6, vec![(0, 1), (2, 3), (1, 4), (4, 2), (3, 5), (5, 0)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 1)]);
    assert_eq!(d.classify_crossing(0), CrossingKind::XCrossing);
    // pairs (0,2) (0,3) (1,2) (1,3): 3, 2, 2, 3
    let p = d.xx_params();
    assert_eq!((p.x, p.big_x), (Param::Finite(2), Param::Finite(3)));
}

#[test]
fn other_crossing_kind() {
    let g = Graph::new(4, vec![(0, 1), (2, 3), (0, 2)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 1)]);
    assert_eq!(d.classify_crossing(0), CrossingKind::Other);
    let p = d.xx_params();
    assert_eq!((p.x, p.big_x), (Param::Finite(1), Param::Finite(3)));
}

#[test]
fn adjacent_edges_are_degenerate() {
    let g = Graph::new(3, vec![(0, 1), (0, 2)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 1)]);
    assert_eq!(d.classify_crossing(0), CrossingKind::Degenerate);
    assert_eq!(d.validate(), vec![Diagnostic::AdjacentEdgesCross { crossing: 0 }]);
}

#[test]
fn self_crossing_is_rejected() {
    let g = Graph::new(2, vec![(0, 1)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 0)]);
    assert!(d.validate().contains(&Diagnostic::DegenerateCrossing { crossing: 0 }));
    assert!(d.checked().is_err());
}

#[test]
fn order_mismatch_is_reported() {
    let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
    let d = Drawing::from_parts(g, vec![Crossing { e1: 0, e2: 1 }], vec![vec![0], vec![]], None);
    assert_eq!(d.validate(), vec![Diagnostic::OrderMismatch { edge: 1 }]);
}

#[test]
fn triangle_rotation_gives_two_faces() {
    let d = Drawing::plain(Graph::cycle(3)).with_rotation(Some(vec![vec![1, 2], vec![2, 0], vec![0, 1]]));
    assert!(d.validate().is_empty());
    let f = d.faces().unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.faces.iter().all(|w| w.len() == 3));
}

#[test]
fn faces_need_rotation() {
    let d = Drawing::plain(Graph::cycle(3));
    assert_eq!(d.faces(), Err(DrawingError::RotationAbsent));
    assert_eq!(d.profile().is_k_framed, None);
}

#[test]
fn toroidal_rotation_is_not_spherical() {
    let d = k4_square().planarised_drawing().unwrap();
    assert!(d.validate().is_empty());
    let mut rot = d.rotation().unwrap().to_vec();
    rot[0].reverse();
    let bad = d.with_rotation(Some(rot));
    assert!(bad
        .validate()
        .iter()
        .any(|x| matches!(x, Diagnostic::NotSpherical { .. })));
}

#[test]
fn non_alternating_rotation_is_reported() {
    let d = k4_square();
    let mut rot = d.rotation().unwrap().to_vec();
    rot[4].swap(0, 1);
    let bad = d.with_rotation(Some(rot));
    assert_eq!(bad.validate(), vec![Diagnostic::NotAlternating { crossing: 0 }]);
}

#[test]
fn rotation_with_wrong_neighbours() {
    let d = Drawing::plain(Graph::cycle(3)).with_rotation(Some(vec![vec![1], vec![2, 0], vec![0, 1]]));
    assert_eq!(d.validate(), vec![Diagnostic::RotationMismatch { vertex: 0 }]);
}

#[test]
fn planarisation_ids() {
    let d = k4_square();
    let p = d.planarise().unwrap();
    assert_eq!(p.graph.n(), 5);
    assert_eq!(p.graph.m(), 8);
    assert_eq!(p.chains[4], vec![0, 4, 2]);
    assert_eq!(p.chains[5], vec![1, 4, 3]);
    assert!(p.is_dummy(4));
}

#[test]
fn double_crossing_has_parallel_segments() {
    let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
    let d = Drawing::with_crossings(g, &[(0, 1), (0, 1)]);
    assert!(d.validate().is_empty());
    assert!(d.planarise().is_err());
    assert_eq!(d.max_crossings_per_edge(), 2);
}

#[test]
fn skeleton_keeps_uncrossed_edges() {
    let d = k4_square();
    let s = d.skeleton();
    assert_eq!(s.n(), 4);
    assert_eq!(s.m(), 4);
    assert!(!s.has_edge(0, 2));
}

#[test]
fn face_distance_between_adjacent_squares() {
    let d = two_squares();
    assert!(d.validate().is_empty());
    assert_eq!(d.crossings().len(), 2);
    assert_eq!(d.face_distance(0, 1).unwrap(), 2);
    assert_eq!(d.min_face_distance().unwrap(), Some(2));
    assert_eq!(d.face_distance(0, 0), Err(DrawingError::SameCrossing));
    assert_eq!(d.face_distance(0, 9), Err(DrawingError::NoSuchCrossing(9)));
}

#[test]
fn two_squares_have_one_crossing_per_region() {
    let r = two_squares().skeleton_regions().unwrap();
    assert_eq!(r.count(), 3);
    let mut per = r.crossings_per_region();
    per.sort_unstable();
    assert_eq!(per, vec![0, 1, 1]);
}

#[test]
fn petersen_star_drawing() {
    let d = petersen_star();
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    assert_eq!(d.crossings().len(), 5);
    assert_eq!(d.max_crossings_per_edge(), 2);
    assert_eq!(d.faces().unwrap().len(), 2 + (15 + 10) - (10 + 5));
    assert_eq!(d.profile().is_kite_augmented, Some(false));
}

#[test]
fn crossings_on_a_common_face() {
    let g = Graph::new(8, vec![(0, 1), (2, 3), (4, 5), (6, 7), (1, 4)]).unwrap();
    let pos = [
        (0.0, 0.0),
        (1.0, 1.0),
        (0.0, 1.0),
        (1.0, 0.0),
        (2.0, 1.0),
        (3.0, 0.0),
        (2.0, 0.0),
        (3.0, 1.0),
    ];
    let d = straight_line(g, &pos);
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    assert_eq!(d.faces().unwrap().len(), 1);
    assert_eq!(d.face_distance(0, 1).unwrap(), 1);
}
