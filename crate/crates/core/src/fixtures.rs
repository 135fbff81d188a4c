//! Small straight-line drawings used by tests, examples and the corpus.

use crate::drawing::{straight_line, Drawing};
use crate::graph::Graph;

fn polygon(count: usize, radius: f64, phase: f64) -> Vec<(f64, f64)> {
    (0..count)
        .map(|i| {
            let t = phase + i as f64 * std::f64::consts::TAU / count as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

/// The 4-cycle `0 1 2 3` as a unit square with both diagonals: one full
/// crossing.
pub fn k4_square() -> Drawing {
    let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    straight_line(g, &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

/// Two unit squares sharing an edge, each with both diagonals.
pub fn two_squares() -> Drawing {
    let g = Graph::new(
        6,
        vec![
            (0, 1),
            (1, 2),
            (3, 4),
            (4, 5),
            (0, 3),
            (1, 4),
            (2, 5),
            (0, 4),
            (1, 3),
            (1, 5),
            (2, 4),
        ],
    )
    .unwrap();
    straight_line(
        g,
        &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)],
    )
}

/// The Petersen graph with the outer 5-cycle around an inner pentagram:
/// five crossings, each inner edge crossed twice.
pub fn petersen_star() -> Drawing {
    let mut pos = polygon(5, 2.0, std::f64::consts::FRAC_PI_2);
    pos.extend(polygon(5, 1.0, std::f64::consts::FRAC_PI_2));
    straight_line(Graph::petersen(), &pos)
}

/// An octagon `0..8` with chords `0-4` and `2-6` crossing at the centre, and
/// a pendant vertex outside each odd corner, so no corner has a kite.
pub fn octagon_x() -> Drawing {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    edges.extend([(0, 4), (2, 6), (1, 8), (3, 9), (5, 10), (7, 11)]);
    let mut pos = polygon(8, 1.0, 0.0);
    for i in [1, 3, 5, 7] {
        let (x, y) = pos[i];
        pos.push((2.0 * x, 2.0 * y));
    }
    straight_line(Graph::new(12, edges).unwrap(), &pos)
}

/// The `r x c` grid with both diagonals in every cell: a 1-plane drawing
/// with only full crossings.
pub fn crossed_grid(rows: usize, cols: usize) -> Drawing {
    let base = Graph::grid(rows, cols);
    let mut edges = base.edges().to_vec();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let v = r * cols + c;
            edges.push((v, v + cols + 1));
            edges.push((v + 1, v + cols));
        }
    }
    let pos: Vec<(f64, f64)> = (0..rows * cols)
        .map(|v| ((v % cols) as f64, (v / cols) as f64))
        .collect();
    straight_line(Graph::new(rows * cols, edges).unwrap(), &pos)
}

/// The 4-cycle `0 1 2 3` drawn as a bowtie: `0-1` and `2-3` cross.
pub fn bowtie_c4() -> Drawing {
    straight_line(Graph::cycle(4), &[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)])
}
