//! Built-in knots.

use crate::lattice::{CubicKnot, KnotError, LatticePoint};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub knot: CubicKnot,
    pub provenance: &'static str,
}

fn p(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

fn build(pts: &[(i64, i64, i64)]) -> CubicKnot {
    CubicKnot::from_vertices(pts.iter().map(|&(x, y, z)| p(x, y, z)).collect())
        .expect("catalog knots are valid")
}

/// Lattice knot of a grid diagram: column `c` holds an X in row `xs[c]`
/// and an O in row `os[c]`. Verticals run at `z = 1` and horizontals at
/// `z = 0`, so verticals pass over horizontals as in the grid convention.
pub fn from_grid(xs: &[usize], os: &[usize]) -> Result<CubicKnot, KnotError> {
    let n = xs.len();
    let bad = |message: &str| KnotError::Parse {
        line: 1,
        message: message.into(),
    };
    if os.len() != n || n < 2 {
        return Err(bad("grid needs two permutations of equal length ≥ 2"));
    }
    let mut col_of_x = vec![usize::MAX; n];
    for (c, &r) in xs.iter().enumerate() {
        if r >= n || col_of_x[r] != usize::MAX {
            return Err(bad("X rows are not a permutation"));
        }
        col_of_x[r] = c;
    }
    let mut seen = vec![false; n];
    for (c, &r) in os.iter().enumerate() {
        if r >= n || seen[r] || r == xs[c] {
            return Err(bad("O rows are not a permutation avoiding the X rows"));
        }
        seen[r] = true;
    }
    let line = |pts: &mut Vec<LatticePoint>, from: LatticePoint, to: LatticePoint| {
        let d = to - from;
        let len = d.x.abs() + d.y.abs() + d.z.abs();
        let unit = LatticePoint::new(d.x.signum(), d.y.signum(), d.z.signum());
        for i in 0..len {
            pts.push(from + unit * i);
        }
    };
    let mut pts = Vec::new();
    let mut c = 0;
    let mut visited = 0;
    loop {
        visited += 1;
        let (cx, rx, ro) = (c as i64, xs[c] as i64, os[c] as i64);
        line(&mut pts, p(cx, rx, 1), p(cx, ro, 1));
        line(&mut pts, p(cx, ro, 1), p(cx, ro, 0));
        let next = col_of_x[os[c]];
        line(&mut pts, p(cx, ro, 0), p(next as i64, ro, 0));
        line(&mut pts, p(next as i64, ro, 0), p(next as i64, ro, 1));
        c = next;
        if c == 0 {
            break;
        }
    }
    if visited != n {
        return Err(bad("grid closes up before visiting every column (a link)"));
    }
    CubicKnot::from_vertices(pts)
}

/// The unit square.
pub fn unknot4() -> CubicKnot {
    build(&[(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
}

/// A 3×3 staircase in the plane `z = 0`.
pub fn unknot12() -> CubicKnot {
    build(&[
        (0, 0, 0),
        (1, 0, 0),
        (1, 1, 0),
        (2, 1, 0),
        (2, 2, 0),
        (3, 2, 0),
        (3, 3, 0),
        (2, 3, 0),
        (1, 3, 0),
        (0, 3, 0),
        (0, 2, 0),
        (0, 1, 0),
    ])
}

/// Grid diagram of the trefoil (34 edges) that [`trefoil24`] was shrunk from.
pub fn trefoil_grid() -> CubicKnot {
    from_grid(&[0, 1, 2, 3, 4], &[2, 3, 4, 0, 1]).expect("valid grid")
}

/// Grid diagram of the figure-eight (46 edges) that [`fig8`] was shrunk from.
pub fn fig8_grid() -> CubicKnot {
    from_grid(&[3, 4, 2, 1, 5, 0], &[5, 1, 0, 3, 2, 4]).expect("valid grid")
}

/// A 24-edge trefoil, the minimal lattice length. Left handed.
pub fn trefoil24() -> CubicKnot {
    #[rustfmt::skip]
    let pts = [
        (1, 1, 0), (1, 2, 0), (2, 2, 0), (2, 2, 1),
        (3, 2, 1), (4, 2, 1), (4, 1, 1), (4, 1, 0),
        (4, 1, -1), (3, 1, -1), (2, 1, -1), (2, 1, 0),
        (2, 1, 1), (1, 1, 1), (1, 2, 1), (1, 3, 1),
        (1, 3, 0), (2, 3, 0), (3, 3, 0), (3, 2, 0),
        (3, 1, 0), (3, 0, 0), (2, 0, 0), (1, 0, 0),
    ];
    build(&pts)
}

/// A 32-edge figure-eight knot.
pub fn fig8() -> CubicKnot {
    #[rustfmt::skip]
    let pts = [
        (3, 4, 0), (3, 5, 0), (4, 5, 0), (4, 5, 1),
        (4, 5, 2), (4, 4, 2), (4, 3, 2), (4, 3, 1),
        (4, 3, 0), (4, 2, 0), (4, 2, -1), (3, 2, -1),
        (2, 2, -1), (2, 2, 0), (2, 2, 1), (3, 2, 1),
        (4, 2, 1), (5, 2, 1), (5, 3, 1), (5, 4, 1),
        (4, 4, 1), (3, 4, 1), (2, 4, 1), (1, 4, 1),
        (1, 3, 1), (1, 2, 1), (1, 1, 1), (1, 1, 0),
        (2, 1, 0), (3, 1, 0), (3, 2, 0), (3, 3, 0),
    ];
    build(&pts)
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "unknot4",
            knot: unknot4(),
            provenance: "unit square",
        },
        CatalogEntry {
            name: "unknot12",
            knot: unknot12(),
            provenance: "planar staircase, 12 edges",
        },
        CatalogEntry {
            name: "trefoil24",
            knot: trefoil24(),
            provenance: "5x5 grid trefoil shrunk by M2 moves to 24 edges; det 3, 9 3-colorings",
        },
        CatalogEntry {
            name: "fig8",
            knot: fig8(),
            provenance: "6x6 grid figure-eight shrunk by M2 moves to 32 edges; det 5",
        },
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
