//! Regular diagram of a cubic knot under the projection along
//! `N = (1, π, π²)`.
//!
//! Conventions: the viewer sits at `+∞·N`, so the over strand at a crossing
//! is the one with the larger height `⟨v, N⟩`. A crossing is positive when
//! the over direction turns counterclockwise onto the under direction as
//! seen by the viewer. Traversal starts at the anchor vertex and crossing ids
//! are handed out in order of first encounter.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::CubicKnot;
use crate::par::{map_range, Execution};
use crate::qpi::{
    crossing_params, fmt_sig, orient, over_under, LambdaPoint, Over, PiRatio, ProjectedSegment,
    QpiError, SegmentRelation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("projection of edges {0} and {1} is degenerate")]
    DegenerateDiagram(usize, usize),
    #[error("two crossings share a point on edge {0}")]
    ParameterTie(usize),
    #[error(transparent)]
    Qpi(#[from] QpiError),
}

/// A point on an edge: edge index and the exact parameter in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Passage {
    pub edge: usize,
    pub param: PiRatio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// 1-based, in order of first encounter along the traversal.
    pub id: usize,
    pub over: Passage,
    pub under: Passage,
    /// `+1` or `-1`.
    pub sign: i32,
}

/// One passage through a crossing during traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraversalStep {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    knot: CubicKnot,
    crossings: Vec<Crossing>,
    traversal: Vec<TraversalStep>,
}

impl KnotDiagram {
    pub fn knot(&self) -> &CubicKnot {
        &self.knot
    }

    /// Sorted by id; `crossings()[i].id == i + 1`.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: usize) -> &Crossing {
        &self.crossings[id - 1]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// All `2c` passages in traversal order.
    pub fn traversal(&self) -> &[TraversalStep] {
        &self.traversal
    }
}

struct RawCrossing {
    first: usize,
    second: usize,
    t_first: PiRatio,
    t_second: PiRatio,
    first_over: bool,
    sign: i32,
}

pub fn build_diagram(k: &CubicKnot) -> Result<KnotDiagram, DiagramError> {
    build_diagram_with(k, Execution::default())
}

pub fn build_diagram_with(k: &CubicKnot, exec: Execution) -> Result<KnotDiagram, DiagramError> {
    let n = k.len();
    let segs: Vec<ProjectedSegment> = (0..n)
        .map(|i| ProjectedSegment::from_edge(k.vertex(i), k.vertex(i + 1), i).expect("unit edge"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();

    let tested = map_range(exec, pairs.len(), |idx| {
        let (i, j) = pairs[idx];
        let (s1, s2) = (&segs[i], &segs[j]);
        match crate::qpi::segments_cross(s1, s2) {
            SegmentRelation::None => Ok(None),
            SegmentRelation::Degenerate => Err(DiagramError::DegenerateDiagram(i, j)),
            SegmentRelation::Proper => {
                let first_over = over_under(s1, s2)? == Over::First;
                let (t_first, t_second) = crossing_params(s1, s2);
                let (o, u) = if first_over { (s1, s2) } else { (s2, s1) };
                let origin = LambdaPoint::default();
                let sign = orient(origin, o.end - o.start, u.end - u.start);
                debug_assert!(sign != 0);
                Ok(Some(RawCrossing {
                    first: i,
                    second: j,
                    t_first,
                    t_second,
                    first_over,
                    sign,
                }))
            }
        }
    });
    let mut raw = Vec::new();
    for r in tested {
        if let Some(c) = r? {
            raw.push(c);
        }
    }

    // passages along each edge: (raw index, is first strand)
    let mut per_edge: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (idx, c) in raw.iter().enumerate() {
        per_edge[c.first].push((idx, true));
        per_edge[c.second].push((idx, false));
    }
    let param = |&(idx, first): &(usize, bool)| -> &PiRatio {
        if first {
            &raw[idx].t_first
        } else {
            &raw[idx].t_second
        }
    };
    for (edge, list) in per_edge.iter_mut().enumerate() {
        let mut tie = false;
        list.sort_by(|a, b| {
            let o = param(a).cmp_exact(param(b));
            tie |= o == Ordering::Equal && a != b;
            o
        });
        if tie {
            return Err(DiagramError::ParameterTie(edge));
        }
    }

    let mut id_of = vec![0usize; raw.len()];
    let mut next = 1;
    let mut traversal = Vec::with_capacity(2 * raw.len());
    for list in &per_edge {
        for &(idx, first) in list {
            if id_of[idx] == 0 {
                id_of[idx] = next;
                next += 1;
            }
            traversal.push(TraversalStep {
                crossing: id_of[idx],
                over: first == raw[idx].first_over,
            });
        }
    }

    let mut crossings: Vec<Crossing> = raw
        .into_iter()
        .enumerate()
        .map(|(idx, c)| {
            let a = Passage {
                edge: c.first,
                param: c.t_first,
            };
            let b = Passage {
                edge: c.second,
                param: c.t_second,
            };
            let (over, under) = if c.first_over { (a, b) } else { (b, a) };
            Crossing {
                id: id_of[idx],
                over,
                under,
                sign: c.sign,
            }
        })
        .collect();
    crossings.sort_by_key(|c| c.id);

    Ok(KnotDiagram {
        knot: k.clone(),
        crossings,
        traversal,
    })
}

/// A signed Gauss code token such as `O1+` or `U2-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussToken {
    pub crossing: usize,
    pub over: bool,
    pub sign: i32,
}

impl fmt::Display for GaussToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ou = if self.over { 'O' } else { 'U' };
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{ou}{}{s}", self.crossing)
    }
}

impl FromStr for GaussToken {
    type Err = String;
    fn from_str(t: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad Gauss token `{t}`");
        let over = match t.chars().next() {
            Some('O') => true,
            Some('U') => false,
            _ => return Err(bad()),
        };
        let sign = match t.chars().last() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Err(bad()),
        };
        let digits = t.get(1..t.len() - 1).ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let crossing = digits.parse().map_err(|_| bad())?;
        Ok(GaussToken {
            crossing,
            over,
            sign,
        })
    }
}

pub fn gauss_code(d: &KnotDiagram) -> Vec<GaussToken> {
    d.traversal
        .iter()
        .map(|s| GaussToken {
            crossing: s.crossing,
            over: s.over,
            sign: d.crossing(s.crossing).sign,
        })
        .collect()
}

/// Space separated tokens; empty string for no crossings.
pub fn format_gauss(code: &[GaussToken]) -> String {
    code.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_gauss(text: &str) -> Result<Vec<GaussToken>, String> {
    text.split_whitespace().map(str::parse).collect()
}

/// PD code: per crossing (by id) the arc labels
/// `(incoming under, right, outgoing under, left)`, counterclockwise from
/// the incoming under arc. Arc `j + 1` leaves the `j`-th passage of the
/// traversal; labels run over `1..=2c`.
pub fn pd_code(d: &KnotDiagram) -> Vec<[usize; 4]> {
    let m = d.traversal.len();
    let incoming = |j: usize| if j == 0 { m } else { j };
    let mut over_at = vec![0; d.crossings.len() + 1];
    let mut under_at = vec![0; d.crossings.len() + 1];
    for (j, s) in d.traversal.iter().enumerate() {
        if s.over {
            over_at[s.crossing] = j;
        } else {
            under_at[s.crossing] = j;
        }
    }
    d.crossings
        .iter()
        .map(|c| {
            let (ju, jo) = (under_at[c.id], over_at[c.id]);
            let (in_u, out_u) = (incoming(ju), ju + 1);
            let (in_o, out_o) = (incoming(jo), jo + 1);
            if c.sign < 0 {
                // over runs right to left seen from the incoming under arc
                [in_u, in_o, out_u, out_o]
            } else {
                [in_u, out_o, out_u, in_o]
            }
        })
        .collect()
}

pub fn format_pd(code: &[[usize; 4]]) -> String {
    code.iter()
        .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})\n"))
        .collect()
}

pub fn parse_pd(text: &str) -> Result<Vec<[usize; 4]>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let inner = l
                .strip_prefix("X(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("bad PD line `{l}`"))?;
            let v: Vec<usize> = inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| format!("bad PD line `{l}`")))
                .collect::<Result<_, _>>()?;
            v.try_into().map_err(|_| format!("bad PD line `{l}`"))
        })
        .collect()
}

pub fn writhe(d: &KnotDiagram) -> i32 {
    d.crossings.iter().map(|c| c.sign).sum()
}

/// Orthonormal basis of the projection plane.
fn plane_basis() -> ([f64; 3], [f64; 3]) {
    let pi = std::f64::consts::PI;
    let n = [1.0, pi, pi * pi];
    let u = [-pi, 1.0, 0.0];
    let w = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ];
    let norm = |v: [f64; 3]| {
        let l = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        v.map(|c| c / l)
    };
    (norm(u), norm(w))
}

/// Line records for plotting: `V x y` per projected vertex, `S i j` per
/// edge and `B id edge x y` for the break in the under strand at each
/// crossing. Coordinates are display-only and carry `precision` significant
/// digits.
pub fn export_plot(d: &KnotDiagram, precision: usize) -> String {
    let (u, w) = plane_basis();
    let planar = |p: [f64; 3]| {
        let dot = |b: [f64; 3]| p[0] * b[0] + p[1] * b[1] + p[2] * b[2];
        (dot(u), dot(w))
    };
    let k = &d.knot;
    let n = k.len();
    let mut out = String::from("# projection along (1, pi, pi^2); coordinates are display-only\n");
    for v in k.vertices() {
        let (x, y) = planar(v.coords().map(|c| c as f64));
        out.push_str(&format!("V {} {}\n", fmt_sig(x, precision), fmt_sig(y, precision)));
    }
    for i in 0..n {
        out.push_str(&format!("S {} {}\n", i, (i + 1) % n));
    }
    for c in &d.crossings {
        let e = c.under.edge;
        let t = c.under.param.to_f64();
        let a = k.vertex(e).coords().map(|c| c as f64);
        let b = k.vertex(e + 1).coords().map(|c| c as f64);
        let p = [0, 1, 2].map(|i| a[i] + t * (b[i] - a[i]));
        let (x, y) = planar(p);
        out.push_str(&format!(
            "B {} {} {} {}\n",
            c.id,
            e,
            fmt_sig(x, precision),
            fmt_sig(y, precision)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lattice::LatticePoint;
    use crate::moves::apply_m1;

    fn square() -> CubicKnot {
        catalog::unknot4()
    }

    #[test]
    fn square_has_no_crossings() {
        let d = build_diagram(&square()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert!(gauss_code(&d).is_empty());
        assert!(pd_code(&d).is_empty());
        assert_eq!(writhe(&d), 0);
        for m in [2, 3, 5] {
            let d = build_diagram(&apply_m1(&square(), m).unwrap()).unwrap();
            assert_eq!(format_gauss(&gauss_code(&d)), "");
        }
    }

    #[test]
    fn trefoil_diagram_is_balanced() {
        let d = build_diagram(&catalog::trefoil24()).unwrap();
        assert!(d.crossing_count() >= 3);
        let code = gauss_code(&d);
        assert_eq!(code.len(), 2 * d.crossing_count());
        for id in 1..=d.crossing_count() {
            let toks: Vec<_> = code.iter().filter(|t| t.crossing == id).collect();
            assert_eq!(toks.len(), 2);
            assert_ne!(toks[0].over, toks[1].over);
            assert_eq!(toks[0].sign, toks[1].sign);
        }
        // first encounter order
        let mut seen = 0;
        for t in &code {
            if t.crossing > seen {
                assert_eq!(t.crossing, seen + 1);
                seen = t.crossing;
            }
        }
        for c in d.crossings() {
            let n = d.knot().len();
            let (a, b) = (c.over.edge, c.under.edge);
            assert!(a != b && (a + 1) % n != b && (b + 1) % n != a);
        }
    }

    #[test]
    fn pd_arcs_appear_twice() {
        let d = build_diagram(&catalog::trefoil24()).unwrap();
        let pd = pd_code(&d);
        let mut count = vec![0; 2 * pd.len() + 1];
        for x in &pd {
            for &a in x {
                count[a] += 1;
            }
        }
        assert!(count[1..].iter().all(|&c| c == 2));
        assert_eq!(parse_pd(&format_pd(&pd)).unwrap(), pd);
    }

    #[test]
    fn gauss_text_round_trip() {
        let d = build_diagram(&catalog::trefoil24()).unwrap();
        let text = format_gauss(&gauss_code(&d));
        assert_eq!(format_gauss(&parse_gauss(&text).unwrap()), text);
        assert!(parse_gauss("O1+ X2-").is_err());
        assert!(parse_gauss("O+").is_err());
        assert_eq!(
            "U12-".parse::<GaussToken>().unwrap(),
            GaussToken {
                crossing: 12,
                over: false,
                sign: -1
            }
        );
    }

    #[test]
    fn translation_and_mirror() {
        let k = catalog::trefoil24();
        let d = build_diagram(&k).unwrap();
        let t = build_diagram(&k.translate(LatticePoint::new(4, -9, 2))).unwrap();
        assert_eq!(gauss_code(&d), gauss_code(&t));
        let m = build_diagram(&k.mirror()).unwrap();
        assert_eq!(writhe(&m), -writhe(&d));
        assert_eq!(m.crossing_count(), d.crossing_count());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let k = catalog::fig8();
        let a = build_diagram_with(&k, Execution::Sequential).unwrap();
        let b = build_diagram_with(&k, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn plot_records() {
        let d = build_diagram(&square()).unwrap();
        let text = export_plot(&d, 17);
        let count = |p: &str| text.lines().filter(|l| l.starts_with(p)).count();
        assert_eq!((count("V "), count("S "), count("B ")), (4, 4, 0));

        let d = build_diagram(&catalog::trefoil24()).unwrap();
        let hi = export_plot(&d, 17);
        let lo = export_plot(&d, 6);
        assert_eq!(
            hi.lines().filter(|l| l.starts_with("B ")).count(),
            d.crossing_count()
        );
        let tokens = |s: &str| -> Vec<String> {
            s.lines()
                .map(|l| {
                    let f: Vec<&str> = l.split_whitespace().collect();
                    match f.first() {
                        Some(&"S") => l.to_string(),
                        Some(&"B") => format!("B {} {}", f[1], f[2]),
                        Some(other) => other.to_string(),
                        None => String::new(),
                    }
                })
                .collect()
        };
        assert_eq!(tokens(&hi), tokens(&lo));
        assert_ne!(hi, lo);
    }
}
