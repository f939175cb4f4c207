//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubeknot::catalog::{catalog, trefoil24, unknot12, unknot4};
use cubeknot::diagram::{build_diagram, format_gauss, gauss_code, pd_code, writhe};
use cubeknot::invariants::{colorings, determinant, jones_capped};
use cubeknot::qpi::{projection_collides, segments_cross, ProjectedSegment, SegmentRelation};
use cubeknot::search::{find_certificate, verify_certificate, SearchBudget, SearchOutcome};
use cubeknot::*;

use common::*;

const CROSSING_CAP: usize = 16;

struct Report {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Report {
    Report { ok, detail: detail.into() }
}

fn timed(limit: Duration, start: Instant, r: Report) -> Report {
    let el = start.elapsed();
    let detail = format!("{}; {:.2}s (limit {}s)", r.detail, el.as_secs_f64(), limit.as_secs());
    verdict(r.ok && el <= limit, detail)
}

fn injectivity() -> Report {
    let start = Instant::now();
    let pts: Vec<LatticePoint> = (0..11)
        .flat_map(|x| (0..11).flat_map(move |y| (0..11).map(move |z| LatticePoint::new(x, y, z))))
        .collect();
    let collides = projection_collides(&pts, Execution::default());
    let pairs = pts.len() * (pts.len() - 1) / 2;
    timed(
        Duration::from_secs(30),
        start,
        verdict(!collides, format!("{pairs} pairs, collisions {}", if collides { ">0" } else { "0" })),
    )
}

fn family_injectivity() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    let mut checked = 0;
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let along = Direction::new(axis, true).unit();
        let offset = |rng: &mut ChaCha8Rng| {
            let (a, b) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            match axis {
                Axis::X => LatticePoint::new(0, a, b),
                Axis::Y => LatticePoint::new(a, 0, b),
                Axis::Z => LatticePoint::new(a, b, 0),
            }
        };
        let mut pairs = 0;
        while pairs < 100 {
            let (o1, o2) = (offset(&mut rng), offset(&mut rng));
            if o1 == o2 {
                continue;
            }
            pairs += 1;
            // a window of unit edges on each line
            for i in -5..5 {
                for j in -5..5 {
                    let a = o1 + along * i;
                    let b = o2 + along * j;
                    let s1 = ProjectedSegment::from_edge(a, a + along, 0).unwrap();
                    let s2 = ProjectedSegment::from_edge(b, b + along, 2).unwrap();
                    checked += 1;
                    if segments_cross(&s1, &s2) != SegmentRelation::None {
                        violations += 1;
                    }
                }
            }
        }
    }
    verdict(violations == 0, format!("300 line pairs, {checked} segment pairs, violations {violations}"))
}

fn sign_oracle() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pi = pi_rational();
    let mut mismatches = 0;
    let mut near_zero = 0;
    for i in 0..1000 {
        let deg = rng.gen_range(0..=8);
        let mut cs: Vec<BigRational> = (0..=deg)
            .map(|_| BigRational::new(rng.gen_range(-10_000i64..=10_000).into(), rng.gen_range(1i64..=500).into()))
            .collect();
        if i % 4 == 0 {
            // cancel the value down to a random tiny residue
            let k = rng.gen_range(5u32..60);
            let mut val = BigRational::from_integer(0.into());
            let mut pk = BigRational::from_integer(1.into());
            for c in &cs {
                val += c * &pk;
                pk *= &pi;
            }
            let scale = BigInt::from(10).pow(k);
            let approx = (val * BigRational::from_integer(scale.clone())).floor() / BigRational::from_integer(scale);
            cs[0] -= approx;
            near_zero += 1;
        }
        let p = PiPoly::new(cs).unwrap();
        if numeric_sign(&p) != Some(p.sign()) {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("1000 polys ({near_zero} near zero), mismatches {mismatches}, max bits {}", cubeknot::qpi::max_precision_used()),
    )
}

struct Inv {
    jones: LaurentPoly,
    det: BigUint,
    color3: BigUint,
}

fn invariants_of(k: &CubicKnot) -> Inv {
    let d = build_diagram(k).unwrap();
    Inv {
        jones: jones_capped(&d, CROSSING_CAP).unwrap(),
        det: determinant(&d),
        color3: colorings(&d, 3).unwrap().count,
    }
}

fn move_invariance() -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    let mut moves = 0;
    let mut max_cross = 0;
    for e in catalog() {
        let base = invariants_of(&e.knot);
        let n0 = e.knot.len();
        let path = walk(&e.knot, 200, &mut rng, |k| k.len() <= n0 + 8 && crossings(k) <= CROSSING_CAP);
        moves += path.len() - 1;
        let scaled = [2, 3, 5].map(|m| apply_m1(&e.knot, m).unwrap());
        for k in path.iter().skip(1).chain(scaled.iter()) {
            max_cross = max_cross.max(crossings(k));
            let inv = invariants_of(k);
            if inv.jones != base.jones || inv.det != base.det || inv.color3 != base.color3 {
                violations += 1;
            }
        }
    }
    let r = verdict(
        violations == 0 && moves == 800,
        format!("{moves} M2 moves + 12 M1, max crossings {max_cross}, violations {violations}"),
    );
    timed(Duration::from_secs(300), start, r)
}

fn m1_stability() -> Report {
    let mut differ = 0;
    for e in catalog() {
        let g = format_gauss(&gauss_code(&build_diagram(&e.knot).unwrap()));
        for m in [2, 3, 5] {
            let k = apply_m1(&e.knot, m).unwrap();
            if format_gauss(&gauss_code(&build_diagram(&k).unwrap())) != g {
                differ += 1;
            }
        }
    }
    verdict(differ == 0, format!("12 subdivisions, differing Gauss codes {differ}"))
}

fn do_undo() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut orbit = Vec::new();
    for e in catalog() {
        let n0 = e.knot.len();
        orbit.extend(walk(&e.knot, 250, &mut rng, |k| k.len() <= n0 + 8));
    }
    let mut violations = 0;
    for _ in 0..1000 {
        let k = &orbit[rng.gen_range(0..orbit.len())];
        let ms = enumerate_m2(k);
        let mv = ms[rng.gen_range(0..ms.len())];
        let out = apply_m2(k, mv).unwrap();
        let back = invert(mv, k).and_then(|inv| apply_m2(&out, inv));
        if back.map(|b| canonical_form(&b, true)) != Ok(canonical_form(k, true)) {
            violations += 1;
        }
    }
    verdict(violations == 0, format!("1000 pairs from {} orbit states, violations {violations}", orbit.len()))
}

fn staircase_search() -> Report {
    let start = Instant::now();
    let b = SearchBudget::default();
    let out = find_certificate(&unknot12(), &unknot4(), &b).unwrap();
    let stats = out.stats();
    let r = match out.certificate() {
        Some(c) => verdict(
            verify_certificate(&unknot12(), c, &unknot4()) && stats.states <= 100_000,
            format!("certificate of {} steps, {} states, verified", c.len(), stats.states),
        ),
        None => verdict(false, format!("not found ({stats})")),
    };
    timed(Duration::from_secs(60), start, r)
}

fn trefoil_values() -> Report {
    let d = build_diagram(&trefoil24()).unwrap();
    let c3 = colorings(&d, 3).unwrap().count;
    let det = determinant(&d);
    let pd = pd_code(&d);
    let j = jones_capped(&d, CROSSING_CAP).unwrap();
    let oracle = skein_jones(&pd, writhe(&d));
    let jones_ok = j == oracle || j == oracle.mirror();
    // oracle agreement on every diagram with at most 8 crossings seen
    // along catalog orbits, plus table knots
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut diagrams: Vec<Vec<[usize; 4]>> = TABLE.iter().map(|(_, pd)| pd.to_vec()).collect();
    for e in catalog() {
        let n0 = e.knot.len();
        for k in walk(&e.knot, 60, &mut rng, |k| k.len() <= n0 + 6 && crossings(k) <= 8) {
            diagrams.push(pd_of(&k));
        }
    }
    let disagree = diagrams
        .iter()
        .filter(|pd| {
            cubeknot::invariants::bracket_from_pd(pd, 8, Execution::default()).unwrap() != skein_bracket(pd)
        })
        .count();
    verdict(
        c3 == 9u32.into() && det == 3u32.into() && jones_ok && disagree == 0,
        format!(
            "3-colorings {c3}, det {det}, jones {j} (oracle match {jones_ok}), {} diagrams with <= 8 crossings, disagreements {disagree}",
            diagrams.len()
        ),
    )
}

fn negative_control() -> Report {
    let start = Instant::now();
    let out = find_certificate(&unknot4(), &trefoil24(), &SearchBudget::default()).unwrap();
    let not_found = matches!(out, SearchOutcome::NotFound { .. });
    let j0 = jones_capped(&build_diagram(&unknot4()).unwrap(), CROSSING_CAP).unwrap();
    let j1 = jones_capped(&build_diagram(&trefoil24()).unwrap(), CROSSING_CAP).unwrap();
    let r = verdict(
        not_found && j0 != j1,
        format!("search: {} ({}); jones {j0} vs {j1}", if not_found { "NotFound as expected" } else { "FOUND" }, out.stats()),
    );
    timed(Duration::from_secs(600), start, r)
}

type Criterion = (&'static str, fn() -> Report);

fn main() {
    let criteria: [Criterion; 9] = [
        ("projection injectivity on [0,10]^3", injectivity),
        ("family injectivity", family_injectivity),
        ("exact sign vs 200-digit evaluation", sign_oracle),
        ("move invariance of jones/det/3-colorings", move_invariance),
        ("Gauss code stable under M1", m1_stability),
        ("do/undo preserves canonical form", do_undo),
        ("unknot12 -> unknot4 certificate", staircase_search),
        ("trefoil values and bracket oracle", trefoil_values),
        ("negative control unknot4 vs trefoil24", negative_control),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if filter.is_some_and(|x| x != n) {
            continue;
        }
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        println!("criterion {n} {}: {name}: {}", if r.ok { "PASS" } else { "FAIL" }, r.detail);
        failed += !r.ok as usize;
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
