//! An independent accept/reject oracle for drawings, used to cross-examine
//! the library's validator. Everything here is written against the raw
//! diagram data with its own orientation-sign machinery (no parametric
//! intersection solve, no calls into the library's predicates).

use afbdim::corpus::{random_afb_diagram, CorpusSpec, Shape};
use afbdim::diagram::PlaneDiagram;
use afbdim::rational::{rat_frac, Point, Rat};
use num::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pick(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    (rng.next_u64() % bound.max(1) as u64) as usize
}

/// A mix of pristine and deliberately broken drawings, deterministic per
/// seed and never larger than 50 segments.
pub fn random_test_diagram(seed: u64) -> PlaneDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0xa076_1d64_78bd_642f));
    let shapes = [Shape::Stacked, Shape::Grid, Shape::Wraparound];
    let spec = CorpusSpec {
        seed: rng.next_u64(),
        n: 4 + pick(&mut rng, 10),
        shape: shapes[pick(&mut rng, 3)],
    };
    let d = random_afb_diagram(&spec);
    let mut vertices: Vec<(String, Point)> =
        d.ids().iter().cloned().zip(d.positions().iter().cloned()).collect();
    let mut edges: Vec<(String, String, Vec<Point>)> = d
        .edges()
        .iter()
        .map(|e| (d.id(e.lower).to_owned(), d.id(e.upper).to_owned(), e.bends.clone()))
        .collect();

    match pick(&mut rng, 6) {
        0 => { /* leave pristine */ }
        1 => {
            // duplicate an x coordinate
            if vertices.len() >= 2 {
                let i = pick(&mut rng, vertices.len());
                let j = (i + 1 + pick(&mut rng, vertices.len() - 1)) % vertices.len();
                let x = vertices[j].1.x.clone();
                vertices[i].1.x = x;
            }
        }
        2 => {
            // park a vertex on the midpoint of some segment
            if !edges.is_empty() && vertices.len() >= 3 {
                let (lo, hi, bends) = &edges[pick(&mut rng, edges.len())];
                let find = |id: &str| vertices.iter().find(|(v, _)| v == id).unwrap().1.clone();
                let (a, b) = match bends.first() {
                    Some(bend) => (find(lo), bend.clone()),
                    None => (find(lo), find(hi)),
                };
                let mid = Point::new(
                    (&a.x + &b.x) * rat_frac(1, 2),
                    (&a.y + &b.y) * rat_frac(1, 2),
                );
                let lo = lo.clone();
                let hi = hi.clone();
                let k = vertices
                    .iter()
                    .position(|(v, _)| v != &lo && v != &hi)
                    .unwrap_or(0);
                vertices[k].1 = mid;
            }
        }
        3 => {
            // force a crossing with a long extra edge
            if vertices.len() >= 4 {
                let mut by_y: Vec<usize> = (0..vertices.len()).collect();
                by_y.sort_by(|&a, &b| vertices[a].1.y.cmp(&vertices[b].1.y));
                let lo = by_y[0];
                let hi = by_y[by_y.len() - 1];
                edges.push((vertices[lo].0.clone(), vertices[hi].0.clone(), Vec::new()));
            }
        }
        4 => {
            // break monotonicity with a high bend
            if !edges.is_empty() {
                let e = pick(&mut rng, edges.len());
                let hi_id = edges[e].1.clone();
                let top = vertices.iter().find(|(v, _)| *v == hi_id).unwrap().1.clone();
                edges[e].2.push(Point::new(&top.x + rat_frac(1, 3), &top.y + rat_frac(7, 2)));
            }
        }
        _ => {
            // redundant cover: shortcut a two-step chain
            let mut added = false;
            'outer: for (lo1, hi1, _) in edges.clone() {
                for (lo2, hi2, _) in edges.clone() {
                    if hi1 == lo2 {
                        edges.push((lo1.clone(), hi2.clone(), Vec::new()));
                        added = true;
                        break 'outer;
                    }
                }
            }
            if !added && vertices.len() >= 2 {
                // fall back to a duplicate edge
                if let Some(first) = edges.first().cloned() {
                    edges.push(first);
                }
            }
        }
    }
    PlaneDiagram::new(vertices, edges).expect("structurally well formed")
}

fn sign(v: &Rat) -> i32 {
    match v.cmp(&Rat::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

fn orient3(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&v)
}

fn between(a: &Rat, p: &Rat, b: &Rat) -> bool {
    (a <= p && p <= b) || (b <= p && p <= a)
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient3(a, b, p) == 0 && between(&a.x, &p.x, &b.x) && between(&a.y, &p.y, &b.y)
}

/// All points where two closed segments can touch, as a conservative
/// enumeration: None, a proper interior crossing, an endpoint touch list, or
/// a collinear overlap.
enum Touch {
    None,
    Proper,
    Overlap,
    AtPoints(Vec<Point>),
}

fn classify_touch(a: &Point, b: &Point, c: &Point, d: &Point) -> Touch {
    let o1 = orient3(a, b, c);
    let o2 = orient3(a, b, d);
    let o3 = orient3(c, d, a);
    let o4 = orient3(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return Touch::Proper;
    }
    if o1 == 0 && o2 == 0 {
        // collinear: count endpoints of each lying on the other
        let mut pts: Vec<Point> = Vec::new();
        for (p, s1, s2) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
            if on_segment(p, s1, s2) && !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        return match pts.len() {
            0 => Touch::None,
            1 => Touch::AtPoints(pts),
            _ => Touch::Overlap,
        };
    }
    let mut pts: Vec<Point> = Vec::new();
    for (p, s1, s2) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, s1, s2) && !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    if !pts.is_empty() {
        return Touch::AtPoints(pts);
    }
    // non-collinear, no endpoint on the other: either disjoint or a proper
    // crossing already caught above
    if o1 != o2 && o3 != o4 {
        Touch::Proper
    } else {
        Touch::None
    }
}

/// The full accept decision, re-derived from scratch.
pub fn oracle_accepts(d: &PlaneDiagram) -> bool {
    let n = d.len();
    // general position
    for i in 0..n {
        for j in (i + 1)..n {
            if d.position(i).x == d.position(j).x || d.position(i).y == d.position(j).y {
                return false;
            }
        }
    }
    // duplicate edges
    for (i, e) in d.edges().iter().enumerate() {
        for f in &d.edges()[(i + 1)..] {
            if e.lower == f.lower && e.upper == f.upper {
                return false;
            }
        }
    }
    // strict monotone polylines
    let polylines: Vec<Vec<Point>> = d.edges().iter().map(|e| e.polyline(d.positions())).collect();
    for pts in &polylines {
        for w in pts.windows(2) {
            if w[0].y >= w[1].y {
                return false;
            }
        }
    }
    // pairwise contacts
    for i in 0..polylines.len() {
        for j in i..polylines.len() {
            let (ei, ej) = (&d.edges()[i], &d.edges()[j]);
            let mut allowed: Vec<&Point> = Vec::new();
            if i != j {
                for v in [ei.lower, ei.upper] {
                    if v == ej.lower || v == ej.upper {
                        allowed.push(d.position(v));
                    }
                }
            }
            for (si, wi) in polylines[i].windows(2).enumerate() {
                for (sj, wj) in polylines[j].windows(2).enumerate() {
                    if i == j && sj <= si {
                        continue;
                    }
                    match classify_touch(&wi[0], &wi[1], &wj[0], &wj[1]) {
                        Touch::None => {}
                        Touch::Proper | Touch::Overlap => return false,
                        Touch::AtPoints(pts) => {
                            for p in &pts {
                                let ok = if i == j {
                                    sj == si + 1 && *p == wi[1]
                                } else {
                                    allowed.iter().any(|a| *a == p)
                                };
                                if !ok {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // no vertex interior to any polyline
    for v in 0..n {
        for (e, pts) in d.edges().iter().zip(&polylines) {
            for (si, w) in pts.windows(2).enumerate() {
                if !on_segment(d.position(v), &w[0], &w[1]) {
                    continue;
                }
                let at_lower = e.lower == v && si == 0 && *d.position(v) == w[0];
                let at_upper = e.upper == v && si == pts.len() - 2 && *d.position(v) == w[1];
                if !(at_lower || at_upper) {
                    return false;
                }
            }
        }
    }
    // cover sanity: acyclic and transitively reduced, via matrix closure
    let mut reach = vec![vec![false; n]; n];
    for e in d.edges() {
        reach[e.lower][e.upper] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    if (0..n).any(|i| reach[i][i]) {
        return false;
    }
    for e in d.edges() {
        if (0..n).any(|w| reach[e.lower][w] && reach[w][e.upper]) {
            return false;
        }
    }
    true
}
