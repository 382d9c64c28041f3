//! Deterministic diagram generators and differential cross-checks.
//!
//! Generators re-validate their output and check accessibility before
//! returning; the randomness only steers sizes and jitter, never correctness.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::PlaneDiagram;
use crate::dimension::DimensionBound;
use crate::embedding::EmbeddedDiagram;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::rational::{rat, rat_frac, Point, Rat};
use crate::realizer::CoverMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Stacked,
    Grid,
    Wraparound,
    Adversarial,
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Shape> {
        match s {
            "stacked" => Ok(Shape::Stacked),
            "grid" => Ok(Shape::Grid),
            "wraparound" => Ok(Shape::Wraparound),
            "adversarial" => Ok(Shape::Adversarial),
            other => Err(Error::Internal(format!("unknown shape {other:?}"))),
        }
    }
}

/// Everything a generator needs; equal specs produce identical diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub n: usize,
    pub shape: Shape,
}

fn pick(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    debug_assert!(bound > 0);
    (rng.next_u64() % bound as u64) as usize
}

/// jitter in [0, 1) with denominator `den`
fn jitter(rng: &mut ChaCha8Rng, den: i64) -> Rat {
    rat_frac(pick(rng, den as usize) as i64, den)
}

/// A validated diagram in which every minimal element is accessible from
/// below. Deterministic per spec.
pub fn random_afb_diagram(spec: &CorpusSpec) -> PlaneDiagram {
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(
            spec.seed ^ (attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
        );
        let candidate = match spec.shape {
            Shape::Stacked => stacked(&mut rng, spec.n, false),
            Shape::Grid => grid(&mut rng, spec.n),
            Shape::Wraparound => wraparound(&mut rng, spec.n),
            Shape::Adversarial => stacked(&mut rng, spec.n, false),
        };
        if let Some(d) = accept_afb(candidate) {
            return d;
        }
    }
    // plain staircases always validate; reaching this indicates a bug
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    accept_afb(stacked(&mut rng, spec.n, true)).expect("plain staircase is valid")
}

fn accept_afb(candidate: Result<PlaneDiagram>) -> Option<PlaneDiagram> {
    let d = candidate.ok()?;
    if !d.validate().ok {
        return None;
    }
    let e = EmbeddedDiagram::build(d).ok()?;
    if !e.afb_check().0 {
        return None;
    }
    Some(e.diagram().clone())
}

/// A validated diagram with at least one trapped minimal element.
pub fn adversarial_non_afb(seed: u64) -> PlaneDiagram {
    for attempt in 0..64u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        if let Ok(d) = trapped_quad(&mut rng) {
            if d.validate().ok {
                if let Ok(e) = EmbeddedDiagram::build(d) {
                    if !e.afb_check().0 {
                        return e.diagram().clone();
                    }
                }
            }
        }
    }
    unreachable!("the trapped quad construction is valid for every jitter");
}

/// Layered staircases between consecutive layers, with occasional enclosed
/// garnish: an extra element drawn inside a bounded face.
fn stacked(rng: &mut ChaCha8Rng, n: usize, plain: bool) -> Result<PlaneDiagram> {
    let n = n.max(1);
    let den = (n as i64 + 2) * 4;
    // layer widths
    let mut widths = Vec::new();
    let mut left = n;
    while left > 0 {
        let w = 1 + pick(rng, left.min(4));
        widths.push(w);
        left -= w;
    }
    if widths.len() == 1 && n > 1 {
        // a single antichain layer is valid but dull; split it
        let w = widths[0];
        widths = vec![w.div_ceil(2), w / 2];
        widths.retain(|&w| w > 0);
    }

    let mut vertices: Vec<(String, Point)> = Vec::new();
    let mut ids: Vec<Vec<String>> = Vec::new();
    let mut counter = 0i64;
    for (l, &w) in widths.iter().enumerate() {
        let mut layer = Vec::new();
        for i in 0..w {
            let id = format!("v{l:02}_{i:02}");
            let x = rat(i as i64 * 12 + pick(rng, 7) as i64) + rat_frac(counter + 1, den);
            let y = rat(l as i64 * 10) + rat_frac(counter + 1, den);
            vertices.push((id.clone(), Point::new(x, y)));
            layer.push(id);
            counter += 1;
        }
        ids.push(layer);
    }

    // monotone staircase between consecutive layers
    let mut edges: Vec<(String, String, Vec<Point>)> = Vec::new();
    for l in 0..ids.len().saturating_sub(1) {
        let (wa, wb) = (ids[l].len(), ids[l + 1].len());
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            edges.push((ids[l][i].clone(), ids[l + 1][j].clone(), Vec::new()));
            if i + 1 == wa && j + 1 == wb {
                break;
            }
            let can_i = i + 1 < wa;
            let can_j = j + 1 < wb;
            if can_i && (!can_j || pick(rng, 2) == 0) {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    let d = PlaneDiagram::new(vertices, edges)?;
    if plain || pick(rng, 3) != 0 {
        return Ok(d);
    }
    match garnish_inner(rng, &d) {
        Some(garnished) => Ok(garnished),
        None => Ok(d),
    }
}

/// Places one extra element inside a bounded face, covered by the face's
/// lowest vertex, producing an enclosed pair.
fn garnish_inner(rng: &mut ChaCha8Rng, d: &PlaneDiagram) -> Option<PlaneDiagram> {
    let e = EmbeddedDiagram::build(d.clone()).ok()?;
    if !e.afb_check().0 {
        return None;
    }
    let outer: Vec<Option<usize>> =
        (0..e.component_count()).map(|c| e.local_outer_face(c)).collect();
    let bounded: Vec<usize> = (0..e.faces().len())
        .filter(|f| !outer.contains(&Some(*f)))
        .collect();
    if bounded.is_empty() {
        return None;
    }
    let face = bounded[pick(rng, bounded.len())];
    // lowest vertex of the face walk and its two corner stubs
    let orbit = &e.faces()[face];
    let verts: Vec<usize> = orbit.iter().map(|&dd| e.tail(dd)).collect();
    let w = *verts
        .iter()
        .min_by(|&&a, &&b| d.position(a).y.cmp(&d.position(b).y))?;
    // the two face edges at w both rise; steer between their slopes
    let stubs: Vec<(Rat, Rat)> = orbit
        .iter()
        .filter(|&&dd| e.tail(dd) == w)
        .chain(orbit.iter().filter(|&&dd| e.head(dd) == w))
        .map(|&dd| {
            let eidx = EmbeddedDiagram::edge_of(dd);
            let edge = &d.edges()[eidx];
            let pts = edge.polyline(d.positions());
            let (a, b) = if edge.lower == w {
                (pts[0].clone(), pts[1].clone())
            } else {
                (pts[pts.len() - 1].clone(), pts[pts.len() - 2].clone())
            };
            (&b.x - &a.x, &b.y - &a.y)
        })
        .collect();
    if stubs.len() < 2 {
        return None;
    }
    // slopes dx/dy of the two stubs; aim between them
    let s0 = &stubs[0].0 / &stubs[0].1;
    let s1 = &stubs[1].0 / &stubs[1].1;
    let mid = (&s0 + &s1) / rat(2);
    let wp = d.position(w).clone();

    let mut eps = rat_frac(1, 4);
    for _ in 0..10 {
        let np = Point::new(&wp.x + &mid * &eps, &wp.y + &eps);
        let id = "inner00".to_owned();
        if d.ids().contains(&id) {
            return None;
        }
        let mut vertices: Vec<(String, Point)> = d
            .ids()
            .iter()
            .cloned()
            .zip(d.positions().iter().cloned())
            .collect();
        vertices.push((id.clone(), np));
        let mut edges: Vec<(String, String, Vec<Point>)> = d
            .edges()
            .iter()
            .map(|ed| (d.id(ed.lower).to_owned(), d.id(ed.upper).to_owned(), ed.bends.clone()))
            .collect();
        edges.push((d.id(w).to_owned(), id, Vec::new()));
        if let Ok(cand) = PlaneDiagram::new(vertices, edges) {
            if cand.validate().ok {
                if let Ok(emb) = EmbeddedDiagram::build(cand) {
                    if emb.afb_check().0 {
                        return Some(emb.diagram().clone());
                    }
                }
            }
        }
        eps /= rat(2);
    }
    None
}

/// A full a-by-b grid drawn as a diamond lattice; always has a zero.
fn grid(rng: &mut ChaCha8Rng, n: usize) -> Result<PlaneDiagram> {
    let n = n.max(1);
    let a = 1 + pick(rng, 5.min(n));
    let b = (n / a).clamp(1, 9);
    let den = (n as i64 + 2) * 4;
    let mut vertices = Vec::new();
    let mut counter = 0i64;
    for i in 0..a {
        for j in 0..b {
            let id = format!("g{i}{j}");
            let x = rat((j as i64 - i as i64) * 10) + rat_frac(counter + 1, den);
            let y = rat((i + j) as i64 * 10) + rat_frac(counter + 1, den);
            vertices.push((id, Point::new(x, y)));
            counter += 1;
        }
    }
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if i + 1 < a {
                edges.push((format!("g{i}{j}"), format!("g{}{}", i + 1, j), Vec::new()));
            }
            if j + 1 < b {
                edges.push((format!("g{i}{j}"), format!("g{}{}", i, j + 1), Vec::new()));
            }
        }
    }
    PlaneDiagram::new(vertices, edges)
}

/// A bottom row of minimals chained by little tents, plus a flank of high
/// minimals on the left whose hub edges arrive leftmost: the hub's minimals
/// read rotated against the envelope. This manufactures rotated (type 2)
/// profiles with 2B, 2C and 2D pairs and right-biased candidates.
fn wraparound(rng: &mut ChaCha8Rng, n: usize) -> Result<PlaneDiagram> {
    let k = (3 + pick(rng, 3)).min(n.saturating_sub(7).max(3));
    let den = 64i64;
    let mut vertices: Vec<(String, Point)> = Vec::new();
    let mut edges: Vec<(String, String, Vec<Point>)> = Vec::new();

    // bottom minimals m00..m(k-1), left to right
    for i in 0..k {
        let x = rat(10 * (i as i64 + 1)) + jitter(rng, den);
        let y = jitter(rng, den);
        vertices.push((format!("m{i:02}"), Point::new(x, y)));
    }
    // tents t01..t(k-1): t_i covers m_(i-1) and m_i, chaining the bottom row
    for i in 1..k {
        let id = format!("t{i:02}");
        let x = rat(10 * i as i64 + 5) + jitter(rng, den);
        let y = rat(2) + jitter(rng, den);
        vertices.push((id.clone(), Point::new(x, y)));
        edges.push((format!("m{:02}", i - 1), id.clone(), Vec::new()));
        edges.push((format!("m{i:02}"), id, Vec::new()));
    }
    // the west flank, top to bottom: q00 and q02 reach the hub, q01 sits
    // between them in the envelope with only a private tent above it
    let q_hi = ("q00".to_owned(), Point::new(rat(-14) + jitter(rng, den), rat(26) + jitter(rng, den)));
    let q_mid =
        ("q01".to_owned(), Point::new(rat(-13) + jitter(rng, den), rat(23) + jitter(rng, den)));
    let q_lo = ("q02".to_owned(), Point::new(rat(-12) + jitter(rng, den), rat(20) + jitter(rng, den)));
    let q_tent =
        ("tq0".to_owned(), Point::new(rat_frac(-25, 2) + jitter(rng, den), rat(24) + jitter(rng, den)));
    vertices.extend([q_hi.clone(), q_mid.clone(), q_lo.clone(), q_tent.clone()]);
    edges.push((q_mid.0.clone(), q_tent.0.clone(), Vec::new()));
    edges.push((q_lo.0.clone(), q_tent.0.clone(), Vec::new()));

    // hubs: y00 sees {m00, q00, q02}; y01 repeats it higher; y02 adds the
    // minimals of the last tent, turning early middles into 2B pairs
    let hub = ("y00".to_owned(), Point::new(rat(-5) + jitter(rng, den), rat(40) + jitter(rng, den)));
    let hub_top =
        ("y01".to_owned(), Point::new(rat(-8) + jitter(rng, den), rat(52) + jitter(rng, den)));
    vertices.push(hub.clone());
    vertices.push(hub_top.clone());
    edges.push(("m00".into(), hub.0.clone(), Vec::new()));
    edges.push((q_hi.0.clone(), hub.0.clone(), Vec::new()));
    edges.push((q_lo.0.clone(), hub.0.clone(), Vec::new()));
    edges.push((hub.0.clone(), hub_top.0.clone(), Vec::new()));

    let mut d = PlaneDiagram::new(vertices, edges)?;

    // optional gadgets, each kept only if the drawing stays valid and
    // accessible under the current jitter
    if pick(rng, 4) != 0 {
        // second hub fed by the last tent: early middles become 2B pairs
        let hub2 = ("y02".to_owned(), Point::new(rat(-6) + jitter(rng, den), rat(47) + jitter(rng, den)));
        d = try_gadget(
            &d,
            vec![hub2.clone()],
            vec![
                (hub.0.clone(), hub2.0.clone(), Vec::new()),
                (format!("t{:02}", k - 1), hub2.0.clone(), Vec::new()),
            ],
        )
        .unwrap_or(d);
    }
    if pick(rng, 2) == 0 {
        // a fourth flank minimal past the hub's greatest: 2E pairs
        let q_last =
            ("q03".to_owned(), Point::new(rat(-10) + jitter(rng, den), rat(15) + jitter(rng, den)));
        let tent = ("tq1".to_owned(),
            Point::new(rat_frac(-21, 2) + jitter(rng, den), rat(22) + jitter(rng, den)));
        d = try_gadget(
            &d,
            vec![q_last.clone(), tent.clone()],
            vec![
                (q_last.0.clone(), tent.0.clone(), Vec::new()),
                (q_lo.0.clone(), tent.0.clone(), Vec::new()),
            ],
        )
        .unwrap_or(d);
    }
    if pick(rng, 2) == 0 {
        // a bottom minimal west of everything, named to anchor the envelope:
        // pairs against the hubs become 2A
        let west = ("a00".to_owned(), Point::new(rat(-20) + jitter(rng, den), jitter(rng, den)));
        let tent =
            ("ta0".to_owned(), Point::new(rat(-2) + jitter(rng, den), rat(1) + jitter(rng, den)));
        d = try_gadget(
            &d,
            vec![west.clone(), tent.clone()],
            vec![
                (west.0.clone(), tent.0.clone(), Vec::new()),
                ("m00".to_owned(), tent.0.clone(), Vec::new()),
            ],
        )
        .unwrap_or(d);
    }
    if k >= 3 && pick(rng, 2) == 0 {
        // a wide tent skipping one bottom minimal: the skipped one is a 1B pair
        let i = 1 + pick(rng, k - 2);
        let apex = (
            "w00".to_owned(),
            Point::new(rat(10 * (i as i64 + 1) + 1) + jitter(rng, den), rat(6) + jitter(rng, den)),
        );
        d = try_gadget(
            &d,
            vec![apex.clone()],
            vec![
                (format!("m{:02}", i - 1), apex.0.clone(), Vec::new()),
                (format!("m{:02}", i + 1), apex.0.clone(), Vec::new()),
            ],
        )
        .unwrap_or(d);
    }
    Ok(d)
}

/// Extends a diagram with extra vertices and edges when the result stays
/// valid and accessible.
fn try_gadget(
    d: &PlaneDiagram,
    extra_vertices: Vec<(String, Point)>,
    extra_edges: Vec<(String, String, Vec<Point>)>,
) -> Option<PlaneDiagram> {
    let mut vertices: Vec<(String, Point)> =
        d.ids().iter().cloned().zip(d.positions().iter().cloned()).collect();
    vertices.extend(extra_vertices);
    let mut edges: Vec<(String, String, Vec<Point>)> = d
        .edges()
        .iter()
        .map(|e| (d.id(e.lower).to_owned(), d.id(e.upper).to_owned(), e.bends.clone()))
        .collect();
    edges.extend(extra_edges);
    accept_afb(PlaneDiagram::new(vertices, edges))
}

/// Two minimals under a shared pair of tops, one of them drawn inside the
/// bounded quadrilateral: its wedge cannot reach the outer face.
fn trapped_quad(rng: &mut ChaCha8Rng) -> Result<PlaneDiagram> {
    let den = 64i64;
    let vertices = vec![
        ("a00".to_owned(), Point::new(jitter(rng, den), jitter(rng, den))),
        (
            "b00".to_owned(),
            Point::new(rat_frac(1, 10) + jitter(rng, den), rat(1) + jitter(rng, den)),
        ),
        ("c00".to_owned(), Point::new(rat(-1) - jitter(rng, den), rat(2) + jitter(rng, den))),
        ("d00".to_owned(), Point::new(rat(1) + jitter(rng, den), rat(3) + jitter(rng, den))),
    ];
    let edges = vec![
        ("a00".to_owned(), "c00".to_owned(), Vec::new()),
        ("a00".to_owned(), "d00".to_owned(), Vec::new()),
        ("b00".to_owned(), "c00".to_owned(), Vec::new()),
        ("b00".to_owned(), "d00".to_owned(), Vec::new()),
    ];
    PlaneDiagram::new(vertices, edges)
}

/// One differential run over a diagram: the constructive realizers against
/// the brute-force dimension bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub elements: usize,
    pub incomparable_pairs: usize,
    pub valid: bool,
    pub afb: bool,
    pub violators: Vec<String>,
    pub afb_extensions: Option<usize>,
    pub zero_extensions: Option<usize>,
    pub dimension: Option<usize>,
    pub failures: Vec<String>,
}

impl CrossCheckReport {
    pub fn consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every applicable construction and the dimension oracle, recording
/// hard failures. The oracle only runs when |Inc| fits the limit.
pub fn cross_check(d: &PlaneDiagram, oracle_limit: usize) -> CrossCheckReport {
    let mut report = CrossCheckReport {
        elements: d.len(),
        incomparable_pairs: 0,
        valid: false,
        afb: false,
        violators: Vec::new(),
        afb_extensions: None,
        zero_extensions: None,
        dimension: None,
        failures: Vec::new(),
    };
    let validation = d.validate();
    report.valid = validation.ok;
    if !validation.ok {
        report.failures.push(format!("validation: {:?}", validation.violations));
        return report;
    }
    let e = match EmbeddedDiagram::build(d.clone()) {
        Ok(e) => e,
        Err(err) => {
            report.failures.push(format!("embedding: {err}"));
            return report;
        }
    };
    let p = e.poset().clone();
    report.incomparable_pairs = p.incomparable_pairs().len();

    let (afb, violators) = e.afb_check();
    report.afb = afb;
    report.violators = violators.iter().map(|&v| p.id(v).to_owned()).collect();

    if afb {
        match e.realize_afb(CoverMode::Five) {
            Ok(out) => {
                let count = out.realizer.extensions.len();
                report.afb_extensions = Some(count);
                if count > 6 {
                    report.failures.push(format!("afb realizer used {count} extensions"));
                }
            }
            Err(err) => report.failures.push(format!("afb realizer: {err}")),
        }
    }
    if p.zero().is_some() {
        match e.realize_planar_with_zero() {
            Ok(r) => {
                report.zero_extensions = Some(r.extensions.len());
                if r.extensions.len() != 3 {
                    report.failures.push("zero realizer is not three extensions".into());
                }
            }
            Err(err) => report.failures.push(format!("zero realizer: {err}")),
        }
    }
    if report.incomparable_pairs <= oracle_limit {
        match p.dimension_exact(6, oracle_limit) {
            Ok(DimensionBound::Exact(dim)) => {
                report.dimension = Some(dim);
                if let Some(count) = report.afb_extensions {
                    if dim > count {
                        report
                            .failures
                            .push(format!("dimension {dim} exceeds realizer size {count}"));
                    }
                }
                if report.zero_extensions.is_some() && dim > 3 {
                    report.failures.push(format!("dimension {dim} above a zero diagram's bound"));
                }
            }
            Ok(DimensionBound::MoreThan(k)) => {
                if report.afb_extensions.is_some() || report.zero_extensions.is_some() {
                    report.failures.push(format!(
                        "oracle exceeded {k} sets although a small realizer exists"
                    ));
                }
            }
            Err(err) => report.failures.push(format!("dimension oracle: {err}")),
        }
    }
    report
}

/// Replay artifact: the diagram plus its certificates, consumable by the
/// command line for deterministic re-runs.
pub fn replay_json(d: &PlaneDiagram, report: &CrossCheckReport) -> serde_json::Value {
    serde_json::json!({
        "vertices": serde_json::to_value(d.to_json().vertices).unwrap(),
        "edges": serde_json::to_value(d.to_json().edges).unwrap(),
        "certificates": serde_json::to_value(report).unwrap(),
    })
}

/// Convenience: generator output is never trusted; callers re-validate.
pub fn generate(spec: &CorpusSpec) -> PlaneDiagram {
    match spec.shape {
        Shape::Adversarial => adversarial_non_afb(spec.seed),
        _ => random_afb_diagram(spec),
    }
}

pub use crate::poset::PosetJson;

/// A random poset on at most `n` elements (not necessarily planar), for
/// order-theoretic property tests.
pub fn random_poset(seed: u64, n: usize) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    let ids: Vec<String> = (0..n).map(|i| format!("e{i:02}")).collect();
    // random strict upper-triangular relation, transitively closed, then
    // reduced to covers
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if pick(&mut rng, 3) == 0 {
                rel[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rel[i][j] && !(0..n).any(|m| rel[i][m] && rel[m][j]) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    let id_refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let cover_refs: Vec<(&str, &str)> =
        covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Poset::closure_from_covers(&id_refs, &cover_refs).expect("reduced closure is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        for shape in [Shape::Stacked, Shape::Grid, Shape::Wraparound] {
            let spec = CorpusSpec { seed: 7, n: 14, shape };
            let a = serde_json::to_string(&random_afb_diagram(&spec).to_json()).unwrap();
            let b = serde_json::to_string(&random_afb_diagram(&spec).to_json()).unwrap();
            assert_eq!(a, b);
        }
        let a = serde_json::to_string(&adversarial_non_afb(3).to_json()).unwrap();
        let b = serde_json::to_string(&adversarial_non_afb(3).to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn afb_generators_validate_and_pass_afb() {
        for seed in 0..12 {
            for shape in [Shape::Stacked, Shape::Grid, Shape::Wraparound] {
                let spec = CorpusSpec { seed, n: 4 + (seed as usize % 14), shape };
                let d = random_afb_diagram(&spec);
                assert!(d.validate().ok, "{shape:?} seed {seed}");
                let e = EmbeddedDiagram::build(d).unwrap();
                assert!(e.afb_check().0, "{shape:?} seed {seed}");
            }
        }
    }

    #[test]
    fn single_vertex_spec() {
        let d = random_afb_diagram(&CorpusSpec { seed: 0, n: 1, shape: Shape::Stacked });
        assert_eq!(d.len(), 1);
        assert!(d.validate().ok);
    }

    #[test]
    fn adversarial_is_valid_but_trapped() {
        for seed in 0..8 {
            let d = adversarial_non_afb(seed);
            assert!(d.validate().ok);
            let e = EmbeddedDiagram::build(d).unwrap();
            let (ok, violators) = e.afb_check();
            assert!(!ok);
            assert!(!violators.is_empty());
        }
    }

    #[test]
    fn wraparound_has_a_rotated_profile() {
        // at least one seed must produce a rotated (type 2) element
        let mut found = false;
        for seed in 0..10 {
            let d = random_afb_diagram(&CorpusSpec { seed, n: 12, shape: Shape::Wraparound });
            let e = EmbeddedDiagram::build(d).unwrap();
            let env = e.envelope_order().unwrap();
            for y in 0..e.poset().len() {
                let prof = e.min_profile(&env, y).unwrap();
                if matches!(prof.kind, crate::realizer::ProfileKind::Rotated { .. }) {
                    found = true;
                }
            }
        }
        assert!(found, "wraparound never produced a rotated profile");
    }

    #[test]
    fn cross_check_diamond() {
        let d = crate::diagram::tests::diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        );
        let report = cross_check(&d, 60);
        assert!(report.consistent(), "{:?}", report.failures);
        assert_eq!(report.dimension, Some(2));
        assert_eq!(report.zero_extensions, Some(3));
        assert!(report.afb_extensions.unwrap() <= 6);
    }

    #[test]
    fn cross_check_chain() {
        let d = crate::diagram::tests::diagram(&[("a", 0, 0), ("b", 1, 1)], &[("a", "b")]);
        let report = cross_check(&d, 60);
        assert!(report.consistent());
        assert_eq!(report.dimension, Some(1));
        assert_eq!(report.afb_extensions, Some(1));
    }

    #[test]
    fn random_posets_have_dual_symmetric_dimension() {
        for seed in 0..20 {
            let p = random_poset(seed, 2 + (seed as usize % 7));
            let d1 = p.dimension_exact(6, 100).unwrap();
            let d2 = p.dual().dimension_exact(6, 100).unwrap();
            assert_eq!(d1, d2, "seed {seed}");
        }
    }
}
