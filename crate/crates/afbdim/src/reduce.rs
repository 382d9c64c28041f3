//! The reduction: modify an accessible diagram so that every incomparable
//! pair (x, y) with x non-minimal is either enclosed or witnessed by a
//! minimal proxy x'' <= x with x'' incomparable to y.
//!
//! A graft inserts one fresh minimal element x'' and a single cover edge
//! x'' -> x', drawn as a polyline hugging the descent path from the unique
//! lower cover of x' down to a minimal element, offset to one side. The side
//! is chosen by comparing the first edge of a witnessing path W[u, y] with
//! the edge u -> x' at u. Hugging with bends instead of a chain of auxiliary
//! elements keeps the order change minimal: the only new comparabilities are
//! x'' below the up-set of x'.
//!
//! Grafting is possible exactly when the hugged flank is free of other
//! edges; the check is combinatorial (rotation adjacency along the descent
//! path) and the final drawing re-validates exactly. Pairs whose graft is
//! blocked are reported as unproxied and handled downstream by the
//! realizer's completion pass.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};

use crate::diagram::PlaneDiagram;
use crate::embedding::EmbeddedDiagram;
use crate::error::{Error, Result};
use crate::rational::{rat, Point, Rat};

/// Why a pair needs no graft, or what it received.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProxyOutcome {
    /// a minimal element below x and incomparable to y
    Minimal(String),
    /// (x, y) is enclosed in the reduced diagram
    Enclosed,
    /// the hugged flank is blocked; no proxy exists in the reduced diagram
    Unproxied,
}

#[derive(Debug)]
pub struct ReduceOutcome {
    pub embedded: EmbeddedDiagram,
    /// keyed by the original pair ids
    pub proxy: BTreeMap<(String, String), ProxyOutcome>,
    pub grafts: usize,
}

impl EmbeddedDiagram {
    /// Runs the reduction. Requires an accessible diagram.
    pub fn reduce_to_min_covered(&self) -> Result<ReduceOutcome> {
        let (ok, violators) = self.afb_check();
        if !ok {
            return Err(Error::NotAfb(
                violators.iter().map(|&v| self.poset().id(v).to_owned()).collect(),
            ));
        }

        // pairs to process: incomparable, not enclosed, x not minimal,
        // in lexicographic id order
        let p = self.poset();
        let enclosed = self.enclosed_pairs();
        let todo: Vec<(String, String)> = p
            .incomparable_pairs()
            .into_iter()
            .filter(|&(x, y)| !p.lower_covers(x).is_empty() && !enclosed.contains(&(x, y)))
            .map(|(x, y)| (p.id(x).to_owned(), p.id(y).to_owned()))
            .collect();

        let mut current = self.clone();
        let mut current_enclosed: Vec<(String, String)> = ids_of(&current, &enclosed);
        let mut proxy = BTreeMap::new();
        let mut grafts = 0usize;

        for (xid, yid) in todo {
            let cp = current.poset();
            let x = cp.rank(&xid)?;
            let y = cp.rank(&yid)?;

            // lowest element below x and incomparable to y
            let x_prime = (0..cp.len())
                .filter(|&v| cp.leq(v, x) && cp.incomparable(v, y))
                .min_by(|&a, &b| current.y_key(a).cmp(current.y_key(b)))
                .expect("x itself qualifies");

            if cp.lower_covers(x_prime).is_empty() {
                proxy.insert((xid, yid), ProxyOutcome::Minimal(cp.id(x_prime).to_owned()));
                continue;
            }
            if current_enclosed.contains(&(cp.id(x_prime).to_owned(), cp.id(y).to_owned())) {
                proxy.insert((xid, yid), ProxyOutcome::Enclosed);
                continue;
            }

            match current.graft_below(x_prime, y, grafts)? {
                Some((next, new_id)) => {
                    grafts += 1;
                    current = next;
                    let pairs = current.enclosed_pairs();
                    current_enclosed = ids_of(&current, &pairs);
                    proxy.insert((xid, yid), ProxyOutcome::Minimal(new_id));
                }
                None => {
                    proxy.insert((xid, yid), ProxyOutcome::Unproxied);
                }
            }
        }

        // the grafts were checked incrementally; certify the final drawing
        // with the full validator once
        if grafts > 0 && !current.diagram().validate().ok {
            return Err(Error::Internal(
                "reduced drawing failed full re-validation".to_owned(),
            ));
        }
        Ok(ReduceOutcome { embedded: current, proxy, grafts })
    }

    /// Attempts a graft producing a fresh minimal below `x_prime`, placed so
    /// it stays incomparable to `y`. Returns the new embedding and the new
    /// element id, or None when the flank is blocked or no offset validates.
    fn graft_below(
        &self,
        x_prime: usize,
        y: usize,
        graft_no: usize,
    ) -> Result<Option<(EmbeddedDiagram, String)>> {
        let p = self.poset();
        let covers = p.lower_covers(x_prime);
        // A unique lower cover is the common case. Several lower covers can
        // occur on honest inputs (a tent whose two feet both sit below y);
        // no minimal proxy exists then and the pair is left to the
        // realizer's completion pass.
        let u = match covers {
            [u] => *u,
            _ => return Ok(None),
        };
        debug_assert!(p.lt(u, y), "the unique lower cover sits below y");

        // side: compare the first step of a witnessing path W[u, y] with the
        // edge u -> x' in the rotation at u
        let first_step =
            self.up_neighbors(u).iter().copied().find(|&w| p.leq(w, y)).expect("u < y");
        let ups = self.up_neighbors(u);
        let pos_w = ups.iter().position(|&w| w == first_step).unwrap();
        let pos_x = ups.iter().position(|&w| w == x_prime).unwrap();
        let right_side = pos_w < pos_x; // witness edge left of u -> x'

        // descent along extreme lower covers to a minimal element
        let mut path = vec![u];
        loop {
            let v = *path.last().unwrap();
            let downs = self.down_neighbors(v);
            if downs.is_empty() {
                break;
            }
            path.push(if right_side { *downs.last().unwrap() } else { downs[0] });
        }

        if !self.flank_is_clear(x_prime, &path, right_side) {
            return Ok(None);
        }

        // exact offsets, shrunk until the drawing validates
        let mut delta = self.initial_offset();
        for _ in 0..12 {
            if let Some(result) = self.try_graft_at(x_prime, y, &path, right_side, &delta, graft_no)? {
                return Ok(Some(result));
            }
            delta /= rat(2);
        }
        Ok(None)
    }

    /// The corridor beside the descent path is free exactly when, at every
    /// path vertex, the two path darts are adjacent in the rotation on the
    /// chosen side (and the path dart is extreme at the minimal end).
    fn flank_is_clear(&self, x_prime: usize, path: &[usize], right_side: bool) -> bool {
        for (i, &v) in path.iter().enumerate() {
            let above = if i == 0 { x_prime } else { path[i - 1] };
            let up_dart = match self.find_edge(v, above) {
                Some(e) => 2 * e,
                None => return false,
            };
            let rot = self.rotation(v);
            let up_pos = rot.iter().position(|&d| d == up_dart).unwrap();
            if i + 1 < path.len() {
                let down_dart = match self.find_edge(path[i + 1], v) {
                    Some(e) => 2 * e + 1,
                    None => return false,
                };
                let down_pos = rot.iter().position(|&d| d == down_dart).unwrap();
                let adjacent = if right_side {
                    (up_pos + 1) % rot.len() == down_pos
                } else {
                    (down_pos + 1) % rot.len() == up_pos
                };
                if !adjacent {
                    return false;
                }
            } else {
                let extreme = if right_side { rot.len() - 1 } else { 0 };
                if up_pos != extreme {
                    return false;
                }
            }
        }
        true
    }

    fn initial_offset(&self) -> Rat {
        let d = self.diagram();
        let mut best: Option<Rat> = None;
        let mut fold = |v: Rat| {
            if !v.is_zero() {
                let v = if v < rat(0) { -v } else { v };
                best = Some(match best.take() {
                    Some(b) if b < v => b,
                    _ => v,
                });
            }
        };
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                fold(&d.position(i).x - &d.position(j).x);
                fold(&d.position(i).y - &d.position(j).y);
            }
        }
        let one = BigRational::one();
        let best = best.unwrap_or_else(|| one.clone());
        best.min(one) / rat(4)
    }

    fn try_graft_at(
        &self,
        x_prime: usize,
        y: usize,
        path: &[usize],
        right_side: bool,
        delta: &Rat,
        graft_no: usize,
    ) -> Result<Option<(EmbeddedDiagram, String)>> {
        let d = self.diagram();
        let sign = if right_side { rat(1) } else { rat(-1) };
        let dx = &sign * delta;
        let shift = |p: &Point| Point::new(&p.x + &dx, p.y.clone());

        let bottom = *path.last().unwrap();
        let new_point = Point::new(&d.position(bottom).x + &dx, &d.position(bottom).y - delta);
        // the new element needs general position against existing vertices
        for v in 0..d.len() {
            if d.position(v).x == new_point.x || d.position(v).y == new_point.y {
                return Ok(None);
            }
        }

        // corridor: up the flank of the descent path, then along u -> x'
        let mut corridor: Vec<Point> = vec![new_point.clone()];
        for i in (0..path.len()).rev() {
            let above = if i == 0 { x_prime } else { path[i - 1] };
            let e = self.find_edge(path[i], above).expect("checked in flank_is_clear");
            let pts = d.edges()[e].polyline(d.positions());
            // translated copy without the upper endpoint
            for pt in &pts[..pts.len() - 1] {
                corridor.push(shift(pt));
            }
        }
        corridor.push(d.position(x_prime).clone());

        let new_id = (0..)
            .map(|k| format!("{}_sub{}", d.id(x_prime), graft_no + k))
            .find(|id| !d.ids().contains(id))
            .unwrap();

        let mut vertices: Vec<(String, Point)> =
            d.ids().iter().cloned().zip(d.positions().iter().cloned()).collect();
        vertices.push((new_id.clone(), new_point));
        let mut edges: Vec<(String, String, Vec<Point>)> = d
            .edges()
            .iter()
            .map(|e| (d.id(e.lower).to_owned(), d.id(e.upper).to_owned(), e.bends.clone()))
            .collect();
        let bends = corridor[1..corridor.len() - 1].to_vec();
        edges.push((new_id.clone(), d.id(x_prime).to_owned(), bends));

        if !self.corridor_is_clear(&corridor, x_prime) {
            return Ok(None);
        }
        let candidate = PlaneDiagram::new(vertices, edges)?;
        let embedded = EmbeddedDiagram::build_prevalidated(candidate)?;
        if !embedded.afb_check().0 {
            return Ok(None);
        }
        // the fresh element must stay incomparable to y
        let np = embedded.poset();
        let nx = np.rank(&new_id)?;
        let ny = np.rank(self.poset().id(y))?;
        if !np.incomparable(nx, ny) {
            return Ok(None);
        }
        Ok(Some((embedded, new_id)))
    }

    /// Incremental validity of one added edge (`corridor`, ending exactly at
    /// x') plus its fresh minimal start. The corridor is strictly monotone
    /// and cannot self-intersect; everything else is checked against the
    /// existing drawing. General position of the start was checked upstream.
    fn corridor_is_clear(&self, corridor: &[Point], x_prime: usize) -> bool {
        use crate::predicates::{boxes_overlap, point_on_segment, segment_contact, Contact};
        let d = self.diagram();
        debug_assert!(corridor.windows(2).all(|w| w[0].y < w[1].y));
        let x_pos = d.position(x_prime);
        for (si, w) in corridor.windows(2).enumerate() {
            let last = si == corridor.len() - 2;
            // against every existing segment: the only allowed contact is
            // the endpoint at x', with an edge incident to x'
            for e in d.edges() {
                let incident = e.lower == x_prime || e.upper == x_prime;
                let pts = e.polyline(d.positions());
                for seg in pts.windows(2) {
                    if !boxes_overlap(&w[0], &w[1], &seg[0], &seg[1]) {
                        continue;
                    }
                    match segment_contact(&w[0], &w[1], &seg[0], &seg[1]) {
                        Contact::None => {}
                        Contact::Overlap => return false,
                        Contact::At(p) => {
                            if !(last && incident && p == *x_pos) {
                                return false;
                            }
                        }
                    }
                }
            }
            // no existing vertex in the interior of a corridor segment
            for v in 0..d.len() {
                if point_on_segment(d.position(v), &w[0], &w[1])
                    && !(last && v == x_prime && *d.position(v) == w[1])
                {
                    return false;
                }
            }
        }
        // the fresh minimal must not sit on any existing segment
        let start = &corridor[0];
        for e in d.edges() {
            let pts = e.polyline(d.positions());
            for seg in pts.windows(2) {
                if point_on_segment(start, &seg[0], &seg[1]) {
                    return false;
                }
            }
        }
        true
    }
}

fn ids_of(e: &EmbeddedDiagram, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(x, y)| (e.poset().id(x).to_owned(), e.poset().id(y).to_owned()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::diagram;

    #[test]
    fn already_covered_diagram_is_unchanged() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", 0, 0), ("b", 1, 1), ("c", 4, 2), ("d", 5, 3)],
            &[("a", "b"), ("c", "d")],
        ))
        .unwrap();
        let out = e.reduce_to_min_covered().unwrap();
        assert_eq!(out.grafts, 0);
        assert_eq!(out.embedded.poset().len(), 4);
        // pair (b, d): proxy is the already-minimal a
        assert_eq!(
            out.proxy.get(&("b".into(), "d".into())),
            Some(&ProxyOutcome::Minimal("a".into()))
        );
    }

    #[test]
    fn graft_introduces_fresh_minimal() {
        // w covers a only; the pair (w, d) has no existing minimal proxy
        // because a < d; grafting adds one under w
        let e = EmbeddedDiagram::build(diagram(
            &[("a", 0, 0), ("w", 1, 2), ("t", 2, 4), ("c", 6, 1), ("d", 5, 3)],
            &[("a", "w"), ("w", "t"), ("c", "d"), ("a", "d")],
        ))
        .unwrap();
        let out = e.reduce_to_min_covered().unwrap();
        assert!(out.grafts >= 1, "proxy map: {:?}", out.proxy);
        let np = out.embedded.poset();
        assert!(np.len() > 5);
        match out.proxy.get(&("w".into(), "d".into())) {
            Some(ProxyOutcome::Minimal(id)) => {
                let nx = np.rank(id).unwrap();
                let w = np.rank("w").unwrap();
                let d = np.rank("d").unwrap();
                assert!(np.lt(nx, w));
                assert!(np.incomparable(nx, d));
                assert!(np.lower_covers(nx).is_empty());
            }
            other => panic!("expected a grafted minimal, got {other:?}"),
        }
        assert!(out.embedded.diagram().validate().ok);
        assert!(out.embedded.afb_check().0);
    }

    #[test]
    fn original_relations_are_preserved() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", 0, 0), ("w", 1, 2), ("t", 2, 4), ("c", 6, 1), ("d", 5, 3)],
            &[("a", "w"), ("w", "t"), ("c", "d"), ("a", "d")],
        ))
        .unwrap();
        let before = e.poset().clone();
        let out = e.reduce_to_min_covered().unwrap();
        let after = out.embedded.poset();
        for x in 0..before.len() {
            for y in 0..before.len() {
                let (nx, ny) =
                    (after.rank(before.id(x)).unwrap(), after.rank(before.id(y)).unwrap());
                assert_eq!(before.leq(x, y), after.leq(nx, ny), "order must be induced");
            }
        }
    }

    #[test]
    fn requires_accessibility() {
        let e = crate::classify::tests::trapped_tent();
        assert!(matches!(e.reduce_to_min_covered(), Err(Error::NotAfb(_))));
    }
}
