//! Witnessing paths, the meet above two minimals, and lens regions bounded
//! by two witnessing paths plus an envelope arc.

use crate::classify::PairPosition;
use crate::embedding::{Envelope, EmbeddedDiagram};
use crate::error::{Error, Result};
use crate::predicates::downward_ray_hits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSide {
    LeftMost,
    RightMost,
}

/// A chain of covers from a lower element up to a higher one, extreme on one
/// side of the drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    pub vertices: Vec<usize>,
    pub side: PathSide,
}

/// The region bounded by two witnessing paths into the meet `z` plus the
/// counter-clockwise envelope arc between the two minimals.
#[derive(Debug, Clone)]
pub struct LensRegion {
    pub y: usize,
    pub m: usize,
    pub m2: usize,
    pub z: usize,
    pub path_from_m: WitnessPath,
    pub path_from_m2: WitnessPath,
    /// minimal elements along the arc from m to m2, endpoints included
    pub arc_minimals: Vec<usize>,
    /// edges the arc runs along, once per walk dart
    pub arc_edges: Vec<usize>,
    /// non-minimal vertices the arc rounds from the outside
    pub arc_vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Exterior,
    OnBoundary,
}

impl EmbeddedDiagram {
    /// The extreme witnessing path from x up to y: at every step take the
    /// leftmost (or rightmost) upper cover whose head stays below y. By
    /// construction this is the lexicographic extreme among all witnessing
    /// paths under the first-divergence rotation order.
    pub fn extremal_path(&self, x: usize, y: usize, side: PathSide) -> Result<WitnessPath> {
        let p = self.poset();
        if !p.lt(x, y) {
            return Err(Error::NotComparable(p.id(x).to_owned(), p.id(y).to_owned()));
        }
        let mut vertices = vec![x];
        let mut cur = x;
        while cur != y {
            let step = match side {
                PathSide::LeftMost => {
                    self.up_neighbors(cur).iter().copied().find(|&w| p.leq(w, y))
                }
                PathSide::RightMost => {
                    self.up_neighbors(cur).iter().copied().rev().find(|&w| p.leq(w, y))
                }
            };
            cur = step.expect("x < y guarantees a cover step toward y");
            vertices.push(cur);
        }
        Ok(WitnessPath { vertices, side })
    }

    /// Every witnessing path from x to y in left-to-right lexicographic
    /// order, capped at `limit` paths. Test oracle for the greedy extremes.
    pub fn all_witnessing_paths(&self, x: usize, y: usize, limit: usize) -> Vec<Vec<usize>> {
        let p = self.poset();
        let mut out = Vec::new();
        let mut stack = vec![x];
        fn go(
            e: &EmbeddedDiagram,
            y: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            let cur = *stack.last().unwrap();
            if cur == y {
                out.push(stack.clone());
                return;
            }
            for &w in e.up_neighbors(cur) {
                if e.poset().leq(w, y) {
                    stack.push(w);
                    go(e, y, stack, out, limit);
                    stack.pop();
                }
            }
        }
        if p.lt(x, y) {
            go(self, y, &mut stack, &mut out, limit);
        }
        out
    }

    /// The unique minimal element of { z <= y : m <= z and m2 <= z }.
    /// Uniqueness is asserted at run time; failure indicates an inaccessible
    /// or otherwise invalid drawing.
    pub fn meet_z(&self, y: usize, m: usize, m2: usize) -> Result<usize> {
        let p = self.poset();
        for v in [m, m2] {
            if !p.leq(v, y) {
                return Err(Error::NotBelowY(p.id(v).to_owned(), p.id(y).to_owned()));
            }
        }
        let zs: Vec<usize> =
            (0..p.len()).filter(|&z| p.leq(z, y) && p.leq(m, z) && p.leq(m2, z)).collect();
        let minimal: Vec<usize> =
            zs.iter().copied().filter(|&z| !zs.iter().any(|&w| p.lt(w, z))).collect();
        match minimal.as_slice() {
            [z] => Ok(*z),
            _ => Err(Error::UniquenessViolated(
                p.id(y).to_owned(),
                minimal.iter().map(|&z| p.id(z).to_owned()).collect(),
            )),
        }
    }

    /// Builds the lens bounded by witnessing paths from `m` and `m2` into
    /// their meet below `y`, closed by the envelope arc from `m` to `m2`.
    ///
    /// Side convention: when m is left of m2 in the down-set of the meet, the
    /// path from m is taken right-most and the path from m2 left-most, so the
    /// two paths pinch the region between them; sides swap otherwise.
    pub fn lens_region(&self, env: &Envelope, y: usize, m: usize, m2: usize) -> Result<LensRegion> {
        let p = self.poset();
        let z = self.meet_z(y, m, m2)?;
        let (side_m, side_m2) = if m == z || m2 == z {
            // degenerate: one path is a single vertex
            (PathSide::RightMost, PathSide::LeftMost)
        } else {
            match self.left_right_in_downset(z, m, m2)? {
                PairPosition::Left => (PathSide::RightMost, PathSide::LeftMost),
                PairPosition::Right => (PathSide::LeftMost, PathSide::RightMost),
                _ => unreachable!("left_right_in_downset never returns other labels"),
            }
        };
        let path_from_m = if m == z {
            WitnessPath { vertices: vec![z], side: side_m }
        } else {
            self.extremal_path(m, z, side_m)?
        };
        let path_from_m2 = if m2 == z {
            WitnessPath { vertices: vec![z], side: side_m2 }
        } else {
            self.extremal_path(m2, z, side_m2)?
        };

        // shared vertices other than z contradict the uniqueness of the meet
        for &v in &path_from_m.vertices {
            if v != z && path_from_m2.vertices.contains(&v) {
                return Err(Error::BoundaryNotSimple(format!(
                    "witnessing paths share {}",
                    p.id(v)
                )));
            }
        }

        let arc_edges = self.envelope_arc_edges(env, m, m2);
        let pos_m = env.position[m];
        let pos_m2 = env.position[m2];
        if pos_m == usize::MAX || pos_m2 == usize::MAX || m == m2 {
            return Err(Error::BoundaryNotSimple("arc endpoints must be distinct minimals".into()));
        }
        let k = env.order.len();
        let mut arc_minimals = Vec::new();
        let mut i = pos_m;
        loop {
            arc_minimals.push(env.order[i]);
            if i == pos_m2 {
                break;
            }
            i = (i + 1) % k;
        }
        let mut arc_vertices: Vec<usize> = arc_edges
            .iter()
            .flat_map(|&e| {
                let edge = &self.diagram().edges()[e];
                [edge.lower, edge.upper]
            })
            .filter(|&v| !self.poset().lower_covers(v).is_empty())
            .collect();
        arc_vertices.sort();
        arc_vertices.dedup();

        Ok(LensRegion {
            y,
            m,
            m2,
            z,
            path_from_m,
            path_from_m2,
            arc_minimals,
            arc_edges,
            arc_vertices,
        })
    }

    /// Exact membership of a vertex in the lens region, by crossing parity of
    /// the downward ray against the two witnessing paths and the envelope
    /// arc. The arc hugs the outer walk from the outside, so a ray crossing
    /// counts once per arc dart running along the crossed edge.
    pub fn lens_membership(&self, lens: &LensRegion, v: usize) -> Membership {
        if lens.path_from_m.vertices.contains(&v)
            || lens.path_from_m2.vertices.contains(&v)
            || lens.arc_minimals.contains(&v)
        {
            return Membership::OnBoundary;
        }
        // a non-minimal vertex the arc rounds from outside lies inside
        if lens.arc_vertices.contains(&v) {
            return Membership::Interior;
        }
        let p = self.diagram().position(v);
        let mut crossings = 0usize;
        for path in [&lens.path_from_m, &lens.path_from_m2] {
            for w in path.vertices.windows(2) {
                let e = self
                    .find_edge(w[0], w[1])
                    .expect("witnessing path steps along covers");
                let pts = self.diagram().edges()[e].polyline(self.diagram().positions());
                for seg in pts.windows(2) {
                    if downward_ray_hits(p, &seg[0], &seg[1]) {
                        crossings += 1;
                    }
                }
            }
        }
        for &e in &lens.arc_edges {
            let pts = self.diagram().edges()[e].polyline(self.diagram().positions());
            for seg in pts.windows(2) {
                if downward_ray_hits(p, &seg[0], &seg[1]) {
                    crossings += 1;
                }
            }
        }
        if crossings % 2 == 1 {
            Membership::Interior
        } else {
            Membership::Exterior
        }
    }

    /// Edge index of the cover (lo, hi), if drawn.
    pub fn find_edge(&self, lo: usize, hi: usize) -> Option<usize> {
        self.diagram()
            .edges()
            .binary_search_by_key(&(lo, hi), |e| (e.lower, e.upper))
            .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::diagram;

    fn names(e: &EmbeddedDiagram, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| e.poset().id(v).to_owned()).collect()
    }

    #[test]
    fn chain_has_unique_witnessing_path() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", 0, 0), ("b", 1, 1), ("c", 2, 2)],
            &[("a", "b"), ("b", "c")],
        ))
        .unwrap();
        for side in [PathSide::LeftMost, PathSide::RightMost] {
            let w = e.extremal_path(0, 2, side).unwrap();
            assert_eq!(names(&e, &w.vertices), vec!["a", "b", "c"]);
        }
    }

    #[test]
    fn diamond_extremal_paths() {
        let e = EmbeddedDiagram::build(diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        ))
        .unwrap();
        let p = e.poset();
        let (z, t) = (p.rank("z").unwrap(), p.rank("t").unwrap());
        let left = e.extremal_path(z, t, PathSide::LeftMost).unwrap();
        assert_eq!(names(&e, &left.vertices), vec!["z", "l", "t"]);
        let right = e.extremal_path(z, t, PathSide::RightMost).unwrap();
        assert_eq!(names(&e, &right.vertices), vec!["z", "r", "t"]);
    }

    #[test]
    fn extremal_requires_comparability() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", -1, 0), ("b", 1, 1), ("c", 0, 2)],
            &[("a", "c"), ("b", "c")],
        ))
        .unwrap();
        assert!(matches!(
            e.extremal_path(0, 1, PathSide::LeftMost),
            Err(Error::NotComparable(_, _))
        ));
    }

    #[test]
    fn greedy_matches_lexicographic_enumeration() {
        // two stacked diamonds: several witnessing paths from bottom to top
        let e = EmbeddedDiagram::build(diagram(
            &[
                ("a", 0, 0),
                ("b", -2, 1),
                ("c", 2, 2),
                ("d", 1, 3),
                ("e", -3, 4),
                ("f", 3, 5),
                ("g", 4, 6),
            ],
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "d"),
                ("c", "d"),
                ("d", "e"),
                ("d", "f"),
                ("e", "g"),
                ("f", "g"),
            ],
        ))
        .unwrap();
        let p = e.poset();
        let (a, g) = (p.rank("a").unwrap(), p.rank("g").unwrap());
        let all = e.all_witnessing_paths(a, g, 64);
        assert_eq!(all.len(), 4);
        let left = e.extremal_path(a, g, PathSide::LeftMost).unwrap();
        assert_eq!(&left.vertices, all.first().unwrap());
        let right = e.extremal_path(a, g, PathSide::RightMost).unwrap();
        assert_eq!(&right.vertices, all.last().unwrap());
    }

    #[test]
    fn meet_examples() {
        let vee = EmbeddedDiagram::build(diagram(
            &[("a", -1, 0), ("b", 1, 1), ("c", 0, 2)],
            &[("a", "c"), ("b", "c")],
        ))
        .unwrap();
        let p = vee.poset();
        let (a, b, c) = (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("c").unwrap());
        assert_eq!(vee.meet_z(c, a, b).unwrap(), c);

        // minimals a, b under w, with w < t: the meet below t is w
        let e = EmbeddedDiagram::build(diagram(
            &[("a", -1, 0), ("b", 1, 1), ("w", 0, 2), ("t", 2, 3)],
            &[("a", "w"), ("b", "w"), ("w", "t")],
        ))
        .unwrap();
        let p = e.poset();
        let (a, b, w, t) =
            (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("w").unwrap(), p.rank("t").unwrap());
        assert_eq!(e.meet_z(t, a, b).unwrap(), w);
        assert_eq!(e.meet_z(t, a, b).unwrap(), e.meet_z(t, b, a).unwrap());
        assert!(matches!(e.meet_z(a, b, a), Err(Error::NotBelowY(_, _))));
    }

    #[test]
    fn lens_over_tent_is_simple_and_t_is_outside() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", -1, 0), ("b", 1, 1), ("w", 0, 2), ("t", 2, 3)],
            &[("a", "w"), ("b", "w"), ("w", "t")],
        ))
        .unwrap();
        let env = e.envelope_order().unwrap();
        let p = e.poset();
        let (a, b, w, t) =
            (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("w").unwrap(), p.rank("t").unwrap());
        let lens = e.lens_region(&env, t, a, b).unwrap();
        assert_eq!(lens.z, w);
        assert_eq!(names(&e, &lens.path_from_m.vertices), vec!["a", "w"]);
        assert_eq!(names(&e, &lens.path_from_m2.vertices), vec!["b", "w"]);
        // t sits above the lens triangle
        assert_eq!(e.lens_membership(&lens, t), Membership::Exterior);
        // boundary vertices report as such
        assert_eq!(e.lens_membership(&lens, w), Membership::OnBoundary);
        assert_eq!(e.lens_membership(&lens, a), Membership::OnBoundary);
    }

    #[test]
    fn swapped_arguments_trace_the_complementary_arc() {
        let e = EmbeddedDiagram::build(diagram(
            &[("a", -1, 0), ("b", 1, 1), ("m", 3, 2), ("w", 0, 3), ("t", 2, 4)],
            &[("a", "w"), ("b", "w"), ("w", "t"), ("m", "t")],
        ))
        .unwrap();
        let env = e.envelope_order().unwrap();
        let p = e.poset();
        let (a, b, t) = (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("t").unwrap());
        let fwd = e.lens_region(&env, t, a, b).unwrap();
        let bwd = e.lens_region(&env, t, b, a).unwrap();
        let mut together = fwd.arc_edges.clone();
        together.extend(bwd.arc_edges.iter());
        together.sort();
        let mut whole: Vec<usize> =
            env.walk.iter().map(|&d| EmbeddedDiagram::edge_of(d)).collect();
        whole.sort();
        assert_eq!(together, whole);
    }
}
