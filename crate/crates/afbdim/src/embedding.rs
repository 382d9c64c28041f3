//! The combinatorial shadow of a validated drawing: rotation system, faces,
//! the outer face, downward wedges, accessibility from below, and the
//! envelope order on minimal elements.
//!
//! Conventions fixed here and relied on everywhere else:
//! - every cover edge `e` owns two darts, `2e` (lower -> upper) and `2e + 1`;
//! - `rotation[v]` lists the darts leaving `v` clockwise starting from the
//!   straight-down direction;
//! - faces are the orbits of `d -> rotation-successor of twin(d)`; each dart
//!   borders its face on the left, so the outer face walk runs clockwise
//!   around its component and envelope traversal reverses it.

use std::collections::BTreeSet;

use num::Signed;
use num::Zero;

use crate::diagram::PlaneDiagram;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::predicates::{cross, downward_ray_hits, sign};
use crate::rational::{Point, Rat};

pub type Dart = usize;

#[derive(Debug, Clone)]
pub struct EmbeddedDiagram {
    diagram: PlaneDiagram,
    poset: Poset,
    /// per vertex: out-darts, clockwise from straight down
    rotation: Vec<Vec<Dart>>,
    /// per dart: position of the dart inside rotation\[tail\]
    rot_index: Vec<usize>,
    /// per dart: face orbit id
    face_of: Vec<usize>,
    /// face orbits, each a dart cycle
    faces: Vec<Vec<Dart>>,
    /// per vertex: connected component of the cover graph
    component: Vec<usize>,
    component_count: usize,
    /// per component: its unbounded face, when the component has edges
    local_outer: Vec<Option<usize>>,
    /// per vertex: the face containing the downward direction, for minimals
    wedge: Vec<Option<usize>>,
    /// per vertex: neighbours along upper covers, left to right in the drawing
    up_ltr: Vec<Vec<usize>>,
    /// per vertex: neighbours along lower covers, left to right
    down_ltr: Vec<Vec<usize>>,
}

/// The envelope: counter-clockwise order of minimal elements along the outer
/// face, starting at the lexicographically least minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    /// minimal elements in traversal order
    pub order: Vec<usize>,
    /// position in `order` per element (usize::MAX for non-members)
    pub position: Vec<usize>,
    /// the counter-clockwise outer walk as a dart sequence
    pub walk: Vec<Dart>,
}

impl Envelope {
    /// a < b in the envelope order L
    pub fn before(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }
}

impl EmbeddedDiagram {
    #[inline]
    pub fn edge_of(d: Dart) -> usize {
        d / 2
    }

    #[inline]
    pub fn twin(d: Dart) -> Dart {
        d ^ 1
    }

    #[inline]
    pub fn is_up(d: Dart) -> bool {
        d % 2 == 0
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = &self.diagram.edges()[Self::edge_of(d)];
        if Self::is_up(d) { e.lower } else { e.upper }
    }

    pub fn head(&self, d: Dart) -> usize {
        let e = &self.diagram.edges()[Self::edge_of(d)];
        if Self::is_up(d) { e.upper } else { e.lower }
    }

    /// Direction of the first polyline segment leaving the tail.
    fn stub_direction(&self, d: Dart) -> (Rat, Rat) {
        let e = &self.diagram.edges()[Self::edge_of(d)];
        let pts = e.polyline(self.diagram.positions());
        let (from, to) = if Self::is_up(d) {
            (&pts[0], &pts[1])
        } else {
            (&pts[pts.len() - 1], &pts[pts.len() - 2])
        };
        (&to.x - &from.x, &to.y - &from.y)
    }

    /// Derives the embedding of a drawing. The drawing must validate.
    pub fn build(diagram: PlaneDiagram) -> Result<EmbeddedDiagram> {
        let report = diagram.validate();
        if !report.ok {
            return Err(Error::NotValidated(format!(
                "{} violation(s), first: {:?}",
                report.violations.len(),
                report.violations[0]
            )));
        }
        Self::build_prevalidated(diagram)
    }

    /// As [`EmbeddedDiagram::build`], for drawings the caller has already
    /// checked. The reduction grafts validate incrementally and would pay
    /// the full quadratic re-validation on every attempt otherwise.
    pub(crate) fn build_prevalidated(diagram: PlaneDiagram) -> Result<EmbeddedDiagram> {
        let poset = diagram.poset()?.clone();
        let n = diagram.len();
        let dart_count = diagram.edges().len() * 2;

        let mut shell = EmbeddedDiagram {
            diagram,
            poset,
            rotation: vec![Vec::new(); n],
            rot_index: vec![0; dart_count],
            face_of: vec![usize::MAX; dart_count],
            faces: Vec::new(),
            component: vec![usize::MAX; n],
            component_count: 0,
            local_outer: Vec::new(),
            wedge: vec![None; n],
            up_ltr: vec![Vec::new(); n],
            down_ltr: vec![Vec::new(); n],
        };
        shell.build_rotation();
        shell.build_faces();
        shell.build_components();
        shell.build_outer_and_wedges();
        Ok(shell)
    }

    fn build_rotation(&mut self) {
        let n = self.diagram.len();
        let dart_count = self.diagram.edges().len() * 2;
        let mut out_darts: Vec<Vec<(Dart, (Rat, Rat))>> = vec![Vec::new(); n];
        for d in 0..dart_count {
            let dir = self.stub_direction(d);
            debug_assert!(!dir.1.is_zero(), "strict monotonicity forbids horizontal stubs");
            out_darts[self.tail(d)].push((d, dir));
        }
        // clockwise = descending angle; valid within any open half plane:
        // u precedes w exactly when cross(u, w) < 0
        let cmp_cw = |u: &(Rat, Rat), w: &(Rat, Rat)| sign(&cross(u, w)).cmp(&0);
        for v in 0..n {
            let mut ups: Vec<(Dart, (Rat, Rat))> = Vec::new();
            let mut downs: Vec<(Dart, (Rat, Rat))> = Vec::new();
            for (d, dir) in out_darts[v].drain(..) {
                if dir.1.is_positive() {
                    ups.push((d, dir));
                } else {
                    downs.push((d, dir));
                }
            }
            // left-to-right: descending angle above, ascending angle below
            ups.sort_by(|a, b| cmp_cw(&a.1, &b.1));
            downs.sort_by(|a, b| cmp_cw(&a.1, &b.1).reverse());
            self.up_ltr[v] = ups.iter().map(|&(d, _)| self.head(d)).collect();
            self.down_ltr[v] = downs.iter().map(|&(d, _)| self.head(d)).collect();

            // clockwise from straight down: the down-left stubs reversed,
            // then all up stubs, then the down-right stubs reversed
            let (left_downs, right_downs): (Vec<_>, Vec<_>) =
                downs.into_iter().partition(|(_, dir)| !dir.0.is_positive());
            let mut rot = Vec::new();
            rot.extend(left_downs.into_iter().rev().map(|(d, _)| d));
            rot.extend(ups.into_iter().map(|(d, _)| d));
            rot.extend(right_downs.into_iter().rev().map(|(d, _)| d));
            for (i, &d) in rot.iter().enumerate() {
                self.rot_index[d] = i;
            }
            self.rotation[v] = rot;
        }
    }

    fn next_in_face(&self, d: Dart) -> Dart {
        let t = Self::twin(d);
        let v = self.tail(t);
        let rot = &self.rotation[v];
        rot[(self.rot_index[t] + 1) % rot.len()]
    }

    fn build_faces(&mut self) {
        let dart_count = self.diagram.edges().len() * 2;
        for start in 0..dart_count {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                self.face_of[d] = id;
                orbit.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(orbit);
        }
    }

    fn build_components(&mut self) {
        let n = self.diagram.len();
        let mut next = 0;
        for s in 0..n {
            if self.component[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            self.component[s] = next;
            while let Some(v) = stack.pop() {
                for &w in self.poset.upper_covers(v).iter().chain(self.poset.lower_covers(v)) {
                    if self.component[w] == usize::MAX {
                        self.component[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        self.component_count = next;
    }

    fn build_outer_and_wedges(&mut self) {
        // the downward wedge of a minimal with edges is the face at the
        // corner between the last and first rotation entries: the gap through
        // the straight-down direction (minimals have only up-darts)
        for v in 0..self.diagram.len() {
            if self.poset.lower_covers(v).is_empty() && !self.rotation[v].is_empty() {
                self.wedge[v] = Some(self.face_of[self.rotation[v][0]]);
            }
        }
        // the unbounded face of a component is the wedge of its lowest vertex
        self.local_outer = vec![None; self.component_count];
        for c in 0..self.component_count {
            let lowest = (0..self.diagram.len())
                .filter(|&v| self.component[v] == c)
                .min_by(|&a, &b| self.diagram.position(a).y.cmp(&self.diagram.position(b).y))
                .expect("non-empty component");
            if !self.rotation[lowest].is_empty() {
                debug_assert!(self.wedge[lowest].is_some(), "lowest vertex is minimal");
                self.local_outer[c] = self.wedge[lowest];
            }
        }
    }

    pub fn diagram(&self) -> &PlaneDiagram {
        &self.diagram
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn local_outer_face(&self, component: usize) -> Option<usize> {
        self.local_outer[component]
    }

    pub fn wedge_face(&self, v: usize) -> Option<usize> {
        self.wedge[v]
    }

    /// Upper-cover neighbours of `v`, left to right in the drawing.
    pub fn up_neighbors(&self, v: usize) -> &[usize] {
        &self.up_ltr[v]
    }

    /// Lower-cover neighbours of `v`, left to right in the drawing.
    pub fn down_neighbors(&self, v: usize) -> &[usize] {
        &self.down_ltr[v]
    }

    /// "Lower in the plane" key used by all lowest-element queries.
    pub fn y_key(&self, v: usize) -> &Rat {
        &self.diagram.position(v).y
    }

    /// Crossing parity of the downward ray from `p` against the outer walk of
    /// component `c`, counting each walk dart once. Odd parity means the ray
    /// start is separated from infinity by that component.
    fn enclosed_by_component(&self, p: &Point, c: usize) -> bool {
        let Some(outer) = self.local_outer[c] else { return false };
        let mut crossings = 0usize;
        for &d in &self.faces[outer] {
            let e = &self.diagram.edges()[Self::edge_of(d)];
            let pts = e.polyline(self.diagram.positions());
            for w in pts.windows(2) {
                if downward_ray_hits(p, &w[0], &w[1]) {
                    crossings += 1;
                }
            }
        }
        crossings % 2 == 1
    }

    /// Accessibility from below: true iff every minimal element has its
    /// downward wedge on the unbounded face. Violators are sorted by rank.
    pub fn afb_check(&self) -> (bool, Vec<usize>) {
        let mut violators = Vec::new();
        for m in self.poset.minimals() {
            let c = self.component[m];
            let local_ok = match self.wedge[m] {
                Some(f) => self.local_outer[c] == Some(f),
                None => true, // isolated vertex
            };
            let nested = (0..self.component_count)
                .any(|d| d != c && self.enclosed_by_component(self.diagram.position(m), d));
            if !local_ok || nested {
                violators.push(m);
            }
        }
        (violators.is_empty(), violators)
    }

    /// The envelope order: minimal elements as their downward wedges appear
    /// along a counter-clockwise traversal of the outer face, starting at the
    /// lexicographically least minimal element.
    pub fn envelope_order(&self) -> Result<Envelope> {
        let (ok, violators) = self.afb_check();
        if !ok {
            return Err(Error::NotAfb(
                violators.iter().map(|&v| self.poset.id(v).to_owned()).collect(),
            ));
        }
        if !self.poset.is_connected() {
            return Err(Error::NotConnected);
        }
        let n = self.diagram.len();
        let mut position = vec![usize::MAX; n];
        if n == 1 {
            position[0] = 0;
            return Ok(Envelope { order: vec![0], position, walk: Vec::new() });
        }

        let outer = self.local_outer[0].expect("connected diagram with >= 2 vertices has edges");
        let orbit = &self.faces[outer];
        // wedge corners along the clockwise outer walk
        let mut cw_minimals = Vec::new();
        for &d in orbit {
            let v = self.head(d);
            if self.wedge[v].is_some()
                && Self::twin(d) == *self.rotation[v].last().expect("v has darts")
            {
                cw_minimals.push(v);
            }
        }
        debug_assert_eq!(
            cw_minimals.len(),
            self.poset.minimals().len(),
            "every wedge lies on the outer walk of an accessible diagram"
        );
        // counter-clockwise = reversed, rotated to the canonical start
        cw_minimals.reverse();
        let least = *self.poset.minimals().first().expect("non-empty poset");
        let start = cw_minimals
            .iter()
            .position(|&v| v == least)
            .expect("least minimal appears on the walk");
        cw_minimals.rotate_left(start);
        let ccw_walk: Vec<Dart> = orbit.iter().rev().map(|&d| Self::twin(d)).collect();
        for (i, &m) in cw_minimals.iter().enumerate() {
            position[m] = i;
        }
        Ok(Envelope { order: cw_minimals, position, walk: ccw_walk })
    }

    /// The counter-clockwise envelope arc from the wedge of `m` to the wedge
    /// of `m2`, as the multiset of edges the arc runs along (an edge appears
    /// once per walk dart). Used for exact region-membership tests.
    pub fn envelope_arc_edges(&self, env: &Envelope, m: usize, m2: usize) -> Vec<usize> {
        let corner_pos = |v: usize| -> usize {
            // on the ccw walk the wedge corner of a minimal leaves along the
            // last entry of its rotation
            let leaving = *self.rotation[v].last().expect("minimal with edges");
            env.walk.iter().position(|&d| d == leaving).expect("wedge dart on outer walk")
        };
        let (from, to) = (corner_pos(m), corner_pos(m2));
        let mut edges = Vec::new();
        let len = env.walk.len();
        let mut i = from;
        while i != to {
            edges.push(Self::edge_of(env.walk[i]));
            i = (i + 1) % len;
        }
        edges
    }

    /// Euler check per component: v - e + f == 2 for components with edges.
    pub fn euler_ok(&self) -> bool {
        (0..self.component_count).all(|c| {
            let vs = (0..self.diagram.len()).filter(|&v| self.component[v] == c).count();
            let es =
                self.diagram.edges().iter().filter(|e| self.component[e.lower] == c).count();
            if es == 0 {
                return vs == 1;
            }
            let fs: BTreeSet<usize> = self
                .faces
                .iter()
                .enumerate()
                .filter(|(_, orbit)| self.component[self.tail(orbit[0])] == c)
                .map(|(i, _)| i)
                .collect();
            vs + fs.len() == es + 2
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::diagram;
    use crate::rational::{rat, rat_frac};

    fn embed(d: PlaneDiagram) -> EmbeddedDiagram {
        EmbeddedDiagram::build(d).unwrap()
    }

    #[test]
    fn single_edge_has_one_face() {
        let e = embed(diagram(&[("a", 0, 0), ("b", 1, 2)], &[("a", "b")]));
        assert_eq!(e.faces().len(), 1);
        assert!(e.euler_ok());
    }

    #[test]
    fn diamond_has_two_faces() {
        let e = embed(diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        ));
        assert_eq!(e.faces().len(), 2);
        assert!(e.euler_ok());
    }

    #[test]
    fn rotation_lists_left_edge_first_at_top() {
        // at the top of a V the clockwise-from-down rotation reaches the
        // edge to the left child first
        let e =
            embed(diagram(&[("a", -1, 0), ("b", 1, 1), ("c", 0, 2)], &[("a", "c"), ("b", "c")]));
        let c = e.poset().rank("c").unwrap();
        let a = e.poset().rank("a").unwrap();
        let b = e.poset().rank("b").unwrap();
        let rot: Vec<usize> = e.rotation(c).iter().map(|&d| e.head(d)).collect();
        assert_eq!(rot, vec![a, b]);
        assert_eq!(e.down_neighbors(c), &[a, b]);
    }

    #[test]
    fn afb_holds_for_diamond_and_dots() {
        let e = embed(diagram(
            &[("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        ));
        assert_eq!(e.afb_check(), (true, vec![]));

        let dots = embed(diagram(&[("a", 0, 0), ("b", 1, 1)], &[]));
        assert_eq!(dots.afb_check(), (true, vec![]));
    }

    #[test]
    fn trapped_minimal_is_reported() {
        // minimals a and b; b sits inside the bounded face of a-c, a-d, b-c, b-d
        let d = PlaneDiagram::new(
            vec![
                ("a".into(), Point::of(0, 0)),
                ("b".into(), Point::new(rat_frac(1, 10), rat(1))),
                ("c".into(), Point::of(-1, 2)),
                ("d".into(), Point::of(1, 3)),
            ],
            vec![
                ("a".into(), "c".into(), vec![]),
                ("a".into(), "d".into(), vec![]),
                ("b".into(), "c".into(), vec![]),
                ("b".into(), "d".into(), vec![]),
            ],
        )
        .unwrap();
        let e = embed(d);
        let b = e.poset().rank("b").unwrap();
        assert_eq!(e.afb_check(), (false, vec![b]));
    }

    #[test]
    fn nested_component_is_not_accessible() {
        // a lone dot above the diamond stays accessible
        let above = embed(diagram(
            &[("m", -1, 4), ("z", 0, 0), ("l", -2, 1), ("r", 2, 2), ("t", 1, 3)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        ));
        assert!(above.afb_check().0);

        // a lone dot inside the diamond's bounded face is trapped
        let trapped = embed(diagram(
            &[("m", 2, 4), ("z", 0, 0), ("l", -4, 2), ("r", 4, 3), ("t", 1, 6)],
            &[("z", "l"), ("z", "r"), ("l", "t"), ("r", "t")],
        ));
        let m = trapped.poset().rank("m").unwrap();
        assert_eq!(trapped.afb_check(), (false, vec![m]));
    }

    #[test]
    fn envelope_runs_left_to_right_along_the_bottom() {
        let e = embed(diagram(
            &[("m1", -1, 0), ("m2", 0, 1), ("m3", 1, 2), ("t", 3, 30)],
            &[("m1", "t"), ("m2", "t"), ("m3", "t")],
        ));
        let env = e.envelope_order().unwrap();
        let names: Vec<&str> = env.order.iter().map(|&v| e.poset().id(v)).collect();
        assert_eq!(names, vec!["m1", "m2", "m3"]);
    }

    #[test]
    fn envelope_of_single_minimal_and_vee() {
        let single = embed(diagram(&[("a", 0, 0)], &[]));
        assert_eq!(single.envelope_order().unwrap().order, vec![0]);

        let vee =
            embed(diagram(&[("a", -1, 0), ("b", 1, 1), ("c", 0, 2)], &[("a", "c"), ("b", "c")]));
        let env = vee.envelope_order().unwrap();
        let names: Vec<&str> = env.order.iter().map(|&v| vee.poset().id(v)).collect();
        assert_eq!(names, vec!["a", "b"]);
    }

    #[test]
    fn envelope_requires_connected() {
        let dots = embed(diagram(&[("a", 0, 0), ("b", 1, 1)], &[]));
        assert_eq!(dots.envelope_order().unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn rejects_unvalidated_input() {
        let crossing = diagram(
            &[("a", 0, 0), ("b", 2, 1), ("c", 1, 5), ("d", 3, 4)],
            &[("a", "d"), ("b", "c")],
        );
        assert!(matches!(EmbeddedDiagram::build(crossing), Err(Error::NotValidated(_))));
    }
}
