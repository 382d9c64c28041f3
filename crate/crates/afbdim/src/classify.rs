//! Left/right/inside/outside classification of incomparable pairs, driven by
//! two depth-first traversals of an up-set or down-set.
//!
//! A traversal numbers vertices in preorder visit order. With a left-to-right
//! child preference an element drawn further left is visited earlier, so the
//! pair patterns read off the drawing: x right of y (x later left-first,
//! earlier right-first), x left of y (the mirror), x outside y (earlier in
//! both), x inside y (later in both).
//!
//! The visit order is not in general a linear extension of the sub-poset; it
//! is a classification device. Extensions that reverse the labelled sets are
//! built separately by topological sorting.

use crate::embedding::EmbeddedDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairPosition {
    Left,
    Right,
    Inside,
    Outside,
}

impl std::fmt::Display for PairPosition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PairPosition::Left => "left",
            PairPosition::Right => "right",
            PairPosition::Inside => "inside",
            PairPosition::Outside => "outside",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// DFS upward through U_P\[z\]
    Up,
    /// DFS downward through D_P\[z\]
    Down,
}

/// Preorder positions of the two opposite-preference traversals from `z`.
#[derive(Debug, Clone)]
pub struct TraversalPair {
    /// preorder position per vertex under left preference; usize::MAX outside
    pub left_first: Vec<usize>,
    /// preorder position per vertex under right preference
    pub right_first: Vec<usize>,
}

impl TraversalPair {
    pub fn contains(&self, v: usize) -> bool {
        self.left_first[v] != usize::MAX
    }

    /// The four-way label of an incomparable pair inside the traversed set.
    pub fn label(&self, x: usize, y: usize) -> PairPosition {
        let in_l1 = self.left_first[x] > self.left_first[y];
        let in_l2 = self.right_first[x] > self.right_first[y];
        match (in_l1, in_l2) {
            (true, false) => PairPosition::Right,
            (false, true) => PairPosition::Left,
            (true, true) => PairPosition::Inside,
            (false, false) => PairPosition::Outside,
        }
    }
}

impl EmbeddedDiagram {
    /// Preorder visit order of a depth-first search from `z`, walking cover
    /// edges in the given direction, children taken in the drawing's
    /// left-to-right order (or reversed).
    pub fn dfs_order(&self, z: usize, sweep: Sweep, pref: Preference) -> Vec<usize> {
        let n = self.poset().len();
        let mut visited = vec![false; n];
        let mut order = Vec::new();
        let mut stack = vec![z];
        while let Some(v) = stack.pop() {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            order.push(v);
            let children = match sweep {
                Sweep::Up => self.up_neighbors(v),
                Sweep::Down => self.down_neighbors(v),
            };
            match pref {
                // push reversed so the preferred child pops first
                Preference::Left => stack.extend(children.iter().rev()),
                Preference::Right => stack.extend(children.iter()),
            }
        }
        order
    }

    /// Both traversals from `z` at once, as position tables.
    pub fn traversal_pair(&self, z: usize, sweep: Sweep) -> TraversalPair {
        let n = self.poset().len();
        let mut left_first = vec![usize::MAX; n];
        let mut right_first = vec![usize::MAX; n];
        for (i, v) in self.dfs_order(z, sweep, Preference::Left).into_iter().enumerate() {
            left_first[v] = i;
        }
        for (i, v) in self.dfs_order(z, sweep, Preference::Right).into_iter().enumerate() {
            right_first[v] = i;
        }
        TraversalPair { left_first, right_first }
    }

    /// Classifies the incomparable pair (x, y) inside the up-set of `z`.
    pub fn classify_in_upset(&self, z: usize, x: usize, y: usize) -> Result<PairPosition> {
        let p = self.poset();
        for v in [x, y] {
            if !p.leq(z, v) {
                return Err(Error::NotInUpset(p.id(v).to_owned()));
            }
        }
        if !p.incomparable(x, y) {
            return Err(Error::PairNotIncomparable(p.id(x).to_owned(), p.id(y).to_owned()));
        }
        Ok(self.traversal_pair(z, Sweep::Up).label(x, y))
    }

    /// Classifies (x, y) inside the down-set of `z`. In a diagram where every
    /// minimal element is accessible from below only Left and Right can
    /// occur; the other two labels flag an inaccessible drawing. The answer
    /// is independent of the admissible choice of `z`.
    pub fn left_right_in_downset(&self, z: usize, x: usize, y: usize) -> Result<PairPosition> {
        let p = self.poset();
        for v in [x, y] {
            if !p.leq(v, z) {
                return Err(Error::NotInDownset(p.id(v).to_owned()));
            }
        }
        if !p.incomparable(x, y) {
            return Err(Error::PairNotIncomparable(p.id(x).to_owned(), p.id(y).to_owned()));
        }
        match self.traversal_pair(z, Sweep::Down).label(x, y) {
            PairPosition::Left => Ok(PairPosition::Left),
            PairPosition::Right => Ok(PairPosition::Right),
            other => Err(Error::AfbViolation(
                p.id(x).to_owned(),
                p.id(y).to_owned(),
                other.to_string(),
            )),
        }
    }

    /// All incomparable pairs (x, y) such that x is inside y in the up-set of
    /// some element below both.
    pub fn enclosed_pairs(&self) -> Vec<(usize, usize)> {
        let p = self.poset();
        let n = p.len();
        let inc = p.incomparable_pairs();
        let mut enclosed = Vec::new();
        let mut seen = vec![false; n * n];
        for z in 0..n {
            let pair = self.traversal_pair(z, Sweep::Up);
            for &(x, y) in &inc {
                if !seen[x * n + y]
                    && pair.contains(x)
                    && pair.contains(y)
                    && pair.label(x, y) == PairPosition::Inside
                {
                    seen[x * n + y] = true;
                    enclosed.push((x, y));
                }
            }
        }
        enclosed.sort();
        enclosed
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::diagram::tests::diagram;
    use crate::diagram::PlaneDiagram;
    use crate::rational::{rat_frac, Point};

    fn embed(d: PlaneDiagram) -> EmbeddedDiagram {
        EmbeddedDiagram::build(d).unwrap()
    }

    /// diamond z < l, r < t with an extra element m drawn inside the
    /// four-cycle, incomparable to everything but z
    pub(crate) fn inner_m_diamond() -> EmbeddedDiagram {
        let d = PlaneDiagram::new(
            vec![
                ("z".into(), Point::of(0, 0)),
                ("l".into(), Point::of(-2, 2)),
                ("r".into(), Point::of(2, 3)),
                ("t".into(), Point::of(1, 6)),
                ("m".into(), Point::new(rat_frac(1, 2), rat_frac(5, 2))),
            ],
            vec![
                ("z".into(), "l".into(), vec![]),
                ("z".into(), "r".into(), vec![]),
                ("z".into(), "m".into(), vec![]),
                ("l".into(), "t".into(), vec![]),
                ("r".into(), "t".into(), vec![]),
            ],
        )
        .unwrap();
        embed(d)
    }

    /// A minimal element b drawn inside the tent a < l, r < z with the edge
    /// b -> z threading between: the classic inaccessible configuration.
    pub(crate) fn trapped_tent() -> EmbeddedDiagram {
        let d = PlaneDiagram::new(
            vec![
                ("a".into(), Point::of(0, 0)),
                ("l".into(), Point::of(-2, 4)),
                ("r".into(), Point::of(2, 5)),
                ("z".into(), Point::of(1, 9)),
                ("b".into(), Point::new(rat_frac(1, 2), rat_frac(3, 1))),
            ],
            vec![
                ("a".into(), "l".into(), vec![]),
                ("a".into(), "r".into(), vec![]),
                ("l".into(), "z".into(), vec![]),
                ("r".into(), "z".into(), vec![]),
                ("b".into(), "z".into(), vec![]),
            ],
        )
        .unwrap();
        embed(d)
    }

    #[test]
    fn dfs_orders_of_inner_m_diamond() {
        let e = inner_m_diamond();
        let p = e.poset();
        let z = p.rank("z").unwrap();
        let left = e.dfs_order(z, Sweep::Up, Preference::Left);
        let names: Vec<&str> = left.iter().map(|&v| p.id(v)).collect();
        assert_eq!(names, vec!["z", "l", "t", "m", "r"]);
        let right = e.dfs_order(z, Sweep::Up, Preference::Right);
        let names: Vec<&str> = right.iter().map(|&v| p.id(v)).collect();
        assert_eq!(names, vec!["z", "r", "t", "m", "l"]);
    }

    #[test]
    fn chain_dfs_is_the_chain() {
        let e =
            embed(diagram(&[("a", 0, 0), ("b", 1, 1), ("c", 2, 2)], &[("a", "b"), ("b", "c")]));
        for pref in [Preference::Left, Preference::Right] {
            assert_eq!(e.dfs_order(0, Sweep::Up, pref), vec![0, 1, 2]);
        }
    }

    #[test]
    fn upset_classification_examples() {
        // z covering a (left) and b (right): (a, b) is Left
        let e =
            embed(diagram(&[("a", -1, 1), ("b", 1, 2), ("z", 0, 0)], &[("z", "a"), ("z", "b")]));
        let p = e.poset();
        let (a, b, z) = (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("z").unwrap());
        assert_eq!(e.classify_in_upset(z, a, b).unwrap(), PairPosition::Left);
        assert_eq!(e.classify_in_upset(z, b, a).unwrap(), PairPosition::Right);

        let e = inner_m_diamond();
        let p = e.poset();
        let (z, m, t) = (p.rank("z").unwrap(), p.rank("m").unwrap(), p.rank("t").unwrap());
        assert_eq!(e.classify_in_upset(z, m, t).unwrap(), PairPosition::Inside);
        assert_eq!(e.classify_in_upset(z, t, m).unwrap(), PairPosition::Outside);
    }

    #[test]
    fn upset_classification_errors() {
        let e = inner_m_diamond();
        let p = e.poset();
        let (l, m, t) = (p.rank("l").unwrap(), p.rank("m").unwrap(), p.rank("t").unwrap());
        assert!(matches!(e.classify_in_upset(l, m, t), Err(Error::NotInUpset(_))));
        let z = p.rank("z").unwrap();
        let r = p.rank("r").unwrap();
        assert!(matches!(e.classify_in_upset(z, r, t), Err(Error::PairNotIncomparable(_, _))));
    }

    #[test]
    fn downset_left_right_examples() {
        // t covering l = (-1, 1) and r = (1, 2): l is left of r
        let e =
            embed(diagram(&[("l", -1, 1), ("r", 1, 2), ("t", 0, 4)], &[("l", "t"), ("r", "t")]));
        let p = e.poset();
        let (l, r, t) = (p.rank("l").unwrap(), p.rank("r").unwrap(), p.rank("t").unwrap());
        assert_eq!(e.left_right_in_downset(t, l, r).unwrap(), PairPosition::Left);
        assert_eq!(e.left_right_in_downset(t, r, l).unwrap(), PairPosition::Right);

        // the same query through a larger reference point gives the same answer
        let e2 = embed(diagram(
            &[("l", -1, 1), ("r", 1, 2), ("t", 0, 4), ("u", 2, 6)],
            &[("l", "t"), ("r", "t"), ("t", "u")],
        ));
        let p = e2.poset();
        let (l, r, t, u) = (
            p.rank("l").unwrap(),
            p.rank("r").unwrap(),
            p.rank("t").unwrap(),
            p.rank("u").unwrap(),
        );
        assert_eq!(
            e2.left_right_in_downset(t, l, r).unwrap(),
            e2.left_right_in_downset(u, l, r).unwrap()
        );
    }

    #[test]
    fn trapped_minimal_raises_violation_in_downset() {
        let e = trapped_tent();
        let p = e.poset();
        let (a, b, z) = (p.rank("a").unwrap(), p.rank("b").unwrap(), p.rank("z").unwrap());
        assert!(!e.afb_check().0);
        assert!(matches!(e.left_right_in_downset(z, b, a), Err(Error::AfbViolation(_, _, _))));
    }

    #[test]
    fn enclosed_pairs_examples() {
        let vee =
            embed(diagram(&[("a", -1, 0), ("b", 1, 1), ("c", 0, 2)], &[("a", "c"), ("b", "c")]));
        assert!(vee.enclosed_pairs().is_empty());

        let e = inner_m_diamond();
        let p = e.poset();
        let (m, t) = (p.rank("m").unwrap(), p.rank("t").unwrap());
        assert_eq!(e.enclosed_pairs(), vec![(m, t)]);
    }

    #[test]
    fn four_way_partition_is_total_and_complementary() {
        let e = inner_m_diamond();
        let p = e.poset();
        let z = p.rank("z").unwrap();
        for (x, y) in p.incomparable_pairs() {
            let fwd = e.classify_in_upset(z, x, y).unwrap();
            let bwd = e.classify_in_upset(z, y, x).unwrap();
            let expected = match fwd {
                PairPosition::Left => PairPosition::Right,
                PairPosition::Right => PairPosition::Left,
                PairPosition::Inside => PairPosition::Outside,
                PairPosition::Outside => PairPosition::Inside,
            };
            assert_eq!(bwd, expected);
        }
    }
}
