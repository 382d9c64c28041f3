//! Finite posets, linear extensions, reversibility and realizers.
//!
//! Elements are opaque string ids. Internally every element is addressed by
//! its rank in the lexicographic order of ids; all deterministic tie-breaking
//! in the crate relies on that rank.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major square bit matrix, used for order relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// row(i) |= row(j)
    pub fn or_row(&mut self, i: usize, j: usize) {
        let (a, b) = (i * self.words, j * self.words);
        for w in 0..self.words {
            let v = self.bits[b + w];
            self.bits[a + w] |= v;
        }
    }

    pub fn row_subset(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i * self.words, j * self.words);
        (0..self.words).all(|w| self.bits[a + w] & !self.bits[b + w] == 0)
    }
}

/// A finite poset given by its ground set and cover relation, with the
/// reflexive-transitive closure cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    covers: Vec<(usize, usize)>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    leq: BitMatrix,
}

/// Wire format: `{"elements": [...], "covers": [["a","b"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds a poset from a cover relation, computing the order closure.
    ///
    /// The input must be acyclic and its own transitive reduction; a cover
    /// implied by two others is rejected with the offending pair.
    pub fn closure_from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Poset> {
        let mut ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        let index: BTreeMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = ids.len();

        let mut cover_pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownElement(lo.as_ref().to_owned()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownElement(hi.as_ref().to_owned()))?;
            if lo == hi {
                return Err(Error::CycleInCovers);
            }
            cover_pairs.push((lo, hi));
        }
        cover_pairs.sort();
        cover_pairs.dedup();

        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for &(lo, hi) in &cover_pairs {
            up_covers[lo].push(hi);
            down_covers[hi].push(lo);
        }

        // Topological order; failure means a directed cycle.
        let topo = topo_order(n, &up_covers).ok_or(Error::CycleInCovers)?;

        // Closure by sweeping in reverse topological order.
        let mut leq = BitMatrix::new(n);
        for &v in topo.iter().rev() {
            leq.set(v, v);
            let ups = up_covers[v].clone();
            for u in ups {
                leq.or_row(v, u);
            }
        }

        // Transitive reduction check: a cover (lo, hi) must not be implied
        // by a chain of length >= 2.
        for &(lo, hi) in &cover_pairs {
            for &mid in &up_covers[lo] {
                if mid != hi && leq.get(mid, hi) {
                    return Err(Error::RedundantCover(ids[lo].clone(), ids[hi].clone()));
                }
            }
        }

        Ok(Poset { ids, index, covers: cover_pairs, up_covers, down_covers, leq })
    }

    pub fn from_json(j: &PosetJson) -> Result<Poset> {
        let covers: Vec<(&str, &str)> =
            j.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = j.elements.iter().map(|s| s.as_str()).collect();
        Poset::closure_from_covers(&elements, &covers)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.ids.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn rank(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_owned()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.up_covers[v]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.down_covers[v]
    }

    /// x <= y in the order closure.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq.get(x, y)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.leq.get(x, y) && !self.leq.get(y, x)
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.down_covers[v].is_empty()).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.up_covers[v].is_empty()).collect()
    }

    /// The unique minimal element, when there is one.
    pub fn zero(&self) -> Option<usize> {
        let m = self.minimals();
        if m.len() == 1 { Some(m[0]) } else { None }
    }

    /// All ordered pairs (x, y) with x and y incomparable.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.incomparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pairs().is_empty()
    }

    /// The dual poset: all covers reversed. Ids are unchanged.
    pub fn dual(&self) -> Poset {
        let covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.ids[b].clone(), self.ids[a].clone()))
            .collect();
        let refs: Vec<(&str, &str)> =
            covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elems: Vec<&str> = self.ids.iter().map(|s| s.as_str()).collect();
        Poset::closure_from_covers(&elems, &refs).expect("dual of valid poset is valid")
    }

    /// Connectivity of the undirected cover graph.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in self.up_covers[v].iter().chain(self.down_covers[v].iter()) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Restriction to a subset of elements; the sub-order is induced.
    /// Covers of the restriction are recomputed from the induced order.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let ids: Vec<&str> = set.iter().map(|&v| self.id(v)).collect();
        let mut covers = Vec::new();
        for &a in &set {
            for &b in &set {
                if self.lt(a, b)
                    && !set.iter().any(|&m| m != a && m != b && self.lt(a, m) && self.lt(m, b))
                {
                    covers.push((self.id(a), self.id(b)));
                }
            }
        }
        Poset::closure_from_covers(&ids, &covers).expect("induced suborder is valid")
    }
}

fn topo_order(n: usize, up: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for adj in up {
        for &w in adj {
            indeg[w] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        out.push(v);
        for &w in &up[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    (out.len() == n).then_some(out)
}

/// A total order on the ground set compatible with the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearExtension {
    /// Wraps a permutation, checking it is a linear extension of `p`.
    pub fn new(p: &Poset, order: Vec<usize>) -> Result<LinearExtension> {
        let n = p.len();
        let mut position = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::NotALinearExtension(0));
        }
        for (pos, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::NotALinearExtension(0));
            }
            position[v] = pos;
        }
        for &(lo, hi) in p.covers() {
            if position[lo] > position[hi] {
                return Err(Error::NotALinearExtension(0));
            }
        }
        Ok(LinearExtension { order, position })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn before(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// x > y in this extension.
    #[inline]
    pub fn reverses(&self, x: usize, y: usize) -> bool {
        self.position[x] > self.position[y]
    }

    pub fn id_order(&self, p: &Poset) -> Vec<String> {
        self.order.iter().map(|&v| p.id(v).to_owned()).collect()
    }

    /// Restriction to the elements of a smaller poset sharing ids with `p`.
    pub fn restrict_to(&self, p: &Poset, sub: &Poset) -> Result<LinearExtension> {
        let mut order = Vec::with_capacity(sub.len());
        for &v in &self.order {
            if let Ok(r) = sub.rank(p.id(v)) {
                order.push(r);
            }
        }
        LinearExtension::new(sub, order)
    }
}

/// A non-empty family of linear extensions whose intersection is the order.
#[derive(Debug, Clone)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

/// Witness that a pair set is irreversible: a cyclic sequence of incomparable
/// pairs with x_i <= y_{i+1} read cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCycle {
    pub pairs: Vec<(usize, usize)>,
    pub strict: bool,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks the defining conditions against `p`; used by tests and debug
    /// assertions.
    pub fn verify(&self, p: &Poset) -> bool {
        let k = self.pairs.len();
        if k < 2 {
            return false;
        }
        for i in 0..k {
            let (x, y) = self.pairs[i];
            if !p.incomparable(x, y) {
                return false;
            }
            let (_, y_next) = self.pairs[(i + 1) % k];
            if !p.leq(x, y_next) {
                return false;
            }
        }
        if self.strict {
            for i in 0..k {
                let (xi, _) = self.pairs[i];
                for j in 0..k {
                    let (_, yj) = self.pairs[j];
                    let expected = j == (i + 1) % k;
                    if p.leq(xi, yj) != expected {
                        return false;
                    }
                }
            }
            // both coordinate sets are k-antichains
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        let (xi, yi) = self.pairs[i];
                        let (xj, yj) = self.pairs[j];
                        if p.leq(xi, xj) || p.leq(yi, yj) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Result of attempting to reverse a set of incomparable pairs.
#[derive(Debug, Clone)]
pub enum ReverseOutcome {
    Reversed(LinearExtension),
    Obstructed(AlternatingCycle),
}

impl Poset {
    fn check_pairs_incomparable(&self, pairs: &[(usize, usize)]) -> Result<()> {
        for &(x, y) in pairs {
            if !self.incomparable(x, y) {
                return Err(Error::PairNotIncomparable(
                    self.id(x).to_owned(),
                    self.id(y).to_owned(),
                ));
            }
        }
        Ok(())
    }

    /// Tries to build a linear extension with x > y for every (x, y) in `set`;
    /// on failure extracts an alternating cycle inside `set` and minimises it
    /// to a strict one.
    ///
    /// The extension is the topological order of leq extended by the reversed
    /// pairs, with ties broken by lexicographic id rank.
    pub fn reverse_set(&self, set: &[(usize, usize)]) -> Result<ReverseOutcome> {
        self.check_pairs_incomparable(set)?;
        let n = self.len();

        // adjacency: strict order edges plus y -> x for each reversed pair
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) {
                    adj[x].push(y);
                    indeg[y] += 1;
                }
            }
        }
        let mut reversal: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(x, y) in set {
            if reversal.insert((y, x)) {
                adj[y].push(x);
                indeg[x] += 1;
            }
        }

        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            placed[v] = true;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() == n {
            let ext = LinearExtension::new(self, order)
                .expect("topological order of an order extension");
            debug_assert!(set.iter().all(|&(x, y)| ext.reverses(x, y)));
            return Ok(ReverseOutcome::Reversed(ext));
        }

        // Extract a directed cycle among unplaced vertices. Every unplaced
        // vertex keeps an unplaced predecessor (otherwise its in-degree would
        // have reached zero), so walking predecessors must loop.
        let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            for &w in &adj[v] {
                radj[w].push(v);
            }
        }
        let start = (0..n).find(|&v| !placed[v]).expect("cycle exists");
        let mut seen_at = vec![usize::MAX; n];
        let mut walk = vec![start];
        seen_at[start] = 0;
        let cycle_nodes = loop {
            let v = *walk.last().unwrap();
            let prev = radj[v]
                .iter()
                .copied()
                .filter(|&w| !placed[w])
                .min()
                .expect("unplaced vertex keeps an unplaced predecessor");
            if seen_at[prev] != usize::MAX {
                // the suffix is a backward walk around a cycle; flip it
                let mut nodes = walk[seen_at[prev]..].to_vec();
                nodes.reverse();
                break nodes;
            }
            seen_at[prev] = walk.len();
            walk.push(prev);
        };

        // Collect the reversal edges along the cycle: each contributes a pair.
        let k = cycle_nodes.len();
        let mut pairs = Vec::new();
        for i in 0..k {
            let a = cycle_nodes[i];
            let b = cycle_nodes[(i + 1) % k];
            if reversal.contains(&(a, b)) {
                pairs.push((b, a)); // the reversed pair (x, y) had edge y -> x
            }
        }
        debug_assert!(pairs.len() >= 2, "a cycle uses at least two reversal edges");
        let cycle = self.minimise_alternating_cycle(pairs);
        debug_assert!(cycle.verify(self));
        Ok(ReverseOutcome::Obstructed(cycle))
    }

    /// Shortcut minimisation: while some x_i <= y_j with j != i+1, the cycle
    /// can be shortened; at a fixed point the cycle is strict.
    fn minimise_alternating_cycle(&self, mut pairs: Vec<(usize, usize)>) -> AlternatingCycle {
        'outer: loop {
            let k = pairs.len();
            for i in 0..k {
                for j in 0..k {
                    if j == (i + 1) % k {
                        continue;
                    }
                    if self.leq(pairs[i].0, pairs[j].1) {
                        // keep pairs j, j+1, ..., i (cyclically)
                        let mut next = Vec::new();
                        let mut t = j;
                        loop {
                            next.push(pairs[t]);
                            if t == i {
                                break;
                            }
                            t = (t + 1) % k;
                        }
                        pairs = next;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        AlternatingCycle { pairs, strict: true }
    }

    /// Searches for a strict alternating cycle inside `set` directly, via a
    /// shortest directed cycle in the digraph on pairs with an edge p -> q
    /// whenever x_p <= y_q. Independent of [`Poset::reverse_set`].
    pub fn find_strict_alternating_cycle(
        &self,
        set: &[(usize, usize)],
    ) -> Result<Option<AlternatingCycle>> {
        self.check_pairs_incomparable(set)?;
        let mut pairs: Vec<(usize, usize)> = set.to_vec();
        pairs.sort();
        pairs.dedup();
        let m = pairs.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for p in 0..m {
            for q in 0..m {
                if p != q && self.leq(pairs[p].0, pairs[q].1) {
                    adj[p].push(q);
                }
            }
        }

        // shortest cycle through any node, by BFS from each node
        let mut best: Option<Vec<usize>> = None;
        for s in 0..m {
            let mut dist = vec![usize::MAX; m];
            let mut parent = vec![usize::MAX; m];
            let mut queue = std::collections::VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if w == s {
                        // cycle found: s ... v -> s
                        let mut node = v;
                        let mut path = vec![];
                        while node != usize::MAX {
                            path.push(node);
                            node = parent[node];
                        }
                        path.reverse();
                        if best.as_ref().map_or(true, |b| path.len() < b.len()) {
                            best = Some(path);
                        }
                        queue.clear();
                        break;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
        }

        Ok(best.map(|nodes| {
            let cyc_pairs: Vec<(usize, usize)> = nodes.iter().map(|&i| pairs[i]).collect();
            let cycle = self.minimise_alternating_cycle(cyc_pairs);
            debug_assert!(cycle.verify(self));
            cycle
        }))
    }

    /// True iff every incomparable ordered pair is reversed by some
    /// extension. Each candidate must be a linear extension of `self`.
    pub fn is_realizer(&self, r: &Realizer) -> Result<bool> {
        if r.extensions.is_empty() {
            return Err(Error::NotALinearExtension(0));
        }
        for (i, ext) in r.extensions.iter().enumerate() {
            LinearExtension::new(self, ext.order().to_vec())
                .map_err(|_| Error::NotALinearExtension(i))?;
        }
        Ok(self
            .incomparable_pairs()
            .into_iter()
            .all(|(x, y)| r.extensions.iter().any(|ext| ext.reverses(x, y))))
    }

    /// The standard example S_d: minimals a_1..a_d, maximals b_1..b_d, with
    /// a_i < b_j exactly when i != j.
    pub fn standard_example(d: usize) -> Result<Poset> {
        if d < 2 {
            return Err(Error::StandardExampleTooSmall(d));
        }
        let mut elements = Vec::new();
        let mut covers = Vec::new();
        for i in 1..=d {
            elements.push(format!("a{i}"));
            elements.push(format!("b{i}"));
        }
        for i in 1..=d {
            for j in 1..=d {
                if i != j {
                    covers.push((format!("a{i}"), format!("b{j}")));
                }
            }
        }
        let el: Vec<&str> = elements.iter().map(|s| s.as_str()).collect();
        let cv: Vec<(&str, &str)> =
            covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Poset::closure_from_covers(&el, &cv)
    }
}

/// Alternating down-set / up-set layering grown from one minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unfolding {
    /// layers\[0\] is A_0 = {x0}; layers then alternate B_0, A_1, B_1, ...
    pub layers: Vec<Vec<usize>>,
}

impl Poset {
    /// Unfolds a connected poset from the minimal element `x0`.
    pub fn unfold(&self, x0: usize) -> Result<Unfolding> {
        if !self.lower_covers(x0).is_empty() {
            return Err(Error::NotMinimal(self.id(x0).to_owned()));
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let n = self.len();
        let mut covered = vec![false; n];
        covered[x0] = true;
        let mut layers = vec![vec![x0]];
        let mut remaining = n - 1;
        // B-layer above the last A-layer, then A-layer below the last B-layer.
        while remaining > 0 {
            let last = layers.last().unwrap().clone();
            let next: Vec<usize> = if layers.len() % 2 == 1 {
                (0..n)
                    .filter(|&y| !covered[y] && last.iter().any(|&x| self.lt(x, y)))
                    .collect()
            } else {
                (0..n)
                    .filter(|&x| !covered[x] && last.iter().any(|&y| self.lt(x, y)))
                    .collect()
            };
            if next.is_empty() {
                // cannot happen for a connected poset: every cover edge out of
                // the covered region is absorbed by the round that reaches it
                return Err(Error::Internal(
                    "unfolding stalled on a connected poset".to_owned(),
                ));
            }
            for &v in &next {
                covered[v] = true;
            }
            remaining -= next.len();
            layers.push(next);
        }
        Ok(Unfolding { layers })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poset(elements: &[&str], covers: &[(&str, &str)]) -> Poset {
        Poset::closure_from_covers(elements, covers).unwrap()
    }

    #[test]
    fn closure_singleton() {
        let p = poset(&["a"], &[]);
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
        assert!(p.is_chain());
    }

    #[test]
    fn closure_transitivity() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let (a, c) = (p.rank("a").unwrap(), p.rank("c").unwrap());
        assert!(p.lt(a, c));
    }

    #[test]
    fn closure_rejects_redundant_cover() {
        let err = Poset::closure_from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap_err();
        assert_eq!(err, Error::RedundantCover("a".into(), "c".into()));
    }

    #[test]
    fn closure_rejects_cycle() {
        let err =
            Poset::closure_from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, Error::CycleInCovers);
    }

    #[test]
    fn incomparable_pairs_examples() {
        let chain = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(chain.incomparable_pairs().is_empty());

        let anti = poset(&["a", "b"], &[]);
        assert_eq!(anti.incomparable_pairs().len(), 2);

        let vee = poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]);
        let pairs = vee.incomparable_pairs();
        let a = vee.rank("a").unwrap();
        let b = vee.rank("b").unwrap();
        assert_eq!(pairs, vec![(a, b), (b, a)]);
    }

    #[test]
    fn reverse_single_pair_on_antichain() {
        let p = poset(&["a", "b"], &[]);
        let (a, b) = (0, 1);
        match p.reverse_set(&[(a, b)]).unwrap() {
            ReverseOutcome::Reversed(ext) => {
                assert_eq!(ext.id_order(&p), vec!["b", "a"]);
            }
            ReverseOutcome::Obstructed(_) => panic!("single pair is reversible"),
        }
    }

    #[test]
    fn reverse_two_cycle_on_antichain() {
        let p = poset(&["a", "b"], &[]);
        match p.reverse_set(&[(0, 1), (1, 0)]).unwrap() {
            ReverseOutcome::Reversed(_) => panic!("both orientations cannot reverse"),
            ReverseOutcome::Obstructed(c) => {
                assert_eq!(c.len(), 2);
                assert!(c.verify(&p));
            }
        }
    }

    #[test]
    fn reverse_rejects_comparable_pair() {
        let p = poset(&["a", "b"], &[("a", "b")]);
        let err = p.reverse_set(&[(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::PairNotIncomparable(_, _)));
    }

    #[test]
    fn standard_example_cycle() {
        let p = Poset::standard_example(2).unwrap();
        let a1 = p.rank("a1").unwrap();
        let a2 = p.rank("a2").unwrap();
        let b1 = p.rank("b1").unwrap();
        let b2 = p.rank("b2").unwrap();
        // hand check: a1 <= b2 and a2 <= b1, so both critical pairs conflict
        assert!(p.leq(a1, b2) && p.leq(a2, b1));
        match p.reverse_set(&[(a1, b1), (a2, b2)]).unwrap() {
            ReverseOutcome::Obstructed(c) => {
                assert_eq!(c.len(), 2);
                assert!(c.strict);
                assert!(c.verify(&p));
            }
            ReverseOutcome::Reversed(_) => panic!("S_2 critical pairs are irreversible"),
        }
    }

    #[test]
    fn cycle_extraction_handles_dangling_successors() {
        // the lexicographically least unplaced vertex "a0" sits above the
        // cycle and has no successors; the extraction must walk predecessors
        let p = poset(&["a0", "b0", "c0"], &[("b0", "a0")]);
        let b0 = p.rank("b0").unwrap();
        let c0 = p.rank("c0").unwrap();
        match p.reverse_set(&[(b0, c0), (c0, b0)]).unwrap() {
            ReverseOutcome::Obstructed(c) => {
                assert_eq!(c.len(), 2);
                assert!(c.verify(&p));
            }
            ReverseOutcome::Reversed(_) => panic!("two orientations cannot reverse"),
        }
    }

    #[test]
    fn strict_cycle_agrees_on_examples() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(p.find_strict_alternating_cycle(&[]).unwrap().is_none());

        let s2 = Poset::standard_example(2).unwrap();
        let a1 = s2.rank("a1").unwrap();
        let a2 = s2.rank("a2").unwrap();
        let b1 = s2.rank("b1").unwrap();
        let b2 = s2.rank("b2").unwrap();
        let found = s2.find_strict_alternating_cycle(&[(a1, b1), (a2, b2)]).unwrap().unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.verify(&s2));
    }

    #[test]
    fn realizer_checks() {
        let chain = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let ext = LinearExtension::new(&chain, vec![0, 1, 2]).unwrap();
        assert!(chain.is_realizer(&Realizer { extensions: vec![ext] }).unwrap());

        let vee = poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]);
        let l1 = LinearExtension::new(&vee, vec![0, 1, 2]).unwrap();
        let l2 = LinearExtension::new(&vee, vec![1, 0, 2]).unwrap();
        assert!(vee.is_realizer(&Realizer { extensions: vec![l1.clone(), l2] }).unwrap());
        assert!(!vee.is_realizer(&Realizer { extensions: vec![l1.clone(), l1] }).unwrap());
    }

    #[test]
    fn realizer_rejects_non_extension() {
        let chain = poset(&["a", "b"], &[("a", "b")]);
        let bogus = LinearExtension { order: vec![1, 0], position: vec![1, 0] };
        let err = chain.is_realizer(&Realizer { extensions: vec![bogus] }).unwrap_err();
        assert_eq!(err, Error::NotALinearExtension(0));
    }

    #[test]
    fn standard_example_shape() {
        let s2 = Poset::standard_example(2).unwrap();
        assert_eq!(s2.len(), 4);
        assert_eq!(s2.covers().len(), 2);
        let s3 = Poset::standard_example(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.covers().len(), 6);
        assert!(Poset::standard_example(1).is_err());
    }

    #[test]
    fn dual_involution() {
        let vee = poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]);
        let lambda = vee.dual();
        assert_eq!(lambda.minimals().len(), 1);
        assert_eq!(lambda.maximals().len(), 2);
        assert_eq!(lambda.dual(), vee);
    }

    #[test]
    fn unfold_examples() {
        let vee = poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]);
        let a = vee.rank("a").unwrap();
        let u = vee.unfold(a).unwrap();
        let names: Vec<Vec<&str>> =
            u.layers.iter().map(|l| l.iter().map(|&v| vee.id(v)).collect()).collect();
        assert_eq!(names, vec![vec!["a"], vec!["c"], vec!["b"]]);

        let chain = poset(&["a", "b"], &[("a", "b")]);
        let u = chain.unfold(0).unwrap();
        assert_eq!(u.layers, vec![vec![0], vec![1]]);

        let single = poset(&["a"], &[]);
        assert_eq!(single.unfold(0).unwrap().layers, vec![vec![0]]);
    }

    #[test]
    fn unfold_rejects_bad_input() {
        let chain = poset(&["a", "b"], &[("a", "b")]);
        assert_eq!(chain.unfold(1).unwrap_err(), Error::NotMinimal("b".into()));
        let two = poset(&["a", "b"], &[]);
        assert_eq!(two.unfold(0).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn restriction_induces_suborder() {
        // a < b < c; restricting to {a, c} turns (a, c) into a cover
        let chain = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let sub = chain.restrict(&[0, 2]);
        assert_eq!(sub.len(), 2);
        assert!(sub.lt(sub.rank("a").unwrap(), sub.rank("c").unwrap()));
    }
}
