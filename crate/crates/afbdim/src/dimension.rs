//! Exact dimension by exhaustive search over reversible coverings.
//!
//! The search assigns critical pairs to buckets and checks each bucket stays
//! reversible. Covering the critical pairs is equivalent to covering all of
//! Inc(P); the final assignment is certified by rebuilding the extensions and
//! running the realizer check, so the pruning cannot silently change the
//! answer.

use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset, Realizer, ReverseOutcome};

/// Default guard on instance size for [`Poset::dimension_exact`].
pub const DEFAULT_INC_BUDGET: usize = 60;

/// Outcome of the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionBound {
    Exact(usize),
    /// Every covering needs more than the requested number of sets.
    MoreThan(usize),
}

impl DimensionBound {
    pub fn exact(self) -> Option<usize> {
        match self {
            DimensionBound::Exact(d) => Some(d),
            DimensionBound::MoreThan(_) => None,
        }
    }
}

/// Critical pairs: (x, y) incomparable with D(x) ⊆ D(y) and U(y) ⊆ U(x),
/// taken over strict down/up sets. A family of extensions realises the poset
/// iff it reverses every critical pair.
pub fn critical_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut down = vec![Vec::new(); n];
    let mut up = vec![Vec::new(); n];
    for v in 0..n {
        for w in 0..n {
            if p.lt(w, v) {
                down[v].push(w);
            }
            if p.lt(v, w) {
                up[v].push(w);
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.incomparable(x, y)
                && down[x].iter().all(|&w| p.lt(w, y))
                && up[y].iter().all(|&w| p.lt(x, w))
            {
                out.push((x, y));
            }
        }
    }
    out
}

struct Search<'a> {
    p: &'a Poset,
    pairs: Vec<(usize, usize)>,
    /// conflict\[i\]\[j\]: pairs i and j form an alternating cycle of length 2
    conflict: Vec<Vec<bool>>,
    buckets: Vec<Vec<usize>>,
    nodes: u64,
    node_cap: u64,
}

impl<'a> Search<'a> {
    fn bucket_reversible(&self, bucket: &[usize]) -> bool {
        let set: Vec<(usize, usize)> = bucket.iter().map(|&i| self.pairs[i]).collect();
        matches!(self.p.reverse_set(&set), Ok(ReverseOutcome::Reversed(_)))
    }

    fn assign(&mut self, idx: usize, d: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return None;
        }
        if idx == self.pairs.len() {
            return Some(true);
        }
        let used = self.buckets.iter().take_while(|b| !b.is_empty()).count();
        let limit = (used + 1).min(d);
        for b in 0..limit {
            if self.buckets[b].iter().any(|&q| self.conflict[idx][q]) {
                continue;
            }
            self.buckets[b].push(idx);
            if self.bucket_reversible(&self.buckets[b]) {
                match self.assign(idx + 1, d) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            self.buckets[b].pop();
        }
        Some(false)
    }
}

impl Poset {
    /// Least d <= `max_k` such that Inc(P) is covered by d reversible sets,
    /// or [`DimensionBound::MoreThan`] when every covering needs more.
    ///
    /// Guarded by `inc_budget` on |Inc(P)| (see [`DEFAULT_INC_BUDGET`]); the
    /// internal backtracking also carries a node cap so adversarial inputs
    /// fail loudly instead of hanging.
    pub fn dimension_exact(&self, max_k: usize, inc_budget: usize) -> Result<DimensionBound> {
        let inc = self.incomparable_pairs();
        if inc.len() > inc_budget {
            return Err(Error::SearchBudgetExceeded(inc.len(), inc_budget));
        }
        if inc.is_empty() {
            return Ok(DimensionBound::Exact(1));
        }
        if max_k < 2 {
            return Ok(DimensionBound::MoreThan(max_k));
        }

        let mut pairs = critical_pairs(self);
        debug_assert!(!pairs.is_empty(), "a non-chain poset has a critical pair");

        // order by descending conflict degree for earlier pruning
        let m = pairs.len();
        let mut conflict = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && self.leq(pairs[i].0, pairs[j].1) && self.leq(pairs[j].0, pairs[i].1) {
                    conflict[i][j] = true;
                }
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        let degree: Vec<usize> =
            (0..m).map(|i| conflict[i].iter().filter(|&&c| c).count()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), pairs[i]));
        pairs = order.iter().map(|&i| pairs[i]).collect();
        let conflict: Vec<Vec<bool>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| conflict[i][j]).collect())
            .collect();

        // greedy clique in the conflict graph gives a lower bound
        let mut clique: Vec<usize> = Vec::new();
        for i in 0..m {
            if clique.iter().all(|&j| conflict[i][j]) {
                clique.push(i);
            }
        }
        let lower = clique.len().max(2);

        for d in lower..=max_k {
            let mut search = Search {
                p: self,
                pairs: pairs.clone(),
                conflict: conflict.clone(),
                buckets: vec![Vec::new(); d],
                nodes: 0,
                node_cap: 5_000_000,
            };
            match search.assign(0, d) {
                Some(true) => {
                    self.certify(&search)?;
                    return Ok(DimensionBound::Exact(d));
                }
                Some(false) => {}
                None => {
                    return Err(Error::SearchBudgetExceeded(inc.len(), inc_budget));
                }
            }
        }
        Ok(DimensionBound::MoreThan(max_k))
    }

    /// Rebuilds the extensions of a successful assignment and checks the
    /// realizer property, certifying that covering critical pairs covered
    /// all of Inc(P).
    fn certify(&self, search: &Search<'_>) -> Result<()> {
        let mut extensions: Vec<LinearExtension> = Vec::new();
        for bucket in search.buckets.iter().filter(|b| !b.is_empty()) {
            let set: Vec<(usize, usize)> = bucket.iter().map(|&i| search.pairs[i]).collect();
            match self.reverse_set(&set)? {
                ReverseOutcome::Reversed(ext) => extensions.push(ext),
                ReverseOutcome::Obstructed(_) => {
                    return Err(Error::Internal(
                        "bucket passed incremental check but is irreversible".to_owned(),
                    ))
                }
            }
        }
        if !self.is_realizer(&Realizer { extensions })? {
            return Err(Error::Internal(
                "critical-pair covering failed to realise the poset".to_owned(),
            ));
        }
        Ok(())
    }
}
