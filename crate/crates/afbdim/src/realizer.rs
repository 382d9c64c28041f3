//! Constructing small realizers: profiles of elements over their minimals,
//! the eight pair labels, reversible covers of the minimal-pair set, the
//! three-extension realizer for diagrams with a zero, and the full
//! at-most-six-extension realizer for accessible diagrams.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{PairPosition, Sweep};
use crate::embedding::{Envelope, EmbeddedDiagram};
use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Realizer, ReverseOutcome};

/// How the left-to-right order of an element's minimals sits inside the
/// envelope order: either aligned, or rotated at one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Aligned,
    /// the left-to-right order is the envelope order rotated: entries from
    /// `pivot` (0-based) onward come first in the envelope
    Rotated { pivot: usize },
}

/// The minimals below an element, in both relevant orders.
#[derive(Debug, Clone)]
pub struct MinProfile {
    pub subject: usize,
    /// minimals below the subject, left to right in its down-set
    pub left_to_right: Vec<usize>,
    pub kind: ProfileKind,
    /// first and last of `left_to_right`
    pub leftmost: usize,
    pub rightmost: usize,
    /// least and greatest of the minimals in the envelope order
    pub env_least: usize,
    pub env_greatest: usize,
}

/// The eight labels of an incomparable pair (x, y) with x minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MinPairLabel {
    #[serde(rename = "1A")]
    T1A,
    #[serde(rename = "1B")]
    T1B,
    #[serde(rename = "1C")]
    T1C,
    #[serde(rename = "2A")]
    T2A,
    #[serde(rename = "2B")]
    T2B,
    #[serde(rename = "2C")]
    T2C,
    #[serde(rename = "2D")]
    T2D,
    #[serde(rename = "2E")]
    T2E,
}

impl std::fmt::Display for MinPairLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MinPairLabel::T1A => "1A",
            MinPairLabel::T1B => "1B",
            MinPairLabel::T1C => "1C",
            MinPairLabel::T2A => "2A",
            MinPairLabel::T2B => "2B",
            MinPairLabel::T2C => "2C",
            MinPairLabel::T2D => "2D",
            MinPairLabel::T2E => "2E",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct LabeledPair {
    pub x: usize,
    pub y: usize,
    pub label: MinPairLabel,
    /// bias flags, meaningful for 2C pairs only
    pub left_biased: bool,
    pub right_biased: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Five,
    Seven,
}

/// A named reversible set of pairs together with the extension reversing it.
#[derive(Debug, Clone)]
pub struct NamedSet {
    pub name: String,
    pub pairs: Vec<(usize, usize)>,
    pub extension: LinearExtension,
}

#[derive(Debug, Clone)]
pub struct CoverFamily {
    pub mode: CoverMode,
    pub sets: Vec<NamedSet>,
    pub labels: Vec<LabeledPair>,
}

/// A verified realizer plus the name of the set behind each extension and,
/// per incomparable pair, the index of an extension reversing it.
#[derive(Debug, Clone)]
pub struct AfbRealization {
    pub realizer: Realizer,
    pub extension_names: Vec<String>,
    pub provenance: BTreeMap<(String, String), usize>,
}

impl EmbeddedDiagram {
    /// The profile of `y`: its minimals ordered left-to-right in the
    /// down-set, matched against the envelope order.
    pub fn min_profile(&self, env: &Envelope, y: usize) -> Result<MinProfile> {
        let p = self.poset();
        let mut mins: Vec<usize> =
            p.minimals().into_iter().filter(|&m| p.leq(m, y)).collect();
        debug_assert!(!mins.is_empty());

        // order the minimals left-to-right via the down-set dichotomy
        let mut order: Result<()> = Ok(());
        mins.sort_by(|&a, &b| {
            if a == b {
                return std::cmp::Ordering::Equal;
            }
            match self.left_right_in_downset(y, a, b) {
                Ok(PairPosition::Left) => std::cmp::Ordering::Less,
                Ok(_) => std::cmp::Ordering::Greater,
                Err(e) => {
                    if order.is_ok() {
                        order = Err(e);
                    }
                    std::cmp::Ordering::Equal
                }
            }
        });
        order?;

        let r = mins.len();
        let leftmost = mins[0];
        let rightmost = mins[r - 1];
        let env_least = *mins.iter().min_by_key(|&&m| env.position[m]).unwrap();
        let env_greatest = *mins.iter().max_by_key(|&&m| env.position[m]).unwrap();

        // the envelope order restricted to these minimals must be the
        // left-to-right order rotated at a single position
        let descents: Vec<usize> = (0..r.saturating_sub(1))
            .filter(|&i| env.position[mins[i]] > env.position[mins[i + 1]])
            .collect();
        let kind = match descents.as_slice() {
            [] => ProfileKind::Aligned,
            [i] if env.position[mins[r - 1]] < env.position[mins[0]] => {
                ProfileKind::Rotated { pivot: i + 1 }
            }
            _ => {
                return Err(Error::Internal(format!(
                    "minimals of {} are not a rotation of the envelope order",
                    p.id(y)
                )))
            }
        };
        if kind == ProfileKind::Aligned {
            debug_assert_eq!(env_least, leftmost);
            debug_assert_eq!(env_greatest, rightmost);
        }
        Ok(MinProfile {
            subject: y,
            left_to_right: mins,
            kind,
            leftmost,
            rightmost,
            env_least,
            env_greatest,
        })
    }

    fn profile_table(&self, env: &Envelope) -> Result<Vec<MinProfile>> {
        (0..self.poset().len()).map(|y| self.min_profile(env, y)).collect()
    }

    /// Labels the incomparable pair (x, y) with x minimal, including the bias
    /// flags of 2C pairs.
    pub fn classify_min_pair(&self, env: &Envelope, x: usize, y: usize) -> Result<LabeledPair> {
        let profiles = self.profile_table(env)?;
        self.classify_with_profiles(env, &profiles, x, y)
    }

    fn classify_with_profiles(
        &self,
        env: &Envelope,
        profiles: &[MinProfile],
        x: usize,
        y: usize,
    ) -> Result<LabeledPair> {
        let p = self.poset();
        if !p.lower_covers(x).is_empty() {
            return Err(Error::NotMinimal(p.id(x).to_owned()));
        }
        if !p.incomparable(x, y) {
            return Err(Error::PairNotIncomparable(p.id(x).to_owned(), p.id(y).to_owned()));
        }
        let prof = &profiles[y];
        let at = |v: usize| env.position[v];
        let (a, b, s, t) =
            (prof.env_least, prof.env_greatest, prof.leftmost, prof.rightmost);
        let label = match prof.kind {
            ProfileKind::Aligned => {
                if at(x) < at(a) {
                    MinPairLabel::T1A
                } else if at(x) < at(b) {
                    MinPairLabel::T1B
                } else {
                    MinPairLabel::T1C
                }
            }
            ProfileKind::Rotated { .. } => {
                if at(x) < at(a) {
                    MinPairLabel::T2A
                } else if at(x) < at(t) {
                    MinPairLabel::T2B
                } else if at(x) < at(s) {
                    MinPairLabel::T2C
                } else if at(x) < at(b) {
                    MinPairLabel::T2D
                } else {
                    MinPairLabel::T2E
                }
            }
        };

        let (mut left_biased, mut right_biased) = (false, false);
        if label == MinPairLabel::T2C {
            let z0 = self.meet_z(y, a, b)?;
            for (y2, prof2) in profiles.iter().enumerate() {
                if !matches!(prof2.kind, ProfileKind::Rotated { .. })
                    || prof2.env_least != a
                    || prof2.env_greatest != b
                    || !p.leq(x, y2)
                {
                    continue;
                }
                if self.meet_z(y2, a, b)? != z0 {
                    continue;
                }
                match self.left_right_in_downset(y2, x, b)? {
                    PairPosition::Left => left_biased = true,
                    PairPosition::Right => {}
                    _ => unreachable!(),
                }
                match self.left_right_in_downset(y2, x, a)? {
                    PairPosition::Right => right_biased = true,
                    PairPosition::Left => {}
                    _ => unreachable!(),
                }
            }
            if left_biased && right_biased {
                return Err(Error::Internal(format!(
                    "pair ({}, {}) is both left- and right-biased",
                    p.id(x),
                    p.id(y)
                )));
            }
        }
        Ok(LabeledPair { x, y, label, left_biased, right_biased })
    }

    /// Labels every incomparable minimal-by-anything pair and groups them
    /// into reversible sets. Every named set is checked by topologically
    /// sorting its reversal; failure is an error, never ignored.
    pub fn cover_min_pairs(&self, env: &Envelope, mode: CoverMode) -> Result<CoverFamily> {
        let p = self.poset();
        let profiles = self.profile_table(env)?;
        let mut labels = Vec::new();
        for x in p.minimals() {
            for y in 0..p.len() {
                if p.incomparable(x, y) {
                    labels.push(self.classify_with_profiles(env, &profiles, x, y)?);
                }
            }
        }

        use MinPairLabel::*;
        let of = |pred: &dyn Fn(&LabeledPair) -> bool| -> Vec<(usize, usize)> {
            labels.iter().filter(|l| pred(l)).map(|l| (l.x, l.y)).collect()
        };
        let named: Vec<(String, Vec<(usize, usize)>)> = match mode {
            CoverMode::Seven => vec![
                ("type_1a_2a".into(), of(&|l| matches!(l.label, T1A | T2A))),
                ("type_1c_2e".into(), of(&|l| matches!(l.label, T1C | T2E))),
                ("type_1b".into(), of(&|l| l.label == T1B)),
                ("type_2b".into(), of(&|l| l.label == T2B)),
                ("type_2d".into(), of(&|l| l.label == T2D)),
                (
                    "type_2c_not_right_biased".into(),
                    of(&|l| l.label == T2C && !l.right_biased),
                ),
                (
                    "type_2c_not_left_biased".into(),
                    of(&|l| l.label == T2C && !l.left_biased),
                ),
            ],
            CoverMode::Five => vec![
                ("type_1a_2a".into(), of(&|l| matches!(l.label, T1A | T2A))),
                ("type_1c_2e".into(), of(&|l| matches!(l.label, T1C | T2E))),
                ("type_2b_2d".into(), of(&|l| matches!(l.label, T2B | T2D))),
                (
                    "type_1b_2c_not_right_biased".into(),
                    of(&|l| l.label == T1B || (l.label == T2C && !l.right_biased)),
                ),
                (
                    "type_2c_not_left_biased".into(),
                    of(&|l| l.label == T2C && !l.left_biased),
                ),
            ],
        };

        let mut sets = Vec::new();
        for (name, pairs) in named {
            if pairs.is_empty() {
                continue;
            }
            match p.reverse_set(&pairs)? {
                ReverseOutcome::Reversed(extension) => {
                    sets.push(NamedSet { name, pairs, extension })
                }
                ReverseOutcome::Obstructed(_) => return Err(Error::IrreversibleSet(name)),
            }
        }

        // the union must cover exactly the incomparable minimal pairs
        let mut covered: Vec<(usize, usize)> =
            sets.iter().flat_map(|s| s.pairs.iter().copied()).collect();
        covered.sort();
        covered.dedup();
        let mut expected: Vec<(usize, usize)> = labels.iter().map(|l| (l.x, l.y)).collect();
        expected.sort();
        if covered != expected {
            return Err(Error::VerificationFailed(
                "cover does not equal the incomparable minimal pairs".into(),
            ));
        }
        Ok(CoverFamily { mode, sets, labels })
    }

    /// The three-extension realizer of a diagram with a zero: one extension
    /// reversing the right-or-outside pairs, one the left-or-outside pairs,
    /// one the inside pairs.
    pub fn realize_planar_with_zero(&self) -> Result<Realizer> {
        let p = self.poset();
        let zero = p.zero().ok_or(Error::NoZero)?;
        let classes = self.traversal_pair(zero, Sweep::Up);
        let inc = p.incomparable_pairs();
        let pick = |want: &dyn Fn(PairPosition) -> bool| -> Vec<(usize, usize)> {
            inc.iter().copied().filter(|&(x, y)| want(classes.label(x, y))).collect()
        };
        let sets = [
            pick(&|l| matches!(l, PairPosition::Right | PairPosition::Outside)),
            pick(&|l| matches!(l, PairPosition::Left | PairPosition::Outside)),
            pick(&|l| l == PairPosition::Inside),
        ];
        let mut extensions = Vec::with_capacity(3);
        for (i, set) in sets.iter().enumerate() {
            match p.reverse_set(set)? {
                ReverseOutcome::Reversed(ext) => extensions.push(ext),
                ReverseOutcome::Obstructed(_) => {
                    let name = ["right-outside", "left-outside", "inside"][i];
                    return Err(Error::InternalIrreversible(name.into()));
                }
            }
        }
        let realizer = Realizer { extensions };
        if !p.is_realizer(&realizer)? {
            return Err(Error::VerificationFailed(
                "zero-diagram construction missed a pair".into(),
            ));
        }
        Ok(realizer)
    }

    /// The full pipeline: reduce, reverse the enclosed pairs, cover the
    /// minimal pairs, fold any unproxied stragglers into compatible sets,
    /// restrict every extension to the original elements, and verify.
    pub fn realize_afb(&self, mode: CoverMode) -> Result<AfbRealization> {
        let (ok, violators) = self.afb_check();
        if !ok {
            return Err(Error::NotAfb(
                violators.iter().map(|&v| self.poset().id(v).to_owned()).collect(),
            ));
        }
        if self.poset().is_connected() {
            return self.realize_afb_connected(mode);
        }

        // assemble per-component realizers; two orientations of the
        // component concatenation reverse every cross-component pair
        let p = self.poset();
        let comps = self.component_count();
        let mut per_component: Vec<Vec<Vec<String>>> = Vec::new();
        for c in 0..comps {
            let keep: Vec<usize> = (0..p.len()).filter(|&v| self.component_of(v) == c).collect();
            let sub = self.subdiagram(&keep)?;
            let subres = sub.realize_afb(mode)?;
            per_component.push(
                subres
                    .realizer
                    .extensions
                    .iter()
                    .map(|ext| ext.id_order(sub.poset()))
                    .collect(),
            );
        }
        let slots = per_component.iter().map(|e| e.len()).max().unwrap_or(1).max(2);
        let budget = match mode {
            CoverMode::Five => 6,
            CoverMode::Seven => 8,
        };
        if slots > budget {
            return Err(Error::VerificationFailed(
                "component realizers exceed the extension budget".into(),
            ));
        }
        let mut extensions = Vec::new();
        let mut extension_names = Vec::new();
        for s in 0..slots {
            let mut order: Vec<usize> = Vec::with_capacity(p.len());
            let comps_order: Vec<usize> =
                if s == 1 { (0..comps).rev().collect() } else { (0..comps).collect() };
            for c in comps_order {
                let exts = &per_component[c];
                let ids = &exts[s.min(exts.len() - 1)];
                order.extend(ids.iter().map(|id| p.rank(id).expect("component id")));
            }
            extensions.push(LinearExtension::new(p, order)?);
            extension_names.push(format!("components_slot_{s}"));
        }
        let realizer = Realizer { extensions };
        if !p.is_realizer(&realizer)? {
            return Err(Error::VerificationFailed("component merge missed a pair".into()));
        }
        let provenance = provenance_of(p, &realizer);
        Ok(AfbRealization { realizer, extension_names, provenance })
    }

    fn realize_afb_connected(&self, mode: CoverMode) -> Result<AfbRealization> {
        let p = self.poset();
        let budget = match mode {
            CoverMode::Five => 6,
            CoverMode::Seven => 8,
        };

        let reduced = self.reduce_to_min_covered()?;
        let ep = reduced.embedded.poset().clone();
        let env = reduced.embedded.envelope_order()?;

        // named pair sets over the reduced poset
        let mut sets: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
        let enclosed = reduced.embedded.enclosed_pairs();
        if !enclosed.is_empty() {
            sets.push(("enclosed".into(), enclosed));
        }
        let cover = reduced.embedded.cover_min_pairs(&env, mode)?;
        for named in cover.sets {
            sets.push((named.name, named.pairs));
        }

        let rebuild = |sets: &[(String, Vec<(usize, usize)>)]| -> Result<Vec<(String, LinearExtension)>> {
            let mut out = Vec::new();
            for (name, pairs) in sets {
                match ep.reverse_set(pairs)? {
                    ReverseOutcome::Reversed(ext) => out.push((name.clone(), ext)),
                    ReverseOutcome::Obstructed(_) => {
                        return Err(Error::IrreversibleSet(name.clone()))
                    }
                }
            }
            Ok(out)
        };
        let mut extensions_p = rebuild(&sets)?;

        // completion pass, to a fixpoint: pairs of the original poset that no
        // extension reverses (possible when a graft was blocked) are folded
        // into a compatible set, or get a set of their own while the budget
        // allows. Pairs placed in a set stay reversed, so this terminates.
        loop {
            let mut missing = Vec::new();
            for (x, y) in p.incomparable_pairs() {
                let (rx, ry) = (ep.rank(p.id(x))?, ep.rank(p.id(y))?);
                if !extensions_p.iter().any(|(_, ext)| ext.reverses(rx, ry)) {
                    missing.push((rx, ry));
                }
            }
            if missing.is_empty() {
                break;
            }
            for (rx, ry) in missing {
                let mut placed = false;
                for i in 0..sets.len() {
                    let mut candidate = sets[i].1.clone();
                    candidate.push((rx, ry));
                    if let ReverseOutcome::Reversed(_) = ep.reverse_set(&candidate)? {
                        sets[i].1 = candidate;
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    if sets.len() >= budget {
                        return Err(Error::VerificationFailed(format!(
                            "pair ({}, {}) fits no reversible set within the budget",
                            ep.id(rx),
                            ep.id(ry)
                        )));
                    }
                    sets.push(("completion".into(), vec![(rx, ry)]));
                }
            }
            extensions_p = rebuild(&sets)?;
        }

        // degenerate case: a chain has no pairs and still needs one extension
        if extensions_p.is_empty() {
            match ep.reverse_set(&[])? {
                ReverseOutcome::Reversed(ext) => extensions_p.push(("order".into(), ext)),
                ReverseOutcome::Obstructed(_) => unreachable!(),
            }
        }

        // restrict to the original elements and verify
        let mut extensions = Vec::new();
        let mut extension_names = Vec::new();
        for (name, ext) in &extensions_p {
            extensions.push(ext.restrict_to(&ep, p)?);
            extension_names.push(name.clone());
        }
        if extensions.len() > budget {
            return Err(Error::VerificationFailed(format!(
                "{} extensions exceed the budget {}",
                extensions.len(),
                budget
            )));
        }
        let realizer = Realizer { extensions };
        if !p.is_realizer(&realizer)? {
            return Err(Error::VerificationFailed(
                "restricted extensions do not realize the input".into(),
            ));
        }
        let provenance = provenance_of(p, &realizer);
        Ok(AfbRealization { realizer, extension_names, provenance })
    }

    /// The induced sub-drawing on a vertex subset (edges within the subset).
    pub fn subdiagram(&self, keep: &[usize]) -> Result<EmbeddedDiagram> {
        let d = self.diagram();
        let vertices: Vec<(String, crate::rational::Point)> =
            keep.iter().map(|&v| (d.id(v).to_owned(), d.position(v).clone())).collect();
        let edges: Vec<(String, String, Vec<crate::rational::Point>)> = d
            .edges()
            .iter()
            .filter(|e| keep.contains(&e.lower) && keep.contains(&e.upper))
            .map(|e| (d.id(e.lower).to_owned(), d.id(e.upper).to_owned(), e.bends.clone()))
            .collect();
        EmbeddedDiagram::build(PlaneDiagram::new(vertices, edges)?)
    }
}

fn provenance_of(
    p: &crate::poset::Poset,
    r: &Realizer,
) -> BTreeMap<(String, String), usize> {
    let mut out = BTreeMap::new();
    for (x, y) in p.incomparable_pairs() {
        let idx = r
            .extensions
            .iter()
            .position(|ext| ext.reverses(x, y))
            .expect("verified realizer reverses every pair");
        out.insert((p.id(x).to_owned(), p.id(y).to_owned()), idx);
    }
    out
}

use crate::diagram::PlaneDiagram;

/// Wire format for realizers.
#[derive(Debug, Clone, Serialize)]
pub struct RealizerJson {
    pub extensions: Vec<Vec<String>>,
    pub extension_names: Vec<String>,
    pub provenance: BTreeMap<String, usize>,
}

impl AfbRealization {
    pub fn to_json(&self, p: &crate::poset::Poset) -> RealizerJson {
        RealizerJson {
            extensions: self.realizer.extensions.iter().map(|e| e.id_order(p)).collect(),
            extension_names: self.extension_names.clone(),
            provenance: self
                .provenance
                .iter()
                .map(|((x, y), k)| (format!("({x},{y})"), *k))
                .collect(),
        }
    }
}
