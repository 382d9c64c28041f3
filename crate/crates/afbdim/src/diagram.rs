//! Plane diagrams: a drawing of an order diagram with rational coordinates
//! and strictly y-monotone polyline edges, plus its exact validation.
//!
//! Validation never fails with an error; every problem becomes an entry of
//! the [`ValidationReport`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::predicates::{boxes_overlap, point_on_segment, segment_contact, Contact};
use crate::rational::{format_rat, parse_rat, Point, Rat};

/// A polyline cover edge from a lower to an upper vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
    pub bends: Vec<Point>,
}

impl Edge {
    /// Full polyline, lower vertex first.
    pub fn polyline(&self, pos: &[Point]) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.bends.len() + 2);
        pts.push(pos[self.lower].clone());
        pts.extend(self.bends.iter().cloned());
        pts.push(pos[self.upper].clone());
        pts
    }
}

/// A drawing: vertex positions plus polyline edges. The induced poset is
/// cached when the edge set forms a valid cover relation.
#[derive(Debug, Clone)]
pub struct PlaneDiagram {
    ids: Vec<String>,
    pos: Vec<Point>,
    edges: Vec<Edge>,
    poset: Option<Poset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DuplicateX { a: String, b: String },
    DuplicateY { a: String, b: String },
    NotYMonotone { lower: String, upper: String },
    ZeroLengthSegment { lower: String, upper: String },
    DuplicateEdge { lower: String, upper: String },
    EdgeCrossing { first: (String, String), second: (String, String), at: (String, String) },
    VertexOnEdge { vertex: String, lower: String, upper: String },
    NotHasse { lower: String, upper: String },
    CycleInCovers,
}

/// Outcome of [`PlaneDiagram::validate`]; `ok` iff `violations` is empty.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Wire format for diagrams. Coordinates are `"p"`/`"p/q"` strings; plain
/// JSON integers are accepted on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub x: RatLit,
    pub y: RatLit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub lower: String,
    pub upper: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bends: Vec<(RatLit, RatLit)>,
}

/// A rational literal on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    pub fn parse(&self) -> Result<Rat> {
        match self {
            RatLit::Int(v) => Ok(crate::rational::rat(*v)),
            RatLit::Str(s) => parse_rat(s),
        }
    }

    pub fn of(r: &Rat) -> RatLit {
        RatLit::Str(format_rat(r))
    }
}

impl PlaneDiagram {
    /// Builds a diagram from parts without validating the drawing. Vertex ids
    /// must be unique and edges must reference declared ids.
    pub fn new(
        vertices: Vec<(String, Point)>,
        edges: Vec<(String, String, Vec<Point>)>,
    ) -> Result<PlaneDiagram> {
        let mut order: Vec<(String, Point)> = vertices;
        order.sort_by(|a, b| a.0.cmp(&b.0));
        for w in order.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateElement(w[0].0.clone()));
            }
        }
        let ids: Vec<String> = order.iter().map(|(id, _)| id.clone()).collect();
        let pos: Vec<Point> = order.into_iter().map(|(_, p)| p).collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut es = Vec::with_capacity(edges.len());
        for (lo, hi, bends) in edges {
            let lower = *index.get(lo.as_str()).ok_or(Error::UnknownElement(lo))?;
            let upper = *index.get(hi.as_str()).ok_or(Error::UnknownElement(hi))?;
            es.push(Edge { lower, upper, bends });
        }
        es.sort_by_key(|e| (e.lower, e.upper));
        let poset = {
            let covers: Vec<(&str, &str)> =
                es.iter().map(|e| (ids[e.lower].as_str(), ids[e.upper].as_str())).collect();
            let elems: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            Poset::closure_from_covers(&elems, &covers).ok()
        };
        Ok(PlaneDiagram { ids, pos, edges: es, poset })
    }

    pub fn from_json(j: &DiagramJson) -> Result<PlaneDiagram> {
        let mut vertices = Vec::with_capacity(j.vertices.len());
        for v in &j.vertices {
            vertices.push((v.id.clone(), Point::new(v.x.parse()?, v.y.parse()?)));
        }
        let mut edges = Vec::with_capacity(j.edges.len());
        for e in &j.edges {
            let mut bends = Vec::with_capacity(e.bends.len());
            for (x, y) in &e.bends {
                bends.push(Point::new(x.parse()?, y.parse()?));
            }
            edges.push((e.lower.clone(), e.upper.clone(), bends));
        }
        PlaneDiagram::new(vertices, edges)
    }

    pub fn from_json_str(s: &str) -> Result<PlaneDiagram> {
        let j: DiagramJson =
            serde_json::from_str(s).map_err(|e| Error::NotValidated(e.to_string()))?;
        PlaneDiagram::from_json(&j)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            vertices: (0..self.ids.len())
                .map(|v| VertexJson {
                    id: self.ids[v].clone(),
                    x: RatLit::of(&self.pos[v].x),
                    y: RatLit::of(&self.pos[v].y),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    lower: self.ids[e.lower].clone(),
                    upper: self.ids[e.upper].clone(),
                    bends: e.bends.iter().map(|p| (RatLit::of(&p.x), RatLit::of(&p.y))).collect(),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn position(&self, v: usize) -> &Point {
        &self.pos[v]
    }

    pub fn positions(&self) -> &[Point] {
        &self.pos
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The induced poset; present only when the edges read as covers form a
    /// transitively reduced acyclic relation.
    pub fn poset(&self) -> Result<&Poset> {
        self.poset
            .as_ref()
            .ok_or_else(|| Error::NotValidated("edge set is not a valid cover relation".into()))
    }

    fn point_lit(p: &Point) -> (String, String) {
        (format_rat(&p.x), format_rat(&p.y))
    }

    /// Exhaustive exact validation of all drawing invariants.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.ids.len();

        // general position: pairwise distinct x and distinct y
        let mut by_x: Vec<usize> = (0..n).collect();
        by_x.sort_by(|&a, &b| self.pos[a].x.cmp(&self.pos[b].x).then(a.cmp(&b)));
        for w in by_x.windows(2) {
            if self.pos[w[0]].x == self.pos[w[1]].x {
                violations.push(Violation::DuplicateX {
                    a: self.ids[w[0].min(w[1])].clone(),
                    b: self.ids[w[0].max(w[1])].clone(),
                });
            }
        }
        let mut by_y: Vec<usize> = (0..n).collect();
        by_y.sort_by(|&a, &b| self.pos[a].y.cmp(&self.pos[b].y).then(a.cmp(&b)));
        for w in by_y.windows(2) {
            if self.pos[w[0]].y == self.pos[w[1]].y {
                violations.push(Violation::DuplicateY {
                    a: self.ids[w[0].min(w[1])].clone(),
                    b: self.ids[w[0].max(w[1])].clone(),
                });
            }
        }

        // duplicate edges
        for w in self.edges.windows(2) {
            if w[0].lower == w[1].lower && w[0].upper == w[1].upper {
                violations.push(Violation::DuplicateEdge {
                    lower: self.ids[w[0].lower].clone(),
                    upper: self.ids[w[0].upper].clone(),
                });
            }
        }

        // strict y-monotonicity per edge
        let polylines: Vec<Vec<Point>> =
            self.edges.iter().map(|e| e.polyline(&self.pos)).collect();
        for (e, pts) in self.edges.iter().zip(&polylines) {
            for w in pts.windows(2) {
                if w[0] == w[1] {
                    violations.push(Violation::ZeroLengthSegment {
                        lower: self.ids[e.lower].clone(),
                        upper: self.ids[e.upper].clone(),
                    });
                } else if w[0].y >= w[1].y {
                    violations.push(Violation::NotYMonotone {
                        lower: self.ids[e.lower].clone(),
                        upper: self.ids[e.upper].clone(),
                    });
                }
            }
        }

        // pairwise segment contacts
        for i in 0..self.edges.len() {
            for j in i..self.edges.len() {
                self.check_edge_pair(i, j, &polylines, &mut violations);
            }
        }

        // no polyline through a non-endpoint vertex
        for v in 0..n {
            for (k, (e, pts)) in self.edges.iter().zip(&polylines).enumerate() {
                let _ = k;
                for (si, w) in pts.windows(2).enumerate() {
                    if !point_on_segment(&self.pos[v], &w[0], &w[1]) {
                        continue;
                    }
                    let at_lower_end = e.lower == v && si == 0 && self.pos[v] == w[0];
                    let at_upper_end =
                        e.upper == v && si == pts.len() - 2 && self.pos[v] == w[1];
                    if !(at_lower_end || at_upper_end) {
                        violations.push(Violation::VertexOnEdge {
                            vertex: self.ids[v].clone(),
                            lower: self.ids[e.lower].clone(),
                            upper: self.ids[e.upper].clone(),
                        });
                    }
                }
            }
        }

        // covers must form a transitively reduced acyclic relation
        if self.poset.is_none() {
            let covers: Vec<(&str, &str)> = self
                .edges
                .iter()
                .map(|e| (self.ids[e.lower].as_str(), self.ids[e.upper].as_str()))
                .collect();
            let elems: Vec<&str> = self.ids.iter().map(|s| s.as_str()).collect();
            match Poset::closure_from_covers(&elems, &covers) {
                Err(Error::RedundantCover(a, b)) => {
                    violations.push(Violation::NotHasse { lower: a, upper: b })
                }
                Err(Error::CycleInCovers) => violations.push(Violation::CycleInCovers),
                Err(_) | Ok(_) => {}
            }
        }

        ValidationReport { ok: violations.is_empty(), violations }
    }

    fn check_edge_pair(
        &self,
        i: usize,
        j: usize,
        polylines: &[Vec<Point>],
        violations: &mut Vec<Violation>,
    ) {
        let (ei, ej) = (&self.edges[i], &self.edges[j]);
        let name = |e: &Edge| (self.ids[e.lower].clone(), self.ids[e.upper].clone());
        // endpoints the two edges may legitimately share
        let mut shared: Vec<&Point> = Vec::new();
        if i != j {
            for v in [ei.lower, ei.upper] {
                if v == ej.lower || v == ej.upper {
                    shared.push(&self.pos[v]);
                }
            }
        }
        let (pi, pj) = (&polylines[i], &polylines[j]);
        for (si, wi) in pi.windows(2).enumerate() {
            for (sj, wj) in pj.windows(2).enumerate() {
                if i == j && sj <= si {
                    continue;
                }
                if wi[0] == wi[1] || wj[0] == wj[1] {
                    continue; // zero-length segments already reported
                }
                if !boxes_overlap(&wi[0], &wi[1], &wj[0], &wj[1]) {
                    continue;
                }
                match segment_contact(&wi[0], &wi[1], &wj[0], &wj[1]) {
                    Contact::None => {}
                    Contact::Overlap => violations.push(Violation::EdgeCrossing {
                        first: name(ei),
                        second: name(ej),
                        at: Self::point_lit(&wi[0]),
                    }),
                    Contact::At(p) => {
                        let allowed = if i == j {
                            // consecutive segments share exactly the bend point
                            sj == si + 1 && p == wi[1]
                        } else {
                            shared.iter().any(|s| **s == p)
                        };
                        if !allowed {
                            violations.push(Violation::EdgeCrossing {
                                first: name(ei),
                                second: name(ej),
                                at: Self::point_lit(&p),
                            });
                        }
                    }
                }
            }
        }
    }
}
