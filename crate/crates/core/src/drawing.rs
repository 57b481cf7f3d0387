//! Cylindrical drawings `D_n` of `K_{n,n} - nK_2`.
//!
//! Boundary vertices sit on the rims of the two disks at rational angles
//! (in turns). Edges are sequences of chords, radials and helices. For odd
//! `n` the vertices `a_{n-1}` and `b_{n-1}` sit at the disk centres.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{knn_minus_matching, Graph, GraphError, VertexLabel};

/// Exact angles and coordinates.
pub type Q = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed route for {edge}: {reason}")]
    MalformedRoute { edge: String, reason: String },
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Shortest signed travel from `top` to `bottom`, in `(-1/2, 1/2]`.
pub fn winding(top: Q, bottom: Q) -> Q {
    let w = frac(bottom - top);
    if w > q(1, 2) {
        w - Q::one()
    } else {
        w
    }
}

/// True iff `x` lies strictly inside the arc `(start, start + len)`.
pub fn inside_arc(x: Q, start: Q, len: Q) -> bool {
    let d = frac(x - start);
    d > Q::zero() && d < len
}

/// The arc a chord is drawn over, as `(start, length)`: the minor arc, or
/// for a diameter the half not containing `bias`.
pub fn drawn_arc(a: Q, b: Q, bias: Q) -> (Q, Q) {
    let len = frac(b - a);
    let half = q(1, 2);
    if len < half {
        (frac(a), len)
    } else if len > half {
        (frac(b), Q::one() - len)
    } else if inside_arc(bias, a, half) {
        (frac(b), half)
    } else {
        (frac(a), half)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Disk {
    Top,
    Bottom,
}

impl Disk {
    pub fn other(self) -> Disk {
        match self {
            Disk::Top => Disk::Bottom,
            Disk::Bottom => Disk::Top,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderPoint {
    Boundary { disk: Disk, angle: Q },
    Center(Disk),
}

impl CylinderPoint {
    pub fn disk(&self) -> Disk {
        match *self {
            CylinderPoint::Boundary { disk, .. } | CylinderPoint::Center(disk) => disk,
        }
    }

    pub fn angle(&self) -> Option<Q> {
        match *self {
            CylinderPoint::Boundary { angle, .. } => Some(angle),
            CylinderPoint::Center(_) => None,
        }
    }

    fn rim(disk: Disk, angle: Q) -> Self {
        CylinderPoint::Boundary { disk, angle: frac(angle) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteSegment {
    /// Straight chord inside a disk between two rim angles.
    Chord { disk: Disk, a: Q, b: Q },
    /// From the disk centre to a rim angle.
    Radial { disk: Disk, angle: Q },
    /// Lateral curve from a top rim angle to a bottom rim angle.
    Helix { top: Q, bottom: Q, winding: Q },
}

impl RouteSegment {
    pub fn helix(top: Q, bottom: Q) -> Self {
        RouteSegment::Helix {
            top: frac(top),
            bottom: frac(bottom),
            winding: winding(top, bottom),
        }
    }

    pub fn endpoints(&self) -> [CylinderPoint; 2] {
        match *self {
            RouteSegment::Chord { disk, a, b } => [CylinderPoint::rim(disk, a), CylinderPoint::rim(disk, b)],
            RouteSegment::Radial { disk, angle } => [CylinderPoint::Center(disk), CylinderPoint::rim(disk, angle)],
            RouteSegment::Helix { top, bottom, .. } => [
                CylinderPoint::rim(Disk::Top, top),
                CylinderPoint::rim(Disk::Bottom, bottom),
            ],
        }
    }

    fn mirrored(self) -> Self {
        match self {
            RouteSegment::Chord { disk, a, b } => RouteSegment::Chord { disk: disk.other(), a, b },
            RouteSegment::Radial { disk, angle } => RouteSegment::Radial { disk: disk.other(), angle },
            RouteSegment::Helix { top, bottom, winding } => RouteSegment::Helix {
                top: bottom,
                bottom: top,
                winding: -winding,
            },
        }
    }

    fn rotated(self, by: Q) -> Self {
        match self {
            RouteSegment::Chord { disk, a, b } => RouteSegment::Chord {
                disk,
                a: frac(a + by),
                b: frac(b + by),
            },
            RouteSegment::Radial { disk, angle } => RouteSegment::Radial { disk, angle: frac(angle + by) },
            RouteSegment::Helix { top, bottom, winding } => RouteSegment::Helix {
                top: frac(top + by),
                bottom: frac(bottom + by),
                winding,
            },
        }
    }
}

/// Edge classes of `D_n`: top chords, bottom chords, helices between rim
/// vertices, and edges at a centre vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    #[serde(rename = "E_X")]
    EX,
    #[serde(rename = "E_XY")]
    EXY,
    #[serde(rename = "E_Y")]
    EY,
    #[serde(rename = "E_ZXY")]
    EZXY,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 4] = [EdgeClass::EX, EdgeClass::EXY, EdgeClass::EY, EdgeClass::EZXY];

    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::EX => "E_X",
            EdgeClass::EXY => "E_XY",
            EdgeClass::EY => "E_Y",
            EdgeClass::EZXY => "E_ZXY",
        }
    }

    fn mirrored(self) -> Self {
        match self {
            EdgeClass::EX => EdgeClass::EY,
            EdgeClass::EY => EdgeClass::EX,
            c => c,
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub u: VertexLabel,
    pub v: VertexLabel,
    pub class: EdgeClass,
    /// Segments in order from `u` to `v`.
    pub segments: Vec<RouteSegment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylindricalDrawing {
    pub n: usize,
    /// Rotation of the bottom rim sequence, in units of one rim step.
    pub offset: usize,
    /// Direction deciding which half a diameter chord is drawn over.
    pub diameter_bias: Q,
    pub graph: Graph,
    pub placement: BTreeMap<VertexLabel, CylinderPoint>,
    pub routes: Vec<Route>,
}

/// Number of rim vertices per disk.
pub fn rim_size(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n
    } else {
        n - 1
    }
}

/// Rim vertices with their angles, in rim order.
pub type RimSequence = Vec<(VertexLabel, Q)>;

/// Default rotation of the bottom sequence for `m` rim vertices per disk.
pub fn calibrated_offset(m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    (m + 2 - 2 * m.div_ceil(4)) % m
}

/// Rim sequences: top `a_0, b_1, a_2, b_3, ...` at `k/m`; bottom
/// `a_1, b_2, a_3, ..., b_0` at `(k + offset)/m`.
pub fn rim_layout(m: usize, offset: usize) -> (RimSequence, RimSequence) {
    let den = m as i64;
    let top = (0..m)
        .map(|k| {
            let label = if k % 2 == 0 { VertexLabel::a(k) } else { VertexLabel::b(k) };
            (label, q(k as i64, den))
        })
        .collect();
    let bottom = (0..m)
        .map(|k| {
            let label = if k % 2 == 0 {
                VertexLabel::a(k + 1)
            } else {
                VertexLabel::b((k + 1) % m)
            };
            (label, q(((k + offset) % m) as i64, den))
        })
        .collect();
    (top, bottom)
}

pub fn generate_dn(n: usize) -> Result<CylindricalDrawing, DrawingError> {
    generate_dn_with_offset(n, calibrated_offset(rim_size(n)))
}

/// Builds `D_n` with the bottom rim rotated by `offset` steps.
///
/// `n = 1` is accepted and yields two centre vertices and no edges.
pub fn generate_dn_with_offset(n: usize, offset: usize) -> Result<CylindricalDrawing, DrawingError> {
    if n == 0 {
        return Err(DrawingError::InvalidParameter("n must be at least 1".into()));
    }
    let m = rim_size(n);
    if m > 0 && offset >= m {
        return Err(DrawingError::InvalidParameter(format!("offset {offset} out of range 0..{m}")));
    }
    let graph = knn_minus_matching(n)?;
    let bias = q(1, 4 * m.max(1) as i64);
    let mut placement = BTreeMap::new();
    if m > 0 {
        let (top, bottom) = rim_layout(m, offset);
        for (label, angle) in top {
            placement.insert(label, CylinderPoint::rim(Disk::Top, angle));
        }
        for (label, angle) in bottom {
            placement.insert(label, CylinderPoint::rim(Disk::Bottom, angle));
        }
    }
    if n % 2 == 1 {
        placement.insert(VertexLabel::a(n - 1), CylinderPoint::Center(Disk::Top));
        placement.insert(VertexLabel::b(n - 1), CylinderPoint::Center(Disk::Bottom));
    }

    // Rim-to-rim edges first; centre edges are routed against them.
    let mut routes = Vec::with_capacity(graph.edge_count());
    let mut pending = Vec::new();
    for (u, v, _) in graph.edges() {
        let (pu, pv) = (placement[u], placement[v]);
        let route = match (pu, pv) {
            (CylinderPoint::Boundary { disk: du, angle: au }, CylinderPoint::Boundary { disk: dv, angle: av }) => {
                if du == dv {
                    let class = if du == Disk::Top { EdgeClass::EX } else { EdgeClass::EY };
                    Route { u: *u, v: *v, class, segments: vec![RouteSegment::Chord { disk: du, a: au, b: av }] }
                } else {
                    let segment = if du == Disk::Top {
                        RouteSegment::helix(au, av)
                    } else {
                        RouteSegment::helix(av, au)
                    };
                    Route { u: *u, v: *v, class: EdgeClass::EXY, segments: vec![segment] }
                }
            }
            _ => {
                pending.push((*u, *v));
                continue;
            }
        };
        routes.push(route);
    }

    let step = q(1, 2 * m.max(1) as i64);
    for (u, v) in pending {
        let segments = match (placement[&u], placement[&v]) {
            (CylinderPoint::Center(Disk::Top), CylinderPoint::Boundary { disk: Disk::Top, angle }) => {
                vec![RouteSegment::Radial { disk: Disk::Top, angle }]
            }
            (CylinderPoint::Center(Disk::Top), CylinderPoint::Boundary { disk: Disk::Bottom, angle }) => {
                let theta = best_departure(&routes, Disk::Top, angle, step, bias);
                vec![
                    RouteSegment::Radial { disk: Disk::Top, angle: theta },
                    RouteSegment::helix(theta, angle),
                ]
            }
            (CylinderPoint::Boundary { disk: Disk::Bottom, angle }, CylinderPoint::Center(Disk::Bottom)) => {
                vec![RouteSegment::Radial { disk: Disk::Bottom, angle }]
            }
            (CylinderPoint::Boundary { disk: Disk::Top, angle }, CylinderPoint::Center(Disk::Bottom)) => {
                let theta = best_departure(&routes, Disk::Bottom, angle, step, bias);
                vec![
                    RouteSegment::helix(angle, theta),
                    RouteSegment::Radial { disk: Disk::Bottom, angle: theta },
                ]
            }
            _ => unreachable!("centre edges join a centre to a rim vertex"),
        };
        routes.push(Route { u, v, class: EdgeClass::EZXY, segments });
    }
    routes.sort_by_key(|r| (r.u, r.v));

    let drawing = CylindricalDrawing { n, offset, diameter_bias: bias, graph, placement, routes };
    drawing.validate()?;
    Ok(drawing)
}

/// Picks the rim point half a step either side of `target` from which a
/// centre edge on `disk` continues by a helix to `target` (on the other
/// disk), minimising radial/chord plus helix/helix crossings with the
/// rim-to-rim edges. Ties go to the positive side.
fn best_departure(routes: &[Route], disk: Disk, target: Q, step: Q, bias: Q) -> Q {
    let cost = |theta: Q| -> usize {
        let helix = match disk {
            Disk::Top => RouteSegment::helix(theta, target),
            Disk::Bottom => RouteSegment::helix(target, theta),
        };
        let mut c = 0;
        for r in routes {
            for s in &r.segments {
                match *s {
                    RouteSegment::Chord { disk: d, a, b } if d == disk => {
                        let (start, len) = drawn_arc(a, b, bias);
                        c += inside_arc(theta, start, len) as usize;
                    }
                    RouteSegment::Helix { .. } => c += crate::count::helix_crossings(&helix, s),
                    _ => {}
                }
            }
        }
        c
    };
    let plus = frac(target + step);
    let minus = frac(target - step);
    if cost(minus) < cost(plus) {
        minus
    } else {
        plus
    }
}

impl CylindricalDrawing {
    /// Checks that every edge is routed exactly once, routes are connected
    /// chains from `u` to `v`, no bend sits on a vertex, and class tags match
    /// the endpoint positions.
    pub fn validate(&self) -> Result<(), DrawingError> {
        let bad = |r: &Route, reason: &str| DrawingError::MalformedRoute {
            edge: format!("{}{}", r.u, r.v),
            reason: reason.to_string(),
        };
        if self.routes.len() != self.graph.edge_count() {
            return Err(DrawingError::InvalidParameter(format!(
                "{} routes for {} edges",
                self.routes.len(),
                self.graph.edge_count()
            )));
        }
        for v in self.graph.vertices() {
            if !self.placement.contains_key(v) {
                return Err(DrawingError::InvalidParameter(format!("vertex {v} is not placed")));
            }
        }
        let mut seen_angles: BTreeMap<(Disk, Q), VertexLabel> = BTreeMap::new();
        for (v, p) in &self.placement {
            if let CylinderPoint::Boundary { disk, angle } = *p {
                if angle < Q::zero() || angle >= Q::one() {
                    return Err(DrawingError::InvalidParameter(format!("angle of {v} outside [0, 1)")));
                }
                if let Some(w) = seen_angles.insert((disk, angle), *v) {
                    return Err(DrawingError::InvalidParameter(format!("{v} and {w} coincide")));
                }
            }
        }
        let occupied: Vec<CylinderPoint> = self.placement.values().copied().collect();
        for r in &self.routes {
            if !self.graph.has_edge(&r.u, &r.v) {
                return Err(bad(r, "not an edge of the graph"));
            }
            if r.segments.is_empty() {
                return Err(bad(r, "empty route"));
            }
            let mut at = self.placement[&r.u];
            for (k, s) in r.segments.iter().enumerate() {
                if let RouteSegment::Chord { a, b, .. } = *s {
                    if frac(a) == frac(b) {
                        return Err(bad(r, "degenerate chord"));
                    }
                }
                if let RouteSegment::Helix { top, bottom, winding: w } = *s {
                    if w <= q(-1, 2) || w > q(1, 2) || frac(top + w) != frac(bottom) {
                        return Err(bad(r, "helix winding inconsistent with its endpoints"));
                    }
                }
                let [p0, p1] = s.endpoints();
                at = if p0 == at {
                    p1
                } else if p1 == at {
                    p0
                } else {
                    return Err(bad(r, "consecutive segments do not meet"));
                };
                if k + 1 < r.segments.len() && occupied.contains(&at) {
                    return Err(bad(r, "route passes through a vertex"));
                }
            }
            if at != self.placement[&r.v] {
                return Err(bad(r, "route does not end at its endpoint"));
            }
            if r.class != self.expected_class(r) {
                return Err(bad(r, "class tag does not match endpoint positions"));
            }
        }
        Ok(())
    }

    fn expected_class(&self, r: &Route) -> EdgeClass {
        match (self.placement[&r.u], self.placement[&r.v]) {
            (CylinderPoint::Center(_), _) | (_, CylinderPoint::Center(_)) => EdgeClass::EZXY,
            (p, w) if p.disk() != w.disk() => EdgeClass::EXY,
            (p, _) if p.disk() == Disk::Top => EdgeClass::EX,
            _ => EdgeClass::EY,
        }
    }

    pub fn route(&self, u: &VertexLabel, v: &VertexLabel) -> Option<&Route> {
        self.routes.iter().find(|r| (&r.u == u && &r.v == v) || (&r.u == v && &r.v == u))
    }

    pub fn class_sizes(&self) -> BTreeMap<EdgeClass, usize> {
        let mut out: BTreeMap<EdgeClass, usize> = EdgeClass::ALL.iter().map(|c| (*c, 0)).collect();
        for r in &self.routes {
            *out.get_mut(&r.class).unwrap() += 1;
        }
        out
    }

    /// Rim vertices of `disk` sorted by angle.
    pub fn rim(&self, disk: Disk) -> Vec<(VertexLabel, Q)> {
        let mut out: Vec<(VertexLabel, Q)> = self
            .placement
            .iter()
            .filter_map(|(v, p)| match *p {
                CylinderPoint::Boundary { disk: d, angle } if d == disk => Some((*v, angle)),
                _ => None,
            })
            .collect();
        out.sort_by_key(|&(_, a)| a);
        out
    }

    pub fn center(&self, disk: Disk) -> Option<VertexLabel> {
        self.placement
            .iter()
            .find(|(_, p)| **p == CylinderPoint::Center(disk))
            .map(|(v, _)| *v)
    }

    /// Same drawing with every angle (and the diameter bias) turned by `by`.
    pub fn rotated(&self, by: Q) -> CylindricalDrawing {
        let mut d = self.clone();
        d.diameter_bias = frac(d.diameter_bias + by);
        for p in d.placement.values_mut() {
            if let CylinderPoint::Boundary { angle, .. } = p {
                *angle = frac(*angle + by);
            }
        }
        for r in &mut d.routes {
            for s in &mut r.segments {
                *s = s.rotated(by);
            }
        }
        d
    }

    /// Same drawing with the two disks exchanged.
    pub fn mirrored(&self) -> CylindricalDrawing {
        let mut d = self.clone();
        for p in d.placement.values_mut() {
            *p = match *p {
                CylinderPoint::Boundary { disk, angle } => CylinderPoint::Boundary { disk: disk.other(), angle },
                CylinderPoint::Center(disk) => CylinderPoint::Center(disk.other()),
            };
        }
        for r in &mut d.routes {
            r.class = r.class.mirrored();
            for s in &mut r.segments {
                *s = s.mirrored();
            }
        }
        d
    }

    /// Number of rim vertices per disk.
    pub fn rim_size(&self) -> usize {
        rim_size(self.n)
    }

    pub(crate) fn step_denominator(&self) -> i64 {
        self.rim_size().max(1) as i64
    }
}
