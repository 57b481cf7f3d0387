//! Planar chart of a cylindrical drawing.
//!
//! The lateral surface becomes the strip `0 <= y <= 1` with `x` the angle
//! (period 1). The top disk minus its centre becomes the band `y >= 1`, the
//! bottom disk the band `y <= 0`; a centre vertex is a single point high in
//! its band that every radial reaches without leaving one period.
//!
//! Chords are flat arches over their drawn arc, nested by length. Radials
//! rise vertically past every arch and then converge on the centre.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::drawing::{drawn_arc, frac, q, CylinderPoint, CylindricalDrawing, Disk, EdgeClass, RouteSegment, Q};
use crate::graph::VertexLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn shifted(self, dx: Q) -> Self {
        Point::new(self.x + dx, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub u: VertexLabel,
    pub v: VertexLabel,
    pub class: EdgeClass,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpandedDrawing {
    /// Horizontal period of the chart, if it is a strip.
    pub period: Option<Q>,
    pub points: BTreeMap<VertexLabel, Point>,
    pub polylines: Vec<Polyline>,
}

impl ExpandedDrawing {
    /// Checks polyline endpoints against vertex points (up to the period) and
    /// that distinct vertices do not coincide.
    pub fn validate(&self) -> Result<(), String> {
        let same = |a: &Point, b: &Point| -> bool {
            match self.period {
                Some(p) => a.y == b.y && ((a.x - b.x) / p).is_integer(),
                None => a == b,
            }
        };
        let pts: Vec<(&VertexLabel, &Point)> = self.points.iter().collect();
        for (i, (u, a)) in pts.iter().enumerate() {
            for (v, b) in &pts[i + 1..] {
                if same(a, b) {
                    return Err(format!("vertices {u} and {v} coincide"));
                }
            }
        }
        for l in &self.polylines {
            let (Some(pu), Some(pv)) = (self.points.get(&l.u), self.points.get(&l.v)) else {
                return Err(format!("polyline {}{} has an unknown endpoint", l.u, l.v));
            };
            let (first, last) = match (l.points.first(), l.points.last()) {
                (Some(f), Some(e)) if l.points.len() >= 2 => (f, e),
                _ => return Err(format!("polyline {}{} is too short", l.u, l.v)),
            };
            if !same(first, pu) || !same(last, pv) {
                return Err(format!("polyline {}{} does not join its endpoints", l.u, l.v));
            }
        }
        Ok(())
    }
}

/// Scales of the chart for a drawing with `m` rim vertices per disk.
#[derive(Clone, Debug)]
pub struct ChartScales {
    /// Horizontal run of an arch leg.
    pub sigma: Q,
    /// Height at which radials turn towards the centre.
    pub radial_turn: Q,
    /// Height of the centre vertex.
    pub centre: Q,
    /// Gap between consecutive arch levels, per disk.
    pub level_gap: BTreeMap<Disk, Q>,
}

/// Maps a height inside `disk` (1 on the rim, growing inwards) to chart `y`.
pub fn disk_y(disk: Disk, depth: Q) -> Q {
    match disk {
        Disk::Top => depth,
        Disk::Bottom => Q::one() - depth,
    }
}

fn rim_y(disk: Disk) -> Q {
    disk_y(disk, Q::one())
}

/// Lifts `x` into the open interval `(c - 1/2, c + 1/2)` (by an integer).
fn lift_near(x: Q, c: Q) -> Q {
    c + frac(x - c + q(1, 2)) - q(1, 2)
}

/// Chooses the centre abscissa so the radial angles split evenly to either
/// side and none is antipodal to it.
pub fn centre_abscissa(angles: &[Q]) -> Q {
    if angles.is_empty() {
        return Q::zero();
    }
    let mut critical: Vec<Q> = angles.iter().flat_map(|&a| [frac(a), frac(a + q(1, 2))]).collect();
    critical.sort();
    critical.dedup();
    let mut best: Option<(usize, Q)> = None;
    for (k, &lo) in critical.iter().enumerate() {
        let hi = if k + 1 < critical.len() { critical[k + 1] } else { critical[0] + 1 };
        let c = frac((lo + hi) / 2);
        let left = angles.iter().filter(|&&a| frac(a - c) > q(1, 2)).count();
        let right = angles.len() - left;
        let imbalance = left.abs_diff(right);
        if best.is_none_or(|(b, _)| imbalance < b) {
            best = Some((imbalance, c));
        }
    }
    best.unwrap().1
}

struct Chart {
    scales: ChartScales,
    /// Arch height of each chord, keyed by `(disk, start, len)`.
    levels: BTreeMap<(Disk, Q, Q), Q>,
    centres: BTreeMap<Disk, Q>,
}

impl Chart {
    fn new(d: &CylindricalDrawing) -> Self {
        let m = d.step_denominator();
        let mut arcs: BTreeMap<Disk, Vec<(Q, Q)>> = BTreeMap::new();
        let mut radial_angles: BTreeMap<Disk, Vec<Q>> = BTreeMap::new();
        for r in &d.routes {
            for s in &r.segments {
                match *s {
                    RouteSegment::Chord { disk, a, b } => {
                        let (start, len) = drawn_arc(a, b, d.diameter_bias);
                        arcs.entry(disk).or_default().push((len, start));
                    }
                    RouteSegment::Radial { disk, angle } => radial_angles.entry(disk).or_default().push(angle),
                    RouteSegment::Helix { .. } => {}
                }
            }
        }
        let mut levels = BTreeMap::new();
        let mut level_gap = BTreeMap::new();
        for disk in [Disk::Top, Disk::Bottom] {
            let mut list = arcs.remove(&disk).unwrap_or_default();
            list.sort();
            let gap = q(1, 4 * m * (list.len() as i64 + 1));
            for (rank, (len, start)) in list.into_iter().enumerate() {
                levels.insert((disk, start, len), Q::one() + gap * (rank as i64 + 1));
            }
            level_gap.insert(disk, gap);
        }
        let centres = [Disk::Top, Disk::Bottom]
            .into_iter()
            .map(|disk| (disk, centre_abscissa(radial_angles.get(&disk).map(Vec::as_slice).unwrap_or(&[]))))
            .collect();
        let radial_turn = Q::one() + q(1, 2 * m);
        let scales = ChartScales {
            sigma: q(1, 4 * m),
            radial_turn,
            centre: radial_turn + 1,
            level_gap,
        };
        Chart { scales, levels, centres }
    }

    fn vertex_point(&self, p: &CylinderPoint) -> Point {
        match *p {
            CylinderPoint::Boundary { disk, angle } => Point::new(angle, rim_y(disk)),
            CylinderPoint::Center(disk) => Point::new(self.centres[&disk], disk_y(disk, self.scales.centre)),
        }
    }

    /// Appends the points of `s`, entered at `at` (already in `pts`).
    fn walk(&self, s: &RouteSegment, bias: Q, pts: &mut Vec<Point>) {
        let at = *pts.last().unwrap();
        let sc = &self.scales;
        match *s {
            RouteSegment::Chord { disk, a, b } => {
                let (start, len) = drawn_arc(a, b, bias);
                let h = disk_y(disk, self.levels[&(disk, start, len)]);
                let dir = if frac(at.x) == start { Q::one() } else { -Q::one() };
                pts.push(Point::new(at.x + dir * sc.sigma, h));
                pts.push(Point::new(at.x + dir * (len - sc.sigma), h));
                pts.push(Point::new(at.x + dir * len, rim_y(disk)));
            }
            RouteSegment::Radial { disk, angle } => {
                let c = self.centres[&disk];
                let turn = disk_y(disk, sc.radial_turn);
                if at.y == rim_y(disk) {
                    let c_lift = lift_near(c, at.x);
                    pts.push(Point::new(at.x, turn));
                    pts.push(Point::new(c_lift, disk_y(disk, sc.centre)));
                } else {
                    let x = lift_near(angle, at.x);
                    pts.push(Point::new(x, turn));
                    pts.push(Point::new(x, rim_y(disk)));
                }
            }
            RouteSegment::Helix { winding, .. } => {
                if at.y == rim_y(Disk::Top) {
                    pts.push(Point::new(at.x + winding, rim_y(Disk::Bottom)));
                } else {
                    pts.push(Point::new(at.x - winding, rim_y(Disk::Top)));
                }
            }
        }
    }
}

/// Scales used by `expand_dn` for this drawing.
pub fn chart_scales(d: &CylindricalDrawing) -> ChartScales {
    Chart::new(d).scales
}

/// Realizes `d` in the periodic chart. Each polyline runs from `u` to `v`.
pub fn expand_dn(d: &CylindricalDrawing) -> ExpandedDrawing {
    let chart = Chart::new(d);
    let points = d.placement.iter().map(|(v, p)| (*v, chart.vertex_point(p))).collect();
    let polylines = d
        .routes
        .iter()
        .map(|r| {
            let mut pts = vec![chart.vertex_point(&d.placement[&r.u])];
            for s in &r.segments {
                chart.walk(s, d.diameter_bias, &mut pts);
            }
            Polyline { u: r.u, v: r.v, class: r.class, points: pts }
        })
        .collect();
    ExpandedDrawing { period: Some(Q::one()), points, polylines }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::generate_dn;

    #[test]
    fn centre_balance() {
        let angles = [q(0, 1), q(1, 8), q(1, 4), q(5, 8)];
        let c = centre_abscissa(&angles);
        let left = angles.iter().filter(|&&a| frac(a - c) > q(1, 2)).count();
        assert_eq!(left, 2);
        for a in angles {
            assert_ne!(frac(a - c), q(1, 2));
            assert_ne!(frac(a - c), Q::zero());
        }
    }

    #[test]
    fn lift() {
        assert_eq!(lift_near(q(9, 10), q(1, 10)), q(-1, 10));
        assert_eq!(lift_near(q(3, 10), q(1, 10)), q(3, 10));
    }

    #[test]
    fn charts_are_valid() {
        for n in 1..12 {
            let e = expand_dn(&generate_dn(n).unwrap());
            e.validate().unwrap();
            assert_eq!(e.polylines.len(), n * (n - 1));
        }
    }

    #[test]
    fn arches_stay_below_radial_turn() {
        let d = generate_dn(9).unwrap();
        let s = chart_scales(&d);
        let e = expand_dn(&d);
        for l in e.polylines.iter().filter(|l| l.class == EdgeClass::EX) {
            for p in &l.points {
                assert!(p.y >= Q::one() && p.y < Q::one() + s.sigma);
            }
        }
    }
}
