//! Vertex-split drawings of `K_n x P_3` (width 2) and `K_n x C_4` (width 4).
//!
//! Every edge of `D_n` becomes a bunch of parallel tracks inside a thin
//! corridor around its chart polyline. Each split vertex `v` becomes two
//! points `v +- delta * axis`, and the tracks of a bunch are wired to them in
//! a small fan (the mesh). Scales satisfy `delta << eps << rho`, with `eps`
//! the track spacing and `rho` the mesh radius.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::drawing::{drawn_arc, generate_dn, CylinderPoint, CylindricalDrawing, Disk, DrawingError, RouteSegment, Q};
use crate::expanded::{chart_scales, expand_dn, ExpandedDrawing, Point, Polyline};
use crate::graph::{Family, VertexLabel};

/// Mesh at one split vertex: `left` and `right` bunches on either side of
/// the split axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshSpec {
    pub vertex: VertexLabel,
    pub left: usize,
    pub right: usize,
    pub width: usize,
    /// Bunches at this vertex drawn without their self crossing.
    pub self_crossing_reductions: usize,
}

#[derive(Clone, Debug)]
pub struct SplitDrawing {
    pub width: usize,
    pub base: CylindricalDrawing,
    pub meshes: Vec<MeshSpec>,
    pub expanded: ExpandedDrawing,
}

type R = BigRational;

#[derive(Clone, Debug, PartialEq)]
struct V2 {
    x: R,
    y: R,
}

impl V2 {
    fn new(x: R, y: R) -> Self {
        V2 { x, y }
    }
    fn from_point(p: &Point) -> Self {
        V2::new(big(p.x), big(p.y))
    }
    fn add(&self, o: &V2) -> V2 {
        V2::new(&self.x + &o.x, &self.y + &o.y)
    }
    fn sub(&self, o: &V2) -> V2 {
        V2::new(&self.x - &o.x, &self.y - &o.y)
    }
    fn scale(&self, k: &R) -> V2 {
        V2::new(&self.x * k, &self.y * k)
    }
    fn cross(&self, o: &V2) -> R {
        &self.x * &o.y - &self.y * &o.x
    }
    /// Scaled to unit max-norm.
    fn unit(&self) -> V2 {
        let m = if self.x.abs() > self.y.abs() { self.x.abs() } else { self.y.abs() };
        self.scale(&m.recip())
    }
    /// Left normal of the unit direction.
    fn left_normal(&self) -> V2 {
        let u = self.unit();
        V2::new(-u.y, u.x)
    }
    fn flip_y(&self) -> V2 {
        V2::new(self.x.clone(), -&self.y)
    }
}

fn big(x: Q) -> R {
    R::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn ratio(num: i64, den: i64) -> R {
    R::new(BigInt::from(num), BigInt::from(den))
}

/// Intersection of the lines `p + s*d` and `q + t*e`, or `None` if parallel.
fn meet(p: &V2, d: &V2, q: &V2, e: &V2) -> Option<V2> {
    let den = d.cross(e);
    if den.is_zero() {
        return None;
    }
    let s = q.sub(p).cross(e) / den;
    Some(p.add(&d.scale(&s)))
}

/// Grid denominator for the rounded output coordinates.
const GRID: i64 = 1 << 48;

fn snap(x: &R) -> Result<Q, DrawingError> {
    let k = (x * R::from_integer(BigInt::from(GRID))).round().to_integer();
    let k: i64 = k
        .try_into()
        .map_err(|_| DrawingError::InvalidParameter("coordinate out of grid range".into()))?;
    Ok(Q::new(k, GRID))
}

fn snap_point(p: &V2) -> Result<Point, DrawingError> {
    Ok(Point::new(snap(&p.x)?, snap(&p.y)?))
}

/// One end of a base edge at a vertex.
struct End {
    route: usize,
    /// Direction of the first segment away from the vertex.
    away: V2,
    /// Whether the base polyline starts here.
    is_start: bool,
}

enum Axis {
    /// Split along `u`; tracks go to the split point on their side.
    Plain(V2),
    /// Split along the first segment of `route`; that bunch's inner tracks
    /// go to the forward point.
    Straddle(V2, usize),
}

impl Axis {
    fn dir(&self) -> &V2 {
        match self {
            Axis::Plain(u) | Axis::Straddle(u, _) => u,
        }
    }
}

fn split_labels(v: &VertexLabel, width: usize) -> Option<(VertexLabel, VertexLabel)> {
    match (v.tag, width) {
        (Family::A, _) => Some((VertexLabel::layer(0, v.index), VertexLabel::layer(2, v.index))),
        (Family::B, 4) => Some((VertexLabel::layer(1, v.index), VertexLabel::layer(3, v.index))),
        _ => None,
    }
}

/// Chooses the split axis at a vertex whose ends are `ends`.
///
/// Rim vertices split horizontally unless that leaves one side with more
/// than half the bunches, in which case the axis is tilted between the two
/// lowest directions into the disk. With `straddle`, an even-`n` rim vertex
/// instead splits along its chord to the next rim vertex on the right.
fn choose_axis(base: &CylindricalDrawing, point: &CylinderPoint, ends: &[End], straddle: bool) -> Result<Axis, DrawingError> {
    let disk = match *point {
        CylinderPoint::Center(_) => return Ok(Axis::Plain(V2::new(R::zero(), R::one()))),
        CylinderPoint::Boundary { disk, .. } => disk,
    };
    let local = |d: &V2| if disk == Disk::Top { d.clone() } else { d.flip_y() };
    if straddle {
        let step = ratio(1, base.step_denominator());
        for e in ends {
            let r = &base.routes[e.route];
            if let [RouteSegment::Chord { a, b, .. }] = r.segments[..] {
                let (_, len) = drawn_arc(a, b, base.diameter_bias);
                if big(len) == step && e.away.x.is_positive() {
                    return Ok(Axis::Straddle(e.away.clone(), e.route));
                }
            }
        }
    }
    let target = ends.len() - ends.len() / 2;
    let horizontal = V2::new(R::one(), R::zero());
    let upper: Vec<V2> = ends.iter().map(|e| local(&e.away)).filter(|d| d.y.is_positive()).collect();
    if upper.len() == target {
        return Ok(Axis::Plain(horizontal));
    }
    if upper.len() != target + 1 || upper.len() < 2 {
        return Err(DrawingError::InvalidParameter(format!(
            "cannot balance a vertex with {} of {} bunches above the rim",
            upper.len(),
            ends.len()
        )));
    }
    let mut sorted = upper;
    sorted.sort_by(|p, q| {
        let c = p.cross(q);
        if c.is_positive() {
            std::cmp::Ordering::Less
        } else if c.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let u = sorted[0].unit().add(&sorted[1].unit());
    Ok(Axis::Plain(local(&u)))
}

struct Params {
    rho: R,
    eps: R,
    delta: R,
}

/// Builds `D'_n` (width 2) or `D''_n` (width 4).
pub fn generate_split_drawing(n: usize, width: usize) -> Result<SplitDrawing, DrawingError> {
    if width != 2 && width != 4 {
        return Err(DrawingError::InvalidParameter(format!("bunch width must be 2 or 4, got {width}")));
    }
    let base = generate_dn(n)?;
    let chart = expand_dn(&base);
    let scales = chart_scales(&base);
    let sigma = big(scales.sigma);
    let gap = scales.level_gap.values().map(|g| big(*g)).min().unwrap();
    let rho = &gap / R::from_integer(8.into());
    let eps = &rho * &gap / (&sigma * R::from_integer(64.into()));
    let delta = &eps / R::from_integer(64.into());
    let params = Params { rho, eps, delta };

    let lines: Vec<Vec<V2>> = chart
        .polylines
        .iter()
        .map(|l| l.points.iter().map(V2::from_point).collect())
        .collect();

    let mut ends: BTreeMap<VertexLabel, Vec<End>> = BTreeMap::new();
    for (i, (r, pts)) in base.routes.iter().zip(&lines).enumerate() {
        let k = pts.len() - 1;
        ends.entry(r.u).or_default().push(End {
            route: i,
            away: pts[1].sub(&pts[0]),
            is_start: true,
        });
        ends.entry(r.v).or_default().push(End {
            route: i,
            away: pts[k - 1].sub(&pts[k]),
            is_start: false,
        });
    }

    let straddle_all = width == 4 && n.is_multiple_of(2);
    let mut axes: BTreeMap<VertexLabel, Axis> = BTreeMap::new();
    let mut meshes = Vec::new();
    let mut points = BTreeMap::new();
    for v in base.graph.vertices() {
        let here = ends.get(v).map(Vec::as_slice).unwrap_or(&[]);
        let canonical = V2::from_point(&chart.points[v]);
        let Some((plus, minus)) = split_labels(v, width) else {
            points.insert(VertexLabel::layer(1, v.index), snap_point(&canonical)?);
            continue;
        };
        let axis = choose_axis(&base, &base.placement[v], here, straddle_all)?;
        let u = axis.dir().unit();
        let mut left = 0;
        let mut right = 0;
        let mut reductions = 0;
        for e in here {
            match &axis {
                Axis::Straddle(_, r) if *r == e.route => {
                    left += 1;
                    reductions += 1;
                }
                _ => {
                    if u.cross(&e.away).is_positive() {
                        left += 1;
                    } else {
                        right += 1;
                    }
                }
            }
        }
        meshes.push(MeshSpec { vertex: *v, left, right, width, self_crossing_reductions: reductions });
        let off = u.scale(&params.delta);
        points.insert(plus, snap_point(&canonical.add(&off))?);
        points.insert(minus, snap_point(&canonical.sub(&off))?);
        axes.insert(*v, axis);
    }

    let offsets: Vec<R> = match width {
        2 => vec![ratio(-1, 2), ratio(1, 2)],
        _ => vec![ratio(-3, 2), ratio(-1, 2), ratio(1, 2), ratio(3, 2)],
    };

    let mut polylines = Vec::new();
    for (i, (r, pts)) in base.routes.iter().zip(&lines).enumerate() {
        let tracks = corridor(pts, &offsets, &params);
        let a_side = end_wiring(&axes[&r.u], &ends[&r.u], i, true, &offsets)?;
        let b_side = match axes.get(&r.v) {
            Some(axis) => Some(end_wiring(axis, &ends[&r.v], i, false, &offsets)?),
            None => None,
        };
        let b_side = match b_side {
            Some(mut b) if b == a_side || b.iter().zip(&a_side).all(|(x, y)| x != y) => {
                // Same partition at both ends: cross the two inner tracks at
                // the `b` end so the four label pairs are distinct.
                let inner = |t: usize| offsets[t].abs() == ratio(1, 2);
                let (p, m): (Vec<usize>, Vec<usize>) = (0..offsets.len()).filter(|&t| inner(t)).partition(|&t| b[t]);
                if p.len() != 1 || m.len() != 1 {
                    return Err(DrawingError::InvalidParameter("inner tracks on one side".into()));
                }
                b.swap(p[0], m[0]);
                Some(b)
            }
            other => other,
        };
        let (a_plus, a_minus) = split_labels(&r.u, width).unwrap();
        let start = &pts[0];
        let end = &pts[pts.len() - 1];
        let ua = axes[&r.u].dir().unit().scale(&params.delta);
        for (t, track) in tracks.into_iter().enumerate() {
            let (ulabel, upoint) = if a_side[t] { (a_plus, start.add(&ua)) } else { (a_minus, start.sub(&ua)) };
            let (vlabel, vpoint) = match (&b_side, split_labels(&r.v, width)) {
                (Some(b), Some((b_plus, b_minus))) => {
                    let ub = axes[&r.v].dir().unit().scale(&params.delta);
                    if b[t] {
                        (b_plus, end.add(&ub))
                    } else {
                        (b_minus, end.sub(&ub))
                    }
                }
                _ => (VertexLabel::layer(1, r.v.index), end.clone()),
            };
            let mut out = Vec::with_capacity(track.len() + 2);
            out.push(snap_point(&upoint)?);
            for p in &track {
                out.push(snap_point(p)?);
            }
            out.push(snap_point(&vpoint)?);
            polylines.push(Polyline { u: ulabel, v: vlabel, class: r.class, points: out });
        }
    }
    polylines.sort_by_key(|l| (l.u, l.v));

    Ok(SplitDrawing {
        width,
        base,
        meshes,
        expanded: ExpandedDrawing { period: chart.period, points, polylines },
    })
}

/// Track interiors: for each offset, the mesh-boundary point at the start,
/// the offset bends, and the mesh-boundary point at the end.
fn corridor(pts: &[V2], offsets: &[R], p: &Params) -> Vec<Vec<V2>> {
    let dirs: Vec<V2> = pts.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let normals: Vec<V2> = dirs.iter().map(V2::left_normal).collect();
    let k = dirs.len();
    offsets
        .iter()
        .map(|o| {
            let shift = |i: usize| normals[i].scale(&(o * &p.eps));
            let mut out = Vec::with_capacity(k + 1);
            out.push(pts[0].add(&dirs[0].unit().scale(&p.rho)).add(&shift(0)));
            for i in 1..k {
                let a = pts[i - 1].add(&shift(i - 1));
                let b = pts[i].add(&shift(i));
                out.push(meet(&a, &dirs[i - 1], &b, &dirs[i]).unwrap_or(b));
            }
            out.push(pts[k].sub(&dirs[k - 1].unit().scale(&p.rho)).add(&shift(k - 1)));
            out
        })
        .collect()
}

/// For each track of route `route`, whether it is wired to the `+` split
/// point at the given end.
fn end_wiring(axis: &Axis, ends: &[End], route: usize, at_start: bool, offsets: &[R]) -> Result<Vec<bool>, DrawingError> {
    let end = ends
        .iter()
        .find(|e| e.route == route && e.is_start == at_start)
        .expect("every route has both ends registered");
    match axis {
        Axis::Straddle(_, r) if *r == route => Ok(offsets.iter().map(|o| o.abs() == ratio(1, 2)).collect()),
        _ => {
            let side = end.away.cross(axis.dir());
            if side.is_zero() {
                return Err(DrawingError::InvalidParameter("split axis parallel to a bunch".into()));
            }
            // Offsets are measured to the left of the route direction, which
            // is the away direction at the start and its reverse at the end.
            let plus_left = side.is_positive();
            Ok(offsets
                .iter()
                .map(|o| {
                    let left_of_away = if at_start { o.is_positive() } else { o.is_negative() };
                    left_of_away == plus_left
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_shapes() {
        let s = generate_split_drawing(5, 2).unwrap();
        assert_eq!(s.meshes.len(), 5);
        assert!(s.meshes.iter().all(|m| m.left == 2 && m.right == 2));
        let s = generate_split_drawing(6, 2).unwrap();
        for m in &s.meshes {
            let mut lr = [m.left, m.right];
            lr.sort();
            assert_eq!(lr, [2, 3]);
        }
        let s = generate_split_drawing(4, 4).unwrap();
        assert_eq!(s.meshes.iter().map(|m| m.self_crossing_reductions).sum::<usize>(), 8);
        let s = generate_split_drawing(2, 4).unwrap();
        assert_eq!(s.meshes.iter().map(|m| m.self_crossing_reductions).sum::<usize>(), 2);
        let s = generate_split_drawing(5, 4).unwrap();
        assert_eq!(s.meshes.iter().map(|m| m.self_crossing_reductions).sum::<usize>(), 0);
    }

    #[test]
    fn bunch_sizes() {
        let s = generate_split_drawing(3, 4).unwrap();
        assert_eq!(s.expanded.polylines.len(), 24);
        let s = generate_split_drawing(4, 2).unwrap();
        assert_eq!(s.expanded.polylines.len(), 24);
        assert!(generate_split_drawing(4, 3).is_err());
    }

    #[test]
    fn expanded_points_are_consistent() {
        for n in 1..7 {
            for w in [2, 4] {
                let s = generate_split_drawing(n, w).unwrap();
                s.expanded.validate().unwrap();
            }
        }
    }
}
