//! Exact crossing counters.
//!
//! `count_drawing` works on cylindrical routes with combinatorial predicates;
//! `count_expanded` intersects planar polylines on an integer grid. The two
//! share no code beyond the data types.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::drawing::{drawn_arc, frac, inside_arc, CylindricalDrawing, Disk, DrawingError, EdgeClass, RouteSegment, Q};
use crate::expanded::{ExpandedDrawing, Point};
use crate::graph::VertexLabel;
use crate::split::MeshSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("identical chords ({0}, {1})")]
    IdenticalChords(Q, Q),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("degenerate position: {0}")]
    Degenerate(String),
    #[error("coordinates too large for exact integer predicates")]
    Overflow,
    #[error("mesh coverage: {0}")]
    Coverage(String),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
}

/// True iff the chords `(a1, b1)` and `(a2, b2)` of one circle strictly
/// interleave. Chords sharing an endpoint never cross.
pub fn chords_cross(c1: (Q, Q), c2: (Q, Q)) -> Result<bool, CountError> {
    let (a1, b1) = (frac(c1.0), frac(c1.1));
    let (a2, b2) = (frac(c2.0), frac(c2.1));
    if (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2) {
        return Err(CountError::IdenticalChords(a1, b1));
    }
    if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
        return Ok(false);
    }
    let len = frac(b1 - a1);
    Ok(inside_arc(a2, a1, len) != inside_arc(b2, a1, len))
}

/// Number of crossings between two helices on the cylinder.
///
/// Lifting both to the strip `R x [0, 1]`, the lift of `h1` meets the
/// translate of `h2` by `k` iff the horizontal gap between them changes sign
/// strictly from the top rim to the bottom rim. A zero gap is a shared
/// endpoint. Non-helix segments give 0.
pub fn helix_crossings(h1: &RouteSegment, h2: &RouteSegment) -> usize {
    let (RouteSegment::Helix { top: t1, winding: w1, .. }, RouteSegment::Helix { top: t2, winding: w2, .. }) = (*h1, *h2)
    else {
        return 0;
    };
    let mut c = 0;
    for k in -2..=2 {
        let k = Q::from_integer(k);
        let g_top = t1 - t2 - k;
        let g_bottom = t1 + w1 - t2 - k - w2;
        if (g_top * g_bottom).is_negative() {
            c += 1;
        }
    }
    c
}

/// True iff the radial to rim angle `theta` crosses the chord `(a, b)` of the
/// same disk, i.e. `theta` lies strictly inside the drawn arc.
pub fn radial_crosses_chord(theta: Q, chord: (Q, Q), bias: Q) -> bool {
    let (start, len) = drawn_arc(chord.0, chord.1, bias);
    inside_arc(theta, start, len)
}

/// Crossing total plus the tally for each unordered pair of edge classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingBreakdown {
    pub total: u64,
    pub per_class_pair: BTreeMap<(EdgeClass, EdgeClass), u64>,
}

impl CrossingBreakdown {
    fn empty() -> Self {
        let mut per_class_pair = BTreeMap::new();
        for (i, a) in EdgeClass::ALL.iter().enumerate() {
            for b in &EdgeClass::ALL[i..] {
                per_class_pair.insert((*a, *b), 0);
            }
        }
        CrossingBreakdown { total: 0, per_class_pair }
    }

    fn add(&mut self, a: EdgeClass, b: EdgeClass, k: u64) {
        if k == 0 {
            return;
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        *self.per_class_pair.get_mut(&key).unwrap() += k;
        self.total += k;
    }

    /// Breakdown with the given pair counts, zero elsewhere.
    pub fn from_pairs<I: IntoIterator<Item = ((EdgeClass, EdgeClass), u64)>>(pairs: I) -> Self {
        let mut c = Self::empty();
        for ((a, b), v) in pairs {
            *c.per_class_pair.get_mut(&(a.min(b), a.max(b))).unwrap() += v;
            c.total += v;
        }
        c
    }

    pub fn pair(&self, a: EdgeClass, b: EdgeClass) -> u64 {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.per_class_pair[&key]
    }

    /// Key used in reports, e.g. `E_X|E_XY`.
    pub fn pair_key(a: EdgeClass, b: EdgeClass) -> String {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        format!("{}|{}", a.name(), b.name())
    }

    /// First class pair whose tally differs from `other`.
    pub fn first_difference(&self, other: &CrossingBreakdown) -> Option<(EdgeClass, EdgeClass)> {
        self.per_class_pair
            .iter()
            .find(|(k, v)| other.per_class_pair.get(k) != Some(v))
            .map(|(k, _)| *k)
    }
}

impl Serialize for CrossingBreakdown {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: BTreeMap<String, u64> = self
            .per_class_pair
            .iter()
            .map(|(&(a, b), &v)| (Self::pair_key(a, b), v))
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("total", &self.total)?;
        map.serialize_entry("per_class_pair", &pairs)?;
        map.end()
    }
}

/// Counts the crossings of a cylindrical drawing route pair by route pair.
pub fn count_drawing(d: &CylindricalDrawing) -> Result<CrossingBreakdown, CountError> {
    d.validate()?;
    let bias = d.diameter_bias;
    let mut chords: BTreeMap<Disk, Vec<(usize, Q, Q)>> = BTreeMap::new();
    let mut radials: BTreeMap<Disk, Vec<(usize, Q)>> = BTreeMap::new();
    let mut helices: Vec<(usize, RouteSegment)> = Vec::new();
    for (i, r) in d.routes.iter().enumerate() {
        for s in &r.segments {
            match *s {
                RouteSegment::Chord { disk, a, b } => chords.entry(disk).or_default().push((i, a, b)),
                RouteSegment::Radial { disk, angle } => radials.entry(disk).or_default().push((i, angle)),
                RouteSegment::Helix { .. } => helices.push((i, *s)),
            }
        }
    }
    let class = |i: usize| d.routes[i].class;
    let mut out = CrossingBreakdown::empty();

    for disk in [Disk::Top, Disk::Bottom] {
        let cs = chords.get(&disk).map(Vec::as_slice).unwrap_or(&[]);
        for (x, &(i, a1, b1)) in cs.iter().enumerate() {
            for &(j, a2, b2) in &cs[x + 1..] {
                if i != j && chords_cross((a1, b1), (a2, b2))? {
                    out.add(class(i), class(j), 1);
                }
            }
        }
        // Radials all end at the centre, so they never cross one another.
        for &(i, theta) in radials.get(&disk).map(Vec::as_slice).unwrap_or(&[]) {
            for &(j, a, b) in cs {
                if i != j && radial_crosses_chord(theta, (a, b), bias) {
                    out.add(class(i), class(j), 1);
                }
            }
        }
    }
    for (x, (i, h1)) in helices.iter().enumerate() {
        for (j, h2) in &helices[x + 1..] {
            if i != j {
                out.add(class(*i), class(*j), helix_crossings(h1, h2) as u64);
            }
        }
    }
    Ok(out)
}

type IPt = (i128, i128);

fn orient(a: IPt, b: IPt, c: IPt) -> i128 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn on_segment(p: IPt, a: IPt, b: IPt) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

enum Contact {
    None,
    Cross,
    Touch(IPt),
}

fn contact(a: IPt, b: IPt, c: IPt, d: IPt) -> Result<Contact, String> {
    let (o1, o2) = (orient(c, d, a), orient(c, d, b));
    let (o3, o4) = (orient(a, b, c), orient(a, b, d));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(Contact::Cross);
    }
    if o1 == 0 && o2 == 0 {
        // Collinear: the projections may overlap in a segment or a point.
        let key = |p: IPt| if a.0 != b.0 { p.0 } else { p.1 };
        let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
        let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
        let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
        if lo > hi {
            return Ok(Contact::None);
        }
        if lo < hi {
            return Err(format!("collinear overlap between {a:?}-{b:?} and {c:?}-{d:?}"));
        }
        let p = [a, b].into_iter().find(|&p| key(p) == lo).unwrap();
        return Ok(Contact::Touch(p));
    }
    for (o, p, s, t) in [(o1, a, c, d), (o2, b, c, d), (o3, c, a, b), (o4, d, a, b)] {
        if o == 0 && on_segment(p, s, t) {
            return Ok(Contact::Touch(p));
        }
    }
    Ok(Contact::None)
}

struct Grid {
    lines: Vec<Vec<IPt>>,
    period: Option<i128>,
}

const COORD_LIMIT: i128 = 1 << 60;

fn to_grid(e: &ExpandedDrawing) -> Result<Grid, CountError> {
    let mut scale: i128 = 1;
    let mut absorb = |v: &Q| -> Result<(), CountError> {
        let d = *v.denom() as i128;
        scale = scale.lcm(&d);
        if scale > COORD_LIMIT {
            return Err(CountError::Overflow);
        }
        Ok(())
    };
    for l in &e.polylines {
        for p in &l.points {
            absorb(&p.x)?;
            absorb(&p.y)?;
        }
    }
    if let Some(p) = &e.period {
        absorb(p)?;
    }
    let conv = |v: &Q| -> Result<i128, CountError> {
        let x = (*v.numer() as i128)
            .checked_mul(scale / *v.denom() as i128)
            .ok_or(CountError::Overflow)?;
        if x.abs() >= COORD_LIMIT {
            return Err(CountError::Overflow);
        }
        Ok(x)
    };
    let mut lines = Vec::with_capacity(e.polylines.len());
    for l in &e.polylines {
        let pts = l
            .points
            .iter()
            .map(|p: &Point| Ok((conv(&p.x)?, conv(&p.y)?)))
            .collect::<Result<Vec<_>, CountError>>()?;
        lines.push(pts);
    }
    let period = match &e.period {
        Some(p) if p.is_zero() || p.is_negative() => {
            return Err(CountError::Degenerate("period must be positive".into()));
        }
        Some(p) => Some(conv(p)?),
        None => None,
    };
    Ok(Grid { lines, period })
}

fn bbox(pts: &[IPt]) -> (i128, i128, i128, i128) {
    let xs = pts.iter().map(|p| p.0);
    let ys = pts.iter().map(|p| p.1);
    (xs.clone().min().unwrap(), xs.max().unwrap(), ys.clone().min().unwrap(), ys.max().unwrap())
}

fn crossings_between(p: &[IPt], qs: &[IPt], shift: i128) -> Result<u64, String> {
    let q: Vec<IPt> = qs.iter().map(|&(x, y)| (x + shift, y)).collect();
    let ends_p = [p[0], p[p.len() - 1]];
    let ends_q = [q[0], q[q.len() - 1]];
    let mut count = 0;
    for s in p.windows(2) {
        let (sx0, sx1) = (s[0].0.min(s[1].0), s[0].0.max(s[1].0));
        let (sy0, sy1) = (s[0].1.min(s[1].1), s[0].1.max(s[1].1));
        for t in q.windows(2) {
            if t[0].0.max(t[1].0) < sx0 || t[0].0.min(t[1].0) > sx1 {
                continue;
            }
            if t[0].1.max(t[1].1) < sy0 || t[0].1.min(t[1].1) > sy1 {
                continue;
            }
            match contact(s[0], s[1], t[0], t[1])? {
                Contact::None => {}
                Contact::Cross => count += 1,
                Contact::Touch(x) => {
                    if !(ends_p.contains(&x) && ends_q.contains(&x)) {
                        return Err(format!("polylines touch at {x:?} away from a shared endpoint"));
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Counts proper crossings between the polylines of an expanded drawing.
///
/// With a period, polyline `i` is also intersected with every integer
/// translate of polyline `j` (including `j = i` for nonzero shifts).
/// Contacts other than shared polyline endpoints are reported as errors.
pub fn count_expanded(e: &ExpandedDrawing) -> Result<u64, CountError> {
    for l in &e.polylines {
        if l.points.len() < 2 {
            return Err(CountError::Degenerate(format!("polyline {}{} has fewer than two points", l.u, l.v)));
        }
    }
    let grid = to_grid(e)?;
    let boxes: Vec<_> = grid.lines.iter().map(|l| bbox(l)).collect();
    let mut total = 0;
    for i in 0..grid.lines.len() {
        for j in i..grid.lines.len() {
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            let shifts: Vec<i128> = match grid.period {
                None if i == j => vec![],
                None => vec![0],
                Some(p) => {
                    // Shifts k with [bj.0 + kp, bj.1 + kp] meeting [bi.0, bi.1].
                    let lo = Integer::div_floor(&(bi.0 - bj.1), &p);
                    let hi = Integer::div_ceil(&(bi.1 - bj.0), &p);
                    (lo..=hi).filter(|&k| if i == j { k > 0 } else { true }).map(|k| k * p).collect()
                }
            };
            for shift in shifts {
                total += crossings_between(&grid.lines[i], &grid.lines[j], shift).map_err(|msg| {
                    let (a, b) = (&e.polylines[i], &e.polylines[j]);
                    CountError::Degenerate(format!("{}{} vs {}{}: {msg}", a.u, a.v, b.u, b.v))
                })?;
            }
        }
    }
    Ok(total)
}

/// Crossings inside one mesh, before removing doubly counted self crossings.
pub fn mesh_crossings(mesh: &MeshSpec) -> Result<u64, CountError> {
    let (l, r) = (mesh.left as u64, mesh.right as u64);
    match mesh.width {
        2 => Ok(l * l.saturating_sub(1) / 2 + r * r.saturating_sub(1) / 2),
        4 => Ok(l * (2 * l).saturating_sub(1) + r * (2 * r).saturating_sub(1)),
        w => Err(CountError::InvalidMesh(format!("bunch width {w}"))),
    }
}

/// Crossing count of the split drawing built on `base`: each crossing of the
/// base drawing becomes `width²` crossings, and each split vertex adds its
/// mesh. For width 4 every bunch's self crossing is tallied at both ends, so
/// one per edge is removed, along with the reductions carried by the meshes.
pub fn split_drawing_count(base: &CylindricalDrawing, meshes: &[MeshSpec], width: usize) -> Result<u64, CountError> {
    let expected: BTreeSet<VertexLabel> = match width {
        2 => base.graph.vertices().filter(|v| v.tag == crate::graph::Family::A).copied().collect(),
        4 => base.graph.vertices().copied().collect(),
        w => return Err(CountError::InvalidMesh(format!("bunch width {w}"))),
    };
    let mut covered = BTreeSet::new();
    for m in meshes {
        if m.width != width {
            return Err(CountError::InvalidMesh(format!("mesh at {} has width {}", m.vertex, m.width)));
        }
        if !expected.contains(&m.vertex) {
            return Err(CountError::Coverage(format!("{} is not a split vertex", m.vertex)));
        }
        if !covered.insert(m.vertex) {
            return Err(CountError::Coverage(format!("{} covered twice", m.vertex)));
        }
        if (m.left + m.right) as u64 != base.graph.degree(&m.vertex) {
            return Err(CountError::InvalidMesh(format!("l + r differs from the degree of {}", m.vertex)));
        }
    }
    if covered.len() != expected.len() {
        return Err(CountError::Coverage(format!("{} of {} split vertices covered", covered.len(), expected.len())));
    }
    let nu = count_drawing(base)?.total;
    let mesh_sum: u64 = meshes.iter().map(mesh_crossings).sum::<Result<u64, _>>()?;
    let w = width as u64;
    let mut total = w * w * nu + mesh_sum;
    if width == 4 {
        let reductions: u64 = meshes.iter().map(|m| m.self_crossing_reductions as u64).sum();
        let removed = base.graph.edge_count() as u64 + reductions;
        total = total
            .checked_sub(removed)
            .ok_or_else(|| CountError::InvalidMesh("more reductions than self crossings".into()))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{generate_dn, q};
    use crate::expanded::Polyline;
    use crate::formulas::z_complete4;

    #[test]
    fn chord_examples() {
        assert!(chords_cross((q(0, 1), q(1, 2)), (q(1, 4), q(3, 4))).unwrap());
        assert!(!chords_cross((q(0, 1), q(1, 4)), (q(1, 2), q(3, 4))).unwrap());
        assert!(!chords_cross((q(0, 1), q(1, 2)), (q(1, 2), q(3, 4))).unwrap());
        assert!(chords_cross((q(0, 1), q(1, 2)), (q(1, 2), q(0, 1))).is_err());
    }

    #[test]
    fn helix_examples() {
        let h = |t: Q, b: Q| RouteSegment::helix(t, b);
        assert_eq!(helix_crossings(&h(q(0, 1), q(0, 1)), &h(q(1, 4), q(1, 4))), 0);
        assert_eq!(helix_crossings(&h(q(0, 1), q(1, 4)), &h(q(1, 4), q(0, 1))), 1);
        // Both resolve the half-turn tie the same way, so they are parallel.
        assert_eq!(helix_crossings(&h(q(0, 1), q(1, 2)), &h(q(1, 2), q(0, 1))), 0);
        let a = RouteSegment::Helix { top: q(0, 1), bottom: q(1, 4), winding: q(1, 4) };
        let b = RouteSegment::Helix { top: q(0, 1), bottom: q(3, 4), winding: q(-1, 4) };
        assert_eq!(helix_crossings(&a, &b), 0);
    }

    #[test]
    fn radial_examples() {
        assert!(radial_crosses_chord(q(1, 8), (q(0, 1), q(1, 4)), q(1, 16)));
        assert!(!radial_crosses_chord(q(1, 2), (q(0, 1), q(1, 4)), q(1, 16)));
        assert!(!radial_crosses_chord(q(0, 1), (q(0, 1), q(1, 4)), q(1, 16)));
        // A diameter is drawn away from the bias direction.
        assert!(!radial_crosses_chord(q(1, 4), (q(0, 1), q(1, 2)), q(1, 16)));
        assert!(radial_crosses_chord(q(3, 4), (q(0, 1), q(1, 2)), q(1, 16)));
    }

    #[test]
    fn small_drawings() {
        let d6 = count_drawing(&generate_dn(6).unwrap()).unwrap();
        assert_eq!(d6.total, 12);
        assert_eq!(d6.pair(EdgeClass::EX, EdgeClass::EX), 3);
        assert_eq!(d6.pair(EdgeClass::EY, EdgeClass::EY), 3);
        assert_eq!(d6.pair(EdgeClass::EXY, EdgeClass::EXY), 6);
        assert_eq!(count_drawing(&generate_dn(5).unwrap()).unwrap().total, 4);
        assert_eq!(count_drawing(&generate_dn(3).unwrap()).unwrap().total, 0);
        assert_eq!(count_drawing(&generate_dn(2).unwrap()).unwrap().total, 0);
        for n in 1..=13 {
            let c = count_drawing(&generate_dn(n).unwrap()).unwrap();
            assert_eq!(c.total as i128, z_complete4(n as i64), "n = {n}");
        }
    }

    #[test]
    fn breakdown_json_keys() {
        let c = count_drawing(&generate_dn(6).unwrap()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"total":12,"per_class_pair":{"E_XY|E_XY":6,"E_XY|E_Y":0,"#));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v["per_class_pair"].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 10);
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v["per_class_pair"]["E_X|E_X"], 3);
        assert_eq!(CrossingBreakdown::pair_key(EdgeClass::EZXY, EdgeClass::EX), "E_X|E_ZXY");
    }

    fn segs(lines: &[&[(i64, i64)]]) -> ExpandedDrawing {
        ExpandedDrawing {
            period: None,
            points: Default::default(),
            polylines: lines
                .iter()
                .enumerate()
                .map(|(k, pts)| Polyline {
                    u: VertexLabel::u(k),
                    v: VertexLabel::v(k),
                    class: EdgeClass::EX,
                    points: pts.iter().map(|&(x, y)| Point::new(q(x, 1), q(y, 1))).collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn segment_counter_basics() {
        assert_eq!(count_expanded(&segs(&[&[(0, -1), (0, 1)], &[(-1, 0), (1, 0)]])).unwrap(), 1);
        assert_eq!(count_expanded(&segs(&[&[(0, 0), (2, 2)], &[(0, 0), (2, -2)]])).unwrap(), 0);
        assert_eq!(
            count_expanded(&segs(&[&[(0, -1), (0, 1), (2, 1), (2, -1)], &[(-1, 0), (3, 0)]])).unwrap(),
            2
        );
        assert!(count_expanded(&segs(&[&[(0, 0), (2, 0)], &[(1, 0), (3, 0)]])).is_err());
        assert!(count_expanded(&segs(&[&[(0, -1), (0, 1)], &[(0, 0), (1, 0)]])).is_err());
        assert!(count_expanded(&segs(&[&[(-1, 0), (0, 0), (1, 1)], &[(0, -1), (0, 1)]])).is_err());
    }

    #[test]
    fn periodic_translates() {
        let mut e = segs(&[&[(0, 1), (1, 0)], &[(1, 1), (0, 0)]]);
        assert_eq!(count_expanded(&e).unwrap(), 1);
        e.period = Some(q(2, 1));
        assert_eq!(count_expanded(&e).unwrap(), 1);
        e.period = Some(q(1, 1));
        // Both lines share endpoints with each other's translates.
        assert!(count_expanded(&e).is_ok());
    }

    #[test]
    fn mesh_values() {
        let m = |l, r, w| MeshSpec { vertex: VertexLabel::a(0), left: l, right: r, width: w, self_crossing_reductions: 0 };
        assert_eq!(mesh_crossings(&m(1, 2, 2)).unwrap(), 1);
        assert_eq!(mesh_crossings(&m(2, 2, 4)).unwrap(), 12);
        assert_eq!(mesh_crossings(&m(0, 0, 2)).unwrap(), 0);
        assert_eq!(mesh_crossings(&m(0, 0, 4)).unwrap(), 0);
        assert!(mesh_crossings(&m(1, 1, 3)).is_err());
    }
}
