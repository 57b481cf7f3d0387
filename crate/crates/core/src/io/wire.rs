//! Serde records mirroring the in-memory types, with rationals as `p/q`.

use serde::{Deserialize, Serialize};

use super::{format_q, parse_q, split_width, Artifact, IoError};
use crate::bounds::GraphFamily;
use crate::drawing::{CylinderPoint, CylindricalDrawing, Disk, EdgeClass, Route, RouteSegment};
use crate::expanded::{ExpandedDrawing, Point, Polyline};
use crate::graph::{Graph, VertexLabel};
use crate::split::MeshSpec;

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Region {
    TopBoundary,
    BottomBoundary,
    TopCenter,
    BottomCenter,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlacementRecord {
    vertex: VertexLabel,
    region: Region,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SegmentRecord {
    Chord { disk: Disk, a: String, b: String },
    Radial { disk: Disk, angle: String },
    Helix { top: String, bottom: String, winding: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RouteRecord {
    u: VertexLabel,
    v: VertexLabel,
    class: EdgeClass,
    segments: Vec<SegmentRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct DrawingRecord {
    n: usize,
    offset: usize,
    diameter_bias: String,
    graph: Graph,
    placements: Vec<PlacementRecord>,
    routes: Vec<RouteRecord>,
}

impl From<&CylindricalDrawing> for DrawingRecord {
    fn from(d: &CylindricalDrawing) -> Self {
        let placements = d
            .placement
            .iter()
            .map(|(v, p)| match *p {
                CylinderPoint::Boundary { disk, angle } => PlacementRecord {
                    vertex: *v,
                    region: if disk == Disk::Top { Region::TopBoundary } else { Region::BottomBoundary },
                    angle: Some(format_q(&angle)),
                },
                CylinderPoint::Center(disk) => PlacementRecord {
                    vertex: *v,
                    region: if disk == Disk::Top { Region::TopCenter } else { Region::BottomCenter },
                    angle: None,
                },
            })
            .collect();
        let routes = d
            .routes
            .iter()
            .map(|r| RouteRecord {
                u: r.u,
                v: r.v,
                class: r.class,
                segments: r
                    .segments
                    .iter()
                    .map(|s| match *s {
                        RouteSegment::Chord { disk, a, b } => SegmentRecord::Chord { disk, a: format_q(&a), b: format_q(&b) },
                        RouteSegment::Radial { disk, angle } => SegmentRecord::Radial { disk, angle: format_q(&angle) },
                        RouteSegment::Helix { top, bottom, winding } => SegmentRecord::Helix {
                            top: format_q(&top),
                            bottom: format_q(&bottom),
                            winding: format_q(&winding),
                        },
                    })
                    .collect(),
            })
            .collect();
        DrawingRecord {
            n: d.n,
            offset: d.offset,
            diameter_bias: format_q(&d.diameter_bias),
            graph: d.graph.clone(),
            placements,
            routes,
        }
    }
}

impl DrawingRecord {
    pub(super) fn into_drawing(self) -> Result<CylindricalDrawing, IoError> {
        let mut placement = std::collections::BTreeMap::new();
        for p in self.placements {
            let point = match (p.region, p.angle) {
                (Region::TopBoundary, Some(a)) => CylinderPoint::Boundary { disk: Disk::Top, angle: parse_q(&a)? },
                (Region::BottomBoundary, Some(a)) => CylinderPoint::Boundary { disk: Disk::Bottom, angle: parse_q(&a)? },
                (Region::TopCenter, None) => CylinderPoint::Center(Disk::Top),
                (Region::BottomCenter, None) => CylinderPoint::Center(Disk::Bottom),
                _ => return Err(IoError::Malformed(format!("placement of {} has a bad angle", p.vertex))),
            };
            if placement.insert(p.vertex, point).is_some() {
                return Err(IoError::Malformed(format!("{} is placed twice", p.vertex)));
            }
        }
        let mut routes = Vec::with_capacity(self.routes.len());
        for r in self.routes {
            let mut segments = Vec::with_capacity(r.segments.len());
            for s in r.segments {
                segments.push(match s {
                    SegmentRecord::Chord { disk, a, b } => RouteSegment::Chord { disk, a: parse_q(&a)?, b: parse_q(&b)? },
                    SegmentRecord::Radial { disk, angle } => RouteSegment::Radial { disk, angle: parse_q(&angle)? },
                    SegmentRecord::Helix { top, bottom, winding } => RouteSegment::Helix {
                        top: parse_q(&top)?,
                        bottom: parse_q(&bottom)?,
                        winding: parse_q(&winding)?,
                    },
                });
            }
            routes.push(Route { u: r.u, v: r.v, class: r.class, segments });
        }
        let d = CylindricalDrawing {
            n: self.n,
            offset: self.offset,
            diameter_bias: parse_q(&self.diameter_bias)?,
            graph: self.graph,
            placement,
            routes,
        };
        d.validate()?;
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    vertex: VertexLabel,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolylineRecord {
    u: VertexLabel,
    v: VertexLabel,
    class: EdgeClass,
    points: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct ExpandedRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<String>,
    points: Vec<PointRecord>,
    polylines: Vec<PolylineRecord>,
}

impl From<&ExpandedDrawing> for ExpandedRecord {
    fn from(e: &ExpandedDrawing) -> Self {
        ExpandedRecord {
            period: e.period.as_ref().map(format_q),
            points: e
                .points
                .iter()
                .map(|(v, p)| PointRecord { vertex: *v, x: format_q(&p.x), y: format_q(&p.y) })
                .collect(),
            polylines: e
                .polylines
                .iter()
                .map(|l| PolylineRecord {
                    u: l.u,
                    v: l.v,
                    class: l.class,
                    points: l.points.iter().map(|p| [format_q(&p.x), format_q(&p.y)]).collect(),
                })
                .collect(),
        }
    }
}

impl ExpandedRecord {
    pub(super) fn into_expanded(self) -> Result<ExpandedDrawing, IoError> {
        let mut e = ExpandedDrawing { period: self.period.as_deref().map(parse_q).transpose()?, ..Default::default() };
        for p in self.points {
            let pt = Point::new(parse_q(&p.x)?, parse_q(&p.y)?);
            if e.points.insert(p.vertex, pt).is_some() {
                return Err(IoError::Malformed(format!("{} has two points", p.vertex)));
            }
        }
        for l in self.polylines {
            let points = l
                .points
                .iter()
                .map(|[x, y]| Ok(Point::new(parse_q(x)?, parse_q(y)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            e.polylines.push(Polyline { u: l.u, v: l.v, class: l.class, points });
        }
        e.validate().map_err(IoError::Malformed)?;
        Ok(e)
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct MeshRecord {
    vertex: VertexLabel,
    left: usize,
    right: usize,
    width: usize,
    self_crossing_reductions: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct ArtifactRecord {
    generator: String,
    family: String,
    n: usize,
    cylindrical: DrawingRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meshes: Option<Vec<MeshRecord>>,
    expanded: ExpandedRecord,
}

const GENERATOR: &str = concat!("xatlas ", env!("CARGO_PKG_VERSION"));

impl From<&Artifact> for ArtifactRecord {
    fn from(a: &Artifact) -> Self {
        ArtifactRecord {
            generator: GENERATOR.to_string(),
            family: a.family.name().to_string(),
            n: a.n,
            cylindrical: DrawingRecord::from(&a.cylindrical),
            width: a.split.as_ref().map(|(w, _)| *w),
            meshes: a.split.as_ref().map(|(_, ms)| {
                ms.iter()
                    .map(|m| MeshRecord {
                        vertex: m.vertex,
                        left: m.left,
                        right: m.right,
                        width: m.width,
                        self_crossing_reductions: m.self_crossing_reductions,
                    })
                    .collect()
            }),
            expanded: ExpandedRecord::from(&a.expanded),
        }
    }
}

impl ArtifactRecord {
    pub(super) fn into_artifact(self) -> Result<Artifact, IoError> {
        let family: GraphFamily = self.family.parse().map_err(IoError::Malformed)?;
        let cylindrical = self.cylindrical.into_drawing()?;
        if cylindrical.n != self.n {
            return Err(IoError::Malformed(format!("n = {} but the drawing has n = {}", self.n, cylindrical.n)));
        }
        let split = match (split_width(family), self.width, self.meshes) {
            (None, None, None) => None,
            (Some(w), Some(width), Some(meshes)) if w == width => Some((
                w,
                meshes
                    .into_iter()
                    .map(|m| MeshSpec {
                        vertex: m.vertex,
                        left: m.left,
                        right: m.right,
                        width: m.width,
                        self_crossing_reductions: m.self_crossing_reductions,
                    })
                    .collect(),
            )),
            _ => return Err(IoError::Malformed(format!("split data does not fit family {family}"))),
        };
        let expanded = self.expanded.into_expanded()?;
        Ok(Artifact { family, n: self.n, cylindrical, split, expanded })
    }
}
