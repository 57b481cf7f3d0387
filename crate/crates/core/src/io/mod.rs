//! File formats: drawing JSON, SVG rendering and report tables.

mod report;
mod svg;
mod wire;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bounds::{BoundsError, GraphFamily};
use crate::count::{count_drawing, count_expanded, split_drawing_count, CountError, CrossingBreakdown};
use crate::drawing::{generate_dn, CylindricalDrawing, DrawingError, Q};
use crate::expanded::{expand_dn, ExpandedDrawing};
use crate::split::{generate_split_drawing, MeshSpec};

pub use report::{
    bounds_csv, bounds_json, bounds_markdown, closed_form, embed_report, verify_family, verify_table, EmbedReport, ReportFormat,
    VerifyRow,
};
pub use svg::{render_svg, RenderStyle};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("invalid style: {0}")]
    Style(String),
}

/// Formats as `p/q` in lowest terms, with `q = 1` kept.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn format_big(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_q(s: &str) -> Result<Q, IoError> {
    let bad = || IoError::Malformed(format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Q::new(p, q))
}

/// Decimal rendering rounded half away from zero.
pub fn decimal(x: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let mut r = scaled.abs().round().to_integer();
    let negative = x.is_negative() && !r.is_zero();
    let (int, frac) = r.div_rem(&scale);
    r = frac;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", r.to_string(), width = places)
}

/// Everything `build` writes: the cylindrical drawing, the split data for
/// the product families, and the planar chart.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub family: GraphFamily,
    pub n: usize,
    pub cylindrical: CylindricalDrawing,
    /// Bunch width and meshes; absent for `knn`.
    pub split: Option<(usize, Vec<MeshSpec>)>,
    pub expanded: ExpandedDrawing,
}

/// Both crossing counts of an artifact.
#[derive(Clone, Debug)]
pub struct ArtifactCount {
    /// Combinatorial count (with mesh accounting for split drawings).
    pub counted: u64,
    /// Count of the planar chart by segment intersection.
    pub geometric: u64,
    /// Per-class breakdown of the cylindrical drawing, for `knn`.
    pub breakdown: Option<CrossingBreakdown>,
}

pub fn split_width(family: GraphFamily) -> Option<usize> {
    match family {
        GraphFamily::Knn => None,
        GraphFamily::P3 => Some(2),
        GraphFamily::C4 => Some(4),
    }
}

impl Artifact {
    pub fn build(family: GraphFamily, n: usize) -> Result<Artifact, IoError> {
        Ok(match split_width(family) {
            None => {
                let d = generate_dn(n)?;
                let expanded = expand_dn(&d);
                Artifact { family, n, cylindrical: d, split: None, expanded }
            }
            Some(w) => {
                let s = generate_split_drawing(n, w)?;
                Artifact { family, n, cylindrical: s.base, split: Some((w, s.meshes)), expanded: s.expanded }
            }
        })
    }

    pub fn count(&self) -> Result<ArtifactCount, IoError> {
        let geometric = count_expanded(&self.expanded)?;
        Ok(match &self.split {
            None => {
                let b = count_drawing(&self.cylindrical)?;
                ArtifactCount { counted: b.total, geometric, breakdown: Some(b) }
            }
            Some((w, meshes)) => ArtifactCount {
                counted: split_drawing_count(&self.cylindrical, meshes, *w)?,
                geometric,
                breakdown: None,
            },
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&wire::ArtifactRecord::from(self)).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Artifact, IoError> {
        let rec: wire::ArtifactRecord = serde_json::from_str(text)?;
        rec.into_artifact()
    }
}

pub fn drawing_to_json(d: &CylindricalDrawing) -> String {
    serde_json::to_string(&wire::DrawingRecord::from(d)).expect("records serialize")
}

pub fn drawing_from_json(text: &str) -> Result<CylindricalDrawing, IoError> {
    serde_json::from_str::<wire::DrawingRecord>(text)?.into_drawing()
}

pub fn expanded_to_json(e: &ExpandedDrawing) -> String {
    serde_json::to_string(&wire::ExpandedRecord::from(e)).expect("records serialize")
}

pub fn expanded_from_json(text: &str) -> Result<ExpandedDrawing, IoError> {
    serde_json::from_str::<wire::ExpandedRecord>(text)?.into_expanded()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::q;

    #[test]
    fn rationals() {
        assert_eq!(format_q(&q(2, 4)), "1/2");
        assert_eq!(format_q(&q(3, 1)), "3/1");
        assert_eq!(format_q(&q(-1, 3)), "-1/3");
        assert_eq!(parse_q("-1/3").unwrap(), q(-1, 3));
        assert_eq!(parse_q("7").unwrap(), q(7, 1));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn decimals() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(decimal(&r(1, 3), 4), "0.3333");
        assert_eq!(decimal(&r(2, 3), 4), "0.6667");
        assert_eq!(decimal(&r(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&r(-1, 100000), 4), "0.0000");
        assert_eq!(decimal(&r(12345, 1), 4), "12345.0000");
        assert_eq!(decimal(&r(5, 2), 0), "3");
    }

    #[test]
    fn artifact_round_trip() {
        for (family, n) in [(GraphFamily::Knn, 1), (GraphFamily::Knn, 6), (GraphFamily::Knn, 7), (GraphFamily::P3, 4), (GraphFamily::C4, 3)] {
            let a = Artifact::build(family, n).unwrap();
            let text = a.to_json();
            let b = Artifact::from_json(&text).unwrap();
            assert_eq!(b.cylindrical, a.cylindrical);
            assert_eq!(b.expanded, a.expanded);
            assert_eq!(b.split, a.split);
            assert_eq!(b.to_json(), text);
            let (ca, cb) = (a.count().unwrap(), b.count().unwrap());
            assert_eq!((ca.counted, ca.geometric), (cb.counted, cb.geometric));
        }
    }

    #[test]
    fn artifact_counts() {
        let c = Artifact::build(GraphFamily::Knn, 6).unwrap().count().unwrap();
        assert_eq!((c.counted, c.geometric), (12, 12));
        let c = Artifact::build(GraphFamily::C4, 2).unwrap().count().unwrap();
        assert_eq!((c.counted, c.geometric), (0, 0));
        let a = Artifact::build(GraphFamily::Knn, 1).unwrap();
        assert_eq!(a.cylindrical.routes.len(), 0);
        assert_eq!(a.count().unwrap().counted, 0);
    }

    #[test]
    fn malformed_inputs() {
        assert!(Artifact::from_json("{").is_err());
        assert!(Artifact::from_json("{}").is_err());
        let good = Artifact::build(GraphFamily::Knn, 5).unwrap().to_json();
        let broken = good.replacen("\"1/4\"", "\"1/0\"", 1);
        assert!(Artifact::from_json(&broken).is_err());
    }
}
