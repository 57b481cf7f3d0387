use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use super::{decimal, format_big, Artifact, IoError};
use crate::bounds::{build_embedding, congestion, CertifiedInterval, GraphFamily};
use crate::count::CrossingBreakdown;
use crate::drawing::EdgeClass;
use crate::formulas::{nu_ex, nu_exy, ub_c4, ub_p3, z_complete4};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Md,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "md" => Ok(ReportFormat::Md),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown format {s:?} (expected csv, md or json)")),
        }
    }
}

/// The closed form the constructed drawing should reach.
pub fn closed_form(family: GraphFamily, n: usize) -> i128 {
    let n = n as i64;
    match family {
        GraphFamily::Knn => z_complete4(n),
        GraphFamily::P3 => ub_p3(n).unwrap_or(0),
        // Below n = 3 the product is planar and the polynomial goes negative.
        GraphFamily::C4 => ub_c4(n).unwrap_or(0),
    }
}

/// Expected class breakdown of `D_n` for even `n`.
fn expected_breakdown(n: usize) -> Option<CrossingBreakdown> {
    if n % 2 == 1 {
        return None;
    }
    let (x, xy) = if n >= 6 {
        (nu_ex(n as i64).ok()? as u64, nu_exy(n as i64).ok()? as u64)
    } else {
        (0, 0)
    };
    Some(CrossingBreakdown::from_pairs([
        ((EdgeClass::EX, EdgeClass::EX), x),
        ((EdgeClass::EY, EdgeClass::EY), x),
        ((EdgeClass::EXY, EdgeClass::EXY), xy),
    ]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub family: GraphFamily,
    pub n: usize,
    pub counted: u64,
    pub geometric: u64,
    pub closed_form: i128,
    pub matches: bool,
    /// First disagreeing class pair, or which total disagrees.
    pub diagnostic: Option<String>,
}

pub fn verify_family(family: GraphFamily, n: usize) -> Result<VerifyRow, IoError> {
    let art = Artifact::build(family, n)?;
    let c = art.count()?;
    let expected = closed_form(family, n);
    let mut diagnostic = None;
    if let (Some(got), Some(want)) = (&c.breakdown, expected_breakdown(n).filter(|_| family == GraphFamily::Knn)) {
        if let Some((a, b)) = got.first_difference(&want) {
            diagnostic = Some(format!(
                "class pair {} counted {} expected {}",
                CrossingBreakdown::pair_key(a, b),
                got.pair(a, b),
                want.pair(a, b)
            ));
        }
    }
    if diagnostic.is_none() && c.counted as i128 != expected {
        diagnostic = Some(format!("total counted {} expected {expected}", c.counted));
    }
    if diagnostic.is_none() && c.geometric != c.counted {
        diagnostic = Some(format!("chart count {} differs from counted {}", c.geometric, c.counted));
    }
    Ok(VerifyRow {
        family,
        n,
        counted: c.counted,
        geometric: c.geometric,
        closed_form: expected,
        matches: diagnostic.is_none(),
        diagnostic,
    })
}

pub fn verify_table(rows: &[VerifyRow], format: ReportFormat) -> String {
    let mut s = String::new();
    match format {
        ReportFormat::Csv => {
            s.push_str("family,n,counted,geometric,closed_form,match,diagnostic\n");
            for r in rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.family,
                    r.n,
                    r.counted,
                    r.geometric,
                    r.closed_form,
                    r.matches,
                    r.diagnostic.as_deref().unwrap_or("")
                )
                .unwrap();
            }
        }
        ReportFormat::Md => {
            s.push_str("| family | n | counted | geometric | closed form | match |\n|---|---:|---:|---:|---:|---|\n");
            for r in rows {
                writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.family,
                    r.n,
                    r.counted,
                    r.geometric,
                    r.closed_form,
                    if r.matches { "yes" } else { r.diagnostic.as_deref().unwrap_or("no") }
                )
                .unwrap();
            }
        }
        ReportFormat::Json => {
            s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
        }
    }
    s
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn bounds_csv(rows: &[CertifiedInterval]) -> String {
    let mut s = String::from("family,n,lower_raw,lower_raw_decimal,lower,upper,exact\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.family,
            r.n,
            opt(&r.lower_raw.as_ref().map(format_big)),
            opt(&r.lower_raw.as_ref().map(|x| decimal(x, 4))),
            format_big(&r.lower),
            r.upper,
            opt(&r.exact)
        )
        .unwrap();
    }
    s
}

pub fn bounds_markdown(rows: &[CertifiedInterval]) -> String {
    let mut s = String::from("| family | n | raw lower | lower | source | upper | exact |\n|---|---:|---:|---:|---|---:|---:|\n");
    for r in rows {
        writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.family,
            r.n,
            r.lower_raw.as_ref().map(|x| decimal(x, 4)).unwrap_or_else(|| "-".into()),
            decimal(&r.lower, 4),
            r.lower_source.name(),
            r.upper,
            r.exact.map(|e| e.to_string()).unwrap_or_else(|| "-".into())
        )
        .unwrap();
    }
    s
}

pub fn bounds_json(rows: &[CertifiedInterval]) -> String {
    let v: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "family": r.family.name(),
                "n": r.n,
                "lower_raw": r.lower_raw.as_ref().map(format_big),
                "lower": format_big(&r.lower),
                "lower_source": r.lower_source.name(),
                "upper": r.upper,
                "exact": r.exact,
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&v).expect("rows serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedReport {
    pub family: GraphFamily,
    pub n: usize,
    pub congestion: u64,
    pub expected: u64,
    pub matches: bool,
    pub host_edges: usize,
    pub total_path_length: u64,
    /// Load value to number of host edges carrying it.
    pub load_histogram: BTreeMap<u64, usize>,
}

pub fn embed_report(family: GraphFamily, n: usize) -> Result<EmbedReport, IoError> {
    let e = build_embedding(family, n)?;
    let r = congestion(&e)?;
    let expected = ((n - 2) * (n + 2)) as u64;
    Ok(EmbedReport {
        family,
        n,
        congestion: r.congestion,
        expected,
        matches: r.congestion == expected,
        host_edges: e.host.edge_count(),
        total_path_length: r.total_path_length,
        load_histogram: r.histogram(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::certify;

    #[test]
    fn verify_rows() {
        for n in 1..=9 {
            let r = verify_family(GraphFamily::Knn, n).unwrap();
            assert!(r.matches, "{r:?}");
        }
        let r = verify_family(GraphFamily::C4, 3).unwrap();
        assert_eq!((r.counted, r.closed_form, r.matches), (6, 6, true));
        let t = verify_table(&[r], ReportFormat::Csv);
        assert_eq!(t, "family,n,counted,geometric,closed_form,match,diagnostic\nc4,3,6,6,6,true,\n");
    }

    #[test]
    fn bounds_tables() {
        let rows: Vec<_> = (1..=5).map(|n| certify(GraphFamily::Knn, n).unwrap()).collect();
        let csv = bounds_csv(&rows);
        let exact: Vec<&str> = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
        assert_eq!(exact, ["0", "0", "0", "0", "4"]);
        assert!(csv.lines().nth(1).unwrap().starts_with("knn,1,,,0/1,0,"));
        assert_eq!(bounds_markdown(&rows).lines().count(), 7);
        let v: serde_json::Value = serde_json::from_str(&bounds_json(&rows)).unwrap();
        assert_eq!(v[4]["exact"], 4);
        assert_eq!(v[4]["lower_source"], "skewness");
    }

    #[test]
    fn embed_reports() {
        let r = embed_report(GraphFamily::Knn, 5).unwrap();
        assert_eq!((r.congestion, r.matches), (21, true));
        assert_eq!(r.load_histogram, BTreeMap::from([(21, 20)]));
        assert_eq!(embed_report(GraphFamily::P3, 6).unwrap().congestion, 32);
        assert_eq!(embed_report(GraphFamily::C4, 3).unwrap().congestion, 5);
        assert!(embed_report(GraphFamily::Knn, 2).is_err());
    }
}
