//! Lower bounds: congestion of explicit embeddings, the bipartite and
//! multigraph bounds, planarity, and the Euler bound on skewness.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;
use thiserror::Error;

use crate::count::{count_drawing, split_drawing_count, CountError};
use crate::drawing::{generate_dn, DrawingError};
use crate::formulas::{ceil_integer, clamp_nonnegative, deklerk_constant, z_bipartite};
use crate::graph::{
    kn_times_c4, kn_times_p3, knn_minus_matching, multi_complete_bipartite, Family, Graph, GraphError, VertexLabel,
};
use crate::split::generate_split_drawing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
}

/// The three graph families with drawings and bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphFamily {
    /// `K_{n,n} - nK_2`, isomorphic to `K_n x P_2`.
    Knn,
    P3,
    C4,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 3] = [GraphFamily::Knn, GraphFamily::P3, GraphFamily::C4];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Knn => "knn",
            GraphFamily::P3 => "p3",
            GraphFamily::C4 => "c4",
        }
    }

    /// The graph itself, with `a/b` labels for `Knn` and layer labels otherwise.
    pub fn graph(self, n: usize) -> Result<Graph, GraphError> {
        match self {
            GraphFamily::Knn => knn_minus_matching(n),
            GraphFamily::P3 => Ok(kn_times_p3(n)),
            GraphFamily::C4 => Ok(kn_times_c4(n)),
        }
    }

    /// Side sizes of the guest `K^x_{m,m'}` embedded into the family graph.
    pub fn guest_sides(self, n: usize) -> (usize, usize) {
        match self {
            GraphFamily::Knn => (n, n),
            GraphFamily::P3 => (2 * n, n),
            GraphFamily::C4 => (2 * n, 2 * n),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for GraphFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "knn" => Ok(GraphFamily::Knn),
            "p3" => Ok(GraphFamily::P3),
            "c4" => Ok(GraphFamily::C4),
            _ => Err(format!("unknown family {s:?} (expected knn, p3 or c4)")),
        }
    }
}

/// The `k`-th ordered pair `(alpha, beta)` of distinct elements of
/// `{0..n-1} \ {i}`, in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArrangementIndex {
    pub i: usize,
    /// Rank, from 1 to `(n-1)(n-2)`.
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
}

pub fn arrangement(n: usize, i: usize, k: usize) -> Option<ArrangementIndex> {
    if n < 3 || i >= n || k == 0 || k > (n - 1) * (n - 2) {
        return None;
    }
    // x-th element (0-based) of 0..n with the listed values removed.
    let skip = |x: usize, lo: usize, hi: usize| -> usize {
        let mut y = x;
        if y >= lo {
            y += 1;
        }
        if y >= hi {
            y += 1;
        }
        y
    };
    let r = k - 1;
    let alpha = skip(r / (n - 2), i, usize::MAX);
    let beta = skip(r % (n - 2), i.min(alpha), i.max(alpha));
    Some(ArrangementIndex { i, k, alpha, beta })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuestRoute {
    pub guest: (VertexLabel, VertexLabel),
    pub copies: u64,
    pub path: Vec<VertexLabel>,
}

#[derive(Clone, Debug)]
enum RouteSet {
    Explicit(Vec<GuestRoute>),
    Arrangement(GraphFamily, usize),
}

/// A guest multigraph mapped into a host graph: an injection on vertices and
/// a host path for every guest edge copy.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub guest: Graph,
    pub host: Graph,
    pub vertex_map: BTreeMap<VertexLabel, VertexLabel>,
    routes: RouteSet,
}

impl Embedding {
    pub fn explicit(
        guest: Graph,
        host: Graph,
        vertex_map: BTreeMap<VertexLabel, VertexLabel>,
        routes: Vec<GuestRoute>,
    ) -> Self {
        Embedding { guest, host, vertex_map, routes: RouteSet::Explicit(routes) }
    }

    /// Identity embedding of `g` into itself.
    pub fn identity(g: &Graph) -> Self {
        let map = g.vertices().map(|v| (*v, *v)).collect();
        let routes = g
            .edges()
            .map(|(u, v, m)| GuestRoute { guest: (*u, *v), copies: m, path: vec![*u, *v] })
            .collect();
        Embedding::explicit(g.clone(), g.clone(), map, routes)
    }

    /// Calls `f(guest_u, guest_v, copies, path)` for every route. Arrangement
    /// embeddings are generated on the fly.
    pub fn for_each_route<F>(&self, mut f: F)
    where
        F: FnMut(VertexLabel, VertexLabel, u64, &[VertexLabel]),
    {
        match &self.routes {
            RouteSet::Explicit(rs) => {
                for r in rs {
                    f(r.guest.0, r.guest.1, r.copies, &r.path);
                }
            }
            RouteSet::Arrangement(family, n) => arrangement_routes(*family, *n, &self.vertex_map, f),
        }
    }

    pub fn routes(&self) -> Vec<GuestRoute> {
        let mut out = Vec::new();
        self.for_each_route(|u, v, copies, path| out.push(GuestRoute { guest: (u, v), copies, path: path.to_vec() }));
        out
    }
}

fn arrangement_routes<F>(family: GraphFamily, n: usize, map: &BTreeMap<VertexLabel, VertexLabel>, mut f: F)
where
    F: FnMut(VertexLabel, VertexLabel, u64, &[VertexLabel]),
{
    let x = ((n - 1) * (n - 2)) as u64;
    let (m1, m2) = family.guest_sides(n);
    let lay = VertexLabel::layer;
    for gu in 0..m1 {
        for gv in 0..m2 {
            let (u, v) = (VertexLabel::u(gu), VertexLabel::v(gv));
            let (hu, hv) = (map[&u], map[&v]);
            if hu.index != hv.index {
                f(u, v, x, &[hu, hv]);
                continue;
            }
            let i = hu.index;
            for k in 1..=(n - 1) * (n - 2) {
                let ArrangementIndex { alpha, beta, .. } = arrangement(n, i, k).unwrap();
                let path = match (hu.tag, hv.tag) {
                    (Family::A, Family::B) => [VertexLabel::a(i), VertexLabel::b(alpha), VertexLabel::a(beta), VertexLabel::b(i)],
                    (Family::Layer0, Family::Layer1) => [lay(0, i), lay(1, alpha), lay(2, beta), lay(1, i)],
                    (Family::Layer2, Family::Layer1) => [lay(2, i), lay(1, alpha), lay(0, beta), lay(1, i)],
                    (Family::Layer0, Family::Layer3) => [lay(0, i), lay(3, alpha), lay(2, beta), lay(3, i)],
                    (Family::Layer2, Family::Layer3) => [lay(2, i), lay(3, alpha), lay(0, beta), lay(3, i)],
                    _ => unreachable!("vertex map sends guest sides to fixed layers"),
                };
                f(u, v, 1, &path);
            }
        }
    }
}

/// Embedding of `K^{(n-1)(n-2)}_{m,m'}` into the family graph: edges between
/// different indices go straight across, and the copies of each same-index
/// pair run over the 3-edge paths given by the arrangements.
pub fn build_embedding(family: GraphFamily, n: usize) -> Result<Embedding, BoundsError> {
    if n < 3 {
        return Err(BoundsError::InvalidParameter(format!("embeddings need n >= 3, got {n}")));
    }
    let (m1, m2) = family.guest_sides(n);
    let x = ((n - 1) * (n - 2)) as u64;
    let guest = multi_complete_bipartite(m1, m2, x)?;
    let host = family.graph(n)?;
    let mut map = BTreeMap::new();
    for i in 0..m1 {
        let target = match family {
            GraphFamily::Knn => VertexLabel::a(i),
            _ => VertexLabel::layer(2 * (i / n), i % n),
        };
        map.insert(VertexLabel::u(i), target);
    }
    for j in 0..m2 {
        let target = match family {
            GraphFamily::Knn => VertexLabel::b(j),
            _ => VertexLabel::layer(1 + 2 * (j / n), j % n),
        };
        map.insert(VertexLabel::v(j), target);
    }
    Ok(Embedding { guest, host, vertex_map: map, routes: RouteSet::Arrangement(family, n) })
}

pub fn build_embedding_knn(n: usize) -> Result<Embedding, BoundsError> {
    build_embedding(GraphFamily::Knn, n)
}

pub fn build_embedding_p3(n: usize) -> Result<Embedding, BoundsError> {
    build_embedding(GraphFamily::P3, n)
}

pub fn build_embedding_c4(n: usize) -> Result<Embedding, BoundsError> {
    build_embedding(GraphFamily::C4, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongestionReport {
    pub per_edge_load: BTreeMap<(VertexLabel, VertexLabel), u64>,
    pub congestion: u64,
    /// Sum over guest edge copies of the number of host edges they use.
    pub total_path_length: u64,
}

impl CongestionReport {
    /// Number of host edges carrying each load value.
    pub fn histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for &l in self.per_edge_load.values() {
            *h.entry(l).or_insert(0) += 1;
        }
        h
    }
}

/// Dense numbering of labels for the hot loop.
struct LabelIndex {
    stride: usize,
    ids: Vec<usize>,
}

impl LabelIndex {
    const NONE: usize = usize::MAX;

    fn new<'a>(labels: impl Iterator<Item = &'a VertexLabel>) -> Self {
        let labels: Vec<&VertexLabel> = labels.collect();
        let stride = labels.iter().map(|v| v.index + 1).max().unwrap_or(1);
        let mut ids = vec![Self::NONE; 8 * stride];
        for (k, v) in labels.into_iter().enumerate() {
            ids[Self::slot(stride, v)] = k;
        }
        LabelIndex { stride, ids }
    }

    fn slot(stride: usize, v: &VertexLabel) -> usize {
        v.tag as usize * stride + v.index
    }

    fn get(&self, v: &VertexLabel) -> Option<usize> {
        if v.index >= self.stride {
            return None;
        }
        let id = self.ids[Self::slot(self.stride, v)];
        (id != Self::NONE).then_some(id)
    }
}

/// Exact per-edge loads and their maximum; every path is checked against the
/// host and every guest pair must be routed with its full multiplicity.
pub fn congestion(e: &Embedding) -> Result<CongestionReport, BoundsError> {
    let bad = |msg: String| BoundsError::InvalidEmbedding(msg);
    let mut images = std::collections::BTreeSet::new();
    for g in e.guest.vertices() {
        let h = e.vertex_map.get(g).ok_or_else(|| bad(format!("{g} is not mapped")))?;
        if !e.host.contains_vertex(h) {
            return Err(bad(format!("{g} maps to {h}, which is not a host vertex")));
        }
        if !images.insert(*h) {
            return Err(bad(format!("two guest vertices map to {h}")));
        }
    }
    let hidx = LabelIndex::new(e.host.vertices());
    let hn = e.host.vertex_count();
    let mut is_edge = vec![false; hn * hn];
    for (u, v, _) in e.host.edges() {
        let (a, b) = (hidx.get(u).unwrap(), hidx.get(v).unwrap());
        is_edge[a * hn + b] = true;
        is_edge[b * hn + a] = true;
    }
    let gidx = LabelIndex::new(e.guest.vertices());
    let gn = e.guest.vertex_count();
    let image: Vec<VertexLabel> = e.guest.vertices().map(|g| e.vertex_map[g]).collect();
    let mut routed = vec![0u64; gn * gn];
    let mut loads = vec![0u64; hn * hn];
    let mut total = 0u64;
    let mut error: Option<BoundsError> = None;
    let mut used: Vec<usize> = Vec::new();

    e.for_each_route(|gu, gv, copies, path| {
        if error.is_some() {
            return;
        }
        let (Some(a), Some(b)) = (gidx.get(&gu), gidx.get(&gv)) else {
            error = Some(bad(format!("route for unknown guest pair {gu}{gv}")));
            return;
        };
        let (pu, pv) = (image[a], image[b]);
        let ends_ok = path.len() >= 2
            && ((path[0] == pu && path[path.len() - 1] == pv) || (path[0] == pv && path[path.len() - 1] == pu));
        if !ends_ok {
            error = Some(bad(format!("path for {gu}{gv} does not join {pu} and {pv}")));
            return;
        }
        used.clear();
        for w in path.windows(2) {
            let (Some(x), Some(y)) = (hidx.get(&w[0]), hidx.get(&w[1])) else {
                error = Some(bad(format!("path for {gu}{gv} leaves the host")));
                return;
            };
            if !is_edge[x * hn + y] {
                error = Some(bad(format!("{}{} is not a host edge", w[0], w[1])));
                return;
            }
            let slot = x.min(y) * hn + x.max(y);
            if !used.contains(&slot) {
                used.push(slot);
            }
        }
        for slot in &used {
            loads[*slot] += copies;
        }
        total += copies * used.len() as u64;
        routed[a.min(b) * gn + a.max(b)] += copies;
    });
    if let Some(err) = error {
        return Err(err);
    }
    for (u, v, m) in e.guest.edges() {
        let (a, b) = (gidx.get(u).unwrap(), gidx.get(v).unwrap());
        let r = routed[a.min(b) * gn + a.max(b)];
        if r != m {
            return Err(bad(format!("guest pair {u}{v} has multiplicity {m} but {r} routed copies")));
        }
    }
    if routed.iter().sum::<u64>() != e.guest.total_multiplicity() {
        return Err(bad("routes for pairs that are not guest edges".into()));
    }
    let mut per_edge_load = BTreeMap::new();
    for (u, v, _) in e.host.edges() {
        let (a, b) = (hidx.get(u).unwrap(), hidx.get(v).unwrap());
        per_edge_load.insert((*u, *v), loads[a.min(b) * hn + a.max(b)]);
    }
    let congestion = per_edge_load.values().copied().max().unwrap_or(0);
    Ok(CongestionReport { per_edge_load, congestion, total_path_length: total })
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `cr(G1)/cg² - (|V2|/2)·Δ²` for an embedding of `G1` into `G2`.
pub fn leighton_bound(cr_guest_lower: &BigRational, cg: u64, host_vertices: u64, max_degree: u64) -> Result<BigRational, BoundsError> {
    if cg == 0 {
        return Err(BoundsError::InvalidParameter("congestion must be positive".into()));
    }
    let cg = int(cg);
    let penalty = BigRational::new(BigInt::from(host_vertices), BigInt::from(2)) * int(max_degree) * int(max_degree);
    Ok(cr_guest_lower / (&cg * &cg) - penalty)
}

/// `0.8594 · Z(m, n)`, a lower bound on `cr(K_{m,n})`.
pub fn deklerk_lb(m: usize, n: usize) -> BigRational {
    deklerk_constant() * int(z_bipartite(m as i64, n as i64))
}

/// `x² · lb`: the bound for `K^x_{m,n}` from one for `K_{m,n}`.
pub fn kainen_scale(x: u64, lb: &BigRational) -> BigRational {
    int(x) * int(x) * lb
}

/// The pipeline inputs and result for one family and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineValue {
    pub guest_lower: BigRational,
    pub congestion: u64,
    pub host_vertices: u64,
    pub max_degree: u64,
    pub value: BigRational,
}

/// Lower bound from the embedding of the guest multigraph, with the
/// congestion measured rather than assumed.
pub fn leighton_pipeline(family: GraphFamily, n: usize) -> Result<PipelineValue, BoundsError> {
    let emb = build_embedding(family, n)?;
    let report = congestion(&emb)?;
    let (m1, m2) = family.guest_sides(n);
    let x = ((n - 1) * (n - 2)) as u64;
    let guest_lower = kainen_scale(x, &deklerk_lb(m1, m2));
    let host_vertices = emb.host.vertex_count() as u64;
    let max_degree = emb.host.max_degree();
    let value = leighton_bound(&guest_lower, report.congestion, host_vertices, max_degree)?;
    Ok(PipelineValue { guest_lower, congestion: report.congestion, host_vertices, max_degree, value })
}

pub fn planarity(g: &Graph) -> bool {
    let index: BTreeMap<&VertexLabel, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(index.len(), g.edge_count());
    let nodes: Vec<_> = (0..index.len()).map(|_| pg.add_node(())).collect();
    for (u, v, _) in g.edges() {
        pg.add_edge(nodes[index[u]], nodes[index[v]], ());
    }
    is_planar(&pg)
}

/// `max(0, ⌈|E| - g(|V|-2)/(g-2)⌉)`: deleting fewer edges than this cannot
/// leave a planar graph of girth `g`, and each crossing costs at most one
/// deletion.
pub fn euler_skewness_lb(g: &Graph) -> Result<u64, BoundsError> {
    if !g.is_simple() {
        return Err(BoundsError::InvalidParameter("graph must be simple".into()));
    }
    if g.vertex_count() < 3 || !g.is_connected() {
        return Err(BoundsError::InvalidParameter("graph must be connected with at least 3 vertices".into()));
    }
    let girth = g
        .girth()
        .ok_or_else(|| BoundsError::InvalidParameter("graph has no cycle".into()))? as i64;
    let (e, v) = (g.edge_count() as i64, g.vertex_count() as i64);
    let bound = BigRational::new(BigInt::from(e * (girth - 2) - girth * (v - 2)), BigInt::from(girth - 2));
    Ok(ceil_integer(&bound).to_u64().unwrap_or(0))
}

/// Where a certified lower bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerSource {
    Trivial,
    Planarity,
    Skewness,
    Congestion,
}

impl LowerSource {
    pub fn name(self) -> &'static str {
        match self {
            LowerSource::Trivial => "trivial",
            LowerSource::Planarity => "planarity",
            LowerSource::Skewness => "skewness",
            LowerSource::Congestion => "congestion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub family: GraphFamily,
    pub n: usize,
    /// Congestion bound before clamping; `None` when no embedding exists.
    pub lower_raw: Option<BigRational>,
    pub lower: BigRational,
    pub lower_source: LowerSource,
    pub upper: u64,
    pub exact: Option<u64>,
}

/// Crossings of the constructed drawing for the family.
pub fn counted_upper(family: GraphFamily, n: usize) -> Result<u64, BoundsError> {
    Ok(match family {
        GraphFamily::Knn => count_drawing(&generate_dn(n)?)?.total,
        GraphFamily::P3 | GraphFamily::C4 => {
            let width = if family == GraphFamily::P3 { 2 } else { 4 };
            let s = generate_split_drawing(n, width)?;
            split_drawing_count(&s.base, &s.meshes, width)?
        }
    })
}

/// Combines the counted upper bound with the best available lower bound.
pub fn certify(family: GraphFamily, n: usize) -> Result<CertifiedInterval, BoundsError> {
    let upper = counted_upper(family, n)?;
    let graph = family.graph(n)?;
    let mut lower = BigRational::zero();
    let mut source = LowerSource::Trivial;
    let mut lower_raw = None;
    if n >= 3 {
        let p = leighton_pipeline(family, n)?;
        let clamped = clamp_nonnegative(&p.value);
        if clamped > lower {
            lower = clamped;
            source = LowerSource::Congestion;
        }
        lower_raw = Some(p.value);
    }
    if let Ok(s) = euler_skewness_lb(&graph) {
        let s = int(s);
        if s > lower {
            lower = s;
            source = LowerSource::Skewness;
        }
    }
    if source == LowerSource::Trivial && planarity(&graph) {
        source = LowerSource::Planarity;
    }
    let ceiling = ceil_integer(&lower);
    let exact = (ceiling.is_positive() || source == LowerSource::Planarity || upper == 0)
        .then_some(())
        .and_then(|_| (ceiling >= BigInt::from(upper)).then_some(upper));
    Ok(CertifiedInterval { family, n, lower_raw, lower, lower_source: source, upper, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, cycle_graph};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn arrangements_are_lexicographic() {
        let all: Vec<(usize, usize)> = (1..=12).map(|k| {
            let a = arrangement(5, 2, k).unwrap();
            (a.alpha, a.beta)
        }).collect();
        assert_eq!(all[0], (0, 1));
        assert_eq!(all[1], (0, 3));
        assert_eq!(all[2], (0, 4));
        assert_eq!(all[3], (1, 0));
        assert_eq!(all[11], (4, 3));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
        assert!(arrangement(5, 2, 13).is_none());
        assert!(arrangement(2, 0, 1).is_none());
    }

    #[test]
    fn embedding_congestion() {
        let r = congestion(&build_embedding_knn(5).unwrap()).unwrap();
        assert_eq!(r.congestion, 21);
        assert!(r.per_edge_load.values().all(|&l| l == 21));
        assert_eq!(congestion(&build_embedding_knn(3).unwrap()).unwrap().congestion, 5);
        assert_eq!(congestion(&build_embedding_knn(6).unwrap()).unwrap().congestion, 32);
        assert_eq!(congestion(&build_embedding_p3(5).unwrap()).unwrap().congestion, 21);
        assert_eq!(congestion(&build_embedding_p3(6).unwrap()).unwrap().congestion, 32);
        assert_eq!(congestion(&build_embedding_c4(5).unwrap()).unwrap().congestion, 21);
        assert_eq!(congestion(&build_embedding_c4(7).unwrap()).unwrap().congestion, 45);
        assert!(build_embedding_knn(2).is_err());
    }

    #[test]
    fn degenerate_embeddings() {
        let g = complete_bipartite(3, 3);
        assert_eq!(congestion(&Embedding::identity(&g)).unwrap().congestion, 1);

        // Every guest edge squeezed onto one host edge.
        let guest = multi_complete_bipartite(1, 1, 7).unwrap();
        let mut host = Graph::with_vertices([VertexLabel::a(0), VertexLabel::b(0)]);
        host.add_simple_edge(VertexLabel::a(0), VertexLabel::b(0)).unwrap();
        let map = BTreeMap::from([(VertexLabel::u(0), VertexLabel::a(0)), (VertexLabel::v(0), VertexLabel::b(0))]);
        let routes = vec![GuestRoute {
            guest: (VertexLabel::u(0), VertexLabel::v(0)),
            copies: 7,
            path: vec![VertexLabel::a(0), VertexLabel::b(0)],
        }];
        let e = Embedding::explicit(guest.clone(), host.clone(), map.clone(), routes);
        assert_eq!(congestion(&e).unwrap().congestion, 7);

        let short = vec![GuestRoute {
            guest: (VertexLabel::u(0), VertexLabel::v(0)),
            copies: 6,
            path: vec![VertexLabel::a(0), VertexLabel::b(0)],
        }];
        assert!(congestion(&Embedding::explicit(guest.clone(), host.clone(), map.clone(), short)).is_err());
        let broken = vec![GuestRoute {
            guest: (VertexLabel::u(0), VertexLabel::v(0)),
            copies: 7,
            path: vec![VertexLabel::a(0), VertexLabel::a(0), VertexLabel::b(0)],
        }];
        assert!(congestion(&Embedding::explicit(guest, host, map, broken)).is_err());
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(leighton_bound(&BigRational::zero(), 1, 10, 3).unwrap(), int(-45));
        assert_eq!(leighton_bound(&int(100), 10, 0, 5).unwrap(), int(1));
        assert!(leighton_bound(&int(1), 0, 1, 1).is_err());
        assert_eq!(deklerk_lb(5, 5), rat(137504, 10000));
        assert_eq!(deklerk_lb(2, 9), BigRational::zero());
        assert_eq!(deklerk_lb(10, 5), rat(8594, 10000) * int(80));
        assert_eq!(kainen_scale(1, &rat(3, 7)), rat(3, 7));
        assert_eq!(kainen_scale(12, &deklerk_lb(5, 5)), int(144) * rat(137504, 10000));
        assert_eq!(kainen_scale(2, &BigRational::zero()), BigRational::zero());
    }

    #[test]
    fn pipeline_matches_closed_form() {
        use crate::formulas::{lb_c4, lb_knn, lb_p3};
        for n in 3..=10 {
            assert_eq!(leighton_pipeline(GraphFamily::Knn, n).unwrap().value, lb_knn(n as i64).unwrap());
            assert_eq!(leighton_pipeline(GraphFamily::P3, n).unwrap().value, lb_p3(n as i64).unwrap());
            assert_eq!(leighton_pipeline(GraphFamily::C4, n).unwrap().value, lb_c4(n as i64).unwrap());
        }
    }

    #[test]
    fn planarity_examples() {
        assert!(planarity(&knn_minus_matching(4).unwrap()));
        assert!(!planarity(&complete_bipartite(3, 3)));
        let k5 = complete_graph(5).relabel(|&i| VertexLabel::u(i));
        assert!(!planarity(&k5));
    }

    #[test]
    fn skewness_examples() {
        assert_eq!(euler_skewness_lb(&knn_minus_matching(5).unwrap()).unwrap(), 4);
        let c6 = cycle_graph(6).unwrap().relabel(|&i| VertexLabel::u(i));
        assert_eq!(euler_skewness_lb(&c6).unwrap(), 0);
        assert_eq!(euler_skewness_lb(&complete_bipartite(3, 3)).unwrap(), 1);
        assert!(euler_skewness_lb(&knn_minus_matching(2).unwrap()).is_err());
    }

    #[test]
    fn certificates() {
        let c = certify(GraphFamily::Knn, 5).unwrap();
        assert_eq!((c.upper, c.exact, c.lower_source), (4, Some(4), LowerSource::Skewness));
        assert_eq!(c.lower, int(4));
        for n in 1..=4 {
            let c = certify(GraphFamily::Knn, n).unwrap();
            assert_eq!(c.exact, Some(0));
            assert_eq!(c.lower_source, LowerSource::Planarity);
        }
        let c = certify(GraphFamily::Knn, 10).unwrap();
        assert_eq!(c.upper, 240);
        assert!(c.lower <= int(c.upper));
        assert!(c.exact.is_none());
        assert_eq!(certify(GraphFamily::C4, 3).unwrap().upper, 6);
        assert_eq!(certify(GraphFamily::P3, 2).unwrap().exact, Some(0));
    }
}
