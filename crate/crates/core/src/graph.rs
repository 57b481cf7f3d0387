//! Labelled simple graphs and multigraphs, plus the constructors for every
//! family that appears in the drawings and embeddings.
//!
//! Edges are stored once per unordered pair with an integer multiplicity, so
//! `K^x_{m,n}` with large `x` costs the same as `K_{m,n}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(String),
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Vertex families used by the constructions.
///
/// `A`/`B` are the two sides of `K_{n,n} - nK_2`, `LayerK` is the copy of
/// `K_n` sitting over vertex `k` of `P_2`, `P_3` or `C_4`, and `U`/`V` are the
/// sides of a complete bipartite multigraph (also used for plain `K_n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    Layer0,
    Layer1,
    Layer2,
    Layer3,
    U,
    V,
}

impl Family {
    pub fn layer(k: usize) -> Option<Family> {
        match k {
            0 => Some(Family::Layer0),
            1 => Some(Family::Layer1),
            2 => Some(Family::Layer2),
            3 => Some(Family::Layer3),
            _ => None,
        }
    }

    pub fn layer_index(self) -> Option<usize> {
        match self {
            Family::Layer0 => Some(0),
            Family::Layer1 => Some(1),
            Family::Layer2 => Some(2),
            Family::Layer3 => Some(3),
            _ => None,
        }
    }

    fn short(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::Layer0 => "0",
            Family::Layer1 => "1",
            Family::Layer2 => "2",
            Family::Layer3 => "3",
            Family::U => "u",
            Family::V => "v",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub tag: Family,
    pub index: usize,
}

impl VertexLabel {
    pub const fn new(tag: Family, index: usize) -> Self {
        VertexLabel { tag, index }
    }
    pub const fn a(i: usize) -> Self {
        VertexLabel::new(Family::A, i)
    }
    pub const fn b(i: usize) -> Self {
        VertexLabel::new(Family::B, i)
    }
    pub const fn u(i: usize) -> Self {
        VertexLabel::new(Family::U, i)
    }
    pub const fn v(i: usize) -> Self {
        VertexLabel::new(Family::V, i)
    }
    /// Vertex `ki` of `K_n x H`: layer `k`, index `i`.
    pub fn layer(k: usize, i: usize) -> Self {
        VertexLabel::new(Family::layer(k).expect("layer index out of range"), i)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag.layer_index() {
            Some(_) => write!(f, "{}{}", self.tag.short(), self.index),
            None => write!(f, "{}_{}", self.tag.short(), self.index),
        }
    }
}

/// Unordered pair key, smaller label first.
pub fn edge_key<L: Ord + Clone>(u: &L, v: &L) -> (L, L) {
    if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph<L: Ord + Clone = VertexLabel> {
    vertices: BTreeSet<L>,
    edges: BTreeMap<(L, L), u64>,
}

impl<L: Ord + Clone> Default for Graph<L> {
    fn default() -> Self {
        Graph {
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }
}

impl<L: Ord + Clone + fmt::Debug> Graph<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = L>>(vertices: I) -> Self {
        Graph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, v: L) {
        self.vertices.insert(v);
    }

    /// Adds `mult` parallel copies of `uv` (accumulating onto existing copies).
    pub fn add_edge(&mut self, u: L, v: L, mult: u64) -> Result<(), GraphError> {
        let key = self.checked_key(&u, &v, mult)?;
        *self.edges.entry(key).or_insert(0) += mult;
        Ok(())
    }

    /// Inserts `uv` with multiplicity one unless the pair is already present.
    pub fn add_simple_edge(&mut self, u: L, v: L) -> Result<(), GraphError> {
        let key = self.checked_key(&u, &v, 1)?;
        self.edges.entry(key).or_insert(1);
        Ok(())
    }

    fn checked_key(&self, u: &L, v: &L, mult: u64) -> Result<(L, L), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(format!("{u:?}")));
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        for w in [u, v] {
            if !self.vertices.contains(w) {
                return Err(GraphError::UnknownVertex(format!("{w:?}")));
            }
        }
        Ok(edge_key(u, v))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of distinct adjacent pairs.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &L> + '_ {
        self.vertices.iter()
    }

    pub fn contains_vertex(&self, v: &L) -> bool {
        self.vertices.contains(v)
    }

    /// Edges in sorted endpoint-pair order.
    pub fn edges(&self) -> impl Iterator<Item = (&L, &L, u64)> + '_ {
        self.edges.iter().map(|((u, v), m)| (u, v, *m))
    }

    pub fn multiplicity(&self, u: &L, v: &L) -> u64 {
        self.edges.get(&edge_key(u, v)).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, u: &L, v: &L) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&m| m == 1)
    }

    pub fn degrees(&self) -> BTreeMap<L, u64> {
        let mut deg: BTreeMap<L, u64> = self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for ((u, v), m) in &self.edges {
            *deg.get_mut(u).unwrap() += m;
            *deg.get_mut(v).unwrap() += m;
        }
        deg
    }

    pub fn degree(&self, v: &L) -> u64 {
        self.edges
            .iter()
            .filter(|((a, b), _)| a == v || b == v)
            .map(|(_, m)| *m)
            .sum()
    }

    /// Maximum degree counting multiplicities; 0 for edgeless graphs.
    pub fn max_degree(&self) -> u64 {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> BTreeMap<L, Vec<L>> {
        let mut adj: BTreeMap<L, Vec<L>> =
            self.vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        for (u, v) in self.edges.keys() {
            adj.get_mut(u).unwrap().push(v.clone());
            adj.get_mut(v).unwrap().push(u.clone());
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in &adj[&x] {
                if seen.insert(y.clone()) {
                    queue.push_back(y.clone());
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Length of a shortest cycle, or `None` for forests. Parallel edges count
    /// as 2-cycles.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.values().any(|&m| m > 1) {
            return Some(2);
        }
        let index: BTreeMap<&L, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = index.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.edges.keys() {
            adj[index[u]].push(index[v]);
            adj[index[v]].push(index[u]);
        }
        let mut best: Option<usize> = None;
        // BFS from every root; a non-tree edge closes a cycle through the root
        // of length at most dist[x] + dist[y] + 1, and the minimum over roots
        // is exact.
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn relabel<M, F>(&self, mut f: F) -> Graph<M>
    where
        M: Ord + Clone + fmt::Debug,
        F: FnMut(&L) -> M,
    {
        let mut g = Graph::with_vertices(self.vertices.iter().map(&mut f));
        for ((u, v), m) in &self.edges {
            g.add_edge(f(u), f(v), *m).expect("relabel must be injective");
        }
        g
    }
}

/// Checks that `map` is a bijection `V(g) -> V(h)` carrying `E(g)` exactly onto
/// `E(h)`, multiplicities included.
pub fn check_isomorphism_map<A, B>(g: &Graph<A>, h: &Graph<B>, map: &BTreeMap<A, B>) -> bool
where
    A: Ord + Clone + fmt::Debug,
    B: Ord + Clone + fmt::Debug,
{
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut image = BTreeSet::new();
    for v in g.vertices() {
        match map.get(v) {
            Some(w) if h.contains_vertex(w) => {
                if !image.insert(w.clone()) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    g.edges()
        .all(|(u, v, m)| h.multiplicity(&map[u], &map[v]) == m)
}

/// Direct (Kronecker) product: `(a,x) ~ (b,y)` iff `a ~ b` in `g` and `x ~ y`
/// in `h`. Both orientations of each `h`-edge are used; the result is simple.
pub fn kronecker_product<A, B>(g: &Graph<A>, h: &Graph<B>) -> Graph<(A, B)>
where
    A: Ord + Clone + fmt::Debug,
    B: Ord + Clone + fmt::Debug,
{
    let mut out = Graph::with_vertices(
        g.vertices()
            .flat_map(|a| h.vertices().map(move |x| (a.clone(), x.clone()))),
    );
    for (a, b, _) in g.edges() {
        for (x, y, _) in h.edges() {
            out.add_simple_edge((a.clone(), x.clone()), (b.clone(), y.clone()))
                .expect("product endpoints exist");
            out.add_simple_edge((a.clone(), y.clone()), (b.clone(), x.clone()))
                .expect("product endpoints exist");
        }
    }
    out
}

pub fn complete_graph(n: usize) -> Graph<usize> {
    let mut g = Graph::with_vertices(0..n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_simple_edge(i, j).unwrap();
        }
    }
    g
}

/// Path on `k` vertices.
pub fn path_graph(k: usize) -> Graph<usize> {
    let mut g = Graph::with_vertices(0..k);
    for i in 1..k {
        g.add_simple_edge(i - 1, i).unwrap();
    }
    g
}

/// Cycle on `k >= 3` vertices.
pub fn cycle_graph(k: usize) -> Result<Graph<usize>, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!("cycle needs k >= 3, got {k}")));
    }
    let mut g = path_graph(k);
    g.add_simple_edge(k - 1, 0).unwrap();
    Ok(g)
}

/// `K_n x H` with vertex `(i, x)` labelled `layer(x, i)`; `H` may have at most
/// four vertices.
pub fn kn_times(n: usize, h: &Graph<usize>) -> Result<Graph, GraphError> {
    if h.vertices().any(|&x| x > 3) {
        return Err(GraphError::InvalidParameter(
            "factor graph must have at most four vertices".into(),
        ));
    }
    Ok(kronecker_product(&complete_graph(n), h).relabel(|&(i, x)| VertexLabel::layer(x, i)))
}

pub fn kn_times_p2(n: usize) -> Graph {
    kn_times(n, &path_graph(2)).unwrap()
}

pub fn kn_times_p3(n: usize) -> Graph {
    kn_times(n, &path_graph(3)).unwrap()
}

pub fn kn_times_c4(n: usize) -> Graph {
    kn_times(n, &cycle_graph(4).unwrap()).unwrap()
}

/// `K_{n,n}` minus a perfect matching on `{a_i} ∪ {b_i}`.
pub fn knn_minus_matching(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("n must be positive".into()));
    }
    let mut g = Graph::with_vertices((0..n).flat_map(|i| [VertexLabel::a(i), VertexLabel::b(i)]));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                g.add_simple_edge(VertexLabel::a(i), VertexLabel::b(j))?;
            }
        }
    }
    Ok(g)
}

/// `K_{m,n}` on `{a_i} ∪ {b_j}`.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut g = Graph::with_vertices((0..m).map(VertexLabel::a).chain((0..n).map(VertexLabel::b)));
    for i in 0..m {
        for j in 0..n {
            g.add_simple_edge(VertexLabel::a(i), VertexLabel::b(j)).unwrap();
        }
    }
    g
}

/// `K^x_{m,n}` on `{u_i} ∪ {v_j}`: every cross pair joined by `x` parallel edges.
pub fn multi_complete_bipartite(m: usize, n: usize, x: u64) -> Result<Graph, GraphError> {
    if m == 0 || n == 0 || x == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "K^x_(m,n) needs positive arguments, got m={m} n={n} x={x}"
        )));
    }
    let mut g = Graph::with_vertices((0..m).map(VertexLabel::u).chain((0..n).map(VertexLabel::v)));
    for i in 0..m {
        for j in 0..n {
            g.add_edge(VertexLabel::u(i), VertexLabel::v(j), x)?;
        }
    }
    Ok(g)
}

/// The isomorphism `K_n x P_2 -> K_{n,n} - nK_2`, `0i -> a_i`, `1i -> b_i`.
pub fn p2_to_knn_map(n: usize) -> BTreeMap<VertexLabel, VertexLabel> {
    (0..n)
        .flat_map(|i| {
            [
                (VertexLabel::layer(0, i), VertexLabel::a(i)),
                (VertexLabel::layer(1, i), VertexLabel::b(i)),
            ]
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord<L> {
    u: L,
    v: L,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct GraphRecord<L> {
    vertices: Vec<L>,
    edges: Vec<EdgeRecord<L>>,
}

impl<L: Ord + Clone + Serialize> Serialize for Graph<L> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRecord {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|((u, v), m)| EdgeRecord {
                    u: u.clone(),
                    v: v.clone(),
                    mult: *m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, L> Deserialize<'de> for Graph<L>
where
    L: Ord + Clone + fmt::Debug + Deserialize<'de>,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = GraphRecord::<L>::deserialize(d)?;
        let mut g = Graph::with_vertices(rec.vertices);
        for e in rec.edges {
            g.add_edge(e.u, e.v, e.mult).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_k3_p2_is_six_cycle() {
        let g = kronecker_product(&complete_graph(3), &path_graph(2));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!(g.degrees().values().all(|&d| d == 2));
        assert!(g.is_connected());
        assert_eq!(g.girth(), Some(6));
    }

    #[test]
    fn kronecker_small_c4_products() {
        let k1 = kn_times_c4(1);
        assert_eq!((k1.vertex_count(), k1.edge_count()), (4, 0));
        let k2 = kn_times_c4(2);
        assert_eq!((k2.vertex_count(), k2.edge_count()), (8, 8));
        assert!(!k2.is_connected());
        assert!(k2.degrees().values().all(|&d| d == 2));
        assert_eq!(k2.girth(), Some(4));
    }

    #[test]
    fn knn_minus_matching_basics() {
        let g2 = knn_minus_matching(2).unwrap();
        let edges: Vec<_> = g2.edges().map(|(u, v, _)| (*u, *v)).collect();
        assert_eq!(
            edges,
            vec![(VertexLabel::a(0), VertexLabel::b(1)), (VertexLabel::a(1), VertexLabel::b(0))]
        );
        let g5 = knn_minus_matching(5).unwrap();
        assert_eq!(g5.edge_count(), 20);
        assert!(g5.degrees().values().all(|&d| d == 4));
        assert_eq!(knn_minus_matching(0), Err(GraphError::InvalidParameter("n must be positive".into())));
    }

    #[test]
    fn knn3_is_hexagon() {
        let g = knn_minus_matching(3).unwrap();
        let c6 = cycle_graph(6).unwrap();
        // a0 b1 a2 b0 a1 b2 a0
        let order = [
            VertexLabel::a(0),
            VertexLabel::b(1),
            VertexLabel::a(2),
            VertexLabel::b(0),
            VertexLabel::a(1),
            VertexLabel::b(2),
        ];
        let map: BTreeMap<_, _> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        assert!(check_isomorphism_map(&g, &c6, &map));
    }

    #[test]
    fn multi_bipartite() {
        let c4 = multi_complete_bipartite(2, 2, 1).unwrap();
        assert_eq!(c4.girth(), Some(4));
        assert_eq!(c4.edge_count(), 4);
        let k = multi_complete_bipartite(5, 5, 12).unwrap();
        assert_eq!(k.total_multiplicity(), 300);
        assert!(k.edges().all(|(_, _, m)| m == 12));
        let single = multi_complete_bipartite(1, 1, 3).unwrap();
        assert_eq!(single.multiplicity(&VertexLabel::u(0), &VertexLabel::v(0)), 3);
        assert!(multi_complete_bipartite(0, 2, 1).is_err());
        assert!(multi_complete_bipartite(2, 2, 0).is_err());
    }

    #[test]
    fn isomorphism_map_checks() {
        let g = knn_minus_matching(6).unwrap();
        let p2 = kn_times_p2(6);
        assert!(check_isomorphism_map(&p2, &g, &p2_to_knn_map(6)));
        let ident: BTreeMap<_, _> = g.vertices().map(|v| (*v, *v)).collect();
        assert!(check_isomorphism_map(&g, &g, &ident));

        let k33 = complete_bipartite(3, 3);
        let p3 = kn_times_p2(3);
        assert!(!check_isomorphism_map(&p3, &k33, &p2_to_knn_map(3)));

        // non-injective map
        let mut bad = p2_to_knn_map(6);
        bad.insert(VertexLabel::layer(0, 1), VertexLabel::a(0));
        assert!(!check_isomorphism_map(&p2, &g, &bad));
    }

    #[test]
    fn girth_and_degree_examples() {
        assert_eq!(knn_minus_matching(5).unwrap().girth(), Some(4));
        assert_eq!(cycle_graph(6).unwrap().girth(), Some(6));
        assert_eq!(path_graph(3).girth(), None);
        assert_eq!(knn_minus_matching(7).unwrap().max_degree(), 6);
        assert_eq!(kn_times_p3(7).max_degree(), 12);
        assert_eq!(complete_graph(1).max_degree(), 0);
        assert_eq!(multi_complete_bipartite(1, 1, 3).unwrap().girth(), Some(2));
    }

    #[test]
    fn add_edge_rejects_bad_input() {
        let mut g: Graph<usize> = Graph::with_vertices(0..2);
        assert!(matches!(g.add_edge(0, 0, 1), Err(GraphError::SelfLoop(_))));
        assert!(matches!(g.add_edge(0, 5, 1), Err(GraphError::UnknownVertex(_))));
        assert_eq!(g.add_edge(0, 1, 0), Err(GraphError::ZeroMultiplicity));
    }

    #[test]
    fn json_layout() {
        let g = knn_minus_matching(2).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":[{"tag":"a","index":0},{"tag":"a","index":1},{"tag":"b","index":0},{"tag":"b","index":1}],"edges":[{"u":{"tag":"a","index":0},"v":{"tag":"b","index":1},"mult":1},{"u":{"tag":"a","index":1},"v":{"tag":"b","index":0},"mult":1}]}"#
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(
            r#"{"vertices":[{"tag":"a","index":0}],"edges":[{"u":{"tag":"a","index":0},"v":{"tag":"a","index":0},"mult":1}]}"#
        )
        .is_err());
    }
}
