//! Half-edge graphs.
//!
//! Every geometric edge `{u, v}` is stored as two oriented half-edges `e`
//! and `bar(e)` with `origin(e) = terminus(bar(e))`. A loop at `v` is two
//! half-edges that both start and end at `v`, so it adds 2 to `deg(v)`.
//! Edge `k` of the input list becomes half-edges `2k` (u to v) and
//! `2k + 1` (v to u).

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub id: usize,
    pub origin: usize,
    pub terminus: usize,
    pub bar: usize,
}

/// An immutable finite graph in half-edge form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    half_edges: Vec<HalfEdge>,
    outgoing: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an undirected edge list. Repeated pairs become
    /// parallel edges and `(v, v)` becomes a loop.
    pub fn build(edges: &[(usize, usize)], vertex_count: usize) -> Result<Self> {
        Self::build_named("graph", edges, vertex_count)
    }

    pub fn build_named(
        name: impl Into<String>,
        edges: &[(usize, usize)],
        vertex_count: usize,
    ) -> Result<Self> {
        let mut half_edges = Vec::with_capacity(2 * edges.len());
        let mut outgoing = vec![Vec::new(); vertex_count];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge {k} = [{u}, {v}] has an endpoint outside 0..{vertex_count}"
                )));
            }
            let fwd = 2 * k;
            let back = fwd + 1;
            half_edges.push(HalfEdge {
                id: fwd,
                origin: u,
                terminus: v,
                bar: back,
            });
            half_edges.push(HalfEdge {
                id: back,
                origin: v,
                terminus: u,
                bar: fwd,
            });
            outgoing[u].push(fwd);
            outgoing[v].push(back);
        }
        Ok(Self {
            name: name.into(),
            vertex_count,
            edges: edges.to_vec(),
            half_edges,
            outgoing,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Geometric edges in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, id: usize) -> &HalfEdge {
        &self.half_edges[id]
    }

    #[inline]
    pub fn bar(&self, e: usize) -> usize {
        self.half_edges[e].bar
    }

    #[inline]
    pub fn origin(&self, e: usize) -> usize {
        self.half_edges[e].origin
    }

    #[inline]
    pub fn terminus(&self, e: usize) -> usize {
        self.half_edges[e].terminus
    }

    /// `E_x`: the half-edges whose origin is `x`.
    #[inline]
    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        self.outgoing[x].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.outgoing.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.outgoing.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.outgoing.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Vertices minus geometric edges.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_multi_edges()
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.outgoing.first()?.len();
        self.outgoing.iter().all(|o| o.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &e in &self.outgoing[x] {
                let y = self.terminus(e);
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Checks the half-edge axioms: `bar` is a fixed-point-free involution
    /// that swaps origin and terminus.
    pub fn check_invariants(&self) -> Result<()> {
        if self.half_edges.len() % 2 != 0 {
            return Err(Error::Input("odd number of half-edges".into()));
        }
        for (id, he) in self.half_edges.iter().enumerate() {
            if he.id != id {
                return Err(Error::Input(format!("half-edge {id} carries id {}", he.id)));
            }
            if he.origin >= self.vertex_count || he.terminus >= self.vertex_count {
                return Err(Error::Input(format!("half-edge {id} leaves the vertex range")));
            }
            let bar = self
                .half_edges
                .get(he.bar)
                .ok_or_else(|| Error::Input(format!("half-edge {id} has dangling bar")))?;
            if he.bar == id || bar.bar != id {
                return Err(Error::Input(format!("bar is not an involution at {id}")));
            }
            if he.origin != bar.terminus {
                return Err(Error::Input(format!("o(e) != t(bar e) at {id}")));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            name: self.name.clone(),
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGraphFile = serde_json::from_str(text)?;
        raw.into_graph()
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (|V| = {}, |E| = {})",
            self.name,
            self.vertex_count,
            self.edges.len()
        )
    }
}

/// On-disk graph format: `{"name": .., "vertices": n, "edges": [[u, v], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

// Edges are read loosely so errors can name the offending index.
#[derive(Deserialize)]
struct RawGraphFile {
    name: String,
    vertices: usize,
    edges: Vec<Vec<i64>>,
}

impl RawGraphFile {
    fn into_graph(self) -> Result<Graph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, pair) in self.edges.iter().enumerate() {
            let &[u, v] = pair.as_slice() else {
                return Err(Error::Input(format!(
                    "edge {k}: expected a pair [u, v], found {} entries",
                    pair.len()
                )));
            };
            let in_range = |w: i64| w >= 0 && (w as u64) < self.vertices as u64;
            if !in_range(u) || !in_range(v) {
                return Err(Error::Input(format!(
                    "edge {k} = [{u}, {v}] has an endpoint outside 0..{}",
                    self.vertices
                )));
            }
            edges.push((u as usize, v as usize));
        }
        Graph::build_named(self.name, &edges, self.vertices)
    }
}

/// Findings about the standing assumptions of the formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub simple: bool,
    pub min_degree: usize,
    pub max_degree: usize,
    pub euler_characteristic: i64,
    pub violations: Vec<String>,
}

impl ValidationReport {
    /// True when every vertex has degree at least 2 and the graph is connected.
    pub fn formula_ready(&self) -> bool {
        self.connected && self.min_degree >= 2
    }
}

pub fn validate(g: &Graph) -> ValidationReport {
    let mut violations = Vec::new();
    let connected = g.is_connected();
    if !connected {
        violations.push("graph is not connected".to_string());
    }
    if g.has_loops() {
        violations.push("graph has loops".to_string());
    }
    if g.has_multi_edges() {
        violations.push("graph has multiple edges".to_string());
    }
    for x in 0..g.vertex_count() {
        match g.degree(x) {
            0 => violations.push(format!("isolated vertex {x}")),
            1 => violations.push(format!("degree-1 vertex {x}")),
            _ => {}
        }
    }
    ValidationReport {
        connected,
        simple: g.is_simple(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        euler_characteristic: g.euler_characteristic(),
        violations,
    }
}

/// Rejects graphs with degree-1 (or isolated) vertices or that are disconnected.
pub fn require_formula_assumptions(g: &Graph) -> Result<()> {
    if let Some(x) = (0..g.vertex_count()).find(|&x| g.degree(x) < 2) {
        return Err(Error::Assumption(format!(
            "vertex {x} has degree {} (< 2)",
            g.degree(x)
        )));
    }
    if !g.is_connected() {
        return Err(Error::Assumption("graph is not connected".into()));
    }
    Ok(())
}

pub fn require_simple(g: &Graph) -> Result<()> {
    if g.has_loops() {
        return Err(Error::NonSimple(format!("{} has loops", g.name())));
    }
    if g.has_multi_edges() {
        return Err(Error::NonSimple(format!("{} has multiple edges", g.name())));
    }
    Ok(())
}

pub fn check_vertex(g: &Graph, x: usize) -> Result<()> {
    if x < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "vertex {x} outside 0..{}",
            g.vertex_count()
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Cycle,
    Complete,
    CompleteBipartite,
    Petersen,
    Bowtie,
    TreeBall,
    GridBall,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "cycle" => Self::Cycle,
            "complete" => Self::Complete,
            "complete_bipartite" => Self::CompleteBipartite,
            "petersen" => Self::Petersen,
            "bowtie" => Self::Bowtie,
            "tree_ball" => Self::TreeBall,
            "grid_ball" => Self::GridBall,
            other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        })
    }
}

/// A named graph family and its integer parameters.
///
/// | kind                 | parameters           |
/// |----------------------|----------------------|
/// | `cycle`              | `n >= 3`             |
/// | `complete`           | `n >= 1`             |
/// | `complete_bipartite` | `a >= 1, b >= 1`     |
/// | `petersen`, `bowtie` | none                 |
/// | `tree_ball`          | degree `d >= 2`, radius `r >= 1` |
/// | `grid_ball`          | dimension `d >= 1`, radius `r >= 1` |
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub parameters: Vec<usize>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, parameters: &[usize]) -> Self {
        Self {
            kind,
            parameters: parameters.to_vec(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(FamilyKind::Cycle, &[n])
    }

    pub fn complete(n: usize) -> Self {
        Self::new(FamilyKind::Complete, &[n])
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(FamilyKind::CompleteBipartite, &[a, b])
    }

    pub fn petersen() -> Self {
        Self::new(FamilyKind::Petersen, &[])
    }

    pub fn bowtie() -> Self {
        Self::new(FamilyKind::Bowtie, &[])
    }

    pub fn tree_ball(degree: usize, radius: usize) -> Self {
        Self::new(FamilyKind::TreeBall, &[degree, radius])
    }

    pub fn grid_ball(dimension: usize, radius: usize) -> Self {
        Self::new(FamilyKind::GridBall, &[dimension, radius])
    }

    fn expect_params(&self, count: usize) -> Result<&[usize]> {
        if self.parameters.len() == count {
            Ok(&self.parameters)
        } else {
            Err(Error::InvalidFamily(format!(
                "{:?} takes {count} parameter(s), got {}",
                self.kind,
                self.parameters.len()
            )))
        }
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    let bad = |msg: String| Err(Error::InvalidFamily(msg));
    match spec.kind {
        FamilyKind::Cycle => {
            let n = spec.expect_params(1)?[0];
            if n < 3 {
                return bad(format!("cycle needs n >= 3, got {n}"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::build_named(format!("cycle({n})"), &edges, n)
        }
        FamilyKind::Complete => {
            let n = spec.expect_params(1)?[0];
            if n < 1 {
                return bad("complete graph needs n >= 1".into());
            }
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j));
                }
            }
            Graph::build_named(format!("complete({n})"), &edges, n)
        }
        FamilyKind::CompleteBipartite => {
            let p = spec.expect_params(2)?;
            let (a, b) = (p[0], p[1]);
            if a < 1 || b < 1 {
                return bad(format!("complete_bipartite needs a, b >= 1, got {a}, {b}"));
            }
            let mut edges = Vec::new();
            for i in 0..a {
                for j in 0..b {
                    edges.push((i, a + j));
                }
            }
            Graph::build_named(format!("complete_bipartite({a},{b})"), &edges, a + b)
        }
        FamilyKind::Petersen => {
            spec.expect_params(0)?;
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
            }
            for i in 0..5 {
                edges.push((i, i + 5));
            }
            for i in 0..5 {
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::build_named("petersen", &edges, 10)
        }
        FamilyKind::Bowtie => {
            spec.expect_params(0)?;
            let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];
            Graph::build_named("bowtie", &edges, 5)
        }
        FamilyKind::TreeBall => {
            let p = spec.expect_params(2)?;
            let (d, r) = (p[0], p[1]);
            if d < 2 || r < 1 {
                return bad(format!("tree_ball needs d >= 2 and r >= 1, got {d}, {r}"));
            }
            let edges = tree_ball_edges(d, r);
            Graph::build_named(format!("tree_ball({d},{r})"), &edges, tree_ball_size(d, r))
        }
        FamilyKind::GridBall => {
            let p = spec.expect_params(2)?;
            let (d, r) = (p[0], p[1]);
            if d < 1 || r < 1 {
                return bad(format!("grid_ball needs d >= 1 and r >= 1, got {d}, {r}"));
            }
            let (n, edges) = grid_ball_edges(d, r);
            Graph::build_named(format!("grid_ball({d},{r})"), &edges, n)
        }
    }
}

fn tree_ball_size(d: usize, r: usize) -> usize {
    let mut total = 1;
    let mut layer = d;
    for _ in 0..r {
        total += layer;
        layer *= d - 1;
    }
    total
}

// Vertices are labeled breadth-first: root 0, then its d children, and so on.
fn tree_ball_edges(d: usize, r: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_label = 1;
    for depth in 0..r {
        let children = if depth == 0 { d } else { d - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_label));
                next.push(next_label);
                next_label += 1;
            }
        }
        frontier = next;
    }
    edges
}

// Points of Z^d with |p|_1 <= r, labeled in breadth-first order from the
// origin; neighbors are visited as +e1, -e1, +e2, -e2, ...
fn grid_ball_edges(d: usize, r: usize) -> (usize, Vec<(usize, usize)>) {
    use std::collections::HashMap;

    let origin = vec![0i64; d];
    let mut label: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut points = vec![origin.clone()];
    label.insert(origin, 0);
    let mut head = 0;
    while head < points.len() {
        let p = points[head].clone();
        head += 1;
        for axis in 0..d {
            for step in [1i64, -1] {
                let mut q = p.clone();
                q[axis] += step;
                if q.iter().map(|c| c.unsigned_abs()).sum::<u64>() as usize <= r
                    && !label.contains_key(&q)
                {
                    label.insert(q.clone(), points.len());
                    points.push(q);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for axis in 0..d {
            let mut q = p.clone();
            q[axis] += 1;
            if let Some(&j) = label.get(&q) {
                edges.push((i, j));
            }
        }
    }
    (points.len(), edges)
}

/// Induced subgraph on the vertices within distance `r` of `x0`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub graph: Graph,
    /// `vertex_map[new] = old`; `x0` is always new vertex 0.
    pub vertex_map: Vec<usize>,
}

impl Ball {
    pub fn to_original(&self, v: usize) -> usize {
        self.vertex_map[v]
    }
}

pub fn ball(g: &Graph, x0: usize, r: usize) -> Result<Ball> {
    check_vertex(g, x0)?;
    let mut new_label = vec![None; g.vertex_count()];
    let mut vertex_map = vec![x0];
    new_label[x0] = Some(0);
    let mut depth = vec![0usize];
    let mut head = 0;
    while head < vertex_map.len() {
        let x = vertex_map[head];
        let dx = depth[head];
        head += 1;
        if dx == r {
            continue;
        }
        for &e in g.outgoing(x) {
            let y = g.terminus(e);
            if new_label[y].is_none() {
                new_label[y] = Some(vertex_map.len());
                vertex_map.push(y);
                depth.push(dx + 1);
            }
        }
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((new_label[u]?, new_label[v]?)))
        .collect();
    let graph = Graph::build_named(
        format!("ball({}, {x0}, {r})", g.name()),
        &edges,
        vertex_map.len(),
    )?;
    Ok(Ball { graph, vertex_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normalized(g: &Graph) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e
    }

    #[test]
    fn triangle() {
        let g = Graph::build(&[(0, 1), (1, 2), (2, 0)], 3).unwrap();
        assert_eq!(g.half_edges().len(), 6);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn single_vertex_and_loop() {
        let g = Graph::build(&[], 1).unwrap();
        assert_eq!(g.half_edges().len(), 0);
        let g = Graph::build(&[(0, 0)], 1).unwrap();
        assert_eq!(g.half_edges().len(), 2);
        assert_eq!(g.degree(0), 2);
        g.check_invariants().unwrap();
        assert!(!g.is_simple());
    }

    #[test]
    fn out_of_range_endpoint() {
        let err = Graph::build(&[(0, 1), (1, 3)], 3).unwrap_err();
        assert!(err.to_string().contains("edge 1"), "{err}");
    }

    #[test]
    fn validate_k4_path_bowtie() {
        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let rep = validate(&k4);
        assert!(rep.connected && rep.simple);
        assert_eq!((rep.min_degree, rep.max_degree), (3, 3));
        assert_eq!(rep.euler_characteristic, -2);
        assert!(rep.violations.is_empty());

        let path = Graph::build(&[(0, 1), (1, 2)], 3).unwrap();
        let rep = validate(&path);
        assert!(rep.violations.iter().any(|v| v == "degree-1 vertex 0"));
        assert!(rep.violations.iter().any(|v| v == "degree-1 vertex 2"));
        assert!(!rep.formula_ready());

        let bowtie = make_family(&FamilySpec::bowtie()).unwrap();
        let rep = validate(&bowtie);
        assert!(rep.simple);
        assert_eq!((rep.min_degree, rep.max_degree), (2, 4));
        assert_eq!(rep.euler_characteristic, -1);
    }

    #[test]
    fn families() {
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
        assert_eq!(c6.regular_degree(), Some(2));

        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        assert_eq!(k4.regular_degree(), Some(3));

        let t = make_family(&FamilySpec::tree_ball(3, 2)).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (10, 9));

        let p = make_family(&FamilySpec::petersen()).unwrap();
        assert_eq!(p.regular_degree(), Some(3));
        assert!(p.is_simple());

        let k33 = make_family(&FamilySpec::complete_bipartite(3, 3)).unwrap();
        assert_eq!(k33.regular_degree(), Some(3));

        let grid = make_family(&FamilySpec::grid_ball(2, 3)).unwrap();
        // 1 + 4 + 8 + 12 lattice points, 2 * (sum over rows) edges
        assert_eq!(grid.vertex_count(), 25);
        assert_eq!(grid.degree(0), 4);
        assert!(grid.is_simple());
    }

    #[test]
    fn invalid_families() {
        assert!(make_family(&FamilySpec::cycle(2)).is_err());
        assert!(make_family(&FamilySpec::tree_ball(1, 2)).is_err());
        assert!(make_family(&FamilySpec::tree_ball(3, 0)).is_err());
        assert!(make_family(&FamilySpec::new(FamilyKind::Petersen, &[1])).is_err());
    }

    #[test]
    fn balls() {
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        let b = ball(&c6, 0, 1).unwrap();
        let mut verts = b.vertex_map.clone();
        verts.sort_unstable();
        assert_eq!(verts, vec![0, 1, 5]);
        assert_eq!(b.graph.edge_count(), 2);

        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let b = ball(&k4, 0, 1).unwrap();
        assert_eq!(normalized(&b.graph), normalized(&k4));

        let t3 = make_family(&FamilySpec::tree_ball(3, 3)).unwrap();
        let t2 = make_family(&FamilySpec::tree_ball(3, 2)).unwrap();
        let b = ball(&t3, 0, 2).unwrap();
        assert_eq!(normalized(&b.graph), normalized(&t2));
    }

    #[test]
    fn ball_matches_bfs() {
        let grid = make_family(&FamilySpec::grid_ball(2, 4)).unwrap();
        for r in 0..5 {
            let b = ball(&grid, 3, r).unwrap();
            let dist = grid.distances_from(3);
            let expected = dist.iter().filter(|d| d.is_some_and(|d| d <= r)).count();
            assert_eq!(b.graph.vertex_count(), expected);
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let text = r#"{"name":"k3+","vertices":3,"edges":[[0,1],[1,2],[2,0],[0,1],[2,2]]}"#;
        let g = Graph::from_json(text).unwrap();
        assert_eq!(g.to_json(), text);
        assert_eq!(g.degree(2), 4);
    }

    #[test]
    fn json_errors_name_the_edge() {
        let err = Graph::from_json(r#"{"name":"x","vertices":2,"edges":[[0,1],[1,5]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("edge 1"), "{err}");
        let err =
            Graph::from_json(r#"{"name":"x","vertices":2,"edges":[[0,1,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("edge 0"), "{err}");
    }
}
