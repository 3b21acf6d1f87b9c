//! Simple undirected graphs on the vertex set `0..n`, stored as packed
//! adjacency rows, together with the generators used throughout the crate.

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::error::{Error, Result};

/// An undirected loopless graph on `0..n`.
///
/// Row `v` of the adjacency has bit `u` set iff `{u, v}` is an edge. Every
/// constructor maintains symmetry and an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// The packed neighborhood row of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n(), |u, v| !self.has_edge(u, v))
    }

    /// Adjacency rows as machine words. Only valid for `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "mask view needs n <= 64");
        self.adj
            .iter()
            .map(|row| row.ones().fold(0u64, |m, u| m | (1 << u)))
            .collect()
    }

    /// Subgraph induced by `vertices`, reindexed in increasing original-id
    /// order. Returns the graph and the map new id → original id.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let g = Graph::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]));
        (g, keep)
    }

    /// The graph with vertex `perm[i]` renamed to `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_fn(self.n(), |i, j| self.has_edge(perm[i], perm[j]))
    }

    /// Checks symmetry and the empty diagonal on the bit rows.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        self.adj.iter().enumerate().all(|(v, row)| {
            row.len() == n && !row.contains(v) && row.ones().all(|u| self.adj[u].contains(v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for u in self.adj[v].ones() {
                if !seen.put(u) {
                    stack.push(u);
                }
            }
        }
        seen.count_ones(..) == n
    }

    /// Connected components of the subgraph induced by `within`, each sorted,
    /// ordered by minimum vertex.
    pub fn components_within(&self, within: &FixedBitSet) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n());
        let mut out = Vec::new();
        for s in within.ones() {
            if seen.put(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.adj[v].intersection(within) {
                    if !seen.put(u) {
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Serializes to the edge-list text format: a `n m` header followed by one
    /// `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format. Blank lines and `#` comments are
    /// ignored; duplicate edges collapse.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_pair(hl, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let [u, v] = parse_pair(line, l)?;
            if u >= n || v >= n || u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("bad edge {u} {v} for n = {n}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }
}

fn parse_pair(line: usize, l: &str) -> Result<[usize; 2]> {
    let mut it = l.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok([a, b]),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected two non-negative integers, got `{l}`"),
        }),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A directed graph on `0..n` without loops.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    /// The underlying undirected graph; fails unless the arc relation is
    /// symmetric.
    pub fn into_undirected(self) -> Result<Graph> {
        if let Some((u, v)) = self.arcs().find(|&(u, v)| !self.has_arc(v, u)) {
            return Err(Error::Input(format!(
                "arc ({u}, {v}) has no reverse arc; the relation is not symmetric"
            )));
        }
        Ok(Graph { adj: self.out })
    }

    /// Every arc is topologically consistent with a strict order, i.e. no
    /// directed cycle exists.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.arcs() {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for u in self.out[v].ones() {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    stack.push(u);
                }
            }
        }
        seen == n
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=", self.n())?;
        f.debug_list().entries(self.arcs()).finish()?;
        write!(f, ")")
    }
}

/// A graph together with a linear order on its vertices.
///
/// `order[i]` is the vertex at position `i`. The width of the order is
/// computed on first request and cached.
#[derive(Clone)]
pub struct OrderedGraph {
    graph: Graph,
    order: Vec<usize>,
    position: Vec<usize>,
    width: OnceLock<usize>,
}

impl OrderedGraph {
    pub fn new(graph: Graph, order: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        if order.len() != n {
            return Err(Error::Input(format!(
                "order lists {} vertices, graph has {n}",
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::Input(format!(
                    "order is not a permutation of 0..{n} (offending entry {v})"
                )));
            }
            position[v] = i;
        }
        Ok(OrderedGraph {
            graph,
            order,
            position,
            width: OnceLock::new(),
        })
    }

    /// The graph under its natural order `0, 1, …, n−1`.
    pub fn identity(graph: Graph) -> Self {
        let n = graph.n();
        OrderedGraph::new(graph, (0..n).collect()).expect("identity is a permutation")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    pub fn position_of(&self, v: usize) -> usize {
        self.position[v]
    }

    /// The graph relabeled so that vertex ids coincide with positions.
    pub fn position_graph(&self) -> Graph {
        self.graph.relabel(&self.order)
    }

    /// Maximum cut-rank over the proper prefixes of the order.
    pub fn width(&self) -> usize {
        *self
            .width
            .get_or_init(|| crate::width::prefix_width(&self.graph, &self.order))
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGraph")
            .field("graph", &self.graph)
            .field("order", &self.order)
            .finish()
    }
}

// --- generators -----------------------------------------------------------

pub fn path(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1)
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1 || (n >= 3 && u == 0 && v == n - 1))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

/// The half-graph of order `k`: `a_i = i−1`, `b_j = k+j−1`, with `{a_i, b_j}`
/// an edge iff `i ≤ j`.
pub fn half_graph(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Input("half-graph order must be at least 1".into()));
    }
    Ok(Graph::from_fn(2 * k, |u, v| u < k && v >= k && u <= v - k))
}

/// `H_{n,m}` on vertices `v_{i,j}` (id `(i−1)·m + (j−1)`): `v_{i,j}` and
/// `v_{i+1,j'}` are adjacent iff `j' ≤ j`. With `tilde`, every row is also a
/// clique.
pub fn lozin_h(rows: usize, cols: usize, tilde: bool) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::Input(format!(
            "Lozin graph needs positive dimensions, got {rows}×{cols}"
        )));
    }
    Ok(Graph::from_fn(rows * cols, |x, y| {
        let (i, j) = (x / cols, x % cols);
        let (i2, j2) = (y / cols, y % cols);
        // x < y, so i <= i2
        (i2 == i + 1 && j2 <= j) || (tilde && i == i2)
    }))
}

/// The lexicographic product `G • H`; vertex `(u, v)` gets id `u·|H| + v`.
pub fn lex_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::Input("lexicographic product needs nonempty factors".into()));
    }
    let k = h.n();
    Ok(Graph::from_fn(g.n() * k, |x, y| {
        let (u, v) = (x / k, x % k);
        let (s, t) = (y / k, y % k);
        g.has_edge(u, s) || (u == s && h.has_edge(v, t))
    }))
}

/// `G ⊗ K1`: adds vertex `n` adjacent to every vertex of `G`.
pub fn join_apex(g: &Graph) -> Graph {
    let n = g.n();
    Graph::from_fn(n + 1, |u, v| v == n || g.has_edge(u, v))
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Parses the short family names `Kn`, `Pn`, `Cn`, `En` (edgeless) used by the
/// CLI and the test corpus.
pub fn named(name: &str) -> Result<Graph> {
    let bad = || Error::Input(format!("unknown graph name `{name}` (expected Kn, Pn, Cn or En)"));
    let (kind, num) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let n: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "K" => Ok(complete(n)),
        "P" => Ok(path(n)),
        "C" if n >= 3 => Ok(cycle(n)),
        "E" => Ok(Graph::empty(n)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_constructor() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert!(k2.has_edge(1, 0));
        assert_eq!(Graph::from_edge_list(3, &[]).unwrap().edge_count(), 0);
        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (2, 1)]).unwrap();
        assert_eq!(p4, path(4));
        assert!(matches!(Graph::from_edge_list(2, &[(0, 2)]), Err(Error::Input(_))));
        assert!(matches!(Graph::from_edge_list(2, &[(1, 1)]), Err(Error::Input(_))));
    }

    #[test]
    fn half_graph_shape() {
        let h1 = half_graph(1).unwrap();
        assert_eq!(h1.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(half_graph(3).unwrap().edge_count(), 6);
        let h2 = half_graph(2).unwrap();
        // a1, a2, b1, b2
        assert_eq!(
            (0..4).map(|v| h2.degree(v)).collect::<Vec<_>>(),
            vec![2, 1, 1, 2]
        );
        assert!(half_graph(0).is_err());
    }

    #[test]
    fn half_graph_prefix_restriction() {
        let k = 5;
        let h = half_graph(k).unwrap();
        for j in 1..=k {
            let keep: Vec<usize> = (0..j).chain(k..k + j).collect();
            let (sub, _) = h.induced_subgraph(&keep);
            assert_eq!(sub, half_graph(j).unwrap());
        }
    }

    #[test]
    fn lozin_examples() {
        assert_eq!(lozin_h(1, 3, false).unwrap().edge_count(), 0);
        let h22 = lozin_h(2, 2, false).unwrap();
        // v11=0, v12=1, v21=2, v22=3
        assert_eq!(h22.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2), (1, 3)]);
        assert_eq!(lozin_h(1, 3, true).unwrap(), complete(3));
        assert!(lozin_h(0, 3, false).is_err());
    }

    #[test]
    fn lex_product_examples() {
        assert_eq!(lex_product(&complete(2), &complete(2)).unwrap(), complete(4));
        let p = lex_product(&path(3), &complete(2)).unwrap();
        assert_eq!(p.n(), 6);
        assert_eq!(p.edge_count(), 2 * 4 + 3);
        assert_eq!(lex_product(&cycle(5), &Graph::empty(1)).unwrap(), cycle(5));
        assert!(lex_product(&Graph::empty(0), &path(2)).is_err());
    }

    #[test]
    fn lex_product_is_associative() {
        let f = path(3);
        let left = lex_product(&lex_product(&f, &f).unwrap(), &f).unwrap();
        let right = lex_product(&f, &lex_product(&f, &f).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn apex_examples() {
        assert_eq!(join_apex(&Graph::empty(1)), complete(2));
        let star = join_apex(&Graph::empty(3));
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(3), 3);
        assert_eq!(join_apex(&path(4)).edge_count(), 7);
    }

    #[test]
    fn induced_examples() {
        assert_eq!(path(4).induced_subgraph(&[0, 1]).0, complete(2));
        assert_eq!(complete(4).induced_subgraph(&[3, 0, 2]).0, complete(3));
        let (sub, map) = half_graph(3).unwrap().induced_subgraph(&[0, 1, 3, 4]);
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(sub, half_graph(2).unwrap());
    }

    #[test]
    fn edge_list_text_roundtrip() {
        let g = lozin_h(2, 3, true).unwrap();
        let text = g.to_edge_list();
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        let commented = "# a path\n3 2\n\n0 1 # first\n1 2\n";
        assert_eq!(Graph::parse_edge_list(commented).unwrap(), path(3));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 1\n0 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ordered_graph_rejects_non_permutations() {
        assert!(OrderedGraph::new(path(3), vec![0, 0, 1]).is_err());
        assert!(OrderedGraph::new(path(3), vec![0, 1]).is_err());
        let og = OrderedGraph::new(path(3), vec![2, 0, 1]).unwrap();
        assert_eq!(og.position_of(0), 1);
        assert_eq!(og.vertex_at(0), 2);
        let pg = og.position_graph();
        // positions: 0 -> vertex 2, 1 -> vertex 0, 2 -> vertex 1
        assert!(pg.has_edge(0, 2) && pg.has_edge(1, 2) && !pg.has_edge(0, 1));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(named("P4").unwrap(), path(4));
        assert_eq!(named("K3").unwrap(), complete(3));
        assert_eq!(named("C5").unwrap(), cycle(5));
        assert_eq!(named("E2").unwrap(), Graph::empty(2));
        assert!(named("X3").is_err());
        assert!(named("C2").is_err());
    }
}
