//! Exact width computations and the small-graph oracles used to check every
//! other part of the crate: linear rankwidth by subset dynamic programming,
//! rankwidth by subcubic tree enumeration, clique and chromatic numbers, and
//! cograph recognition.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{cut_rank_mask, cut_rank_set};
use crate::graph::{Graph, OrderedGraph};

pub const LRW_GUARD: usize = 20;
pub const RW_GUARD: usize = 7;
pub const CLIQUE_GUARD: usize = 64;
pub const CHROMATIC_GUARD: usize = 18;

/// Guards above this are refused outright: the DP tables are `2^n` bytes.
const LRW_HARD_LIMIT: usize = 30;

pub(crate) fn prefix_width(g: &Graph, order: &[usize]) -> usize {
    let n = g.n();
    let mut prefix = FixedBitSet::with_capacity(n);
    let mut width = 0;
    for &v in order.iter().take(n.saturating_sub(1)) {
        prefix.insert(v);
        width = width.max(cut_rank_set(g, &prefix));
    }
    width
}

/// Maximum cut-rank over the proper prefixes of the order; 0 when `n ≤ 1`.
pub fn order_width(og: &OrderedGraph) -> usize {
    og.width()
}

/// Exact linear rankwidth with an optimal order, using the default guard.
pub fn linear_rankwidth_exact(g: &Graph) -> Result<(usize, Vec<usize>)> {
    linear_rankwidth_exact_guarded(g, LRW_GUARD)
}

/// Exact linear rankwidth by dynamic programming over vertex subsets.
///
/// `P(S)` is the least possible maximum cut-rank over the nonempty prefixes of
/// an ordering of `S`, so `P(S) = max(ρ(S), min_{v∈S} P(S∖v))` and
/// `lrw(G) = P(V)`. The witness is rebuilt front to back, always extending the
/// prefix by the smallest vertex that keeps the optimum reachable.
pub fn linear_rankwidth_exact_guarded(g: &Graph, guard: usize) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > guard.min(LRW_HARD_LIMIT) {
        return Err(Error::capacity("n", n, guard.min(LRW_HARD_LIMIT), "--guard-n"));
    }
    if n <= 1 {
        return Ok((0, (0..n).collect()));
    }
    let adj = g.masks();
    let full: u64 = (1 << n) - 1;
    let rho: Vec<u8> = (0..=full)
        .into_par_iter()
        .map(|s| cut_rank_mask(&adj, s) as u8)
        .collect();
    let mut best = vec![0u8; 1 << n];
    for s in 1..=full as usize {
        let mut m = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            m = m.min(best[s & !(1 << v)]);
        }
        best[s] = m.max(rho[s]);
    }
    let width = best[full as usize];

    // Placing v right after prefix S is feasible iff the cut at S∪{v} and the
    // best ordering of what remains (read backwards) both stay within width.
    let mut order = Vec::with_capacity(n);
    let mut prefix = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| {
                prefix >> v & 1 == 0 && {
                    let next = prefix | 1 << v;
                    rho[next] <= width && best[full as usize & !next] <= width
                }
            })
            .expect("an optimal extension always exists");
        prefix |= 1 << v;
        order.push(v);
    }
    debug_assert_eq!(prefix_width(g, &order), width as usize);
    Ok((width as usize, order))
}

/// A rank decomposition: a tree whose nodes all have degree 1 or 3, with the
/// graph's vertices in bijection with its leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDecompositionTree {
    adj: Vec<Vec<usize>>,
    leaf_of: Vec<usize>,
}

impl RankDecompositionTree {
    /// Builds and validates a decomposition from its node count, edge list and
    /// the map vertex → leaf node.
    pub fn new(nodes: usize, edges: &[(usize, usize)], leaf_of: Vec<usize>) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in edges {
            if a >= nodes || b >= nodes || a == b {
                return Err(Error::Contract(format!("bad tree edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let t = RankDecompositionTree { adj, leaf_of };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let nodes = self.adj.len();
        if nodes < 2 {
            return Err(Error::Contract("a rank decomposition needs at least two nodes".into()));
        }
        let edges: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edges + 1 != nodes {
            return Err(Error::Contract(format!("{nodes} nodes but {edges} edges: not a tree")));
        }
        if let Some(x) = (0..nodes).find(|&x| !matches!(self.adj[x].len(), 1 | 3)) {
            return Err(Error::Contract(format!(
                "node {x} has degree {}, expected 1 or 3",
                self.adj[x].len()
            )));
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Contract("tree is disconnected".into()));
        }
        let leaves = (0..nodes).filter(|&x| self.adj[x].len() == 1).count();
        let mut hit = vec![false; nodes];
        for (v, &x) in self.leaf_of.iter().enumerate() {
            if x >= nodes || self.adj[x].len() != 1 || std::mem::replace(&mut hit[x], true) {
                return Err(Error::Contract(format!("vertex {v} is not mapped to a distinct leaf")));
            }
        }
        if self.leaf_of.len() != leaves {
            return Err(Error::Contract(format!(
                "{} vertices mapped onto {leaves} leaves",
                self.leaf_of.len()
            )));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of graph vertices (= leaves).
    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn leaf_of(&self, v: usize) -> usize {
        self.leaf_of[v]
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    /// Vertices whose leaves lie on `b`'s side of the tree edge `{a, b}`.
    pub fn side(&self, a: usize, b: usize) -> Vec<usize> {
        let mut vertex_at = vec![usize::MAX; self.adj.len()];
        for (v, &x) in self.leaf_of.iter().enumerate() {
            vertex_at[x] = v;
        }
        let mut out = Vec::new();
        let mut stack = vec![(b, a)];
        while let Some((x, from)) = stack.pop() {
            if vertex_at[x] != usize::MAX {
                out.push(vertex_at[x]);
            }
            stack.extend(self.adj[x].iter().filter(|&&y| y != from).map(|&y| (y, x)));
        }
        out.sort_unstable();
        out
    }

    /// Caterpillar realizing a linear order; its width equals the order's.
    pub fn caterpillar(order: &[usize]) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::Input("a caterpillar needs at least two leaves".into()));
        }
        let mut leaf_of = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            leaf_of[v] = i;
        }
        if n == 2 {
            return RankDecompositionTree::new(2, &[(0, 1)], leaf_of);
        }
        // leaves are nodes 0..n in order position, spine nodes n..2n-2
        let spine = |i: usize| n + i;
        let mut edges = vec![(0, spine(0))];
        for i in 1..n - 1 {
            edges.push((i, spine(i - 1)));
        }
        edges.push((n - 1, spine(n - 3)));
        for i in 0..n - 3 {
            edges.push((spine(i), spine(i + 1)));
        }
        RankDecompositionTree::new(2 * n - 2, &edges, leaf_of)
    }
}

/// Maximum cut-rank over the leaf bipartitions of the tree edges.
pub fn decomposition_width(g: &Graph, t: &RankDecompositionTree) -> Result<usize> {
    if t.leaf_count() != g.n() {
        return Err(Error::Contract(format!(
            "decomposition has {} leaves for a graph on {} vertices",
            t.leaf_count(),
            g.n()
        )));
    }
    Ok(t
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let mut side = FixedBitSet::with_capacity(g.n());
            side.extend(t.side(a, b));
            cut_rank_set(g, &side)
        })
        .max()
        .unwrap_or(0))
}

/// Exact rankwidth with an optimal decomposition, using the default guard.
pub fn rankwidth_exact(g: &Graph) -> Result<(usize, RankDecompositionTree)> {
    rankwidth_exact_guarded(g, RW_GUARD)
}

/// Exact rankwidth by enumerating every leaf-labelled subcubic tree.
///
/// Trees are grown by inserting leaf `k` into each edge of every tree on
/// leaves `0..k`, which produces each labelled tree exactly once. A partial
/// tree is a decomposition of the induced subgraph on the leaves placed so
/// far, whose width never exceeds that of any completion, so branches at or
/// above the incumbent are cut.
pub fn rankwidth_exact_guarded(g: &Graph, guard: usize) -> Result<(usize, RankDecompositionTree)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Input("rankwidth needs at least two vertices".into()));
    }
    if n > guard.min(16) {
        return Err(Error::capacity("n", n, guard.min(16), "--guard-n"));
    }
    let adj = g.masks();
    if n == 2 {
        let t = RankDecompositionTree::new(2, &[(0, 1)], vec![0, 1])?;
        let w = decomposition_width(g, &t)?;
        return Ok((w, t));
    }
    // nodes 0..n are leaves (node v carries vertex v), internal nodes follow
    let mut search = TreeSearch {
        adj: &adj,
        n,
        edges: vec![(0, n), (1, n), (2, n)],
        next_node: n + 1,
        best: usize::MAX,
        best_edges: Vec::new(),
    };
    search.grow(3);
    let t = RankDecompositionTree::new(2 * n - 2, &search.best_edges, (0..n).collect())?;
    Ok((search.best, t))
}

struct TreeSearch<'a> {
    adj: &'a [u64],
    n: usize,
    edges: Vec<(usize, usize)>,
    next_node: usize,
    best: usize,
    best_edges: Vec<(usize, usize)>,
}

impl TreeSearch<'_> {
    fn width(&self, leaves: usize) -> usize {
        let universe: u64 = (1 << leaves) - 1;
        let restricted: Vec<u64> = self.adj[..leaves].iter().map(|r| r & universe).collect();
        let nodes = self.next_node;
        let mut nbrs = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        // subtree leaf masks rooted at leaf 0
        let mut below = vec![0u64; nodes];
        let mut parent = vec![usize::MAX; nodes];
        let mut order = vec![0usize];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &nbrs[x] {
                if y != parent[x] {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        for &x in order.iter().rev() {
            if x < leaves {
                below[x] |= 1 << x;
            }
            if parent[x] != usize::MAX {
                below[parent[x]] |= below[x];
            }
        }
        order[1..]
            .iter()
            .map(|&x| cut_rank_mask(&restricted, below[x]))
            .max()
            .unwrap_or(0)
    }

    fn grow(&mut self, leaves: usize) {
        let w = self.width(leaves);
        if w >= self.best {
            return;
        }
        if leaves == self.n {
            self.best = w;
            self.best_edges = self.edges.clone();
            return;
        }
        let x = self.next_node;
        self.next_node += 1;
        for e in 0..self.edges.len() {
            let (a, b) = self.edges[e];
            self.edges[e] = (a, x);
            self.edges.push((x, b));
            self.edges.push((x, leaves));
            self.grow(leaves + 1);
            self.edges.truncate(self.edges.len() - 2);
            self.edges[e] = (a, b);
        }
        self.next_node -= 1;
    }
}

/// Glues decompositions of `G ⊗ K1` and `H ⊗ K1` into one of `(G • H) ⊗ K1`.
///
/// The apex of each input is its highest vertex id. Every leaf of `yg` holding
/// a vertex `u` of `G` is replaced by a fresh copy of `yh` attached through
/// the copy's apex leaf; the two degree-one nodes being identified are
/// contracted away so the result stays subcubic. Vertex `(u, v)` of the
/// product gets id `u·|H| + v` and the apex gets id `|G|·|H|`.
pub fn lex_product_decomposition(
    yg: &RankDecompositionTree,
    yh: &RankDecompositionTree,
) -> Result<RankDecompositionTree> {
    if yg.leaf_count() < 2 || yh.leaf_count() < 2 {
        return Err(Error::Input(
            "both decompositions must contain a factor vertex and the apex".into(),
        ));
    }
    let ng = yg.leaf_count() - 1;
    let nh = yh.leaf_count() - 1;
    let g_leaf_vertex: Vec<Option<usize>> = {
        let mut m = vec![None; yg.node_count()];
        for u in 0..ng {
            m[yg.leaf_of(u)] = Some(u);
        }
        m
    };
    let beta = yh.leaf_of(nh);

    // yg keeps its node ids (replaced leaves become unused and are compacted
    // below); copy u of yh occupies a fresh block.
    let block = yh.node_count();
    let base = |u: usize| yg.node_count() + u * block;
    let mut edges = Vec::new();
    for (a, b) in yg.edges() {
        match (g_leaf_vertex[a], g_leaf_vertex[b]) {
            (None, None) => edges.push((a, b)),
            (Some(u), None) => edges.push((b, base(u) + yh.neighbors(beta)[0])),
            (None, Some(u)) => edges.push((a, base(u) + yh.neighbors(beta)[0])),
            // G ⊗ K1 always has its apex leaf, so two G-leaves are never adjacent
            // unless the tree has exactly two nodes, which would leave no apex.
            (Some(_), Some(_)) => {
                return Err(Error::Input("decomposition of G ⊗ K1 lacks the apex leaf".into()))
            }
        }
    }
    for u in 0..ng {
        for (a, b) in yh.edges() {
            if a != beta && b != beta {
                edges.push((base(u) + a, base(u) + b));
            }
        }
    }
    let mut leaf_of = vec![0; ng * nh + 1];
    for u in 0..ng {
        for v in 0..nh {
            leaf_of[u * nh + v] = base(u) + yh.leaf_of(v);
        }
    }
    leaf_of[ng * nh] = yg.leaf_of(ng);

    // compact node ids
    let total = base(ng);
    let mut used = vec![false; total];
    for &(a, b) in &edges {
        used[a] = true;
        used[b] = true;
    }
    let mut new_id = vec![usize::MAX; total];
    let mut next = 0;
    for x in 0..total {
        if used[x] {
            new_id[x] = next;
            next += 1;
        }
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (new_id[a], new_id[b])).collect();
    let leaf_of = leaf_of.into_iter().map(|x| new_id[x]).collect();
    RankDecompositionTree::new(next, &edges, leaf_of)
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    clique_number_guarded(g, CLIQUE_GUARD)
}

/// Maximum clique size by branch and bound over word masks.
pub fn clique_number_guarded(g: &Graph, guard: usize) -> Result<usize> {
    let n = g.n();
    if n > guard.min(64) {
        return Err(Error::capacity("n", n, guard.min(64), "--guard-n"));
    }
    fn expand(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            expand(adj, size + 1, rest & adj[v], best);
        }
    }
    let adj = g.masks();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    expand(&adj, 0, all, &mut best);
    Ok(best)
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_guarded(g, CHROMATIC_GUARD)
}

/// Exact chromatic number by dynamic programming over vertex subsets: the
/// lowest vertex of each subset is colored together with some independent
/// set of the remaining vertices.
pub fn chromatic_number_guarded(g: &Graph, guard: usize) -> Result<usize> {
    let n = g.n();
    if n > guard.min(24) {
        return Err(Error::capacity("n", n, guard.min(24), "--guard-n"));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = g.masks();
    let size = 1usize << n;
    let mut independent = vec![true; size];
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && (adj[v] as usize & rest) == 0;
    }
    let mut colors = vec![u8::MAX; size];
    colors[0] = 0;
    for s in 1..size {
        if independent[s] {
            colors[s] = 1;
            continue;
        }
        let v = s.trailing_zeros() as usize;
        let low = 1usize << v;
        let options = s & !low & !(adj[v] as usize);
        let mut best = u8::MAX;
        let mut sub = options;
        loop {
            let class = sub | low;
            if independent[class] {
                best = best.min(colors[s & !class].saturating_add(1));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & options;
        }
        colors[s] = best;
    }
    Ok(colors[size - 1] as usize)
}

/// A cotree: leaves are graph vertices, inner nodes are disjoint unions or
/// joins of their children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    /// Number of nodes on a longest root-to-leaf path (a single leaf has
    /// height 1).
    pub fn height(&self) -> usize {
        match self {
            Cotree::Leaf(_) => 1,
            Cotree::Union(c) | Cotree::Join(c) => 1 + c.iter().map(Cotree::height).max().unwrap_or(0),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(c) | Cotree::Join(c) => c.iter().for_each(|t| t.collect_leaves(out)),
        }
    }

    /// Whether the graph this cotree defines agrees with `g` on every pair of
    /// its leaves.
    pub fn realizes(&self, g: &Graph) -> bool {
        match self {
            Cotree::Leaf(_) => true,
            Cotree::Union(c) | Cotree::Join(c) => {
                let join = matches!(self, Cotree::Join(_));
                let parts: Vec<Vec<usize>> = c.iter().map(Cotree::leaves).collect();
                c.iter().all(|t| t.realizes(g))
                    && parts.iter().enumerate().all(|(i, p)| {
                        parts[i + 1..].iter().all(|q| {
                            p.iter().all(|&x| q.iter().all(|&y| g.has_edge(x, y) == join))
                        })
                    })
            }
        }
    }
}

/// Outcome of cograph recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CographVerdict {
    Cograph(Cotree),
    /// An induced path `a – b – c – d`.
    InducedP4([usize; 4]),
}

impl CographVerdict {
    pub fn is_cograph(&self) -> bool {
        matches!(self, CographVerdict::Cograph(_))
    }
}

/// Recognizes cographs by recursively splitting into components of the graph
/// or of its complement. A piece that is connected and co-connected contains
/// an induced `P4`, which is returned.
pub fn is_cograph(g: &Graph) -> CographVerdict {
    if g.is_empty() {
        return CographVerdict::Cograph(Cotree::Union(Vec::new()));
    }
    let co = g.complement();
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    match split(g, &co, &all) {
        Ok(t) => CographVerdict::Cograph(t),
        Err(p4) => CographVerdict::InducedP4(p4),
    }
}

fn split(g: &Graph, co: &Graph, set: &FixedBitSet) -> std::result::Result<Cotree, [usize; 4]> {
    let mut members = set.ones();
    let first = members.next().expect("nonempty piece");
    if members.next().is_none() {
        return Ok(Cotree::Leaf(first));
    }
    let to_set = |c: &Vec<usize>| {
        let mut s = FixedBitSet::with_capacity(g.n());
        s.extend(c.iter().copied());
        s
    };
    let comps = g.components_within(set);
    if comps.len() > 1 {
        let kids = comps.iter().map(|c| split(g, co, &to_set(c))).collect::<std::result::Result<_, _>>()?;
        return Ok(Cotree::Union(kids));
    }
    let cocomps = co.components_within(set);
    if cocomps.len() > 1 {
        let kids = cocomps.iter().map(|c| split(g, co, &to_set(c))).collect::<std::result::Result<_, _>>()?;
        return Ok(Cotree::Join(kids));
    }
    Err(find_induced_p4(g, set).expect("a prime piece on two or more vertices contains an induced P4"))
}

fn find_induced_p4(g: &Graph, set: &FixedBitSet) -> Option<[usize; 4]> {
    for b in set.ones() {
        for c in g.neighbors(b).intersection(set) {
            for a in g.neighbors(b).intersection(set) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for d in g.neighbors(c).intersection(set) {
                    if d != b && d != a && !g.has_edge(d, b) && !g.has_edge(d, a) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}
