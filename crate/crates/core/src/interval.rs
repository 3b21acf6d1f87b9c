//! Activity intervals, their intersection graph, and centered colorings.
//!
//! Position `v` owns the interval `[v, τ(v)]`. The intersection graph has
//! pathwidth at most `r + 1`, witnessed by a sweep of point loads. Orienting
//! its edges towards smaller left endpoints and coloring greedily against
//! iterated out-neighborhoods gives a `(p+1)`-centered coloring.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::activity::ActivityData;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

pub const CENTERED_GUARD: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    r: usize,
    right: Vec<usize>,
    active: Vec<bool>,
    graph: Graph,
}

/// Intervals of all positions, with the point-load certificate checked.
pub fn build_interval_graph(ad: &ActivityData) -> Result<IntervalFamily> {
    let n = ad.n();
    let right: Vec<usize> = (0..n).map(|v| ad.tau(v)).collect();
    let graph = Graph::from_fn(n, |u, v| right[u] >= v);
    let f = IntervalFamily {
        r: ad.r(),
        right,
        active: (0..n).map(|v| ad.is_active(v)).collect(),
        graph,
    };
    for t in 0..n {
        let covering: Vec<usize> = (0..=t).filter(|&v| f.right[v] >= t).collect();
        if covering.len() > f.r + 2 {
            return Err(Error::Invariant(format!(
                "point {t} lies in {} intervals {covering:?}, more than r + 2 = {}",
                covering.len(),
                f.r + 2
            )));
        }
        let ending_active: Vec<usize> = covering.iter().copied().filter(|&v| f.active[v] && f.right[v] == t).collect();
        if ending_active.len() > 1 {
            return Err(Error::Invariant(format!(
                "active intervals {ending_active:?} all end at {t}"
            )));
        }
    }
    Ok(f)
}

impl IntervalFamily {
    pub fn n(&self) -> usize {
        self.right.len()
    }

    pub fn left(&self, v: usize) -> usize {
        v
    }

    pub fn right(&self, v: usize) -> usize {
        self.right[v]
    }

    /// The intersection graph on positions.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of intervals containing position `t`.
    pub fn load(&self, t: usize) -> usize {
        (0..=t).filter(|&v| self.right[v] >= t).count()
    }

    pub fn max_load(&self) -> usize {
        (0..self.n()).map(|t| self.load(t)).max().unwrap_or(0)
    }

    /// Pathwidth certificate: maximum point load minus one.
    pub fn certificate(&self) -> usize {
        self.max_load().saturating_sub(1)
    }

    /// Endpoints relabeled to distinct ranks `0..2n`. At a shared position
    /// the left endpoint comes first, then right endpoints by vertex, so two
    /// intervals meet iff their rank ranges overlap.
    pub fn normalized(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = vec![(0, 0); n];
        let mut rank = 0;
        for t in 0..n {
            out[t].0 = rank;
            rank += 1;
            for v in (0..=t).filter(|&v| self.right[v] == t) {
                out[v].1 = rank;
                rank += 1;
            }
        }
        out
    }

    /// `v left right` lines with normalized endpoints.
    pub fn export(&self) -> String {
        self.normalized()
            .iter()
            .enumerate()
            .map(|(v, (l, r))| format!("{v} {l} {r}\n"))
            .collect()
    }
}

/// Each edge of the intersection graph oriented from the larger left endpoint
/// to the smaller.
pub fn orient(f: &IntervalFamily) -> Digraph {
    let mut d = Digraph::empty(f.n());
    for (u, v) in f.graph.edges() {
        d.add_arc(u.max(v), u.min(v));
    }
    d
}

/// Whether every out-neighborhood is a clique. Arcs all point to smaller
/// ids, so each clique is transitively ordered.
pub fn out_neighborhoods_transitive(d: &Digraph) -> bool {
    (0..d.n()).all(|v| {
        let out: Vec<usize> = d.out_neighbors(v).ones().collect();
        out.iter().all(|&a| out.iter().all(|&b| a <= b || d.has_arc(a, b)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenteredColoring {
    pub p: usize,
    /// Colors by position, starting at 1.
    pub colors: Vec<usize>,
    pub palette: usize,
}

/// First-fit in left-endpoint order: each vertex takes the least color absent
/// from its `p`-th iterated closed out-neighborhood.
pub fn p_centered_coloring(f: &IntervalFamily, p: usize) -> Result<CenteredColoring> {
    if p == 0 {
        return Err(Error::Input("p must be at least 1".into()));
    }
    let d = orient(f);
    let n = f.n();
    let mut colors = vec![0; n];
    for v in 0..n {
        let mut reach = FixedBitSet::with_capacity(n);
        reach.insert(v);
        for _ in 0..p {
            let mut next = reach.clone();
            for x in reach.ones() {
                next.union_with(d.out_neighbors(x));
            }
            reach = next;
        }
        let used: BTreeSet<usize> = reach.ones().filter(|&x| x != v).map(|x| colors[x]).collect();
        colors[v] = (1..).find(|c| !used.contains(c)).expect("unbounded palette");
    }
    let palette = colors.iter().copied().max().unwrap_or(0);
    Ok(CenteredColoring { p, colors, palette })
}

/// Calls `visit` on every connected vertex subset exactly once, as a bitmask,
/// until it returns `false`. Each subset is generated from its minimum vertex.
pub(crate) fn for_each_connected_subset(adj: &[u64], mut visit: impl FnMut(u64) -> bool) -> bool {
    fn grow(adj: &[u64], set: u64, cand: u64, excl: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if !visit(set) {
            return false;
        }
        let mut rest = cand;
        let mut excl = excl;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            let bit = 1u64 << w;
            rest &= !bit;
            let next = set | bit;
            if !grow(adj, next, (rest | adj[w]) & !next & !excl, excl, visit) {
                return false;
            }
            excl |= bit;
        }
        true
    }
    for v in 0..adj.len() {
        let below = (1u64 << v) - 1;
        let root = 1u64 << v;
        if !grow(adj, root, adj[v] & !below & !root, below, &mut visit) {
            return false;
        }
    }
    true
}

pub fn verify_centered(g: &Graph, colors: &[usize], p: usize) -> Result<Option<Vec<usize>>> {
    verify_centered_guarded(g, colors, p, CENTERED_GUARD)
}

/// Checks that every connected subset has a color occurring exactly once or
/// at least `p` distinct colors. Returns a violating subset if there is one.
pub fn verify_centered_guarded(g: &Graph, colors: &[usize], p: usize, guard: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > guard.min(63) {
        return Err(Error::capacity("n", n, guard.min(63), "--guard-n"));
    }
    if colors.len() != n {
        return Err(Error::Input(format!("{} colors for {n} vertices", colors.len())));
    }
    let adj = g.masks();
    let mut witness = None;
    for_each_connected_subset(&adj, |s| {
        let mut counts = std::collections::BTreeMap::new();
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            *counts.entry(colors[v]).or_insert(0usize) += 1;
        }
        let ok = counts.len() >= p || counts.values().any(|&c| c == 1);
        if !ok {
            witness = Some((0..n).filter(|&v| s >> v & 1 == 1).collect());
        }
        ok
    });
    Ok(witness)
}

/// A rooted forest on a vertex subset; `parent[i]` refers to `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedForest {
    pub vertices: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl RootedForest {
    fn index(&self, v: usize) -> usize {
        self.vertices.binary_search(&v).expect("vertex in forest")
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent[self.index(v)]
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent_of(v) {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Number of vertices on a longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.vertices
            .iter()
            .map(|&v| {
                let mut d = 1;
                let mut x = v;
                while let Some(p) = self.parent_of(x) {
                    d += 1;
                    x = p;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }

    /// Depth-first pre-order, children visited in increasing order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut stack: Vec<usize> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.parent_of(v).is_none())
            .rev()
            .collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.vertices.iter().rev().copied().filter(|&c| self.parent_of(c) == Some(v)));
        }
        out
    }
}

/// The forest `Y_I` for a color set `I` of at most `p` colors: in each
/// component of the subgraph induced by colors in `I`, the minimum vertex
/// must carry a unique color and becomes the root; recurse below it.
pub fn cover_forest(f: &IntervalFamily, c: &CenteredColoring, colorset: &BTreeSet<usize>) -> Result<RootedForest> {
    if colorset.len() > c.p {
        return Err(Error::Input(format!(
            "{} colors requested, at most p = {} allowed",
            colorset.len(),
            c.p
        )));
    }
    let vertices: Vec<usize> = (0..f.n()).filter(|&v| colorset.contains(&c.colors[v])).collect();
    let mut forest = RootedForest {
        parent: vec![None; vertices.len()],
        vertices,
    };
    let mut set = FixedBitSet::with_capacity(f.n());
    set.extend(forest.vertices.iter().copied());
    let mut work = vec![(set, None)];
    while let Some((set, parent)) = work.pop() {
        for comp in f.graph.components_within(&set) {
            let root = comp[0];
            let color = c.colors[root];
            if let Some(&twin) = comp[1..].iter().find(|&&x| c.colors[x] == color) {
                return Err(Error::Invariant(format!(
                    "component {comp:?}: minimum {root} shares color {color} with {twin}"
                )));
            }
            let i = forest.index(root);
            forest.parent[i] = parent;
            let mut rest = FixedBitSet::with_capacity(f.n());
            rest.extend(comp[1..].iter().copied());
            work.push((rest, Some(root)));
        }
    }
    for (u, v) in f.graph.edges() {
        if forest.vertices.binary_search(&u).is_ok()
            && forest.vertices.binary_search(&v).is_ok()
            && !forest.is_ancestor(u, v)
            && !forest.is_ancestor(v, u)
        {
            return Err(Error::Invariant(format!("edge ({u}, {v}) is not an ancestor pair")));
        }
    }
    if forest.preorder() != forest.vertices {
        return Err(Error::Invariant(format!(
            "pre-order {:?} differs from the order restriction",
            forest.preorder()
        )));
    }
    Ok(forest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activity::analyze;
    use crate::graph::{complete, path, random_graph, OrderedGraph};
    use crate::width::linear_rankwidth_exact;
    use rand::SeedableRng;

    fn family(g: Graph, order: Vec<usize>) -> IntervalFamily {
        build_interval_graph(&analyze(&OrderedGraph::new(g, order).unwrap())).unwrap()
    }

    fn brute_connected(adj: &[u64]) -> Vec<u64> {
        let n = adj.len();
        (1u64..1 << n)
            .filter(|&s| {
                let start = s.trailing_zeros() as usize;
                let mut seen = 1u64 << start;
                let mut frontier = seen;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = adj[v] & s & !seen;
                    seen |= new;
                    frontier |= new;
                }
                seen == s
            })
            .collect()
    }

    #[test]
    fn connected_subset_enumeration_is_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in 1..=10 {
            for _ in 0..5 {
                let adj = random_graph(n, 0.35, &mut rng).masks();
                let mut got = Vec::new();
                for_each_connected_subset(&adj, |s| {
                    got.push(s);
                    true
                });
                got.sort_unstable();
                assert_eq!(got, brute_connected(&adj));
            }
        }
    }

    #[test]
    fn edgeless_family() {
        let f = family(Graph::empty(4), vec![0, 1, 2, 3]);
        assert_eq!(f.graph().edge_count(), 0);
        assert_eq!(f.certificate(), 0);
        assert_eq!(orient(&f).arc_count(), 0);
        let c = p_centered_coloring(&f, 2).unwrap();
        assert!(c.colors.iter().all(|&x| x == 1));
    }

    #[test]
    fn single_edge_family() {
        let f = family(complete(2), vec![0, 1]);
        assert_eq!(f.graph(), &complete(2));
        assert_eq!(f.certificate(), 1);
        let d = orient(&f);
        assert!(d.has_arc(1, 0) && !d.has_arc(0, 1));
        assert_eq!(p_centered_coloring(&f, 1).unwrap().colors, vec![1, 2]);
        assert_eq!(f.export(), "0 0 2\n1 1 3\n");
    }

    #[test]
    fn verifier_examples() {
        assert_eq!(verify_centered(&path(3), &[1, 2, 1], 2).unwrap(), None);
        assert_eq!(verify_centered(&complete(2), &[1, 1], 2).unwrap(), Some(vec![0, 1]));
        assert!(p_centered_coloring(&family(path(2), vec![0, 1]), 0).is_err());
        assert!(verify_centered(&Graph::empty(15), &[1; 15], 2).is_err());
    }

    #[test]
    fn forests_on_path() {
        let f = family(path(4), vec![0, 1, 2, 3]);
        let c = p_centered_coloring(&f, 2).unwrap();
        let all: BTreeSet<usize> = c.colors.iter().copied().collect();
        for a in &all {
            for b in &all {
                let set: BTreeSet<usize> = [*a, *b].into();
                let forest = cover_forest(&f, &c, &set).unwrap();
                assert!(forest.height() <= set.len());
            }
        }
        let single: BTreeSet<usize> = [c.colors[0]].into();
        let forest = cover_forest(&f, &c, &single).unwrap();
        assert!(forest.parent.iter().all(Option::is_none));
        assert!(cover_forest(&f, &c, &[1, 2, 3].into()).is_err());
    }

    #[test]
    fn random_families() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for n in 1..=10 {
            for _ in 0..6 {
                let g = random_graph(n, 0.5, &mut rng);
                let (_, order) = linear_rankwidth_exact(&g).unwrap();
                let f = family(g, order);
                assert!(f.max_load() <= f.r + 2);
                let d = orient(&f);
                assert!(d.is_acyclic() && out_neighborhoods_transitive(&d));
                let ranks = f.normalized();
                for u in 0..n {
                    for v in 0..n {
                        let meet = ranks[u].0.max(ranks[v].0) <= ranks[u].1.min(ranks[v].1);
                        assert_eq!(meet, u == v || f.graph().has_edge(u, v));
                    }
                }
                for p in 1..=3 {
                    let c = p_centered_coloring(&f, p).unwrap();
                    assert_eq!(verify_centered(f.graph(), &c.colors, p + 1).unwrap(), None);
                    let palette: Vec<usize> = (1..=c.palette).collect();
                    for size in 1..=p.min(palette.len()) {
                        for start in 0..=palette.len() - size {
                            let set: BTreeSet<usize> = palette[start..start + size].iter().copied().collect();
                            assert!(cover_forest(&f, &c, &set).unwrap().height() <= size);
                        }
                    }
                }
            }
        }
    }
}
