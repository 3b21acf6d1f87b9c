//! Activity structure of an ordered graph.
//!
//! Everything here lives in *position space*: vertex `p` means the vertex at
//! position `p` of the order. Use [`ActivityData::vertex`] and
//! [`ActivityData::position`] to move between positions and graph ids.
//!
//! For a position `t`, `B_t` is the greedy (lexicographically least) basis of
//! the suffix neighborhoods `N(w) ∩ (t, n)` over `w ≤ t`. A vertex stays in
//! `B_t` for an initial run of `t ≥ v` and drops out at `τ(v)`; at that step
//! its suffix neighborhood is the XOR of those of a set `F₀(v)` of earlier
//! basis members. `v` is *active* when `v < τ(v)`, and `I_v = [v, τ(v)]` is its
//! activity interval.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf2::{cut_rank_set, greedy_basis, XorBasis};
use crate::graph::{Graph, OrderedGraph};

/// Sorted set of positions.
pub type PosSet = Vec<usize>;

#[derive(Clone, Debug)]
pub struct ActivityData {
    og: OrderedGraph,
    pg: Graph,
    r: usize,
    tau: Vec<usize>,
    bases: Vec<PosSet>,
    f0: Vec<PosSet>,
}

/// Runs the left-to-right sweep computing `B_t`, `τ` and `F₀`.
///
/// `B_t` is obtained from `B_{t-1} ∪ {t}` alone: a vertex outside `B_{t-1}`
/// is spanned by earlier vectors at level `t-1`, and restricting to the
/// shorter suffix preserves that.
pub fn analyze(og: &OrderedGraph) -> ActivityData {
    let n = og.n();
    let pg = og.position_graph();
    let mut tau = vec![usize::MAX; n];
    let mut f0 = vec![Vec::new(); n];
    let mut bases = Vec::with_capacity(n);
    let mut prev: PosSet = Vec::new();
    for t in 0..n {
        let mut basis = XorBasis::new(n, n);
        let mut kept = Vec::with_capacity(prev.len() + 1);
        for w in prev.iter().copied().chain(std::iter::once(t)) {
            match basis.insert(&suffix_nbhd(&pg, w, t), w) {
                Ok(()) => kept.push(w),
                Err(combo) => {
                    tau[w] = t;
                    f0[w] = combo.ones().collect();
                }
            }
        }
        bases.push(kept.clone());
        prev = kept;
    }
    let r = og.width();
    ActivityData {
        og: og.clone(),
        pg,
        r,
        tau,
        bases,
        f0,
    }
}

fn suffix_nbhd(pg: &Graph, w: usize, t: usize) -> FixedBitSet {
    let mut s = pg.neighbors(w).clone();
    s.remove_range(..t + 1);
    s
}

fn xor_nbhd(pg: &Graph, m: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(pg.n());
    for &x in m {
        s.symmetric_difference_with(pg.neighbors(x));
    }
    s
}

impl ActivityData {
    pub fn ordered_graph(&self) -> &OrderedGraph {
        &self.og
    }

    /// The graph with vertex ids replaced by positions.
    pub fn position_graph(&self) -> &Graph {
        &self.pg
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    /// Order width of the analyzed order.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex(&self, pos: usize) -> usize {
        self.og.vertex_at(pos)
    }

    pub fn position(&self, v: usize) -> usize {
        self.og.position_of(v)
    }

    pub fn tau(&self, v: usize) -> usize {
        self.tau[v]
    }

    pub fn basis(&self, t: usize) -> &[usize] {
        &self.bases[t]
    }

    pub fn f0(&self, v: usize) -> &[usize] {
        &self.f0[v]
    }

    pub fn is_active(&self, v: usize) -> bool {
        v < self.tau[v]
    }

    /// `τ(M) = min τ(v)` over `v ∈ M`; `None` for the empty set.
    pub fn tau_of(&self, m: &[usize]) -> Option<usize> {
        m.iter().map(|&v| self.tau[v]).min()
    }

    /// Whether `v ∈ I_M = [max M, τ(M)]`; never true for the empty set.
    pub fn in_interval(&self, m: &[usize], v: usize) -> bool {
        match (m.last(), self.tau_of(m)) {
            (Some(&hi), Some(t)) => hi <= v && v <= t,
            _ => false,
        }
    }

    /// One application of `F`, checking that `m` is plausibly a node of the
    /// F-tree: empty, a singleton, or a set of active vertices with a unique
    /// `τ`-minimizer.
    pub fn f_step(&self, m: &[usize]) -> Result<PosSet> {
        if m.windows(2).any(|w| w[0] >= w[1]) || m.iter().any(|&v| v >= self.n()) {
            return Err(Error::Contract(format!("{m:?} is not a sorted set of positions")));
        }
        if m.len() > 1 && m.iter().any(|&v| !self.is_active(v)) {
            return Err(Error::Contract(format!("{m:?} contains an inactive vertex")));
        }
        self.step(m)
    }

    fn step(&self, m: &[usize]) -> Result<PosSet> {
        let Some(t) = self.tau_of(m) else {
            return Ok(Vec::new());
        };
        let mut minimizers = m.iter().filter(|&&v| self.tau[v] == t);
        let v = *minimizers.next().expect("nonempty set has a minimizer");
        if let Some(&w) = minimizers.next() {
            return Err(Error::Invariant(format!(
                "vertices {v} and {w} of {m:?} share tau = {t}"
            )));
        }
        let mut out = FixedBitSet::with_capacity(self.n());
        out.extend(m.iter().copied().filter(|&x| x != v));
        for &x in &self.f0[v] {
            out.toggle(x);
        }
        Ok(out.ones().collect())
    }

    /// Checks every structural invariant of the sweep against direct
    /// recomputation. The first failure is returned with its witness.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let pg = &self.pg;
        let mut prefix = FixedBitSet::with_capacity(n);
        for t in 0..n {
            prefix.insert(t);
            let fresh: Vec<usize> = {
                let vecs: Vec<FixedBitSet> = (0..=t).map(|w| suffix_nbhd(pg, w, t)).collect();
                greedy_basis(&vecs)
            };
            if fresh != self.bases[t] {
                return Err(Error::Invariant(format!(
                    "B_{t} = {:?} but a fresh greedy pass gives {fresh:?}",
                    self.bases[t]
                )));
            }
            if self.bases[t].len() > self.r || self.bases[t].len() != cut_rank_set(pg, &prefix) {
                return Err(Error::Invariant(format!(
                    "|B_{t}| = {} against width {} and cut-rank {}",
                    self.bases[t].len(),
                    self.r,
                    cut_rank_set(pg, &prefix)
                )));
            }
            for v in 0..=t {
                if self.bases[t].contains(&v) != (t < self.tau[v]) {
                    return Err(Error::Invariant(format!(
                        "membership of {v} in B_{t} disagrees with tau = {}",
                        self.tau[v]
                    )));
                }
            }
        }
        let mut owner = vec![None; n];
        for v in 0..n {
            let t = self.tau[v];
            if t < v || t >= n {
                return Err(Error::Invariant(format!("tau({v}) = {t} out of range")));
            }
            if self.is_active(v) {
                if let Some(u) = owner[t].replace(v) {
                    return Err(Error::Invariant(format!("active {u} and {v} share tau = {t}")));
                }
            }
            let f0 = &self.f0[v];
            if let Some(&hi) = f0.last() {
                let tf = self.tau_of(f0).expect("nonempty");
                if !(hi < v && t < tf) {
                    return Err(Error::Invariant(format!(
                        "F0({v}) = {f0:?} breaks max F0 < v <= tau(v) < tau(F0)"
                    )));
                }
            }
            let mut lhs = suffix_nbhd(pg, v, t);
            lhs.symmetric_difference_with(&{
                let mut s = xor_nbhd(pg, f0);
                s.remove_range(..t + 1);
                s
            });
            if !lhs.is_clear() {
                return Err(Error::Invariant(format!(
                    "F0({v}) = {f0:?} does not reproduce the suffix neighborhood at {t}"
                )));
            }
        }
        Ok(())
    }
}

/// The F-tree: the closure of all singletons under `F`, plus the root `∅`.
#[derive(Clone, Debug)]
pub struct FTree {
    nodes: Vec<PosSet>,
    index: HashMap<PosSet, usize>,
    parent: Vec<usize>,
    tau: Vec<Option<usize>>,
    depth: Vec<usize>,
    singleton: Vec<usize>,
}

pub const ROOT: usize = 0;

/// Closes the singletons under `F` and checks the ordering guarantees along
/// every tree edge: `max F(M) ≤ max M ≤ τ(M) < τ(F(M))`, strict in the middle
/// when `M` is active, and `F(M) ⊆ B_{τ(M)}`.
pub fn build_f_tree(ad: &ActivityData) -> Result<FTree> {
    let n = ad.n();
    let mut tree = FTree {
        nodes: vec![Vec::new()],
        index: HashMap::from([(Vec::new(), ROOT)]),
        parent: vec![ROOT],
        tau: vec![None],
        depth: vec![0],
        singleton: vec![ROOT; n],
    };
    for v in 0..n {
        let mut chain = Vec::new();
        let mut m = vec![v];
        let id = loop {
            if let Some(&id) = tree.index.get(&m) {
                break id;
            }
            if chain.len() > n + 1 {
                return Err(Error::Invariant(format!("F does not reach the root from {{{v}}}")));
            }
            let f = ad.step(&m)?;
            check_edge(ad, &m, &f)?;
            chain.push(m);
            m = f;
        };
        // register the new chain top-down so parents exist first
        let mut parent = id;
        for m in chain.into_iter().rev() {
            let id = tree.nodes.len();
            tree.index.insert(m.clone(), id);
            tree.tau.push(ad.tau_of(&m));
            tree.depth.push(tree.depth[parent] + 1);
            tree.parent.push(parent);
            tree.nodes.push(m);
            parent = id;
        }
        tree.singleton[v] = tree.index[&vec![v]];
    }
    Ok(tree)
}

fn check_edge(ad: &ActivityData, m: &[usize], f: &[usize]) -> Result<()> {
    let t = ad.tau_of(m).expect("nonempty");
    let hi = *m.last().expect("nonempty");
    let active = m.len() > 1 || ad.is_active(m[0]);
    let ok_m = if active { hi < t } else { hi <= t };
    let ok_f = match (f.last(), ad.tau_of(f)) {
        (Some(&fhi), Some(ft)) => fhi <= hi && t < ft,
        _ => true,
    };
    let basis = ad.basis(t);
    if !(ok_m && ok_f && f.iter().all(|x| basis.contains(x))) {
        return Err(Error::Invariant(format!(
            "F({m:?}) = {f:?} breaks the ordering max F(M) <= max M <= tau(M) < tau(F(M)) or leaves B_{t}"
        )));
    }
    let mut lhs = xor_nbhd(ad.position_graph(), m);
    lhs.symmetric_difference_with(&xor_nbhd(ad.position_graph(), f));
    lhs.remove_range(..t + 1);
    if let Some(w) = lhs.minimum() {
        return Err(Error::Invariant(format!(
            "F({m:?}) = {f:?} changes the XOR-neighborhood at {w} > tau(M) = {t}"
        )));
    }
    Ok(())
}

impl FTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn set(&self, id: usize) -> &[usize] {
        &self.nodes[id]
    }

    pub fn id_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn parent(&self, id: usize) -> usize {
        self.parent[id]
    }

    pub fn tau(&self, id: usize) -> Option<usize> {
        self.tau[id]
    }

    pub fn max(&self, id: usize) -> Option<usize> {
        self.nodes[id].last().copied()
    }

    /// Number of `F` steps from the node to the root.
    pub fn depth(&self, id: usize) -> usize {
        self.depth[id]
    }

    /// Nodes on a longest node-to-root path, counting both ends.
    pub fn height(&self) -> usize {
        self.depth.iter().max().map_or(1, |d| d + 1)
    }

    pub fn singleton(&self, v: usize) -> usize {
        self.singleton[v]
    }

    /// Node of `F^k({v})`.
    pub fn iterate(&self, v: usize, k: usize) -> usize {
        (0..k).fold(self.singleton[v], |id, _| self.parent[id])
    }

    /// Nodes `{v}, F({v}), …, ∅`.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![self.singleton[v]];
        while *out.last().expect("nonempty") != ROOT {
            out.push(self.parent[*out.last().expect("nonempty")]);
        }
        out
    }

    /// Lowest common ancestor of two nodes.
    pub fn meet(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
        }
        a
    }
}

/// `ξ(u, v)`: the least `k` with `F^k({u}) = ∅` or `v ∈ I_{F^k({u})}`.
pub fn xi(ad: &ActivityData, tree: &FTree, u: usize, v: usize) -> Result<usize> {
    if u == v {
        return Err(Error::Input(format!("xi needs distinct positions, got {u} twice")));
    }
    let mut id = tree.singleton(u);
    let mut k = 0;
    while id != ROOT && !ad.in_interval(tree.set(id), v) {
        id = tree.parent(id);
        k += 1;
    }
    Ok(k)
}

/// Adjacency of positions `u` and `v` recovered from the activity structure
/// alone: with `u < v`, they are adjacent iff `v` has an odd number of
/// neighbors in `F^{ξ(u,v)}({u})`.
pub fn reconstruct_adjacency(ad: &ActivityData, tree: &FTree, u: usize, v: usize) -> Result<bool> {
    let (u, v) = (u.min(v), u.max(v));
    let k = xi(ad, tree, u, v)?;
    let m = tree.set(tree.iterate(u, k));
    let nv = ad.position_graph().neighbors(v);
    Ok(m.iter().filter(|&&x| nv.contains(x)).count() % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, half_graph, path, random_graph};
    use crate::width::linear_rankwidth_exact;
    use rand::SeedableRng;

    fn setup(g: Graph, order: Vec<usize>) -> (ActivityData, FTree) {
        let ad = analyze(&OrderedGraph::new(g, order).unwrap());
        ad.check_invariants().unwrap();
        let t = build_f_tree(&ad).unwrap();
        (ad, t)
    }

    /// τ from its definition: least t ≥ v such that some B ⊆ V^{<v} has the
    /// same neighborhood beyond t as v.
    fn tau_by_definition(pg: &Graph, v: usize) -> usize {
        let n = pg.n();
        (v..n)
            .find(|&t| {
                (0u32..1 << v).any(|b| {
                    let m: Vec<usize> = (0..v).filter(|&x| b >> x & 1 == 1).collect();
                    let mut s = xor_nbhd(pg, &m);
                    s.symmetric_difference_with(pg.neighbors(v));
                    s.remove_range(..t + 1);
                    s.is_clear()
                })
            })
            .unwrap()
    }

    #[test]
    fn edgeless() {
        let (ad, t) = setup(Graph::empty(3), vec![0, 1, 2]);
        for v in 0..3 {
            assert_eq!(ad.tau(v), v);
            assert!(ad.basis(v).is_empty());
            assert!(ad.f0(v).is_empty());
            assert!(!ad.is_active(v));
        }
        assert_eq!(t.len(), 4);
        assert_eq!(t.height(), 2);
        assert_eq!(ad.f_step(&[]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn single_edge() {
        let (ad, t) = setup(complete(2), vec![0, 1]);
        assert_eq!((ad.tau(0), ad.tau(1)), (1, 1));
        assert!(ad.is_active(0) && !ad.is_active(1));
        assert_eq!(ad.basis(0), &[0]);
        assert!(ad.basis(1).is_empty());
        assert!(ad.f0(0).is_empty());
        assert_eq!(ad.f_step(&[0]).unwrap(), Vec::<usize>::new());
        assert_eq!(xi(&ad, &t, 0, 1).unwrap(), 0);
        assert!(reconstruct_adjacency(&ad, &t, 0, 1).unwrap());
        assert!(xi(&ad, &t, 1, 1).is_err());
    }

    #[test]
    fn inactive_vertex_with_nonempty_f0() {
        // 0 – 2 – 1: at t = 1 the suffix neighborhood of 1 equals that of 0
        let g = Graph::from_edge_list(3, &[(0, 2), (1, 2)]).unwrap();
        let (ad, t) = setup(g, vec![0, 1, 2]);
        assert_eq!(ad.tau(1), 1);
        assert_eq!(ad.f0(1), &[0]);
        assert_eq!(t.set(t.parent(t.singleton(1))), &[0]);
    }

    #[test]
    fn half_graph_height() {
        let (ad, t) = setup(half_graph(3).unwrap(), vec![0, 3, 1, 4, 2, 5]);
        assert_eq!(ad.r(), 1);
        assert!(t.height() <= 3);
    }

    #[test]
    fn f_step_rejects_non_nodes() {
        let (ad, _) = setup(path(4), vec![0, 1, 2, 3]);
        assert!(matches!(ad.f_step(&[2, 1]), Err(Error::Contract(_))));
        assert!(matches!(ad.f_step(&[9]), Err(Error::Contract(_))));
        assert!(matches!(ad.f_step(&[2, 3]), Err(Error::Contract(_))));
    }

    #[test]
    fn random_graphs_all_invariants() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 1..=9 {
            for _ in 0..12 {
                let g = random_graph(n, 0.45, &mut rng);
                let (_, order) = linear_rankwidth_exact(&g).unwrap();
                let (ad, tree) = setup(g, order);
                let pg = ad.position_graph();
                for v in 0..n {
                    assert_eq!(ad.tau(v), tau_by_definition(pg, v), "{pg:?} at {v}");
                }
                assert!(tree.height() <= ad.r() + 2);
                for u in 0..n {
                    assert_eq!(tree.iterate(u, ad.r() + 1), ROOT);
                    for v in 0..n {
                        if u == v {
                            continue;
                        }
                        assert_eq!(
                            reconstruct_adjacency(&ad, &tree, u, v).unwrap(),
                            pg.has_edge(u, v),
                            "{pg:?} pair {u} {v}"
                        );
                        let meet = tree.meet(tree.singleton(u), tree.singleton(v));
                        let climb = tree.depth(tree.singleton(u)) - tree.depth(meet);
                        assert!(xi(&ad, &tree, u, v).unwrap() <= climb);
                    }
                }
            }
        }
    }
}
