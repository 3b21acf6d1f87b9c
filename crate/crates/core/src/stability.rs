//! Stability diagnostics: semi-induced half-graphs and the ζ alternation
//! chains that produce them inside a colored order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::activity::{xi, ActivityData, FTree};
use crate::encoding::{ColorSet, ColoredOrder, VertexLabel};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORDER_INDEX_GUARD: usize = 16;

/// A semi-induced half-graph: `a[i] ~ b[j]` iff `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfGraphWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl HalfGraphWitness {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let all: BTreeSet<usize> = self.a.iter().chain(&self.b).copied().collect();
        self.a.len() == self.b.len()
            && all.len() == 2 * self.a.len()
            && self.a.iter().enumerate().all(|(i, &x)| {
                self.b.iter().enumerate().all(|(j, &y)| g.has_edge(x, y) == (i <= j))
            })
    }
}

pub fn order_index(g: &Graph) -> Result<HalfGraphWitness> {
    order_index_guarded(g, ORDER_INDEX_GUARD)
}

/// Largest semi-induced half-graph, by branch and bound over pairs
/// `(a_k, b_k)` appended in index order. A new `a` must miss every earlier
/// `b`; a new `b` must see every `a` so far.
pub fn order_index_guarded(g: &Graph, guard: usize) -> Result<HalfGraphWitness> {
    let n = g.n();
    if n > guard.min(64) {
        return Err(Error::capacity("n", n, guard.min(64), "--guard-n"));
    }
    let adj = g.masks();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = HalfSearch {
        adj: &adj,
        a: Vec::new(),
        b: Vec::new(),
        best: HalfGraphWitness { a: Vec::new(), b: Vec::new() },
    };
    search.extend(all, all, 0);
    Ok(search.best)
}

struct HalfSearch<'a> {
    adj: &'a [u64],
    a: Vec<usize>,
    b: Vec<usize>,
    best: HalfGraphWitness,
}

impl HalfSearch<'_> {
    /// `cand_a`: unused vertices missing all of `b`; `cand_b`: unused
    /// vertices seeing all of `a`.
    fn extend(&mut self, cand_a: u64, cand_b: u64, used: u64) {
        let k = self.a.len();
        if k > self.best.order() {
            self.best = HalfGraphWitness { a: self.a.clone(), b: self.b.clone() };
        }
        let room = cand_a.count_ones().min(cand_b.count_ones()) as usize;
        if k + room <= self.best.order() {
            return;
        }
        let mut ra = cand_a;
        while ra != 0 {
            let x = ra.trailing_zeros() as usize;
            ra &= ra - 1;
            let mut rb = cand_b & self.adj[x] & !(1 << x);
            while rb != 0 {
                let y = rb.trailing_zeros() as usize;
                rb &= rb - 1;
                let used2 = used | 1 << x | 1 << y;
                self.a.push(x);
                self.b.push(y);
                self.extend(
                    cand_a & !self.adj[y] & !used2,
                    cand_b & self.adj[x] & !used2,
                    used2,
                );
                self.a.pop();
                self.b.pop();
                if k + 1 + (cand_a.count_ones().min(cand_b.count_ones()) as usize) <= self.best.order() {
                    return;
                }
            }
        }
    }
}

/// `ξ`-consistent context of an ordered pair: `(ℓ₁, Cl₁, C₁)` describes the
/// smaller element, `(ℓ₂, Cl₂, C₂)` the larger.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ChainContext {
    pub l1: usize,
    pub class1: (usize, Vec<ColorSet>),
    pub nc1: ColorSet,
    pub l2: usize,
    pub class2: (usize, Vec<ColorSet>),
    pub nc2: ColorSet,
}

fn level(class: &(usize, Vec<ColorSet>), l: usize) -> ColorSet {
    match l {
        0 => ColorSet::from([class.0]),
        l => class.1.get(l - 1).cloned().unwrap_or_default(),
    }
}

impl ChainContext {
    /// Whether adjacency inside the context depends on which side comes
    /// first: `|C₂ ∩ (Cl₁)_ℓ₁|` and `|C₁ ∩ (Cl₂)_ℓ₂|` differ in parity.
    pub fn parity_disagrees(&self) -> bool {
        let a = level(&self.class1, self.l1).intersection(&self.nc2).count();
        let b = level(&self.class2, self.l2).intersection(&self.nc1).count();
        a % 2 != b % 2
    }

    fn matches(&self, ad: &ActivityData, tree: &FTree, co: &ColoredOrder, u: usize, v: usize) -> Result<bool> {
        let same = |l: &VertexLabel, class: &(usize, Vec<ColorSet>), nc: &ColorSet| {
            l.gamma == class.0 && l.class_seq == class.1 && &l.nc == nc
        };
        Ok(same(&co.labels[u], &self.class1, &self.nc1)
            && same(&co.labels[v], &self.class2, &self.nc2)
            && xi(ad, tree, u, v)? == self.l1
            && xi(ad, tree, v, u)? == self.l2)
    }
}

/// `ζ(u, v)` for `u < v`: the pair `(v′, u)` for the largest `v′ < u` that
/// agrees with `v` on `ξ` in both directions against `u`, on `Class` and `NC`,
/// and on `F^{ξ(v,u)}`.
pub fn zeta(ad: &ActivityData, tree: &FTree, co: &ColoredOrder, u: usize, v: usize) -> Result<Option<(usize, usize)>> {
    if u >= v {
        return Err(Error::Input(format!("zeta needs u < v, got ({u}, {v})")));
    }
    let x_uv = xi(ad, tree, u, v)?;
    let x_vu = xi(ad, tree, v, u)?;
    let target = tree.iterate(v, x_vu);
    let lv = &co.labels[v];
    for w in (0..u).rev() {
        let lw = &co.labels[w];
        if lw.gamma == lv.gamma
            && lw.class_seq == lv.class_seq
            && lw.nc == lv.nc
            && xi(ad, tree, u, w)? == x_uv
            && xi(ad, tree, w, u)? == x_vu
            && tree.iterate(w, x_vu) == target
        {
            return Ok(Some((w, u)));
        }
    }
    Ok(None)
}

/// Every context realized by some pair `u < v`.
pub fn realized_contexts(ad: &ActivityData, tree: &FTree, co: &ColoredOrder) -> Result<Vec<ChainContext>> {
    let n = ad.n();
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let (lu, lv) = (&co.labels[u], &co.labels[v]);
            out.insert(ChainContext {
                l1: xi(ad, tree, u, v)?,
                class1: (lu.gamma, lu.class_seq.clone()),
                nc1: lu.nc.clone(),
                l2: xi(ad, tree, v, u)?,
                class2: (lv.gamma, lv.class_seq.clone()),
                nc2: lv.nc.clone(),
            });
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternationChain {
    /// Pairs `(u_i, v_i)` with `v_1 > u_1 > v_2 > u_2 > …`; the index of a
    /// pair is its mark.
    pub pairs: Vec<(usize, usize)>,
}

impl AlternationChain {
    /// Completed double steps: one less than the number of pairs.
    pub fn length(&self) -> usize {
        self.pairs.len().saturating_sub(1)
    }
}

/// Longest chain `ζ(u_i, v_i) = (v_{i+1}, u_i)`, `ζ(v_{i+1}, u_i) = (u_{i+1}, v_{i+1})`
/// whose first pair realizes the context. The context must be
/// parity-disagreeing.
pub fn max_alternation_chain(
    ad: &ActivityData,
    tree: &FTree,
    co: &ColoredOrder,
    ctx: &ChainContext,
) -> Result<AlternationChain> {
    if !ctx.parity_disagrees() {
        return Err(Error::Input("context does not have disagreeing parities".into()));
    }
    let n = ad.n();
    let mut best = AlternationChain { pairs: Vec::new() };
    for u in 0..n {
        for v in u + 1..n {
            if !ctx.matches(ad, tree, co, u, v)? {
                continue;
            }
            let mut pairs = vec![(u, v)];
            let (mut ui, mut vi) = (u, v);
            while let Some((next_v, _)) = zeta(ad, tree, co, ui, vi)? {
                match zeta(ad, tree, co, next_v, ui)? {
                    Some((next_u, _)) => {
                        pairs.push((next_u, next_v));
                        ui = next_u;
                        vi = next_v;
                    }
                    None => break,
                }
            }
            if pairs.len() > best.pairs.len() {
                best = AlternationChain { pairs };
            }
        }
    }
    Ok(best)
}

/// Within a `(Class, NC)` class, equal maxima of `F^k` force equal `F^k`.
pub fn check_z_classes(tree: &FTree, co: &ColoredOrder) -> Result<()> {
    let n = co.n();
    for u in 0..n {
        for v in u + 1..n {
            if co.labels[u].class_nc() != co.labels[v].class_nc() {
                continue;
            }
            for k in 0..=co.r + 1 {
                let (fu, fv) = (tree.iterate(u, k), tree.iterate(v, k));
                if tree.max(fu) == tree.max(fv) && fu != fv {
                    return Err(Error::Invariant(format!(
                        "positions {u} and {v}: F^{k} are {:?} and {:?} with equal maxima",
                        tree.set(fu),
                        tree.set(fv)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The set `M` with `u ∈ I_M` and `Γ(M) = C`: for each color of `C`, the
/// last position up to `u` carrying it. Absent when `C ⊄ IC(u)`.
pub fn n_c(co: &ColoredOrder, u: usize, c: &ColorSet) -> Option<Vec<usize>> {
    if !c.is_subset(&co.labels[u].ic) {
        return None;
    }
    let mut m: Vec<usize> = c
        .iter()
        .map(|&a| (0..=u).rev().find(|&x| co.labels[x].gamma == a))
        .collect::<Option<_>>()?;
    m.sort_unstable();
    Some(m)
}
