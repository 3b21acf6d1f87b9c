//! Partition of an ordered graph into cographs.
//!
//! Positions with equal `(Class, NC)` labels form a class. Within a class the
//! F-tree restricted to the members' paths is a cotree: pairs meeting at the
//! same F-tree node are either all adjacent or all non-adjacent.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::activity::{reconstruct_adjacency, ActivityData, FTree, ROOT};
use crate::encoding::{alphabet_bounds, ColorSet, ColoredOrder};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::width::{chromatic_number_guarded, clique_number, is_cograph, Cotree, CHROMATIC_GUARD};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CographClass {
    pub gamma: usize,
    pub class_seq: Vec<ColorSet>,
    pub nc: ColorSet,
    /// Positions in the class, increasing.
    pub members: Vec<usize>,
    #[serde(skip)]
    pub cotree: Cotree,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CographPartition {
    pub r: usize,
    pub classes: Vec<CographClass>,
}

impl CographPartition {
    pub fn max_height(&self) -> usize {
        self.classes.iter().map(|c| c.height).max().unwrap_or(0)
    }
}

/// Groups positions by `(Class, NC)` and certifies every class.
///
/// Fails with an invariant error carrying the witness if a meeting node sees
/// both adjacent and non-adjacent pairs, a cotree exceeds height `r+2`, or the
/// independent cograph recognizer disagrees.
pub fn partition(ad: &ActivityData, tree: &FTree, co: &ColoredOrder) -> Result<CographPartition> {
    if co.n() != ad.n() || co.r != ad.r() {
        return Err(Error::Contract("labels were not produced from this ordered graph".into()));
    }
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (p, l) in co.labels.iter().enumerate() {
        groups.entry((l.gamma, l.class_seq.clone(), l.nc.clone())).or_default().push(p);
    }
    let pg = ad.position_graph();
    let mut classes = Vec::with_capacity(groups.len());
    for ((gamma, class_seq, nc), members) in groups {
        let cotree = restricted_cotree(ad, tree, &members)?;
        let height = cotree.height();
        if height > ad.r() + 2 {
            return Err(Error::Invariant(format!(
                "class {members:?} has cotree height {height} > r + 2 = {}",
                ad.r() + 2
            )));
        }
        let (sub, _) = pg.induced_subgraph(&members);
        if !is_cograph(&sub).is_cograph() || !cotree.realizes(pg) {
            return Err(Error::Invariant(format!("class {members:?} does not induce a cograph")));
        }
        classes.push(CographClass {
            gamma,
            class_seq,
            nc,
            members,
            cotree,
            height,
        });
    }
    Ok(CographPartition { r: ad.r(), classes })
}

fn restricted_cotree(ad: &ActivityData, tree: &FTree, members: &[usize]) -> Result<Cotree> {
    let mut kids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in members {
        let path = tree.path(x);
        for w in path.windows(2) {
            let list = kids.entry(w[1]).or_default();
            if !list.contains(&w[0]) {
                list.push(w[0]);
            }
        }
    }
    let mut leaf_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in members {
        leaf_at.entry(tree.singleton(x)).or_default().push(x);
    }
    Ok(build(ad, tree, ROOT, &kids, &leaf_at)?.expect("a class is nonempty"))
}

fn build(
    ad: &ActivityData,
    tree: &FTree,
    node: usize,
    kids: &BTreeMap<usize, Vec<usize>>,
    leaf_at: &BTreeMap<usize, Vec<usize>>,
) -> Result<Option<Cotree>> {
    let mut parts: Vec<Cotree> = leaf_at.get(&node).into_iter().flatten().map(|&x| Cotree::Leaf(x)).collect();
    for &c in kids.get(&node).into_iter().flatten() {
        parts.extend(build(ad, tree, c, kids, leaf_at)?);
    }
    if parts.len() <= 1 {
        return Ok(parts.pop());
    }
    let leaves: Vec<Vec<usize>> = parts.iter().map(Cotree::leaves).collect();
    let mut verdict = None;
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            for &x in a {
                for &y in b {
                    let adj = reconstruct_adjacency(ad, tree, x, y)?;
                    match verdict {
                        None => verdict = Some((adj, x, y)),
                        Some((first, fx, fy)) if first != adj => {
                            return Err(Error::Invariant(format!(
                                "pairs ({fx}, {fy}) and ({x}, {y}) meet at {:?} with different adjacency",
                                tree.set(node)
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(Some(match verdict {
        Some((true, _, _)) => Cotree::Join(parts),
        _ => Cotree::Union(parts),
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiReport {
    pub classes: usize,
    /// `f(r)` as a decimal string.
    pub f_r: String,
    pub classes_within_f: bool,
    pub omega: Option<usize>,
    pub chi: Option<usize>,
    /// `f(r)·ω(G)` when `ω` is known.
    pub bound: Option<String>,
    /// `χ ≤ f(r)·ω`, when both sides are known.
    pub holds: Option<bool>,
    /// Per class, whether `χ = ω` on the induced subgraph; `None` past the guard.
    pub class_perfect: Vec<Option<bool>>,
    /// Set when some exact computation was skipped because of a guard.
    pub partial: bool,
}

/// Checks `χ(G) ≤ f(r)·ω(G)` with exact oracles. `g` must be the graph on
/// positions the partition was built from.
pub fn chi_bound_report(g: &Graph, p: &CographPartition) -> ChiReport {
    chi_bound_report_guarded(g, p, CHROMATIC_GUARD)
}

pub fn chi_bound_report_guarded(g: &Graph, p: &CographPartition, chi_guard: usize) -> ChiReport {
    let f = alphabet_bounds(p.r).f;
    let omega = clique_number(g).ok();
    let chi = chromatic_number_guarded(g, chi_guard).ok();
    let bound = omega.map(|w| &f * BigUint::from(w));
    let holds = chi.zip(bound.as_ref()).map(|(c, b)| BigUint::from(c) <= *b);
    let class_perfect: Vec<Option<bool>> = p
        .classes
        .iter()
        .map(|c| {
            let (sub, _) = g.induced_subgraph(&c.members);
            let w = clique_number(&sub).ok()?;
            let x = chromatic_number_guarded(&sub, chi_guard).ok()?;
            Some(w == x)
        })
        .collect();
    ChiReport {
        classes: p.classes.len(),
        classes_within_f: BigUint::from(p.classes.len()) <= f,
        f_r: f.to_string(),
        partial: omega.is_none() || chi.is_none() || class_perfect.iter().any(Option::is_none),
        omega,
        chi,
        bound: bound.map(|b| b.to_string()),
        holds,
        class_perfect,
    }
}
