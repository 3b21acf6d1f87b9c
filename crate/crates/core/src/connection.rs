//! Bounded-depth connection models.
//!
//! A connection model is a rooted tree whose leaves are the vertices of the
//! defined graph. Each leaf carries a label and each inner node `w` a
//! relation `C(w)` on labels; two leaves `x ≠ y` are joined by an arc `x → y`
//! iff `(λ(x), λ(y)) ∈ C(w)` for their deepest common ancestor `w`.
//!
//! The embedded variant orders the children of every node and gives each
//! inner node a 0/1 table `f_w` on colors; leaves `x` left of `y` at `w` are
//! adjacent iff `f_w(γ(x), γ(y)) = 1`.
//!
//! Leaves are numbered in depth-first order, children visited in insertion
//! order, so the vertex ids of the defined graph follow the plane order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

#[derive(Clone, Debug, Default)]
pub struct ConnectionModel {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    label: Vec<Option<usize>>,
    relation: Vec<BTreeSet<(usize, usize)>>,
    table: Vec<Option<Vec<Vec<bool>>>>,
    depth_bound: usize,
}

impl ConnectionModel {
    /// A model containing only its root, an inner node.
    pub fn new(depth_bound: usize) -> Self {
        ConnectionModel {
            parent: vec![None],
            children: vec![Vec::new()],
            label: vec![None],
            relation: vec![BTreeSet::new()],
            table: vec![None],
            depth_bound,
        }
    }

    pub const ROOT: usize = 0;

    fn push(&mut self, parent: usize, label: Option<usize>) -> Result<usize> {
        if parent >= self.parent.len() || self.label[parent].is_some() {
            return Err(Error::Input(format!("node {parent} cannot take children")));
        }
        let id = self.parent.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.children[parent].push(id);
        self.label.push(label);
        self.relation.push(BTreeSet::new());
        self.table.push(None);
        Ok(id)
    }

    pub fn add_inner(&mut self, parent: usize) -> Result<usize> {
        self.push(parent, None)
    }

    /// Adds a leaf carrying `label` (for the embedded variant, its color).
    pub fn add_leaf(&mut self, parent: usize, label: usize) -> Result<usize> {
        self.push(parent, Some(label))
    }

    pub fn set_relation(&mut self, node: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<()> {
        self.inner(node)?;
        self.relation[node] = pairs.into_iter().collect();
        Ok(())
    }

    /// Sets `f_w` as a square table indexed by colors `1..=c`.
    pub fn set_table(&mut self, node: usize, table: Vec<Vec<bool>>) -> Result<()> {
        self.inner(node)?;
        if table.iter().any(|row| row.len() != table.len()) {
            return Err(Error::Input(format!("table at node {node} is not square")));
        }
        self.table[node] = Some(table);
        Ok(())
    }

    fn inner(&self, node: usize) -> Result<()> {
        match self.label.get(node) {
            Some(None) => Ok(()),
            _ => Err(Error::Input(format!("node {node} is not an inner node"))),
        }
    }

    /// Leaves in depth-first order with their depths.
    fn leaves(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(Self::ROOT, 0)];
        while let Some((x, d)) = stack.pop() {
            if d > self.depth_bound {
                return Err(Error::Input(format!(
                    "node {x} at depth {d} exceeds the declared bound {}",
                    self.depth_bound
                )));
            }
            if self.label[x].is_some() {
                out.push(x);
            } else if self.children[x].is_empty() && x != Self::ROOT {
                return Err(Error::Input(format!("inner node {x} has no children and no label")));
            }
            stack.extend(self.children[x].iter().rev().map(|&y| (y, d + 1)));
        }
        Ok(out)
    }

    fn meet(&self, mut a: usize, mut b: usize) -> usize {
        let depth = |mut x: usize| {
            let mut d = 0;
            while let Some(p) = self.parent[x] {
                x = p;
                d += 1;
            }
            d
        };
        let (mut da, mut db) = (depth(a), depth(b));
        while da > db {
            a = self.parent[a].expect("below root");
            da -= 1;
        }
        while db > da {
            b = self.parent[b].expect("below root");
            db -= 1;
        }
        while a != b {
            a = self.parent[a].expect("below root");
            b = self.parent[b].expect("below root");
        }
        a
    }
}

/// The digraph defined by the relations; symmetric relations give a
/// symmetric arc set, which [`Digraph::into_undirected`] turns into a graph.
pub fn eval_connection_model(m: &ConnectionModel) -> Result<Digraph> {
    let leaves = m.leaves()?;
    let mut d = Digraph::empty(leaves.len());
    for (i, &x) in leaves.iter().enumerate() {
        for (j, &y) in leaves.iter().enumerate() {
            if i != j {
                let w = m.meet(x, y);
                let pair = (m.label[x].expect("leaf"), m.label[y].expect("leaf"));
                if m.relation[w].contains(&pair) {
                    d.add_arc(i, j);
                }
            }
        }
    }
    Ok(d)
}

/// The graph defined by the plane order and the per-node tables.
pub fn eval_embedded_model(m: &ConnectionModel) -> Result<Graph> {
    let leaves = m.leaves()?;
    let mut g = Graph::empty(leaves.len());
    for (i, &x) in leaves.iter().enumerate() {
        for (j, &y) in leaves.iter().enumerate().skip(i + 1) {
            let w = m.meet(x, y);
            let table = m.table[w]
                .as_ref()
                .ok_or_else(|| Error::Input(format!("inner node {w} has no table")))?;
            let (a, b) = (m.label[x].expect("leaf"), m.label[y].expect("leaf"));
            let cell = a
                .checked_sub(1)
                .zip(b.checked_sub(1))
                .and_then(|(a, b)| table.get(a)?.get(b).copied())
                .ok_or_else(|| Error::Input(format!("colors ({a}, {b}) outside the table at node {w}")))?;
            if cell {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}
