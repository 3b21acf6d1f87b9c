//! Linear algebra over GF(2) on packed bit rows: rank, span membership with
//! coefficient recovery, greedy bases, and the cut-rank of a vertex set.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A 0-1 matrix over GF(2) whose rows are packed bit-vectors of a common
/// length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<FixedBitSet>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<FixedBitSet>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Input(format!(
                "row {i} has {} columns, expected {cols}",
                r.len()
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows written as `0`/`1` strings, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| bits_from_str(r)).collect::<Result<Vec<_>>>()?;
        BitMatrix::new(cols, rows)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }
}

/// Parses a `0`/`1` string into a bit-vector; character `i` is bit `i`.
pub fn bits_from_str(s: &str) -> Result<FixedBitSet> {
    let mut b = FixedBitSet::with_capacity(s.len());
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => b.insert(i),
            '0' => {}
            _ => return Err(Error::Input(format!("`{s}` is not a 0/1 string"))),
        }
    }
    Ok(b)
}

/// An incrementally built row-echelon basis that remembers, for each stored
/// row, which inserted vectors it is the XOR of.
///
/// Reducing a vector against the basis therefore yields both the residual and
/// the combination of inserted tags, without a second elimination.
#[derive(Clone, Debug)]
pub struct XorBasis {
    cols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<FixedBitSet>,
    combos: Vec<FixedBitSet>,
    tags: usize,
}

impl XorBasis {
    /// `tags` bounds the tag values passed to [`XorBasis::insert`].
    pub fn new(cols: usize, tags: usize) -> Self {
        XorBasis {
            cols,
            pivot_row: vec![None; cols],
            rows: Vec::new(),
            combos: Vec::new(),
            tags,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Returns the residual of `v` and the set of tags whose vectors were
    /// XORed into it. The residual is empty iff `v` lies in the span.
    pub fn reduce(&self, v: &FixedBitSet) -> (FixedBitSet, FixedBitSet) {
        let mut residual = v.clone();
        let mut combo = FixedBitSet::with_capacity(self.tags);
        while let Some(p) = residual.minimum() {
            match self.pivot_row[p] {
                Some(i) => {
                    residual.symmetric_difference_with(&self.rows[i]);
                    combo.symmetric_difference_with(&self.combos[i]);
                }
                None => break,
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &FixedBitSet) -> bool {
        self.reduce(v).0.is_clear()
    }

    /// Inserts `v` under `tag`. On dependence nothing is stored and the
    /// combination of earlier tags spanning `v` is returned as the error.
    pub fn insert(&mut self, v: &FixedBitSet, tag: usize) -> std::result::Result<(), FixedBitSet> {
        debug_assert!(v.len() <= self.cols && tag < self.tags);
        let (residual, mut combo) = self.reduce(v);
        match residual.minimum() {
            None => Err(combo),
            Some(p) => {
                combo.insert(tag);
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(residual);
                self.combos.push(combo);
                Ok(())
            }
        }
    }
}

/// GF(2) rank by elimination.
pub fn rank(m: &BitMatrix) -> usize {
    let mut basis = XorBasis::new(m.cols, m.rows.len().max(1));
    m.rows
        .iter()
        .enumerate()
        .filter(|(i, r)| basis.insert(r, *i).is_ok())
        .count()
}

/// Rank of rows given as machine words.
pub fn rank_words(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut by_pivot = [0u64; 64];
    let mut rank = 0;
    for mut r in rows {
        while r != 0 {
            let p = r.trailing_zeros() as usize;
            if by_pivot[p] == 0 {
                by_pivot[p] = r;
                rank += 1;
                break;
            }
            r ^= by_pivot[p];
        }
    }
    rank
}

/// Scans `vectors` in order and keeps index `i` iff vector `i` is outside the
/// span of the vectors kept before it. The result is increasing.
pub fn greedy_basis(vectors: &[FixedBitSet]) -> Vec<usize> {
    let cols = vectors.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut basis = XorBasis::new(cols, vectors.len().max(1));
    let mut kept = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        v.grow(cols);
        if basis.insert(&v, i).is_ok() {
            kept.push(i);
        }
    }
    kept
}

/// The unique subset of row indices whose XOR equals `target`, or `None` when
/// `target` is outside the row span. The rows must be linearly independent.
pub fn solve_in_span(basis_rows: &BitMatrix, target: &FixedBitSet) -> Result<Option<Vec<usize>>> {
    let mut basis = XorBasis::new(basis_rows.cols, basis_rows.rows.len().max(1));
    for (i, r) in basis_rows.rows.iter().enumerate() {
        if let Err(combo) = basis.insert(r, i) {
            return Err(Error::Contract(format!(
                "basis row {i} is the XOR of rows {:?}",
                combo.ones().collect::<Vec<_>>()
            )));
        }
    }
    let mut t = target.clone();
    t.grow(basis_rows.cols);
    let (residual, combo) = basis.reduce(&t);
    Ok(residual.is_clear().then(|| combo.ones().collect()))
}

/// Cut-rank `ρ_G(X)`: rank of the adjacency matrix between `x` and its
/// complement. Zero for `∅` and `V(G)`.
pub fn cut_rank(g: &Graph, x: &[usize]) -> usize {
    let mut set = FixedBitSet::with_capacity(g.n());
    set.extend(x.iter().copied());
    cut_rank_set(g, &set)
}

pub fn cut_rank_set(g: &Graph, x: &FixedBitSet) -> usize {
    let n = g.n();
    let mut outside = FixedBitSet::with_capacity(n);
    outside.insert_range(..);
    outside.difference_with(x);
    let mut basis = XorBasis::new(n, n.max(1));
    x.ones()
        .filter(|&v| {
            let mut row = g.neighbors(v).clone();
            row.intersect_with(&outside);
            basis.insert(&row, v).is_ok()
        })
        .count()
}

/// Cut-rank of a vertex mask over word-sized adjacency rows (`n ≤ 64`).
#[inline]
pub fn cut_rank_mask(adj: &[u64], set: u64) -> usize {
    let full = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let outside = full & !set;
    let mut s = set;
    let rows = std::iter::from_fn(move || {
        (s != 0).then(|| {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            adj[v] & outside
        })
    });
    rank_words(rows)
}
