//! Encoding an ordered graph as a linear order of colored points.
//!
//! Each position receives a color `γ ∈ [r+2]` and a label
//! `(Class, NC, IC)` built from the F-tree. [`decode`] recovers every edge from
//! the labels and the order alone.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::activity::{analyze, build_f_tree, ActivityData, FTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, OrderedGraph};

pub type ColorSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexLabel {
    pub gamma: usize,
    /// `Γ(F^k({v}))` for `k = 1..=r`.
    pub class_seq: Vec<ColorSet>,
    /// Colors of neighbors `u` whose interval contains `v`.
    pub nc: ColorSet,
    /// Colors of all `u` whose interval contains `v`.
    pub ic: ColorSet,
}

impl VertexLabel {
    /// The `(Class, NC)` part of the label.
    pub fn class_nc(&self) -> (usize, &[ColorSet], &ColorSet) {
        (self.gamma, &self.class_seq, &self.nc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredOrder {
    pub r: usize,
    pub labels: Vec<VertexLabel>,
}

/// First-fit coloring of the activity intervals.
///
/// Inactive positions get `r+2`. Active positions are scanned by left
/// endpoint and take the least color in `[r+1]` not used by an earlier active
/// interval still open. Colors are indexed by position.
pub fn gamma_coloring(ad: &ActivityData) -> Result<Vec<usize>> {
    let n = ad.n();
    let r = ad.r();
    let mut gamma = vec![r + 2; n];
    for v in (0..n).filter(|&v| ad.is_active(v)) {
        let busy: HashSet<usize> = (0..v)
            .filter(|&u| ad.is_active(u) && ad.tau(u) >= v)
            .map(|u| gamma[u])
            .collect();
        gamma[v] = (1..=r + 1).find(|c| !busy.contains(c)).ok_or_else(|| {
            Error::Invariant(format!(
                "position {v} meets {} open active intervals with only {} colors",
                busy.len(),
                r + 1
            ))
        })?;
    }
    Ok(gamma)
}

pub fn encode(og: &OrderedGraph) -> Result<ColoredOrder> {
    let ad = analyze(og);
    let tree = build_f_tree(&ad)?;
    encode_with(&ad, &tree)
}

/// Builds the labels from an already computed activity structure.
pub fn encode_with(ad: &ActivityData, tree: &FTree) -> Result<ColoredOrder> {
    let n = ad.n();
    let r = ad.r();
    let gamma = gamma_coloring(ad)?;
    let pg = ad.position_graph();
    let mut labels = Vec::with_capacity(n);
    for v in 0..n {
        let class_seq = (1..=r)
            .map(|k| tree.set(tree.iterate(v, k)).iter().map(|&x| gamma[x]).collect())
            .collect();
        let mut nc = ColorSet::new();
        let mut ic = ColorSet::new();
        for u in 0..=v {
            if ad.tau(u) >= v {
                ic.insert(gamma[u]);
                if pg.has_edge(u, v) {
                    nc.insert(gamma[u]);
                }
            }
        }
        labels.push(VertexLabel {
            gamma: gamma[v],
            class_seq,
            nc,
            ic,
        });
    }
    Ok(ColoredOrder { r, labels })
}

impl ColoredOrder {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of distinct `(Class, NC, IC)` labels.
    pub fn alphabet_size(&self) -> usize {
        self.labels.iter().collect::<HashSet<_>>().len()
    }

    /// Number of distinct `(Class, NC)` pairs.
    pub fn class_nc_count(&self) -> usize {
        self.labels.iter().map(VertexLabel::class_nc).collect::<HashSet<_>>().len()
    }

    fn validate(&self) -> Result<()> {
        let top = self.r + 2;
        for (p, l) in self.labels.iter().enumerate() {
            let bad = |what: &str| Err(Error::MalformedEncoding(format!("position {p}: {what}")));
            if l.class_seq.len() != self.r {
                return bad(&format!("class sequence has {} entries, expected {}", l.class_seq.len(), self.r));
            }
            let colors = std::iter::once(l.gamma)
                .chain(l.class_seq.iter().flatten().copied())
                .chain(l.nc.iter().copied())
                .chain(l.ic.iter().copied());
            for c in colors {
                if c == 0 || c > top {
                    return bad(&format!("color {c} outside 1..={top}"));
                }
            }
            if !l.nc.is_subset(&l.ic) {
                return bad("NC is not contained in IC");
            }
            if !l.ic.contains(&l.gamma) {
                return bad("own color missing from IC");
            }
        }
        Ok(())
    }

    /// Line-oriented text form: a header `r n`, then per position
    /// `gamma | c1;…;cr | nc | ic` with comma-separated color sets.
    pub fn to_text(&self) -> String {
        let join = |s: &ColorSet| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = format!("{} {}\n", self.r, self.n());
        for l in &self.labels {
            let class: Vec<String> = l.class_seq.iter().map(join).collect();
            let _ = writeln!(out, "{} | {} | {} | {}", l.gamma, class.join(";"), join(&l.nc), join(&l.ic));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let [r, n] = nums[..] else {
            return Err(err(1, format!("expected `r n`, got {header:?}")));
        };
        let num = |line: usize, s: &str| {
            s.parse::<usize>().map_err(|e| err(line, format!("bad number {s:?}: {e}")))
        };
        let (r, n) = (num(1, r)?, num(1, n)?);
        let set = |line: usize, s: &str| -> Result<ColorSet> {
            if s.is_empty() {
                return Ok(ColorSet::new());
            }
            s.split(',').map(|c| num(line, c.trim())).collect()
        };
        let mut labels = Vec::with_capacity(n);
        for (line, l) in lines {
            if l.is_empty() {
                continue;
            }
            let fields: Vec<&str> = l.split('|').map(str::trim).collect();
            let [gamma, class, nc, ic] = fields[..] else {
                return Err(err(line, format!("expected 4 fields, got {}", fields.len())));
            };
            let class_seq = if r == 0 {
                if !class.is_empty() {
                    return Err(err(line, "class sequence must be empty when r = 0".into()));
                }
                Vec::new()
            } else {
                class.split(';').map(|s| set(line, s.trim())).collect::<Result<_>>()?
            };
            labels.push(VertexLabel {
                gamma: num(line, gamma)?,
                class_seq,
                nc: set(line, nc)?,
                ic: set(line, ic)?,
            });
        }
        if labels.len() != n {
            return Err(err(1, format!("header announces {n} positions, found {}", labels.len())));
        }
        Ok(ColoredOrder { r, labels })
    }
}

/// Recovers the graph (on positions) from its colored order.
///
/// For `u < v`: the members of `F^k({u})` are, for each color in
/// `Class(u)_k`, the last earlier position of that color; `v` lies in the
/// interval of such an `x` iff `γ(x) ∈ IC(v)` and no later position up to `v`
/// repeats that color; `ξ` is the first level whose members all pass (or that
/// is empty), and `u ~ v` iff `Class(u)_ξ ∩ NC(v)` has odd size.
pub fn decode(co: &ColoredOrder) -> Result<Graph> {
    co.validate()?;
    let n = co.n();
    let r = co.r;
    let colors = r + 3;
    // last[p][a]: last position ≤ p with color a
    let mut last = vec![vec![None; colors]; n];
    for p in 0..n {
        if p > 0 {
            last[p] = last[p - 1].clone();
        }
        last[p][co.labels[p].gamma] = Some(p);
    }
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for (u, l) in co.labels.iter().enumerate() {
        let mut per_k = vec![vec![u]];
        for (k, class) in l.class_seq.iter().enumerate() {
            let members = class
                .iter()
                .map(|&a| {
                    u.checked_sub(1).and_then(|p| last[p][a]).ok_or_else(|| {
                        Error::MalformedEncoding(format!(
                            "position {u}: no earlier position of color {a} for level {}",
                            k + 1
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            per_k.push(members);
        }
        levels.push(per_k);
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let lv = &co.labels[v];
            let covers = |x: &usize| {
                let a = co.labels[*x].gamma;
                lv.ic.contains(&a) && last[v][a] == Some(*x)
            };
            let xi = levels[u]
                .iter()
                .position(|m| m.is_empty() || m.iter().all(covers));
            let Some(xi) = xi else { continue };
            let odd = levels[u][xi]
                .iter()
                .filter(|&&x| lv.nc.contains(&co.labels[x].gamma))
                .count()
                % 2
                == 1;
            if odd {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Exact label-count bounds for width `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphabetBounds {
    /// Bound on distinct `(Class, NC)` pairs: `3·(r+2)!·2^C(r+1,2)`.
    pub f: BigUint,
    /// Bound on distinct `(Class, NC, IC)` labels: `(r+2)!·2^C(r,2)·3^(r+2)`.
    pub f_prime: BigUint,
    /// Same formula as `f_prime`, kept separately for reporting.
    pub g: BigUint,
    /// `log2 f_prime`: bits per vertex needed to name a label.
    pub bits: f64,
}

pub fn alphabet_bounds(r: usize) -> AlphabetBounds {
    let fact: BigUint = (1..=r + 2).map(BigUint::from).product();
    let choose2 = |m: usize| m * m.saturating_sub(1) / 2;
    let f = (BigUint::from(3u32) * &fact) << choose2(r + 1);
    let f_prime = (&fact << choose2(r)) * BigUint::from(3u32).pow(r as u32 + 2);
    let bits = (1..=r + 2).map(|i| (i as f64).log2()).sum::<f64>()
        + choose2(r) as f64
        + (r + 2) as f64 * 3f64.log2();
    AlphabetBounds {
        f,
        g: f_prime.clone(),
        f_prime,
        bits,
    }
}
