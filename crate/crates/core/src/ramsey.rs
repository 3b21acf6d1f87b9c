//! Lexicographic powers, substitution, and exhaustive vertex-Ramsey checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{lex_product, Graph};

pub const LEX_POWER_GUARD: usize = 4096;
/// Largest number of colorings `verify_vertex_ramsey` will enumerate.
pub const COLORINGS_GUARD: u64 = 1 << 24;
/// Host graphs are handled as `u64` vertex masks.
const HOST_LIMIT: usize = 63;

/// `f^{•m}`: `f^{•1} = f` and `f^{•(i+1)} = f^{•i} • f`.
pub fn lex_power(f: &Graph, m: usize) -> Result<Graph> {
    lex_power_guarded(f, m, LEX_POWER_GUARD)
}

pub fn lex_power_guarded(f: &Graph, m: usize, guard: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::Input("the exponent must be at least 1".into()));
    }
    let size = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(f.n())).unwrap_or(usize::MAX);
    if size > guard {
        return Err(Error::capacity("vertex count", size, guard, "--guard-n"));
    }
    (1..m).try_fold(f.clone(), |acc, _| lex_product(&acc, f))
}

/// Replaces vertex `v` by a copy of `h`; the copy takes ids `v..v+|h|` and
/// inherits `v`'s neighbors, later vertices shift up by `|h| - 1`.
pub fn substitution(g: &Graph, v: usize, h: &Graph) -> Result<Graph> {
    let n = g.n();
    if v >= n {
        return Err(Error::Input(format!("vertex {v} out of range for {n} vertices")));
    }
    let k = h.n();
    let origin = |x: usize| -> std::result::Result<usize, usize> {
        if x < v {
            Ok(x)
        } else if x < v + k {
            Err(x - v)
        } else {
            Ok(x + 1 - k)
        }
    };
    Ok(Graph::from_fn(n + k - 1, |x, y| match (origin(x), origin(y)) {
        (Ok(a), Ok(b)) => g.has_edge(a, b),
        (Err(a), Err(b)) => h.has_edge(a, b),
        (Ok(a), Err(_)) | (Err(_), Ok(a)) => g.has_edge(a, v),
    }))
}

/// An induced copy of `pattern` inside the vertices of `within`, as the
/// images of pattern vertices `0, 1, …`.
pub fn find_induced_copy(host: &Graph, pattern: &Graph, within: u64) -> Option<Vec<usize>> {
    fn place(host: &[u64], pattern: &Graph, within: u64, image: &mut Vec<usize>) -> bool {
        let i = image.len();
        if i == pattern.n() {
            return true;
        }
        let mut cand = within;
        for (j, &x) in image.iter().enumerate() {
            cand &= !(1 << x);
            cand &= if pattern.has_edge(i, j) { host[x] } else { !host[x] };
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            image.push(x);
            if place(host, pattern, within, image) {
                return true;
            }
            image.pop();
        }
        false
    }
    let adj = host.masks();
    let mut image = Vec::with_capacity(pattern.n());
    place(&adj, pattern, within, &mut image).then_some(image)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyVerdict {
    pub holds: bool,
    pub host_vertices: usize,
    pub colorings: u64,
    /// A coloring of the host with no monochromatic induced copy.
    pub refuting_coloring: Option<Vec<usize>>,
}

/// Whether every `m`-coloring of `f^{•m}` has a monochromatic induced copy
/// of `f`. Colorings are mixed-radix counters; the refuting coloring with
/// the smallest counter is reported.
pub fn verify_vertex_ramsey(f: &Graph, m: usize) -> Result<RamseyVerdict> {
    verify_vertex_ramsey_guarded(f, m, COLORINGS_GUARD)
}

pub fn verify_vertex_ramsey_guarded(f: &Graph, m: usize, guard: u64) -> Result<RamseyVerdict> {
    let host = lex_power_guarded(f, m, HOST_LIMIT)?;
    every_coloring_has_copy(&host, f, m, guard)
}

/// Whether every `m`-coloring of `host` has a monochromatic induced copy of
/// `pattern`.
pub fn every_coloring_has_copy(host: &Graph, pattern: &Graph, m: usize, guard: u64) -> Result<RamseyVerdict> {
    let n = host.n();
    if n > HOST_LIMIT || m == 0 {
        return Err(Error::Input(format!("{m} colors on {n} vertices is outside the supported range")));
    }
    let colorings = (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(m as u64))
        .filter(|&c| c <= guard)
        .ok_or_else(|| {
            // largest host size whose colorings fit under the guard
            let fits = (0..=n).take_while(|&k| (m as u128).pow(k as u32) <= guard as u128).last().unwrap_or(0);
            Error::capacity("host vertices", n, fits, "--guard-n")
        })?;
    let decode = |code: u64| -> Vec<usize> {
        let mut c = code;
        (0..n)
            .map(|_| {
                let d = (c % m as u64) as usize;
                c /= m as u64;
                d
            })
            .collect()
    };
    let refuting = (0..colorings).into_par_iter().find_first(|&code| {
        let coloring = decode(code);
        !(0..m).any(|color| {
            let class = (0..n).filter(|&v| coloring[v] == color).fold(0u64, |s, v| s | 1 << v);
            find_induced_copy(host, pattern, class).is_some()
        })
    });
    Ok(RamseyVerdict {
        holds: refuting.is_none(),
        host_vertices: n,
        colorings,
        refuting_coloring: refuting.map(decode),
    })
}
