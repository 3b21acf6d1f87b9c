//! Structure of graphs under vertex orders of small cut-rank.
//!
//! Given an order, [`activity::analyze`] computes neighbor bases and activity
//! intervals, [`activity::build_f_tree`] the delegation tree, and
//! [`encoding::encode`] a per-vertex label from which [`encoding::decode`]
//! rebuilds the graph. The remaining modules derive cograph partitions,
//! interval covers, centered colorings and stability diagnostics, each with
//! its own checker.
//!
//! ```
//! use lrw::encoding::{decode, encode};
//! use lrw::graph::half_graph;
//! use lrw::width::linear_rankwidth_exact;
//! use lrw::OrderedGraph;
//!
//! # fn main() -> lrw::Result<()> {
//! let g = half_graph(4)?;
//! let (width, order) = linear_rankwidth_exact(&g)?;
//! assert_eq!(width, 1);
//!
//! let og = OrderedGraph::new(g, order)?;
//! let labels = encode(&og)?;
//! assert_eq!(decode(&labels)?, og.position_graph());
//! # Ok(())
//! # }
//! ```

pub mod activity;
pub mod cograph;
pub mod connection;
pub mod encoding;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod interval;
pub mod ramsey;
pub mod stability;
pub mod width;

pub use error::{Error, Result};
pub use graph::{Digraph, Graph, OrderedGraph};

// The guide's snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/widths.md")]
    mod widths {}
    #[doc = include_str!("../../../book/src/activity.md")]
    mod activity {}
    #[doc = include_str!("../../../book/src/encoding.md")]
    mod encoding {}
    #[doc = include_str!("../../../book/src/cographs.md")]
    mod cographs {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
