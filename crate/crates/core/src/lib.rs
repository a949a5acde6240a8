//! Finite-instance combinatorics for isometric pair colorings.
//!
//! Every structure here is finite and exact: distances are rationals, colorings
//! are explicit tables over `[X]^2`, and infinite ultrametric spaces with a
//! finite scale are presented symbolically through [`tree::ProfileTree`].
//!
//! Module map:
//!
//! * [`metric`]: finite metric spaces, scales, `r`-equivalence partitions.
//! * [`coloring`]: scale maps, pair colorings, exact monochrome and
//!   equidistance search, canonical sequences, separated families.
//! * [`tree`]: profile trees, the universal-Ramsey decision procedure,
//!   materialization, witness sets and obstruction colorings.
//! * [`integers`]: the integer window, forest partitions, pattern-free sets,
//!   thin sets, block sequences and Sidon sets.
//! * [`boolean`]: the truncated Boolean group with its ultrametric.
//! * [`oracle`]: brute-force reference searches.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

mod bitset;

pub mod boolean;
pub mod coloring;
pub mod integers;
pub mod metric;
pub mod oracle;
pub mod tree;

pub use coloring::{Color, PairColoring, ScaleMap};
pub use metric::{FiniteMetricSpace, Metric, Partition, Rational, Scale};
pub use tree::ProfileTree;
