//! Edge coloring of dense graphs and star-multigraphs.
//!
//! The odd-order path ([`reduction::color_odd_dense`]) decides between Δ and
//! Δ + 1 colors; the even-order path ([`engine::dcolor`]) colors
//! near-star-multigraphs with Δ colors when one of its conditions holds.
//! Both fall back to a proper coloring with at most Δ + 1 colors (2Δ − 1 for
//! awkward multigraphs) and say so.

pub mod classic;
pub mod coloring;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod output;
pub mod partition;
pub mod reduction;
pub mod trace;
