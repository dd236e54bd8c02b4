//! Maximum cut on proper interval graphs.
//!
//! Graphs are recognized through an umbrella ordering and turned into a
//! bubble model; the model drives a column-by-column dynamic program.
//!
//! ```
//! use pimc_core::bubble::build_bubble_model;
//! use pimc_core::dp::solve_max_cut;
//! use pimc_core::graph::Graph;
//!
//! let model = build_bubble_model(&Graph::path(5)).unwrap();
//! let result = solve_max_cut(&model, true).unwrap();
//! assert_eq!(result.max_cut_size, 4);
//! ```

pub mod bench;
pub mod bubble;
pub mod dp;
pub mod fixtures;
pub mod graph;
pub mod oracle;
