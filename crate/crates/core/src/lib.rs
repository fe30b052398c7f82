//! Finite-scale tools for Specker graphs and ladder-system constructions of
//! graphs whose small subgraphs have small chromatic number.
//!
//! The modules build on each other bottom-up:
//!
//! * [`typealg`]: disjoint types and finite ordinal sets,
//! * [`graphcore`]: simple graphs, odd girth, homomorphism checks,
//! * [`specker`]: the graphs `G(alpha, t)` on `n`-subsets,
//! * [`chroma`]: colorings, exact chromatic number, `f_G` profiles,
//! * [`ladder`]: seeded ladder systems and type realization search,
//! * [`consim`]: the simulated edge constructions and their audits,
//! * [`textio`] and [`report`]: file formats and reproducible JSON reports.

pub mod chroma;
pub mod consim;
pub mod graphcore;
pub mod ladder;
pub mod report;
pub mod specker;
pub mod textio;
pub mod typealg;

pub use chroma::{Budget, Coloring};
pub use graphcore::{Graph, Walk};
pub use typealg::{DisjointType, OrdinalSet};
