//! Grid-based convexity analysis of a density-based cluster.
//!
//! A lattice with spacing `eps` is laid over the cluster's value space
//! (padded by `2 * eps`), optionally sampled at rate `eta`. Lattice points
//! not covered by any cluster point's `eps`-ball mark the outside of the
//! shape; their lattice neighbors that are covered lead to the nearest
//! cluster points, the marginal set. The cluster is reported non-convex as
//! soon as the midpoint of two marginal points is itself uncovered.
//!
//! ```
//! use gridconvex::{analyze, Cluster, ScanMode};
//!
//! let rows: Vec<Vec<f64>> = (0..21)
//!     .flat_map(|i| (0..21).map(move |j| vec![i as f64 * 0.05, j as f64 * 0.05]))
//!     .collect();
//! let square = Cluster::from_rows(rows).unwrap();
//! let report = analyze(&square, 0.05, 1.0, 0, ScanMode::FirstWitness).unwrap();
//! assert!(report.omega);
//! ```

pub mod convexity;
pub mod datagen;
pub mod detection;
pub mod epsilon;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod preprocess;
pub mod spatial;

pub use convexity::{analyze, midpoint_test, AnalysisReport, Evidence, MidpointOutcome, ScanMode};
pub use datagen::{generate, Shape, ShapeSpec};
pub use detection::{detect_marginal, detect_non_neighboring, MarginalSet, NonNeighboringSet};
pub use epsilon::{dbscan, default_min_pts, select_eps, DbscanResult, Label};
pub use error::{Error, Result};
pub use geometry::{distance, in_eps_neighborhood, midpoint, Cluster, Point};
pub use grid::{GridSpec, LatticeIndex, SampledGrid, GENERATOR};
pub use preprocess::{random_project, reduce_dims, subsample_cluster, ProjectionMatrix};
pub use spatial::{Neighbor, SpatialIndex};
