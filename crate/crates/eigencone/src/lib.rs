//! Certified eigenvalue enclosures and eigenspace cones.
//!
//! The crate localizes eigenvalues of (interval) matrices with proofs rather
//! than heuristics: every reported disk, annulus, or cone angle is backed by
//! directed rational arithmetic, so a claim like "exactly one eigenvalue in
//! this disk" survives floating-point scrutiny.
//!
//! The toolbox layers as follows:
//!
//! * [`exact`]: rational scalars, intervals, rectangles, directed bounds;
//! * [`interval`]: outward-rounded `f64` intervals for display and fast paths;
//! * [`linalg`]: interval matrices, ∞-norms, inverse-norm certificates;
//! * [`lp`]: exact rational linear programming (two-phase simplex);
//! * [`cones`]: contraction/expansion rates of block splits, exact or bounded;
//! * [`gersch`]: classical, scaled, and block Gerschgorin disks;
//! * [`localize`]: the headline routines: single-eigenvalue and invariant-
//!   subspace localization, domination-based disk refinement, and rate
//!   propagation through products;
//! * [`mfile`], [`report`], [`svg`], [`driver`]: the matrix-file format,
//!   deterministic JSON reports, figures, and the command implementations
//!   behind the CLI, reusable as a library.

pub mod exact;
pub mod interval;
pub mod linalg;
pub mod lp;
pub mod cones;
pub mod gersch;
pub mod localize;
pub mod mfile;
pub mod report;
pub mod svg;
pub mod driver;
