//! Similarity-sensitive diversity invariants of finite metric spaces.
//!
//! A finite metric space at a scale `t > 0` induces the similarity kernel
//! `Z(x,y) = exp(-t d(x,y))`. Maximizing the order-`alpha` complexity of a
//! distribution against this kernel yields a single number independent of
//! `alpha`: the maximum diversity `D`, with complexity `C = log D` and the
//! set function `kappa = D - 1`. This crate computes these invariants
//! exactly (with optimality certificates), compares them against simplex
//! optimization oracles and closed forms on the real line, and ships a
//! seeded randomized harness that checks every inequality they satisfy:
//! the diversity axioms, wedge-sum subadditivity, Minkowski superlinearity
//! on the line, and fractional subadditivity for unions and mixtures.
//!
//! ```
//! use metricdiv::{max_diversity_exact, FiniteMetricSpace};
//!
//! let d = 3f64.ln();
//! let space = FiniteMetricSpace::from_distance_matrix(&[
//!     vec![0.0, d],
//!     vec![d, 0.0],
//! ]).unwrap();
//! let result = max_diversity_exact(&space, 1.0).unwrap();
//! assert!((result.d - 1.5).abs() < 1e-12);
//! ```

pub mod constructions;
pub mod diversity;
pub mod entropy;
pub mod error;
pub mod harness;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod oracle;
pub mod prob;
pub mod realline;
pub mod space;
pub mod tolerances;
pub mod weighting;

pub use constructions::{
    affine_combination, disjointify, minkowski_sum, union_subspace, wedge_sum,
    FractionalPartition, MixtureSpec, PartitionKind,
};
pub use diversity::{
    complexity_profile, max_diversity_exact, max_diversity_exact_with_cap, ComplexityProfile,
    DiversityResult, ProfileEntry, DEFAULT_N_MAX,
};
pub use entropy::{alpha_complexity, renyi_entropy};
pub use error::{Error, Result};
pub use harness::{CheckReport, ModelKind, RandomModel, Violation};
pub use kernel::SimilarityMatrix;
pub use oracle::simplex_oracle;
pub use prob::ProbabilityVector;
pub use realline::{epsilon_net_diversity, real_set_diversity};
pub use space::{
    FiniteMetricSpace, PointMetric, PointedFiniteMetricSpace, RealCompactSet, RealFiniteSet,
};
pub use weighting::{magnitude, weighting, WeightVector};
