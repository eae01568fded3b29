//! Subspace enumeration over finite fields, isotropic point counts stratified
//! by the radical, dimension fits, and the degeneration family between strata.

pub mod count;
pub mod enumerate;
pub mod fit;
pub mod witness;

pub use count::{count_multi_isotropic, strata_counts, strata_counts_brute, CountOptions, StratumReport};
pub use enumerate::{gaussian_binomial, SubspaceStream, DEFAULT_CEILING};
pub use fit::{fit_dimension, fit_dimension_holdout, DimensionFit};
pub use witness::{degeneration_witness, Witness};
