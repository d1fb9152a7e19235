//! Exact J-characteristic geometry for orthogonal-array integer linear
//! descriptions.
//!
//! The crate converts arrays and frequency vectors into ANOVA
//! (J-characteristic) coordinates, checks orthogonal-array strength two
//! independent ways, builds the closed-form invariant subspaces of the
//! paratopism and orthogonal-design groups, enumerates the admissible
//! dimensions of the integer hull together with their zero right-hand-side
//! constraint families, writes solver-ready equality systems, and certifies
//! all of it at desk scale against a brute-force enumerator.
//!
//! All arithmetic is exact. There is no floating point and no tolerance
//! anywhere in the library.
//!
//! Symbols are `0..n`, columns are 0-based, and tuples are ranked
//! big-endian (column 0 most significant).

pub mod anova;
pub mod arrays;
pub mod combin;
pub mod dims;
pub mod error;
pub mod groups;
pub mod ild;
pub mod linalg;
pub mod oracle;
pub mod repr;

pub use anova::{
    anova_transform, binomial_identity_check, check_strength_j, congruence_report,
    consistency_check, sign_pattern, signed_j_transform, CongruenceReport, JVector,
    SignedJVector, SubsetMask,
};
pub use arrays::{
    array_to_frequency, check_strength_direct, tuple_rank, tuple_unrank, FrequencyVector,
    OAParams, SymbolArray, TupleSpace,
};
pub use dims::{
    candidate_dims, compute_omega, constraint_family, full_dim_if_nondivisible,
    method2_candidates, DimCandidate, DimMode, DimReport, ModeSelect, OmegaSet,
};
pub use error::{Error, Result};
pub use groups::{GroupElement, ODWord, OrbitPartition, Paratopism};
pub use ild::{build_ild_j, build_ild_marginal, check_equivalence, emit, EmitFormat, LinearSystem};
pub use oracle::{
    affine_dimension, certify, enumerate_all, vanishing_blocks, Certificate, EnumerationResult,
    SearchOptions,
};
pub use repr::{
    build_u_projectors, build_w_projectors, fixed_subspace_projector, Decomposition, Projector,
};
