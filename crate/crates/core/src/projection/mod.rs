//! Checkable procedures on k-element projections of projective geometries:
//! density, local structure, flat partitions, stacks, roundness, projective
//! maps and recognition.

mod density;
mod maps;
mod partition;
mod round;
mod stack;
pub(crate) mod strip;

pub use density::{
    d_bound, density_d, density_params, local_conn_k, local_rep_level, representable, sensitive_cover,
    sensitive_elements, spanning_subprojection, DensityReport, SensitiveReport,
};
pub use maps::{is_projective_map, is_quotient, pullback, triangle_compatible, EXHAUSTIVE_MAP_LIMIT};
pub use partition::{flat_partition_min, skew_sunflower, Sunflower, PARTITION_RANK_LIMIT};
pub use round::{cospan_minor, phi_dense, weakly_round_dense_restriction, CospanMinor, RoundRestriction};
pub use stack::{find_stack, StackWitness};
pub use strip::{admissible_k, find_projection_witness, strip_to_projection, Stripped};
