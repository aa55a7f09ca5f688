//! Exact combinatorics of embedded contact homology for prequantization
//! circle bundles over closed surfaces.
//!
//! - [`bundle`]: bundles, orbit sets, Morse profiles, actions in the
//!   small-perturbation limit.
//! - [`index`]: ECH index, Fredholm index, relative index, grading.
//! - [`generators`]: null-class generator enumeration.
//! - [`spectrum`]: sphere and torus capacities, the sphere U map.
//! - [`obstruction`]: ball/ellipsoid capacity sequences and Gromov width.
//! - [`cli`]: the `prequant-ech` command-line front end.
//!
//! All integers are exact; overflow is reported as [`Error::Overflow`].

mod arith;
pub mod bundle;
pub mod cli;
pub mod error;
pub mod generators;
pub mod index;
pub mod obstruction;
pub mod spectrum;

pub use arith::{exact_sqrt, isqrt};
pub use bundle::{
    action_of, gamma_class, is_ech_generator, ExactAction, GammaResidue, MorseProfile,
    OrbitLabel, OrbitSet, PrequantizationBundle,
};
pub use error::{Error, Result};
pub use generators::{
    enumerate_by_action, enumerate_by_grading, enumerate_by_grading_with, sphere_pair_for_k,
    GradedGenerator, SphereSolution,
};
pub use index::{
    ech_index, fredholm_index, grading, index_ambiguity, partition_of, relative_index,
    two_i_minus_ind, CurveEndData, OrbitKind, RelativeClassOffset,
};
pub use obstruction::{
    ball_capacities, ellipsoid_capacities, gromov_width_report, obstructs_embedding,
    CapacitySequence, GromovReport,
};
pub use spectrum::{
    capacity_sphere, capacity_sphere_via_u, capacity_torus_bounds, capacity_torus_closed_form,
    sphere_u_step, torus_d_bounds, CapacityResult, SpherePair, TorusBounds, UImage, Witness,
};
