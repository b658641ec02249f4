//! Graded modules over `F_p[T_1..T_q]`: Groebner bases, minimal free
//! resolutions, Ext modules and the height-amplitude verifier.

mod gb;
mod ha;
mod invariants;
mod module;
mod resolution;
mod shifts;
mod support;
mod tools;

pub use gb::MonoOrder;
pub use module::GradedModule;
pub use invariants::{depth, module_invariants, ModuleInvariants};
pub use resolution::{syzygy_matrix, ext_module, minimal_graded_resolution, GradedResolution};
pub use support::{groebner_basis, monomial_minimal_prime_heights, support_height_profile};
pub use ha::{cohomology_modules, koszul_complex, verify_height_amplitude, CohomologyEntry, HAReport, PartI, PartII, PartIII, Verdict, DUALITY_DEGREE};
