//! Exact commutative algebra for bounded complexes of free modules over
//! local rings: minimal resolutions and tau-profiles, the height/amplitude
//! relations for cohomology supports, and the patching of towers of
//! complexes over `(Z/p^m)[T_1..T_q]/((1+T_i)^{p^n}-1)` into a limit complex
//! with a freeness certificate.

pub mod complexes;
pub mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod patcher;
pub mod rings;
pub mod scenario;

pub use error::{Error, ErrorKind, Result};
pub use linalg::{Matrix, ZMat};
pub use rings::{Elem, RingKind, RingMap, RingSpec};
