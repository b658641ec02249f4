//! Exact linear algebra over `Z/p^m` and, through scalar expansion, over the
//! finite tower rings.

mod howell;
mod matrix;
mod sparse;
mod zmod;

pub use howell::{
    howell_form, howell_rows, kernel, reduce_against, solve, span_contains, span_log_size, HowellForm, Pivot, SparseRow,
};
pub use matrix::{expand_scalars, Matrix, ScalarExpander};
pub use sparse::{axpy, scale_row, sparse_from_dense, sparse_to_dense, SpanBasis, SparseMat};
pub use zmod::{valuation, ZMat};
