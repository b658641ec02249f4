use std::collections::BTreeMap;

use super::gb::Vector;
use super::module::{row_to_vector, vector_to_row, GradedModule};
use super::tools::{is_homogeneous, minimal_generators, syzygies, syzygies_with_degrees};
use crate::complexes::{make_complex, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::RingSpec;

/// A minimal graded free resolution `0 -> F_len -> ... -> F_0 -> M -> 0`,
/// stored as a cochain complex in degrees `[-len, 0]`.
#[derive(Debug, Clone)]
pub struct GradedResolution {
    pub complex: FreeComplex,
    /// `betti[k] = rank F_k`.
    pub betti: Vec<usize>,
    /// Generator degrees of `F_k`.
    pub shifts: Vec<Vec<i32>>,
}

impl GradedResolution {
    pub fn length(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    /// Shifts keyed by cohomological degree.
    pub fn complex_shifts(&self) -> BTreeMap<i32, Vec<i32>> {
        self.shifts.iter().enumerate().map(|(k, s)| (-(k as i32), s.clone())).collect()
    }
}

fn rows_matrix(spec: RingSpec, rows: &[Vector], cols: usize) -> Result<Matrix> {
    Matrix::from_rows(spec, cols, rows.iter().map(|v| vector_to_row(spec, v, cols)).collect())
}

pub fn minimal_graded_resolution(m: &GradedModule) -> Result<GradedResolution> {
    let spec = *m.spec();
    let p = spec.p;
    let pres = m.minimal_presentation();
    if pres.gens() == 0 {
        return Ok(GradedResolution { complex: FreeComplex::zero(spec), betti: Vec::new(), shifts: Vec::new() });
    }
    let mut shifts = vec![pres.gen_degrees().to_vec()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let mut current: Vec<Vector> = pres.relation_vectors().to_vec();
    while !current.is_empty() {
        let prev = shifts.last().unwrap().clone();
        let gens = minimal_generators(p, &current, &prev);
        let degs: Vec<i32> = gens.iter().map(|v| super::tools::vector_degree(v, &prev)).collect();
        let syz = syzygies(p, &gens, prev.len(), &prev);
        maps.push(gens);
        shifts.push(degs);
        current = syz;
    }
    let len = maps.len();
    assert!(len <= spec.q, "resolution longer than the number of variables");
    let betti: Vec<usize> = shifts.iter().map(Vec::len).collect();
    // Cochain layout: degree -k holds F_k, d^{-k-1} has the rows of maps[k].
    let ranks: Vec<usize> = betti.iter().rev().copied().collect();
    let mut diffs = Vec::with_capacity(len);
    for k in (0..len).rev() {
        diffs.push(rows_matrix(spec, &maps[k], betti[k])?);
    }
    let complex = make_complex(spec, -(len as i32), ranks, diffs)?;
    Ok(GradedResolution { complex, betti, shifts })
}

fn matrix_rows(d: &Matrix) -> Vec<Vector> {
    (0..d.rows()).map(|r| row_to_vector(d.row(r))).collect()
}

/// `H^i` of a complex of graded free modules with the given shifts.
pub(crate) fn graded_cohomology(c: &FreeComplex, shifts: &BTreeMap<i32, Vec<i32>>, i: i32) -> Result<GradedModule> {
    let spec = *c.spec();
    let rank = c.rank(i);
    if rank == 0 {
        return GradedModule::free(spec, Vec::new());
    }
    let own = &shifts[&i];
    let z: Vec<Vector> = match c.differential(i) {
        Some(d) if !d.is_zero() => {
            let next = &shifts[&(i + 1)];
            let rows = matrix_rows(d);
            for r in &rows {
                if !is_homogeneous(r, next) {
                    return Err(Error::NotGraded(format!("differential out of degree {i}")));
                }
            }
            syzygies_with_degrees(spec.p, &rows, d.cols(), next, own)
        }
        _ => (0..rank).map(|a| super::tools::constant_vector(a as u32, 1)).collect(),
    };
    let b: Vec<Vector> = match c.differential(i - 1) {
        Some(d) => matrix_rows(d).into_iter().filter(|v| !v.is_empty()).collect(),
        None => Vec::new(),
    };
    Ok(GradedModule::subquotient(spec, &z, &b, own))
}

/// `Ext^i(M, R)` as the cohomology of the dualized minimal resolution.
pub fn ext_module(m: &GradedModule, i: i32) -> Result<GradedModule> {
    let res = minimal_graded_resolution(m)?;
    ext_from_resolution(&res, i, *m.spec())
}

pub(crate) fn ext_from_resolution(res: &GradedResolution, i: i32, spec: RingSpec) -> Result<GradedModule> {
    if i < 0 || i as usize > res.length() || res.betti.is_empty() {
        return GradedModule::free(spec, Vec::new());
    }
    let dual = res.complex.dual();
    let shifts: BTreeMap<i32, Vec<i32>> =
        res.shifts.iter().enumerate().map(|(k, s)| (k as i32, s.iter().map(|x| -x).collect())).collect();
    graded_cohomology(&dual, &shifts, i)
}

/// Minimal generators of `{x : x d = 0}`, as the rows of a matrix.
pub fn syzygy_matrix(d: &Matrix) -> Result<Matrix> {
    let spec = *d.spec();
    super::module::check_graded_ring(&spec)?;
    let rows: Vec<Vec<crate::rings::Elem>> = (0..d.rows()).map(|r| d.row(r).to_vec()).collect();
    let col_shifts = super::shifts::infer_generator_degrees(&rows, d.cols())?;
    let vs = matrix_rows(d);
    let degs: Vec<i32> = vs.iter().map(|v| super::tools::vector_degree(v, &col_shifts)).collect();
    let syz = syzygies_with_degrees(spec.p, &vs, d.cols(), &col_shifts, &degs);
    let gens = minimal_generators(spec.p, &syz, &degs);
    rows_matrix(spec, &gens, d.rows())
}
