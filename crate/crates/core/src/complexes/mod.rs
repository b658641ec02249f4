//! Bounded cochain complexes of free modules over one ring.

mod cohomology;
mod minimize;

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::{RingMap, RingSpec};

pub use cohomology::{cohomology, cohomology_log_size, FiniteModule, ModuleFingerprint, Subquotient};
pub use minimize::{minimize, minimize_with_maps, tau_profile, Minimization};

/// `F^lo -> F^{lo+1} -> ... -> F^hi`. The differential `d^i` is a
/// `rank(i) x rank(i+1)` matrix acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeComplex {
    spec: RingSpec,
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

/// Validated constructor. `diffs[k]` is `d^{lo+k}`; there is one fewer
/// differential than ranks.
pub fn make_complex(spec: RingSpec, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<FreeComplex> {
    if ranks.is_empty() && diffs.is_empty() {
        return Ok(FreeComplex::zero(spec));
    }
    if diffs.len() + 1 != ranks.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} differentials for {} degrees",
            diffs.len(),
            ranks.len()
        )));
    }
    for (k, d) in diffs.iter().enumerate() {
        if *d.spec() != spec {
            return Err(Error::SpecMismatch(format!("d^{} over another ring", lo + k as i32)));
        }
        if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
            return Err(Error::ShapeMismatch(format!(
                "d^{} is {}x{}, ranks are {} and {}",
                lo + k as i32,
                d.rows(),
                d.cols(),
                ranks[k],
                ranks[k + 1]
            )));
        }
    }
    for k in 0..diffs.len().saturating_sub(1) {
        if !diffs[k].mul(&diffs[k + 1])?.is_zero() {
            return Err(Error::NotAComplex { degree: lo + k as i32 });
        }
    }
    Ok(FreeComplex { spec, lo, ranks, diffs })
}

impl FreeComplex {
    pub fn zero(spec: RingSpec) -> Self {
        FreeComplex { spec, lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// A single free module `R^rank` in one degree.
    pub fn free(spec: RingSpec, degree: i32, rank: usize) -> Self {
        FreeComplex { spec, lo: degree, ranks: vec![rank], diffs: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(spec: RingSpec, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Self {
        FreeComplex { spec, lo, ranks, diffs }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored degree; below `lo` for the empty complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// `d^i`, or `None` when either end is outside the stored range.
    pub fn differential(&self, i: i32) -> Option<&Matrix> {
        if i < self.lo || i >= self.hi() {
            None
        } else {
            Some(&self.diffs[(i - self.lo) as usize])
        }
    }

    /// `d^i` with zero matrices outside the stored range.
    pub fn differential_or_zero(&self, i: i32) -> Matrix {
        self.differential(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.spec, self.rank(i), self.rank(i + 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64).sum()
    }

    /// Drops zero modules at either end.
    pub fn trimmed(&self) -> FreeComplex {
        let first = self.ranks.iter().position(|&r| r > 0);
        let last = self.ranks.iter().rposition(|&r| r > 0);
        match (first, last) {
            (Some(a), Some(b)) => FreeComplex {
                spec: self.spec,
                lo: self.lo + a as i32,
                ranks: self.ranks[a..=b].to_vec(),
                diffs: self.diffs[a..b].to_vec(),
            },
            _ => FreeComplex::zero(self.spec),
        }
    }

    /// Entrywise base change of the differentials.
    pub fn tensor_along(&self, f: &RingMap) -> Result<FreeComplex> {
        if *f.source() != self.spec {
            return Err(Error::SpecMismatch("ring map source differs from complex ring".into()));
        }
        let diffs = self.diffs.iter().map(|d| d.map(f)).collect::<Result<_>>()?;
        Ok(FreeComplex { spec: *f.target(), lo: self.lo, ranks: self.ranks.clone(), diffs })
    }

    /// `Hom(F^{-i}, R)` with transposed differentials.
    pub fn dual(&self) -> FreeComplex {
        if self.ranks.is_empty() {
            return self.clone();
        }
        FreeComplex {
            spec: self.spec,
            lo: -self.hi(),
            ranks: self.ranks.iter().rev().copied().collect(),
            diffs: self.diffs.iter().rev().map(Matrix::transpose).collect(),
        }
    }

    /// Degree shift: the returned complex has `F'^i = F^{i+k}`.
    pub fn shift(&self, k: i32) -> FreeComplex {
        FreeComplex { lo: self.lo - k, ..self.clone() }
    }

    /// Direct sum, aligned by degree.
    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch("direct sum over different rings".into()));
        }
        if self.ranks.is_empty() {
            return Ok(other.clone());
        }
        if other.ranks.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let a = self.differential_or_zero(i);
                let b = other.differential_or_zero(i);
                block_diagonal(&a, &b)
            })
            .collect();
        Ok(FreeComplex { spec: self.spec, lo, ranks, diffs })
    }
}

pub(crate) fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(*a.spec(), a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}

/// `tau^i` values of a complex with the derived extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauProfile {
    pub taus: BTreeMap<i32, usize>,
}

impl TauProfile {
    pub fn from_ranks(lo: i32, ranks: &[usize]) -> Self {
        let taus = ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(k, &r)| (lo + k as i32, r))
            .collect();
        TauProfile { taus }
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn d_plus(&self) -> Option<i32> {
        self.taus.keys().next_back().copied()
    }

    pub fn d_minus(&self) -> Option<i32> {
        self.taus.keys().next().copied()
    }

    pub fn amplitude(&self) -> Option<i32> {
        Some(self.d_plus()? - self.d_minus()?)
    }

    pub fn get(&self, i: i32) -> usize {
        self.taus.get(&i).copied().unwrap_or(0)
    }
}
