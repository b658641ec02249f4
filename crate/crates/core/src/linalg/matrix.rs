use std::collections::HashMap;

use super::howell::SparseRow;
use super::sparse::SparseMat;
use super::zmod::ZMat;
use crate::error::{Error, Result};
use crate::rings::{Elem, RingKind, RingMap, RingSpec};

/// Dense matrix over one ring. Rows index the source basis and columns the
/// target basis: the map is `x -> x * A` on row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    spec: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(spec: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { spec, rows, cols, entries: vec![Elem::zero(spec); rows * cols] }
    }

    pub fn identity(spec: RingSpec, n: usize) -> Self {
        let mut out = Self::zeros(spec, n, n);
        for i in 0..n {
            out.set(i, i, Elem::one(spec));
        }
        out
    }

    /// Builds from rows of elements; every entry must lie in `spec`.
    pub fn from_rows(spec: RingSpec, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            for e in r {
                if *e.spec() != spec {
                    return Err(Error::SpecMismatch(format!("entry {e} not in matrix ring")));
                }
                entries.push(e);
            }
        }
        Ok(Matrix { spec, rows: n, cols, entries })
    }

    /// Matrix of constants.
    pub fn from_ints<R: AsRef<[i64]>>(spec: RingSpec, cols: usize, rows: &[R]) -> Self {
        let mut out = Self::zeros(spec, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.as_ref().iter().enumerate() {
                out.set(i, j, Elem::constant(spec, x));
            }
        }
        out
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        assert_eq!(*x.spec(), self.spec);
        self.entries[r * self.cols + c] = x;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Elem::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Self::zeros(self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch("matrix product over different rings".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.spec, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.spec != other.spec || (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("matrix sum of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix { entries, ..self.clone() })
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix { entries: self.entries.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// Entrywise image under a ring map.
    pub fn map(&self, f: &RingMap) -> Result<Matrix> {
        if *f.source() != self.spec {
            return Err(Error::SpecMismatch("ring map source differs from matrix ring".into()));
        }
        let mut cache: HashMap<&Elem, Elem> = HashMap::new();
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let img = match cache.get(e) {
                Some(x) => x.clone(),
                None => {
                    let x = f.apply(e)?;
                    cache.insert(e, x.clone());
                    x
                }
            };
            entries.push(img);
        }
        Ok(Matrix { spec: *f.target(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn map_entries(&self, spec: RingSpec, f: impl Fn(&Elem) -> Elem) -> Matrix {
        let entries = self.entries.iter().map(f).collect::<Vec<_>>();
        debug_assert!(entries.iter().all(|e| *e.spec() == spec));
        Matrix { spec, rows: self.rows, cols: self.cols, entries }
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { spec: self.spec, rows: rows.len(), cols: cols.len(), entries }
    }

    /// Over `Z/p^m` itself: the residue matrix.
    pub fn to_zmat(&self) -> Result<ZMat> {
        if self.spec.kind != RingKind::Coefficient {
            return Err(Error::SpecMismatch("Howell forms need a Z/p^m matrix; expand scalars first".into()));
        }
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().map(Elem::constant_term).collect())
            .collect();
        Ok(ZMat::from_residue_rows(self.spec.p, self.spec.m, self.cols, rows))
    }

    pub fn from_zmat(spec: RingSpec, z: &ZMat) -> Matrix {
        let mut out = Self::zeros(spec, z.rows(), z.cols());
        for r in 0..z.rows() {
            for c in 0..z.cols() {
                out.set(r, c, Elem::constant(spec, z.get(r, c) as i64));
            }
        }
        out
    }
}

/// Expander for a finite ring: caches the regular representation of each
/// distinct element seen.
pub struct ScalarExpander {
    spec: RingSpec,
    basis: Vec<Elem>,
    index: HashMap<Vec<u32>, usize>,
    cache: HashMap<Elem, Vec<Vec<(usize, u64)>>>,
}

impl ScalarExpander {
    pub fn new(spec: RingSpec) -> Result<Self> {
        if !spec.is_finite() {
            return Err(Error::UnsupportedRing("scalar expansion needs a finite ring".into()));
        }
        let monos = spec.monomial_basis();
        let index = monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let basis = monos.into_iter().map(|e| Elem::monomial(spec, e, 1)).collect();
        Ok(ScalarExpander { spec, basis, index, cache: HashMap::new() })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Sparse rows of the regular representation: row `k` is `basis_k * a`.
    pub fn block(&mut self, a: &Elem) -> &Vec<Vec<(usize, u64)>> {
        if !self.cache.contains_key(a) {
            let rows = self
                .basis
                .iter()
                .map(|b| {
                    let prod = b * a;
                    let mut row: Vec<(usize, u64)> =
                        prod.terms().iter().map(|(e, &c)| (self.index[e], c)).collect();
                    row.sort_unstable();
                    row
                })
                .collect();
            self.cache.insert(a.clone(), rows);
        }
        &self.cache[a]
    }

    pub fn coefficient_vector(&self, a: &Elem) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        for (e, &c) in a.terms() {
            v[self.index[e]] = c;
        }
        v
    }

    pub fn element(&self, v: &[u64]) -> Elem {
        let md = self.spec.modulus();
        let terms = self.basis.iter().zip(v).filter(|(_, &c)| c % md != 0).map(|(b, &c)| {
            let (e, _) = b.terms().iter().next().expect("basis monomial");
            (e.clone(), (c % md) as i64)
        });
        Elem::from_terms(self.spec, terms)
    }

    pub fn expand(&mut self, a: &Matrix) -> Result<ZMat> {
        if *a.spec() != self.spec {
            return Err(Error::SpecMismatch("expander built for another ring".into()));
        }
        let rho = self.rank();
        let mut out = ZMat::zeros(self.spec.p, self.spec.m, a.rows() * rho, a.cols() * rho);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let block = self.block(e).clone();
                for (k, row) in block.iter().enumerate() {
                    for &(l, c) in row {
                        out.set(i * rho + k, j * rho + l, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl ScalarExpander {
    /// Row-sparse form of [`expand`](Self::expand).
    pub fn expand_sparse(&mut self, a: &Matrix) -> Result<SparseMat> {
        if *a.spec() != self.spec {
            return Err(Error::SpecMismatch("expander built for another ring".into()));
        }
        let rho = self.rank();
        let mut out = SparseMat::new(self.spec.p, self.spec.m, a.cols() * rho);
        for i in 0..a.rows() {
            let mut rows: Vec<SparseRow> = vec![Vec::new(); rho];
            for j in 0..a.cols() {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let block = self.block(e);
                for (k, row) in block.iter().enumerate() {
                    rows[k].extend(row.iter().map(|&(l, c)| (j * rho + l, c)));
                }
            }
            out.rows.extend(rows);
        }
        Ok(out)
    }

    /// Sparse form of `v * t` on `copies` stacked copies of the ring, where
    /// `v` is a coefficient vector.
    pub fn multiply_vector(&mut self, v: &[(usize, u64)], t: &Elem) -> SparseRow {
        let rho = self.rank();
        let md = self.spec.modulus();
        let block = self.block(t).clone();
        let mut acc: std::collections::BTreeMap<usize, u64> = Default::default();
        for &(idx, a) in v {
            let (copy, k) = (idx / rho, idx % rho);
            for &(l, c) in &block[k] {
                let e = acc.entry(copy * rho + l).or_insert(0);
                *e = (*e + a * c) % md;
            }
        }
        acc.into_iter().filter(|&(_, x)| x != 0).collect()
    }
}

/// The matrix of the same map on underlying free `Z/p^m`-modules, with
/// respect to the monomial basis.
pub fn expand_scalars(a: &Matrix) -> Result<ZMat> {
    ScalarExpander::new(*a.spec())?.expand(a)
}
