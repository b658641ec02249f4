use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense matrix over `Z/p^m`, row-major, entries in `[0, p^m)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZMat {
    pub p: u64,
    pub m: u32,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for ZMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZMat over Z/{}^{} ({}x{})", self.p, self.m, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl ZMat {
    pub fn zeros(p: u64, m: u32, rows: usize, cols: usize) -> Self {
        ZMat { p, m, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, m: u32, n: usize) -> Self {
        let mut out = Self::zeros(p, m, n, n);
        for i in 0..n {
            out.set(i, i, 1);
        }
        out
    }

    /// Builds from signed integer rows, reducing modulo `p^m`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u64, m: u32, cols: usize, rows: &[R]) -> Self {
        let md = p.pow(m) as i64;
        let mut out = Self::zeros(p, m, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                out.set(i, j, x.rem_euclid(md) as u64);
            }
        }
        out
    }

    pub fn from_residue_rows(p: u64, m: u32, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let md = p.pow(m);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.into_iter().map(|x| x % md));
        }
        ZMat { p, m, rows: n, cols, data }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        let md = self.modulus();
        self.data[r * self.cols + c] = x % md;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        let md = self.modulus();
        self.data.extend(row.iter().map(|x| x % md));
        self.rows += 1;
    }

    pub fn transpose(&self) -> ZMat {
        let mut out = Self::zeros(self.p, self.m, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let md = self.modulus();
        let mut out = Self::zeros(self.p, self.m, self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = (*o + a * b) % md;
                    }
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn left_apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let md = self.modulus();
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                if b != 0 {
                    *o = (*o + a * b) % md;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ZMat) -> ZMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let md = self.modulus();
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % md).collect();
        ZMat { data, ..self.clone() }
    }

    pub fn scale(&self, c: u64) -> ZMat {
        let md = self.modulus();
        let c = c % md;
        let data = self.data.iter().map(|a| a * c % md).collect();
        ZMat { data, ..self.clone() }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ZMat { rows: self.rows + other.rows, data, ..self.clone() }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        ZMat { rows: self.rows, cols, data, ..self.clone() }
    }

    /// Columns `start..end`.
    pub fn col_slice(&self, start: usize, end: usize) -> ZMat {
        let rows = (0..self.rows).map(|r| self.row(r)[start..end].to_vec()).collect();
        Self::from_residue_rows(self.p, self.m, end - start, rows)
    }

    /// The same residues reinterpreted modulo `p^{m'}` for `m' <= m`.
    pub fn reduce_precision(&self, m: u32) -> ZMat {
        assert!(m <= self.m);
        let md = self.p.pow(m);
        ZMat { m, data: self.data.iter().map(|x| x % md).collect(), ..self.clone() }
    }
}

/// `p`-adic valuation of a residue modulo `p^m` (`m` for zero).
pub fn valuation(x: u64, p: u64, m: u32) -> u32 {
    if x == 0 {
        return m;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}
