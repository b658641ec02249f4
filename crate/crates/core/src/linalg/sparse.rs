use super::howell::{entry, howell_core, Ctx, Pivot, SparseRow};
use super::zmod::ZMat;

/// Row-sparse matrix over `Z/p^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    pub p: u64,
    pub m: u32,
    pub cols: usize,
    pub rows: Vec<SparseRow>,
}

/// Howell basis of a row span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    pub p: u64,
    pub m: u32,
    pub cols: usize,
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<Pivot>,
}

fn ctx(p: u64, m: u32) -> Ctx {
    Ctx { p, m, md: p.pow(m) }
}

pub fn sparse_from_dense(v: &[u64]) -> SparseRow {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect()
}

pub fn sparse_to_dense(v: &[(usize, u64)], len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for &(c, x) in v {
        out[c] = x;
    }
    out
}

/// `a + f * b` for sparse rows.
pub fn axpy(p: u64, m: u32, a: &[(usize, u64)], f: u64, b: &[(usize, u64)]) -> SparseRow {
    let md = p.pow(m);
    ctx(p, m).sub_multiple(a, b, (md - f % md) % md, 0)
}

pub fn scale_row(p: u64, m: u32, v: &[(usize, u64)], f: u64) -> SparseRow {
    let md = p.pow(m);
    v.iter().map(|&(c, x)| (c, x * f % md)).filter(|&(_, x)| x != 0).collect()
}

impl SparseMat {
    pub fn new(p: u64, m: u32, cols: usize) -> Self {
        SparseMat { p, m, cols, rows: Vec::new() }
    }

    pub fn from_zmat(z: &ZMat) -> Self {
        let rows = (0..z.rows()).map(|r| sparse_from_dense(z.row(r))).collect();
        SparseMat { p: z.p, m: z.m, cols: z.cols(), rows }
    }

    pub fn to_zmat(&self) -> ZMat {
        let rows = self.rows.iter().map(|r| sparse_to_dense(r, self.cols)).collect();
        ZMat::from_residue_rows(self.p, self.m, self.cols, rows)
    }

    pub fn identity(p: u64, m: u32, n: usize) -> Self {
        SparseMat { p, m, cols: n, rows: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// `v * self` for a sparse row vector `v` indexed by rows of `self`.
    pub fn apply(&self, v: &[(usize, u64)]) -> SparseRow {
        let md = self.modulus();
        let mut acc = vec![0u64; self.cols];
        let mut touched = false;
        for &(k, a) in v {
            for &(c, b) in &self.rows[k] {
                acc[c] = (acc[c] + a * b) % md;
                touched = true;
            }
        }
        if !touched {
            return Vec::new();
        }
        sparse_from_dense(&acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.nrows(), "shape mismatch in sparse product");
        let rows = self.rows.iter().map(|r| other.apply(r)).collect();
        SparseMat { p: self.p, m: self.m, cols: other.cols, rows }
    }

    pub fn vstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMat { rows, ..self.clone() }
    }

    pub fn span(&self) -> SpanBasis {
        SpanBasis::of_rows(self.p, self.m, self.cols, self.rows.clone())
    }

    /// Howell basis of the left kernel `{x : x A = 0}`.
    pub fn kernel(&self) -> SpanBasis {
        let n = self.nrows();
        let aug = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.push((self.cols + i, 1));
                v
            })
            .collect();
        let (out, pivots) = howell_core(aug, self.cols + n, &ctx(self.p, self.m));
        let mut rows = Vec::new();
        let mut kp = Vec::new();
        for (r, pv) in out.into_iter().zip(pivots) {
            if pv.col >= self.cols {
                rows.push(r.into_iter().map(|(c, x)| (c - self.cols, x)).collect());
                kp.push(Pivot { col: pv.col - self.cols, valuation: pv.valuation });
            }
        }
        SpanBasis { p: self.p, m: self.m, cols: n, rows, pivots: kp }
    }
}

impl SpanBasis {
    pub fn of_rows(p: u64, m: u32, cols: usize, rows: Vec<SparseRow>) -> Self {
        let (rows, pivots) = howell_core(rows, cols, &ctx(p, m));
        SpanBasis { p, m, cols, rows, pivots }
    }

    pub fn zero(p: u64, m: u32, cols: usize) -> Self {
        SpanBasis { p, m, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u64, m: u32, cols: usize) -> Self {
        let rows = (0..cols).map(|i| vec![(i, 1)]).collect();
        let pivots = (0..cols).map(|col| Pivot { col, valuation: 0 }).collect();
        SpanBasis { p, m, cols, rows, pivots }
    }

    /// `log_p` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().map(|pv| self.m - pv.valuation).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficients on the basis rows when `v` lies in the span.
    pub fn coordinates(&self, v: &[(usize, u64)]) -> Option<Vec<u64>> {
        let c = ctx(self.p, self.m);
        let mut rest: SparseRow = v.to_vec();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (i, pv) in self.pivots.iter().enumerate() {
            let x = entry(&rest, pv.col);
            if x == 0 {
                continue;
            }
            let pval = self.p.pow(pv.valuation);
            if !x.is_multiple_of(pval) {
                return None;
            }
            coeffs[i] = x / pval;
            rest = c.sub_multiple(&rest, &self.rows[i], x / pval, 0);
        }
        rest.is_empty().then_some(coeffs)
    }

    pub fn contains(&self, v: &[(usize, u64)]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_span(&self, other: &SpanBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Span of `self` together with extra rows.
    pub fn extend(&self, extra: impl IntoIterator<Item = SparseRow>) -> SpanBasis {
        let mut rows = self.rows.clone();
        rows.extend(extra);
        SpanBasis::of_rows(self.p, self.m, self.cols, rows)
    }

    pub fn as_matrix(&self) -> SparseMat {
        SparseMat { p: self.p, m: self.m, cols: self.cols, rows: self.rows.clone() }
    }
}
