use super::{FreeComplex, TauProfile};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::{mod_inverse, Elem, RingKind, RingSpec};

/// A minimal complex together with the comparison chain maps. `proj[k]`
/// goes from the input's degree `lo+k` term to the output's, `incl[k]` back;
/// `proj` after `incl` is the identity.
#[derive(Debug, Clone)]
pub struct Minimization {
    pub complex: FreeComplex,
    pub proj: Vec<Matrix>,
    pub incl: Vec<Matrix>,
}

type Rows = Vec<Vec<Elem>>;

struct Work {
    spec: RingSpec,
    ranks: Vec<usize>,
    diffs: Vec<Rows>,
    proj: Vec<Rows>,
    incl: Vec<Rows>,
}

/// Inverse of a usable pivot. Over the graded model only nonzero constants
/// qualify; a non-constant unit has no polynomial inverse.
fn pivot_inverse(e: &Elem) -> Result<Option<Elem>> {
    if e.spec().kind == RingKind::Graded {
        if e.constant_term() == 0 {
            return Ok(None);
        }
        if !e.is_constant() {
            return Err(Error::UnsupportedRing(format!(
                "unit entry {e} is not homogeneous; cannot cancel it over the polynomial ring"
            )));
        }
    } else if !e.is_unit() {
        return Ok(None);
    }
    e.invert().map(Some)
}

fn identity_rows(spec: RingSpec, n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Elem::one(spec) } else { Elem::zero(spec) }).collect())
        .collect()
}

impl Work {
    fn find_pivot(&self, from: usize) -> Result<Option<(usize, usize, usize, Elem)>> {
        for k in from..self.diffs.len() {
            for (r, row) in self.diffs[k].iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if let Some(inv) = pivot_inverse(e)? {
                        return Ok(Some((k, r, c, inv)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Split off the contractible pair `e_r -> f_c` of `d^k`.
    fn cancel(&mut self, k: usize, r: usize, c: usize, uinv: &Elem) {
        let d = &self.diffs[k];
        let pivot_row: Vec<Elem> = d[r].iter().map(|x| x * uinv).collect();
        let col_c: Vec<Elem> = d.iter().map(|row| row[c].clone()).collect();
        let mut next = Vec::with_capacity(d.len() - 1);
        for (a, row) in d.iter().enumerate() {
            if a == r {
                continue;
            }
            let f = &col_c[a];
            let new_row = row
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != c)
                .map(|(b, x)| if f.is_zero() { x.clone() } else { x.sub(&(f * &pivot_row[b])) })
                .collect();
            next.push(new_row);
        }
        self.diffs[k] = next;
        if k > 0 {
            for row in self.diffs[k - 1].iter_mut() {
                row.remove(r);
            }
        }
        if k + 1 < self.diffs.len() {
            self.diffs[k + 1].remove(c);
        }
        // Comparison maps: degree k drops coordinate r; degree k+1 projects
        // along f'_c = e_r d.
        for row in self.proj[k].iter_mut() {
            row.remove(r);
        }
        for row in self.proj[k + 1].iter_mut() {
            let y = row[c].clone();
            if !y.is_zero() {
                for (b, x) in row.iter_mut().enumerate() {
                    if b != c {
                        *x = x.sub(&(&y * &pivot_row[b]));
                    }
                }
            }
            row.remove(c);
        }
        let base = self.incl[k][r].clone();
        let mut incl_k = Vec::with_capacity(self.incl[k].len() - 1);
        for (a, row) in self.incl[k].iter().enumerate() {
            if a == r {
                continue;
            }
            let f = &col_c[a] * uinv;
            if f.is_zero() {
                incl_k.push(row.clone());
            } else {
                incl_k.push(row.iter().zip(&base).map(|(x, b)| x.sub(&(&f * b))).collect());
            }
        }
        self.incl[k] = incl_k;
        self.incl[k + 1].remove(c);
        self.ranks[k] -= 1;
        self.ranks[k + 1] -= 1;
    }

    /// Scale basis vectors top-down so that each row's first nonzero entry
    /// has leading coefficient `p^v`.
    fn normalize(&mut self) {
        let md = self.spec.modulus();
        for k in (0..self.diffs.len()).rev() {
            for a in 0..self.ranks[k] {
                let Some(first) = self.diffs[k][a].iter().find(|e| !e.is_zero()) else {
                    continue;
                };
                let (_, &coef) = first.terms().iter().next().expect("nonzero entry");
                let mut w = coef;
                while w % self.spec.p == 0 {
                    w /= self.spec.p;
                }
                let lam = mod_inverse(w % md, md).expect("unit part");
                if lam == 1 {
                    continue;
                }
                let lam_e = Elem::constant(self.spec, lam as i64);
                let inv_e = Elem::constant(self.spec, w as i64);
                for x in self.diffs[k][a].iter_mut() {
                    *x = &*x * &lam_e;
                }
                if k > 0 {
                    for row in self.diffs[k - 1].iter_mut() {
                        row[a] = &row[a] * &inv_e;
                    }
                }
                for row in self.proj[k].iter_mut() {
                    row[a] = &row[a] * &inv_e;
                }
                for x in self.incl[k][a].iter_mut() {
                    *x = &*x * &lam_e;
                }
            }
        }
    }
}

fn to_matrix(spec: RingSpec, rows: Rows, cols: usize) -> Matrix {
    Matrix::from_rows(spec, cols, rows).expect("entries share the ring")
}

/// Cancel unit pivots (first unit in degree-ascending, row-major order)
/// until every differential entry lies in the maximal ideal, then fix the
/// remaining diagonal scaling freedom. Keeps the input's degree range.
pub fn minimize_with_maps(c: &FreeComplex) -> Result<Minimization> {
    let spec = *c.spec();
    let rows_of = |m: &Matrix| (0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Rows>();
    let mut w = Work {
        spec,
        ranks: c.ranks().to_vec(),
        diffs: c.differentials().iter().map(rows_of).collect(),
        proj: c.ranks().iter().map(|&n| identity_rows(spec, n)).collect(),
        incl: c.ranks().iter().map(|&n| identity_rows(spec, n)).collect(),
    };
    let mut from = 0;
    while let Some((k, r, col, inv)) = w.find_pivot(from)? {
        w.cancel(k, r, col, &inv);
        from = k;
    }
    w.normalize();
    let ranks = w.ranks.clone();
    let diffs = w
        .diffs
        .into_iter()
        .enumerate()
        .map(|(k, rows)| to_matrix(spec, rows, ranks[k + 1]))
        .collect();
    let proj = w.proj.into_iter().enumerate().map(|(k, rows)| to_matrix(spec, rows, ranks[k])).collect();
    let incl = w
        .incl
        .into_iter()
        .enumerate()
        .map(|(k, rows)| to_matrix(spec, rows, c.ranks()[k]))
        .collect();
    Ok(Minimization { complex: FreeComplex::from_parts_unchecked(spec, c.lo(), ranks, diffs), proj, incl })
}

/// Canonical minimal complex quasi-isomorphic to `c`, with zero ends trimmed.
pub fn minimize(c: &FreeComplex) -> Result<FreeComplex> {
    Ok(minimize_with_maps(c)?.complex.trimmed())
}

pub fn tau_profile(c: &FreeComplex) -> Result<TauProfile> {
    let m = minimize(c)?;
    Ok(TauProfile::from_ranks(m.lo(), m.ranks()))
}
