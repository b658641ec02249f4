//! Howell normal form over the chain ring `Z/p^m`.
//!
//! Row spans are canonicalised: rows in echelon shape, every pivot equal to
//! `p^v`, entries above a pivot `p^v` reduced into `[0, p^v)`, and the Howell
//! property (any span vector vanishing on the first `k` columns is a
//! combination of pivot rows starting at or after column `k`). Two matrices
//! have the same row span iff their forms are identical.

use std::collections::BTreeMap;

use serde::Serialize;

use super::zmod::{valuation, ZMat};
use crate::error::{Error, Result};
use crate::rings::mod_inverse;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pivot {
    pub col: usize,
    pub valuation: u32,
}

/// Canonical row-span form `H` of a matrix `A` with a witness `U`,
/// `U * A = H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellForm {
    pub h: ZMat,
    pub transform: ZMat,
    pub pivots: Vec<Pivot>,
}

/// Sorted `(column, nonzero residue)` pairs.
pub type SparseRow = Vec<(usize, u64)>;

pub(super) struct Ctx {
    pub(super) p: u64,
    pub(super) m: u32,
    pub(super) md: u64,
}

impl Ctx {
    /// `target - f * src`, restricted to columns `>= from`.
    pub(super) fn sub_multiple(&self, target: &[(usize, u64)], src: &[(usize, u64)], f: u64, from: usize) -> SparseRow {
        let md = self.md;
        let nf = (md - f % md) % md;
        let mut out = Vec::with_capacity(target.len() + src.len());
        let mut a = target.iter().peekable();
        let mut b = src.iter().filter(|(c, _)| *c >= from).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(&&(ca, va)), None) => {
                    out.push((ca, va));
                    a.next();
                }
                (None, Some(&&(cb, vb))) => {
                    let x = nf * vb % md;
                    if x != 0 {
                        out.push((cb, x));
                    }
                    b.next();
                }
                (Some(&&(ca, va)), Some(&&(cb, vb))) => {
                    if ca < cb {
                        out.push((ca, va));
                        a.next();
                    } else if cb < ca {
                        let x = nf * vb % md;
                        if x != 0 {
                            out.push((cb, x));
                        }
                        b.next();
                    } else {
                        let x = (va + nf * vb) % md;
                        if x != 0 {
                            out.push((ca, x));
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        }
        out
    }

    fn scale(&self, row: &mut SparseRow, f: u64) {
        let md = self.md;
        for (_, x) in row.iter_mut() {
            *x = *x * f % md;
        }
        row.retain(|&(_, x)| x != 0);
    }
}

pub(super) fn entry(row: &[(usize, u64)], c: usize) -> u64 {
    row.binary_search_by_key(&c, |&(k, _)| k).map_or(0, |i| row[i].1)
}

/// Echelonise `rows`, pivoting only in the first `pivot_cols` columns.
/// Rows that vanish on the pivot region are dropped. Returns pivot rows in
/// order with their pivots.
pub(super) fn howell_core(rows: Vec<SparseRow>, pivot_cols: usize, ctx: &Ctx) -> (Vec<SparseRow>, Vec<Pivot>) {
    // Rows bucketed by leading column.
    let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
    let insert = |buckets: &mut BTreeMap<usize, Vec<SparseRow>>, r: SparseRow| {
        if let Some(&(lead, _)) = r.first() {
            if lead < pivot_cols {
                buckets.entry(lead).or_default().push(r);
            }
        }
    };
    for r in rows {
        insert(&mut buckets, r);
    }
    let mut out: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    while let Some((c, mut bucket)) = buckets.pop_first() {
        let (idx, v) = bucket
            .iter()
            .enumerate()
            .map(|(i, r)| (i, valuation(r[0].1, ctx.p, ctx.m)))
            .min_by_key(|&(i, v)| (v, i))
            .expect("nonempty bucket");
        let mut piv = bucket.swap_remove(idx);
        let pv = ctx.p.pow(v);
        let inv = mod_inverse(piv[0].1 / pv, ctx.md).expect("unit part is invertible");
        ctx.scale(&mut piv, inv);
        debug_assert_eq!(piv[0], (c, pv));
        for r in bucket {
            let f = r[0].1 / pv;
            let reduced = ctx.sub_multiple(&r, &piv, f, c);
            debug_assert!(reduced.first().is_none_or(|&(k, _)| k > c));
            insert(&mut buckets, reduced);
        }
        if v > 0 {
            let mut extra = piv.clone();
            ctx.scale(&mut extra, ctx.p.pow(ctx.m - v));
            insert(&mut buckets, extra);
        }
        out.push(piv);
        pivots.push(Pivot { col: c, valuation: v });
    }
    // Reduce entries above each pivot into [0, p^v).
    for (i, pivot) in pivots.iter().enumerate() {
        let (c, pv) = (pivot.col, ctx.p.pow(pivot.valuation));
        let (head, tail) = out.split_at_mut(i);
        let piv = &tail[0];
        for r in head.iter_mut() {
            let f = entry(r, c) / pv;
            if f != 0 {
                *r = ctx.sub_multiple(r, piv, f, 0);
            }
        }
    }
    (out, pivots)
}

fn sparse_rows(a: &ZMat, identity: bool) -> Vec<SparseRow> {
    (0..a.rows())
        .map(|r| {
            let mut v: SparseRow = a.row(r).iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect();
            if identity {
                v.push((a.cols() + r, 1));
            }
            v
        })
        .collect()
}

fn dense(row: &[(usize, u64)], start: usize, len: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    for &(c, x) in row {
        if c >= start && c < start + len {
            v[c - start] = x;
        }
    }
    v
}

fn ctx_of(a: &ZMat) -> Ctx {
    Ctx { p: a.p, m: a.m, md: a.modulus() }
}

/// Howell form with transform.
pub fn howell_form(a: &ZMat) -> HowellForm {
    let ctx = ctx_of(a);
    let n = a.rows();
    let (out, pivots) = howell_core(sparse_rows(a, true), a.cols(), &ctx);
    let h_rows = out.iter().map(|r| dense(r, 0, a.cols())).collect();
    let u_rows = out.iter().map(|r| dense(r, a.cols(), n)).collect();
    HowellForm {
        h: ZMat::from_residue_rows(a.p, a.m, a.cols(), h_rows),
        transform: ZMat::from_residue_rows(a.p, a.m, n, u_rows),
        pivots,
    }
}

/// Howell form of the row span only (no transform).
pub fn howell_rows(a: &ZMat) -> (ZMat, Vec<Pivot>) {
    let ctx = ctx_of(a);
    let (out, pivots) = howell_core(sparse_rows(a, false), a.cols(), &ctx);
    let rows = out.iter().map(|r| dense(r, 0, a.cols())).collect();
    (ZMat::from_residue_rows(a.p, a.m, a.cols(), rows), pivots)
}

/// Generators (in Howell form) of the left kernel `{x : x A = 0}`.
pub fn kernel(a: &ZMat) -> ZMat {
    let ctx = ctx_of(a);
    let n = a.rows();
    let (out, _) = howell_core(sparse_rows(a, true), a.cols() + n, &ctx);
    let ker = out
        .into_iter()
        .filter(|r| r.first().is_some_and(|&(c, _)| c >= a.cols()))
        .map(|r| dense(&r, a.cols(), n))
        .collect();
    ZMat::from_residue_rows(a.p, a.m, n, ker)
}

impl HowellForm {
    /// Coordinates `y` with `y * H = b`, or `None` if `b` is outside the span.
    pub fn coordinates(&self, b: &[u64]) -> Option<Vec<u64>> {
        reduce_against(&self.h, &self.pivots, b)
    }

    /// A particular solution of `x A = b`.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>> {
        let y = self.coordinates(b).ok_or(Error::NoSolution)?;
        Ok(self.transform.left_apply(&y))
    }

    /// `log_p` of the number of elements in the row span.
    pub fn log_size(&self) -> u32 {
        span_log_size(&self.pivots, self.h.m)
    }
}

pub fn span_log_size(pivots: &[Pivot], m: u32) -> u32 {
    pivots.iter().map(|pv| m - pv.valuation).sum()
}

/// Greedy reduction of `b` against Howell rows; returns coefficients when
/// `b` lies in the span.
pub fn reduce_against(h: &ZMat, pivots: &[Pivot], b: &[u64]) -> Option<Vec<u64>> {
    let md = h.modulus();
    let mut rest = b.iter().map(|x| x % md).collect::<Vec<_>>();
    let mut coeffs = vec![0u64; h.rows()];
    for (i, pv) in pivots.iter().enumerate() {
        let x = rest[pv.col];
        if x == 0 {
            continue;
        }
        let pval = h.p.pow(pv.valuation);
        if x % pval != 0 {
            return None;
        }
        let f = x / pval;
        coeffs[i] = f;
        let nf = md - f;
        for (t, &s) in rest.iter_mut().zip(h.row(i)) {
            *t = (*t + nf * s) % md;
        }
    }
    rest.iter().all(|&x| x == 0).then_some(coeffs)
}

/// Does the row span of `a` contain `b`?
pub fn span_contains(a: &ZMat, b: &[u64]) -> bool {
    let (h, pivots) = howell_rows(a);
    reduce_against(&h, &pivots, b).is_some()
}

/// Particular solution of `x A = b`.
pub fn solve(a: &ZMat, b: &[u64]) -> Result<Vec<u64>> {
    howell_form(a).solve(b)
}
