#![allow(dead_code)]

pub mod graded;

use patchtower_core::complexes::{make_complex, FreeComplex};
use patchtower_core::linalg::{expand_scalars, kernel, Matrix};
use patchtower_core::rings::{make_patch_ring, Elem, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite patch rings with at most 81 elements.
pub fn small_rings() -> Vec<RingSpec> {
    [(2, 1, 1, 1), (2, 2, 1, 1), (2, 3, 1, 1), (2, 1, 1, 2), (2, 1, 2, 1), (3, 1, 1, 1)]
        .into_iter()
        .map(|(p, m, n, q)| make_patch_ring(p, m, n, q).unwrap())
        .collect()
}

pub fn random_elem(rng: &mut ChaCha8Rng, s: RingSpec, in_maximal_ideal: bool) -> Elem {
    let md = s.modulus();
    let mut v: Vec<u64> = (0..s.coefficient_rank()).map(|_| rng.gen_range(0..md)).collect();
    if in_maximal_ideal {
        v[0] = v[0] / s.p * s.p;
    }
    Elem::from_coefficient_vector(s, &v)
}

fn random_matrix(rng: &mut ChaCha8Rng, s: RingSpec, rows: usize, cols: usize, sparsity: f64) -> Matrix {
    let mut out = Matrix::zeros(s, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(sparsity) {
                out.set(r, c, random_elem(rng, s, true));
            }
        }
    }
    out
}

/// Rows drawn from the left kernel of `b` (a `Z/p^m`-span inside `R^rows(b)`).
fn kernel_rows(rng: &mut ChaCha8Rng, b: &Matrix, count: usize) -> Matrix {
    let s = *b.spec();
    let rho = s.coefficient_rank();
    let md = s.modulus();
    let ker = kernel(&expand_scalars(b).unwrap());
    let mut out = Matrix::zeros(s, count, b.rows());
    for r in 0..count {
        let mut v = vec![0u64; b.rows() * rho];
        for g in 0..ker.rows() {
            let c = rng.gen_range(0..md);
            for (x, &y) in v.iter_mut().zip(ker.row(g)) {
                *x = (*x + c * y) % md;
            }
        }
        for j in 0..b.rows() {
            out.set(r, j, Elem::from_coefficient_vector(s, &v[j * rho..(j + 1) * rho]));
        }
    }
    out
}

/// A random complex with entries in the maximal ideal, built from the top
/// differential down so that consecutive products vanish.
pub fn random_minimal_complex(rng: &mut ChaCha8Rng, s: RingSpec, lo: i32, ranks: &[usize]) -> FreeComplex {
    let mut diffs: Vec<Matrix> = Vec::new();
    for k in (0..ranks.len().saturating_sub(1)).rev() {
        let d = match diffs.first() {
            None => random_matrix(rng, s, ranks[k], ranks[k + 1], 0.7),
            Some(next) => kernel_rows(rng, next, ranks[k]),
        };
        diffs.insert(0, d);
    }
    make_complex(s, lo, ranks.to_vec(), diffs).unwrap()
}

/// Adds `pads` contractible pairs and mixes bases with elementary operations.
pub fn disguise(rng: &mut ChaCha8Rng, c: &FreeComplex, pads: usize, ops: usize) -> FreeComplex {
    let s = *c.spec();
    let mut ranks = c.ranks().to_vec();
    let mut diffs: Vec<Matrix> = c.differentials().to_vec();
    if ranks.len() < 2 {
        return c.clone();
    }
    for _ in 0..pads {
        let k = rng.gen_range(0..diffs.len());
        // New basis vector at the end of F^k and of F^{k+1}.
        let mut d = Matrix::zeros(s, ranks[k] + 1, ranks[k + 1] + 1);
        for r in 0..ranks[k] {
            for col in 0..ranks[k + 1] {
                d.set(r, col, diffs[k].get(r, col).clone());
            }
        }
        d.set(ranks[k], ranks[k + 1], Elem::one(s));
        diffs[k] = d;
        if k > 0 {
            diffs[k - 1] = widen(&diffs[k - 1], 0, 1);
        }
        if k + 1 < diffs.len() {
            diffs[k + 1] = widen(&diffs[k + 1], 1, 0);
        }
        ranks[k] += 1;
        ranks[k + 1] += 1;
    }
    for _ in 0..ops {
        let k = rng.gen_range(0..ranks.len());
        if ranks[k] < 2 {
            continue;
        }
        let a = rng.gen_range(0..ranks[k]);
        let b = (a + rng.gen_range(1..ranks[k])) % ranks[k];
        let x = random_elem(rng, s, false);
        // Basis change on F^k: e_a += x e_b.
        if k < diffs.len() {
            let d = &mut diffs[k];
            for col in 0..d.cols() {
                let v = d.get(a, col) + &(&x * d.get(b, col));
                d.set(a, col, v);
            }
        }
        if k > 0 {
            let d = &mut diffs[k - 1];
            for r in 0..d.rows() {
                let v = d.get(r, b).sub(&(d.get(r, a) * &x));
                d.set(r, b, v);
            }
        }
    }
    make_complex(s, c.lo(), ranks, diffs).unwrap()
}

fn widen(m: &Matrix, extra_rows: usize, extra_cols: usize) -> Matrix {
    let mut out = Matrix::zeros(*m.spec(), m.rows() + extra_rows, m.cols() + extra_cols);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c, m.get(r, c).clone());
        }
    }
    out
}

pub fn random_ranks(rng: &mut ChaCha8Rng, len: usize, max: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..=max)).collect()
}
