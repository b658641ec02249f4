use patchtower_core::complexes::{make_complex, FreeComplex};
use patchtower_core::graded::{syzygy_matrix, GradedModule};
use patchtower_core::linalg::Matrix;
use patchtower_core::rings::{Elem, RingSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn exponents(q: usize, d: u32) -> Vec<Vec<u32>> {
    if q == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in exponents(q - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// A random form of degree `d`; with `monomial` set, a single term.
pub fn random_form(rng: &mut ChaCha8Rng, s: RingSpec, d: u32, monomial: bool) -> Elem {
    let monos = exponents(s.q, d);
    if monomial {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        return Elem::monomial(s, m, rng.gen_range(1..s.p as i64));
    }
    Elem::from_terms(s, monos.into_iter().map(|m| (m, rng.gen_range(0..s.p as i64))))
}

/// Presentation with up to three generators and three relations whose
/// entries have degree at most 2.
pub fn random_module(rng: &mut ChaCha8Rng, s: RingSpec) -> GradedModule {
    let gens = rng.gen_range(1..=3);
    let rels = rng.gen_range(0..=3);
    let degs: Vec<i32> = (0..gens).map(|_| rng.gen_range(0..=1)).collect();
    let (lo, hi) = (*degs.iter().min().unwrap(), *degs.iter().max().unwrap());
    let monomial = rng.gen_bool(0.3);
    let rows = (0..rels)
        .map(|_| {
            let d = rng.gen_range(hi + 1..=lo + 2);
            degs.iter()
                .map(|&g| {
                    if rng.gen_bool(0.3) {
                        Elem::zero(s)
                    } else {
                        random_form(rng, s, (d - g) as u32, monomial)
                    }
                })
                .collect()
        })
        .collect();
    GradedModule::new(s, degs, rows).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, s: RingSpec, col_degs: &[i32], rows: usize, monomial: bool) -> (Matrix, Vec<i32>) {
    let (lo, hi) = (*col_degs.iter().min().unwrap(), *col_degs.iter().max().unwrap());
    let mut m = Matrix::zeros(s, rows, col_degs.len());
    let mut row_degs = Vec::new();
    for r in 0..rows {
        let d = rng.gen_range(hi + 1..=lo + 2);
        row_degs.push(d);
        for (c, &g) in col_degs.iter().enumerate() {
            if rng.gen_bool(0.6) {
                m.set(r, c, random_form(rng, s, (d - g) as u32, monomial));
            }
        }
    }
    (m, row_degs)
}

/// A minimal complex of two or three terms with ranks at most 3 and
/// homogeneous entries in the maximal ideal.
pub fn random_graded_complex(rng: &mut ChaCha8Rng, s: RingSpec) -> FreeComplex {
    let monomial = rng.gen_bool(0.4);
    // Half the time, shape the ranks like a resolution so that cohomology
    // is torsion and heights above 0 appear.
    let shaped = rng.gen_bool(0.5);
    let top = rng.gen_range(1..=if shaped { 2 } else { 3 });
    let top_degs: Vec<i32> = (0..top).map(|_| rng.gen_range(0..=1)).collect();
    let mid = if shaped { rng.gen_range(top + 1..=3) } else { rng.gen_range(1..=3) };
    let (d1, _) = random_map(rng, s, &top_degs, mid, monomial);
    let lo = rng.gen_range(-1..=0);
    if rng.gen_bool(0.35) {
        return make_complex(s, lo, vec![mid, top], vec![d1]).unwrap();
    }
    let syz = syzygy_matrix(&d1).unwrap();
    if syz.rows() == 0 {
        return make_complex(s, lo, vec![mid, top], vec![d1]).unwrap();
    }
    let bottom = if shaped { rng.gen_range(1..=(mid - top).max(1)) } else { rng.gen_range(1..=3) };
    let mut d0 = Matrix::zeros(s, bottom, mid);
    {
        for r in 0..bottom {
            let k = rng.gen_range(0..syz.rows());
            let row = syz.row(k);
            let scale = if rng.gen_bool(0.5) || row.iter().any(|e| e.constant_term() != 0) {
                Elem::var(s, rng.gen_range(0..s.q))
            } else {
                Elem::one(s)
            };
            for (c, e) in row.iter().enumerate().take(mid) {
                d0.set(r, c, e * &scale);
            }
        }
    }
    make_complex(s, lo, vec![bottom, mid, top], vec![d0, d1]).unwrap()
}
