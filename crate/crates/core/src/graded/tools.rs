//! Syzygies, minimal generators and ideal operations built on the
//! Groebner engine. Every function takes vectors in any term order and
//! returns them sorted for the order it names.

use super::gb::{mono_degree, Engine, ModuleOrder, MonoOrder, Term, Vector, MAX_VARS};

/// Shifted degree of a vector: the largest over its terms.
pub fn vector_degree(v: &[Term], shifts: &[i32]) -> i32 {
    v.iter()
        .map(|t| mono_degree(&t.mono) + shifts.get(t.comp as usize).copied().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

pub fn is_homogeneous(v: &[Term], shifts: &[i32]) -> bool {
    let mut degs = v.iter().map(|t| mono_degree(&t.mono) + shifts.get(t.comp as usize).copied().unwrap_or(0));
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

pub fn graded_engine(p: u64, shifts: &[i32]) -> Engine {
    Engine::new(p, ModuleOrder::graded(MonoOrder::Grevlex, shifts.to_vec()))
}

/// Reduced Groebner basis in the shifted grevlex order.
pub fn module_gb(p: u64, gens: &[Vector], shifts: &[i32]) -> Vec<Vector> {
    let e = graded_engine(p, shifts);
    let gens: Vec<Vector> = gens.iter().map(|g| e.normalize(g.clone())).collect();
    e.groebner(&gens)
}

/// Generators of `{a : sum a_i v_i = 0}` inside `R^k`, `k = vectors.len()`,
/// where the `v_i` live in `R^n` with the given shifts.
pub fn syzygies(p: u64, vectors: &[Vector], n: usize, shifts: &[i32]) -> Vec<Vector> {
    let vec_degs: Vec<i32> = vectors.iter().map(|v| vector_degree(v, shifts)).collect();
    syzygies_with_degrees(p, vectors, n, shifts, &vec_degs)
}

/// As [`syzygies`], with the degree of each `v_i` given explicitly (this
/// matters for zero vectors).
pub fn syzygies_with_degrees(p: u64, vectors: &[Vector], n: usize, shifts: &[i32], vec_degs: &[i32]) -> Vec<Vector> {
    let mut all_shifts = shifts.to_vec();
    all_shifts.resize(n, 0);
    all_shifts.extend(vec_degs);
    let engine = Engine::new(
        p,
        ModuleOrder { mono: MonoOrder::Grevlex, shifts: all_shifts, split: Some(n as u32) },
    );
    let gens: Vec<Vector> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w.push(Term { comp: (n + i) as u32, mono: [0; MAX_VARS], coef: 1 });
            engine.normalize(w)
        })
        .collect();
    let gb = engine.groebner(&gens);
    let out_engine = graded_engine(p, vec_degs);
    gb.into_iter()
        .filter(|g| g[0].comp as usize >= n)
        .map(|g| {
            let v = g.into_iter().map(|t| Term { comp: t.comp - n as u32, ..t }).collect();
            out_engine.normalize(v)
        })
        .collect()
}

/// A minimal homogeneous generating set of the span of `vectors`, chosen
/// greedily in increasing degree.
pub fn minimal_generators(p: u64, vectors: &[Vector], shifts: &[i32]) -> Vec<Vector> {
    let e = graded_engine(p, shifts);
    let mut cands: Vec<Vector> =
        vectors.iter().map(|v| e.normalize(v.clone())).filter(|v| !v.is_empty()).collect();
    cands.sort_by_key(|v| vector_degree(v, shifts));
    let mut kept: Vec<Vector> = Vec::new();
    let mut gb: Vec<Vector> = Vec::new();
    for v in cands {
        if e.is_member(&v, &gb) {
            continue;
        }
        kept.push(v);
        gb = e.groebner(&kept);
    }
    kept
}

/// Ideals are vectors in component 0.
pub fn ideal_gb(p: u64, gens: &[Vector]) -> Vec<Vector> {
    module_gb(p, gens, &[0])
}

pub fn constant_vector(comp: u32, coef: u32) -> Vector {
    vec![Term { comp, mono: [0; MAX_VARS], coef }]
}

/// `I : g = {f : f g in I}`.
pub fn ideal_quotient_elem(p: u64, ideal: &[Vector], g: &Vector) -> Vec<Vector> {
    if g.is_empty() {
        return vec![constant_vector(0, 1)];
    }
    let mut vs = vec![g.clone()];
    vs.extend(ideal.iter().cloned());
    let syz = syzygies(p, &vs, 1, &[0]);
    let e = graded_engine(p, &[0]);
    let gens: Vec<Vector> = syz
        .into_iter()
        .map(|s| e.normalize(s.into_iter().filter(|t| t.comp == 0).collect()))
        .filter(|v: &Vector| !v.is_empty())
        .collect();
    ideal_gb(p, &gens)
}

/// `I ∩ J`.
pub fn ideal_intersection(p: u64, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Pairs with sum x_i a_i - sum y_j b_j = 0 give the intersection.
    let e = graded_engine(p, &[0]);
    let mut vs: Vec<Vector> = a.to_vec();
    vs.extend(b.iter().map(|v| e.scale(v, p as u32 - 1)));
    let syz = syzygies(p, &vs, 1, &[0]);
    let na = a.len() as u32;
    let gens: Vec<Vector> = syz
        .iter()
        .map(|s| {
            let mut acc: Vector = Vec::new();
            for t in s.iter().filter(|t| t.comp < na) {
                acc = e.sub_mul(&acc, p as u32 - t.coef, &t.mono, &e.normalize(a[t.comp as usize].clone()));
            }
            acc
        })
        .filter(|v| !v.is_empty())
        .collect();
    ideal_gb(p, &gens)
}

/// `I : J`.
pub fn ideal_quotient(p: u64, ideal: &[Vector], by: &[Vector]) -> Vec<Vector> {
    let mut acc: Option<Vec<Vector>> = None;
    for g in by {
        let q = ideal_quotient_elem(p, ideal, g);
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersection(p, &prev, &q),
        });
    }
    acc.unwrap_or_else(|| vec![constant_vector(0, 1)])
}

/// `I : J^∞`.
pub fn saturation(p: u64, ideal: &[Vector], by: &[Vector]) -> Vec<Vector> {
    let e = graded_engine(p, &[0]);
    let mut cur = ideal_gb(p, ideal);
    loop {
        let next = ideal_quotient(p, &cur, by);
        let grown = next.iter().any(|g| !e.is_member(g, &cur));
        if !grown {
            return cur;
        }
        cur = next;
    }
}

/// Krull dimension of `R / I` for `R` in `q` variables; `-1` for the unit
/// ideal. Read off the leading monomials.
pub fn ideal_dim(p: u64, ideal: &[Vector], q: usize) -> i32 {
    let gb = ideal_gb(p, ideal);
    let leads: Vec<_> = gb.iter().map(|g| g[0].mono).collect();
    monomial_dim(&leads, q)
}

/// Largest set of variables containing the support of no lead monomial.
pub fn monomial_dim(leads: &[[u16; MAX_VARS]], q: usize) -> i32 {
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return -1;
    }
    let mut best = 0;
    for mask in 0u32..(1 << q) {
        let independent = leads.iter().all(|m| (0..q).any(|i| m[i] > 0 && mask & (1 << i) == 0));
        if independent {
            best = best.max(mask.count_ones() as i32);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> Vector {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        vec![Term { comp: 0, mono: m, coef: 1 }]
    }

    fn times(a: &Vector, b: &Vector) -> Vector {
        let e = graded_engine(3, &[0]);
        let mut acc = Vec::new();
        for t in b {
            acc = e.add(&acc, &e.mul_mono(a, t.coef, &t.mono));
        }
        acc
    }

    #[test]
    fn koszul_syzygy() {
        let s = syzygies(3, &[var(0), var(1)], 1, &[0]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].len(), 2);
    }

    #[test]
    fn ideal_operations() {
        // (xy) : x = (y); (x) ∩ (y) = (xy); (x^2 y) : (x)^∞ = (y).
        let xy = times(&var(0), &var(1));
        assert_eq!(ideal_quotient_elem(3, std::slice::from_ref(&xy), &var(0)), vec![var(1)]);
        assert_eq!(ideal_intersection(3, &[var(0)], &[var(1)]), vec![xy.clone()]);
        let x2y = times(&xy, &var(0));
        assert_eq!(saturation(3, &[x2y], &[var(0)]), vec![var(1)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal_dim(3, &[var(0)], 2), 1);
        assert_eq!(ideal_dim(3, &[var(0), var(1)], 2), 0);
        assert_eq!(ideal_dim(3, &[constant_vector(0, 1)], 2), -1);
        assert_eq!(ideal_dim(3, &[], 3), 3);
        let xy = times(&var(0), &var(1));
        assert_eq!(ideal_dim(3, &[xy, var(2)], 3), 1);
    }
}
