use std::collections::BTreeMap;

use super::gb::{mono_degree, Term, Vector, MAX_VARS};
use super::tools::{
    graded_engine, is_homogeneous, minimal_generators, module_gb, syzygies, vector_degree,
};
use crate::error::{Error, Result};
use crate::rings::{Elem, RingKind, RingSpec};

pub(crate) fn elem_to_terms(e: &Elem, comp: u32) -> Vector {
    e.terms()
        .iter()
        .map(|(exps, &c)| {
            let mut m = [0u16; MAX_VARS];
            for (i, &x) in exps.iter().enumerate() {
                m[i] = x as u16;
            }
            Term { comp, mono: m, coef: c as u32 }
        })
        .collect()
}

pub(crate) fn row_to_vector(row: &[Elem]) -> Vector {
    row.iter().enumerate().flat_map(|(c, e)| elem_to_terms(e, c as u32)).collect()
}

pub(crate) fn vector_to_row(spec: RingSpec, v: &[Term], n: usize) -> Vec<Elem> {
    let mut parts: Vec<Vec<(Vec<u32>, i64)>> = vec![Vec::new(); n];
    for t in v {
        let exps = t.mono[..spec.q].iter().map(|&x| x as u32).collect();
        parts[t.comp as usize].push((exps, t.coef as i64));
    }
    parts.into_iter().map(|terms| Elem::from_terms(spec, terms)).collect()
}

/// A finitely generated graded module `R^gens / (relations)` over the
/// polynomial ring, generator `i` sitting in degree `gen_degrees[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    spec: RingSpec,
    gen_degrees: Vec<i32>,
    relations: Vec<Vector>,
}

pub(crate) fn check_graded_ring(spec: &RingSpec) -> Result<()> {
    if spec.kind != RingKind::Graded {
        return Err(Error::UnsupportedRing("graded modules live over F_p[T_1..T_q]".into()));
    }
    if spec.q > MAX_VARS {
        return Err(Error::InvalidParameter(format!("at most {MAX_VARS} variables")));
    }
    Ok(())
}

impl GradedModule {
    /// Relations are rows (vectors in `R^gens`).
    pub fn new(spec: RingSpec, gen_degrees: Vec<i32>, relations: Vec<Vec<Elem>>) -> Result<Self> {
        check_graded_ring(&spec)?;
        let n = gen_degrees.len();
        let mut rels = Vec::new();
        for (j, r) in relations.iter().enumerate() {
            if r.len() != n {
                return Err(Error::ShapeMismatch(format!("relation {j} has {} entries, expected {n}", r.len())));
            }
            if r.iter().any(|e| *e.spec() != spec) {
                return Err(Error::SpecMismatch(format!("relation {j} outside the module ring")));
            }
            let v = row_to_vector(r);
            if !is_homogeneous(&v, &gen_degrees) {
                return Err(Error::NotGraded(format!("relation {j} is not homogeneous")));
            }
            rels.push(v);
        }
        Ok(Self::from_vectors(spec, gen_degrees, rels))
    }

    /// From a `gens x rels` matrix whose columns are relations, inferring
    /// generator degrees when none are given.
    pub fn from_columns(spec: RingSpec, matrix: &[Vec<Elem>], degrees: Option<Vec<i32>>) -> Result<Self> {
        check_graded_ring(&spec)?;
        let gens = matrix.len();
        let nrel = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != nrel) {
            return Err(Error::ShapeMismatch("ragged presentation matrix".into()));
        }
        let rows: Vec<Vec<Elem>> = (0..nrel).map(|j| (0..gens).map(|i| matrix[i][j].clone()).collect()).collect();
        let degrees = match degrees {
            Some(d) => d,
            None => super::shifts::infer_generator_degrees(&rows, gens)?,
        };
        if degrees.len() != gens {
            return Err(Error::ShapeMismatch(format!("{} degrees for {gens} generators", degrees.len())));
        }
        Self::new(spec, degrees, rows)
    }

    pub(crate) fn from_vectors(spec: RingSpec, gen_degrees: Vec<i32>, relations: Vec<Vector>) -> Self {
        let e = graded_engine(spec.p, &gen_degrees);
        let relations = relations.into_iter().map(|v| e.normalize(v)).filter(|v| !v.is_empty()).collect();
        GradedModule { spec, gen_degrees, relations }
    }

    pub fn free(spec: RingSpec, gen_degrees: Vec<i32>) -> Result<Self> {
        Self::new(spec, gen_degrees, Vec::new())
    }

    /// `R / (gens)` with the generator in degree 0.
    pub fn cyclic(spec: RingSpec, ideal: &[Elem]) -> Result<Self> {
        Self::new(spec, vec![0], ideal.iter().map(|f| vec![f.clone()]).collect())
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let n = self.gens() as u32;
        let mut degs = self.gen_degrees.clone();
        degs.extend(&other.gen_degrees);
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|v| v.iter().map(|t| Term { comp: t.comp + n, ..*t }).collect()));
        Self::from_vectors(self.spec, degs, rels)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn gens(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i32] {
        &self.gen_degrees
    }

    pub(crate) fn relation_vectors(&self) -> &[Vector] {
        &self.relations
    }

    pub fn relations(&self) -> Vec<Vec<Elem>> {
        self.relations.iter().map(|v| vector_to_row(self.spec, v, self.gens())).collect()
    }

    /// Cancels generators killed by relations with a constant entry, then
    /// keeps a minimal set of relations.
    pub fn minimal_presentation(&self) -> GradedModule {
        let p = self.spec.p;
        let mut degs = self.gen_degrees.clone();
        let mut rels = self.relations.clone();
        loop {
            let found = rels.iter().enumerate().find_map(|(j, r)| {
                r.iter().find(|t| mono_degree(&t.mono) == 0).map(|t| (j, t.comp, t.coef))
            });
            let Some((j, comp, coef)) = found else { break };
            let e = graded_engine(p, &degs);
            let pivot = rels.swap_remove(j);
            let inv = crate::rings::mod_inverse(coef as u64, p).unwrap() as u32;
            let pivot = e.scale(&pivot, inv);
            // Substitute e_comp = -(rest of pivot) in every other relation.
            let mut next = Vec::with_capacity(rels.len());
            for r in rels {
                let mut acc: Vector = r.clone();
                let hits: Vec<Term> = r.iter().filter(|t| t.comp == comp).copied().collect();
                for t in hits {
                    acc = e.sub_mul(&acc, t.coef, &t.mono, &pivot);
                }
                next.push(acc);
            }
            degs.remove(comp as usize);
            rels = next
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|t| Term { comp: if t.comp > comp { t.comp - 1 } else { t.comp }, ..t })
                        .collect::<Vector>()
                })
                .collect();
            let e = graded_engine(p, &degs);
            rels = rels.into_iter().map(|v| e.normalize(v)).filter(|v| !v.is_empty()).collect();
        }
        let rels = minimal_generators(p, &rels, &degs);
        GradedModule { spec: self.spec, gen_degrees: degs, relations: rels }
    }

    pub fn is_zero(&self) -> bool {
        self.minimal_presentation().gens() == 0
    }

    pub(crate) fn gb(&self) -> Vec<Vector> {
        module_gb(self.spec.p, &self.relations, &self.gen_degrees)
    }

    /// `dim_k M_t` for every `t` in `lo..=hi`, by counting standard monomials.
    pub fn hilbert_function(&self, lo: i32, hi: i32) -> BTreeMap<i32, u64> {
        let gb = self.gb();
        let q = self.spec.q;
        let mut out: BTreeMap<i32, u64> = (lo..=hi).map(|t| (t, 0)).collect();
        for (c, &s) in self.gen_degrees.iter().enumerate() {
            let leads: Vec<_> = gb.iter().filter(|g| g[0].comp == c as u32).map(|g| g[0].mono).collect();
            for t in lo..=hi {
                let d = t - s;
                if d < 0 {
                    continue;
                }
                let count = monomials_of_degree(q, d as u16)
                    .into_iter()
                    .filter(|m| !leads.iter().any(|l| super::gb::mono_divides(l, m)))
                    .count();
                *out.get_mut(&t).unwrap() += count as u64;
            }
        }
        out
    }

    /// Krull dimension of the support, `-1` for the zero module.
    pub fn dim(&self) -> i32 {
        let gb = self.gb();
        (0..self.gens())
            .map(|c| {
                let leads: Vec<_> = gb.iter().filter(|g| g[0].comp == c as u32).map(|g| g[0].mono).collect();
                super::tools::monomial_dim(&leads, self.spec.q)
            })
            .max()
            .unwrap_or(-1)
    }

    /// `Ann M = {f : f e_c in N for all c}`.
    pub(crate) fn annihilator(&self) -> Vec<Vector> {
        let p = self.spec.p;
        let e = graded_engine(p, &[0]);
        let mut acc: Option<Vec<Vector>> = None;
        for c in 0..self.gens() {
            let mut vs = vec![super::tools::constant_vector(c as u32, 1)];
            vs.extend(self.relations.iter().cloned());
            let syz = syzygies(p, &vs, self.gens(), &self.gen_degrees);
            let gens: Vec<Vector> = syz
                .into_iter()
                .map(|s| e.normalize(s.into_iter().filter(|t| t.comp == 0).collect()))
                .filter(|v: &Vector| !v.is_empty())
                .collect();
            let q = super::tools::ideal_gb(p, &gens);
            acc = Some(match acc {
                None => q,
                Some(prev) => super::tools::ideal_intersection(p, &prev, &q),
            });
        }
        acc.unwrap_or_else(|| vec![super::tools::constant_vector(0, 1)])
    }

    /// Reduced Groebner basis of `Ann M`.
    pub fn annihilator_ideal(&self) -> Vec<Elem> {
        self.annihilator().iter().map(|v| vector_to_row(self.spec, v, 1).remove(0)).collect()
    }

    /// Presentation of `Z / B` where `Z`, `B` are submodules of a free
    /// module with the given shifts, `B <= Z`.
    pub(crate) fn subquotient(spec: RingSpec, z: &[Vector], b: &[Vector], shifts: &[i32]) -> GradedModule {
        let p = spec.p;
        let zmin = minimal_generators(p, z, shifts);
        let degs: Vec<i32> = zmin.iter().map(|v| vector_degree(v, shifts)).collect();
        let k = zmin.len();
        let mut all = zmin.clone();
        all.extend(b.iter().cloned());
        let syz = syzygies(p, &all, shifts.len(), shifts);
        let rels: Vec<Vector> = syz
            .into_iter()
            .map(|s| s.into_iter().filter(|t| (t.comp as usize) < k).collect::<Vector>())
            .filter(|v| !v.is_empty())
            .collect();
        GradedModule::from_vectors(spec, degs, rels).minimal_presentation()
    }
}

fn monomials_of_degree(q: usize, d: u16) -> Vec<[u16; MAX_VARS]> {
    let mut out = Vec::new();
    let mut cur = [0u16; MAX_VARS];
    fn rec(i: usize, q: usize, left: u16, cur: &mut [u16; MAX_VARS], out: &mut Vec<[u16; MAX_VARS]>) {
        if i + 1 == q {
            cur[i] = left;
            out.push(*cur);
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, q, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if q == 0 {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, q, d, &mut cur, &mut out);
    out
}
