use serde::Serialize;

use super::gb::{Term, Vector, MAX_VARS};
use super::module::GradedModule;
use super::resolution::{ext_from_resolution, minimal_graded_resolution};
use super::tools::{graded_engine, module_gb, syzygies_with_degrees};
use crate::complexes::tau_profile;
use crate::error::Result;

/// Numerical invariants of a graded module. Everything except `dim` is
/// `None` for the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub dim: i32,
    pub depth: Option<usize>,
    pub grade: Option<usize>,
    pub projdim: Option<usize>,
    pub perfect: Option<bool>,
    pub amplitude: Option<usize>,
    pub betti: Vec<usize>,
}

pub fn module_invariants(m: &GradedModule) -> Result<ModuleInvariants> {
    let spec = *m.spec();
    let res = minimal_graded_resolution(m)?;
    if res.betti.is_empty() {
        return Ok(ModuleInvariants {
            dim: -1,
            depth: None,
            grade: None,
            projdim: None,
            perfect: None,
            amplitude: None,
            betti: Vec::new(),
        });
    }
    let projdim = res.length();
    let mut grade = None;
    for i in 0..=projdim {
        if !ext_from_resolution(&res, i as i32, spec)?.is_zero() {
            grade = Some(i);
            break;
        }
    }
    let tau = tau_profile(&res.complex)?;
    Ok(ModuleInvariants {
        dim: m.dim(),
        depth: Some(depth(m)),
        grade,
        projdim: Some(projdim),
        perfect: grade.map(|g| g == projdim),
        amplitude: tau.amplitude().map(|a| a as usize),
        betti: res.betti.clone(),
    })
}

fn subsets(q: usize, size: usize) -> Vec<u32> {
    (0u32..1 << q).filter(|s| s.count_ones() as usize == size).collect()
}

/// Least `i` with nonzero Koszul cohomology `H^i(T_1..T_q; M)`.
pub fn depth(m: &GradedModule) -> usize {
    let m = m.minimal_presentation();
    let q = m.spec().q;
    (0..=q).find(|&i| !koszul_cohomology_is_zero(&m, i)).unwrap_or(q)
}

fn koszul_cohomology_is_zero(m: &GradedModule, i: usize) -> bool {
    let q = m.spec().q;
    let p = m.spec().p;
    let g = m.gens();
    let src = subsets(q, i);
    let dst = subsets(q, i + 1);
    let prev = if i > 0 { subsets(q, i - 1) } else { Vec::new() };
    let shift_of = |sets: &[u32], size: usize| -> Vec<i32> {
        sets.iter().flat_map(|_| m.gen_degrees().iter().map(move |&s| s - size as i32)).collect()
    };
    let src_shifts = shift_of(&src, i);
    let dst_shifts = shift_of(&dst, i + 1);
    // Koszul differential e_S -> sum_j sign T_j e_{S+j}, tensored with M.
    let image_of = |s: u32, c: usize, targets: &[u32]| -> Vector {
        let mut v = Vec::new();
        for j in 0..q {
            if s & (1 << j) != 0 {
                continue;
            }
            let t = s | (1 << j);
            let pos = targets.iter().position(|&x| x == t).unwrap();
            let sign = (s & ((1 << j) - 1)).count_ones() % 2;
            let mut mono = [0u16; MAX_VARS];
            mono[j] = 1;
            let coef = if sign == 0 { 1 } else { p as u32 - 1 };
            v.push(Term { comp: (pos * g + c) as u32, mono, coef });
        }
        v
    };
    let block = |rels: &[Vector], k: usize| -> Vec<Vector> {
        rels.iter().map(|r| r.iter().map(|t| Term { comp: t.comp + (k * g) as u32, ..*t }).collect()).collect()
    };
    // Z: x in R^{src x g} with x d in N^{dst}.
    let mut vs: Vec<Vector> = Vec::new();
    let mut degs: Vec<i32> = Vec::new();
    for (a, &s) in src.iter().enumerate() {
        for c in 0..g {
            vs.push(image_of(s, c, &dst));
            degs.push(src_shifts[a * g + c]);
        }
    }
    let n_src = vs.len();
    for k in 0..dst.len() {
        for r in block(m.relation_vectors(), k) {
            degs.push(super::tools::vector_degree(&r, &dst_shifts));
            vs.push(r);
        }
    }
    let e_dst = graded_engine(p, &dst_shifts);
    let vs: Vec<Vector> = vs.into_iter().map(|v| e_dst.normalize(v)).collect();
    let syz = syzygies_with_degrees(p, &vs, dst.len() * g, &dst_shifts, &degs);
    let e_src = graded_engine(p, &src_shifts);
    let z: Vec<Vector> = syz
        .into_iter()
        .map(|s| e_src.normalize(s.into_iter().filter(|t| (t.comp as usize) < n_src).collect()))
        .filter(|v| !v.is_empty())
        .collect();
    // B: image of the previous differential plus N^{src}.
    let mut b: Vec<Vector> = Vec::new();
    for &s in &prev {
        for c in 0..g {
            b.push(e_src.normalize(image_of(s, c, &src)));
        }
    }
    for k in 0..src.len() {
        b.extend(block(m.relation_vectors(), k).into_iter().map(|v| e_src.normalize(v)));
    }
    let gb = module_gb(p, &b, &src_shifts);
    z.iter().all(|v| e_src.is_member(v, &gb))
}
