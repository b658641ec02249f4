use serde::Serialize;

use super::validate::{constant_part, validated, Prepared};
use super::PatchingTower;
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ZMat};
use crate::rings::{make_patch_ring, mod_inverse, reduction_map, Elem, RingSpec};

/// Candidate basis changes tried per pair of levels before giving up.
pub const BASIS_SEARCH_BUDGET: usize = 20_000;

/// The limit data extracted from a compatible chain of levels.
#[derive(Debug, Clone, Serialize)]
pub struct LimitData {
    pub precision: u32,
    /// Levels `j_1 < .. < j_N` (1-based) of the chain.
    pub chain: Vec<usize>,
    /// `deltas[m-1]` is the limit complex over `S_m^{(m)}`.
    #[serde(skip)]
    pub deltas: Vec<FreeComplex>,
    #[serde(skip)]
    pub i_inf: Vec<Elem>,
    #[serde(skip)]
    pub phi_inf: Vec<Elem>,
    /// Actions of the `x_k` on the top term modulo the augmentation ideal.
    #[serde(skip)]
    pub x_top: Vec<ZMat>,
    /// Base map on the top term of the limit complex.
    #[serde(skip)]
    pub witness: ZMat,
    /// Size of the surviving class at each precision.
    pub class_sizes: Vec<usize>,
    /// Levels (1-based) with `H^{d-1}(C_n) != 0`.
    pub lower_cohomology_levels: Vec<usize>,
}

impl LimitData {
    pub fn delta(&self) -> &FreeComplex {
        self.deltas.last().expect("precision >= 1")
    }
}

/// A monomial matrix: row `k` holds `units[k]` in column `perm[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial {
    perm: Vec<usize>,
    units: Vec<u64>,
}

impl Monomial {
    fn matrix(&self, spec: RingSpec) -> Matrix {
        let n = self.perm.len();
        let mut a = Matrix::zeros(spec, n, n);
        for (k, (&c, &u)) in self.perm.iter().zip(&self.units).enumerate() {
            a.set(k, c, Elem::constant(spec, u as i64));
        }
        a
    }

    fn inverse_matrix(&self, spec: RingSpec) -> Matrix {
        let n = self.perm.len();
        let md = spec.modulus();
        let mut a = Matrix::zeros(spec, n, n);
        for (k, (&c, &u)) in self.perm.iter().zip(&self.units).enumerate() {
            let inv = mod_inverse(u % md, md).expect("unit residue");
            a.set(c, k, Elem::constant(spec, inv as i64));
        }
        a
    }
}

/// Every monomial matrix of size `n` with unit residues `1..p-1`.
fn monomials(n: usize, p: u64) -> Vec<Monomial> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for pr in &perms {
            for c in 0..n {
                if !pr.contains(&c) {
                    let mut v = pr.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        perms = next;
    }
    let mut unit_lists: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        unit_lists = unit_lists
            .into_iter()
            .flat_map(|u| (1..p).map(move |x| [u.clone(), vec![x]].concat()))
            .collect();
    }
    let mut out = Vec::new();
    for perm in &perms {
        for units in &unit_lists {
            out.push(Monomial { perm: perm.clone(), units: units.clone() });
        }
    }
    out
}

/// Searches per-degree monomial `g_i` with `g_i^{-1} a^i g_{i+1} = b^i`.
fn basis_search(a: &FreeComplex, b: &FreeComplex, budget: &mut usize) -> Result<Option<Vec<Monomial>>> {
    if a.lo() != b.lo() || a.ranks() != b.ranks() {
        return Ok(None);
    }
    let spec = *a.spec();
    let cands: Vec<Vec<Monomial>> = a.ranks().iter().map(|&n| monomials(n, spec.p)).collect();
    let mut chosen: Vec<Monomial> = Vec::new();
    fn rec(
        a: &FreeComplex,
        b: &FreeComplex,
        cands: &[Vec<Monomial>],
        chosen: &mut Vec<Monomial>,
        budget: &mut usize,
    ) -> Result<bool> {
        let t = chosen.len();
        if t == cands.len() {
            return Ok(true);
        }
        let spec = *a.spec();
        for g in &cands[t] {
            if *budget == 0 {
                return Ok(false);
            }
            *budget -= 1;
            if t > 0 {
                let prev = &chosen[t - 1];
                let lhs = prev.inverse_matrix(spec).mul(&a.differentials()[t - 1])?.mul(&g.matrix(spec))?;
                if lhs != b.differentials()[t - 1] {
                    continue;
                }
            }
            chosen.push(g.clone());
            if rec(a, b, cands, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    Ok(rec(a, b, &cands, &mut chosen, budget)?.then_some(chosen))
}

/// Working copy of a level: minimal complex and its transported structure.
#[derive(Clone)]
struct Work {
    n: u32,
    m: u32,
    complex: FreeComplex,
    xs: Vec<Vec<Matrix>>,
    witness: ZMat,
    i_images: Vec<Elem>,
    phi_images: Vec<Elem>,
}

impl Work {
    fn apply(&mut self, gs: &[Monomial], d: i32) -> Result<()> {
        let spec = *self.complex.spec();
        let ginv: Vec<Matrix> = gs.iter().map(|g| g.inverse_matrix(spec)).collect();
        let g: Vec<Matrix> = gs.iter().map(|g| g.matrix(spec)).collect();
        let diffs = self
            .complex
            .differentials()
            .iter()
            .enumerate()
            .map(|(t, dm)| ginv[t].mul(dm)?.mul(&g[t + 1]))
            .collect::<Result<Vec<_>>>()?;
        self.complex = crate::complexes::make_complex(spec, self.complex.lo(), self.complex.ranks().to_vec(), diffs)?;
        for per in &mut self.xs {
            for (t, x) in per.iter_mut().enumerate() {
                *x = ginv[t].mul(x)?.mul(&g[t])?;
            }
        }
        if self.complex.degrees().contains(&d) {
            let t = (d - self.complex.lo()) as usize;
            self.witness = constant_part(&ginv[t]).mul(&self.witness);
        }
        Ok(())
    }

    fn reduced(&self, target: RingSpec) -> Result<FreeComplex> {
        self.complex.tensor_along(&reduction_map(*self.complex.spec(), target)?)
    }
}

fn reduce_all(es: &[Elem], target: RingSpec) -> Result<Vec<Elem>> {
    es.iter().map(|e| reduction_map(*e.spec(), target)?.apply(e)).collect()
}

struct Class {
    members: Vec<usize>,
    delta: FreeComplex,
    i_images: Vec<Elem>,
    phi_images: Vec<Elem>,
}

/// Pigeonhole patching: at each precision `m = 1..N` keep the largest class
/// of levels whose reductions to `S_m^{(m)}` agree (up to a monomial change
/// of basis), nested in the previous class, then read off the limit along a
/// strictly increasing chain.
pub fn patch(tower: &PatchingTower, precision: u32) -> Result<LimitData> {
    if precision < 1 {
        return Err(Error::InvalidParameter("patching precision must be >= 1".into()));
    }
    let (report, prepared) = validated(tower)?;
    let lower_cohomology_levels =
        report.levels.iter().filter(|l| l.lower_cohomology_nonzero).map(|l| l.level).collect();
    let pr = &tower.params;
    let d = pr.d;
    let mut work: Vec<Work> = prepared
        .into_iter()
        .zip(&tower.levels)
        .map(|(Prepared { spec, min, xs, witness, .. }, lv)| Work {
            n: lv.n,
            m: spec.m,
            complex: min,
            xs,
            witness,
            i_images: lv.i_images.clone(),
            phi_images: lv.phi_images.clone(),
        })
        .collect();
    let mut survivors: Vec<usize> = (0..work.len()).collect();
    let mut rounds: Vec<Class> = Vec::new();
    for m in 1..=precision {
        let usable: Vec<usize> = survivors.iter().copied().filter(|&j| work[j].n >= m && work[j].m >= m).collect();
        if usable.is_empty() {
            return Err(Error::InsufficientTower { levels: tower.levels.len(), needed: precision as usize });
        }
        let target = make_patch_ring(pr.p, m, m, pr.q)?;
        let model = pr.r_model(m)?;
        let mut classes: Vec<Class> = Vec::new();
        for &j in &usable {
            let delta = work[j].reduced(target)?;
            let ii = reduce_all(&work[j].i_images, model)?;
            let pp = reduce_all(&work[j].phi_images, model)?;
            let mut joined = false;
            for class in classes.iter_mut() {
                if class.i_images != ii || class.phi_images != pp {
                    continue;
                }
                if class.delta == delta {
                    class.members.push(j);
                    joined = true;
                    break;
                }
                let mut budget = BASIS_SEARCH_BUDGET;
                if let Some(gs) = basis_search(&delta, &class.delta, &mut budget)? {
                    let lifted: Vec<Monomial> = gs;
                    work[j].apply(&lifted, d)?;
                    debug_assert_eq!(work[j].reduced(target)?, class.delta);
                    class.members.push(j);
                    joined = true;
                    break;
                }
            }
            if !joined {
                classes.push(Class { members: vec![j], delta, i_images: ii, phi_images: pp });
            }
        }
        let best = classes
            .into_iter()
            .enumerate()
            .max_by_key(|(k, c)| (c.members.len(), std::cmp::Reverse(*k)))
            .map(|(_, c)| c)
            .expect("at least one class");
        survivors = best.members.clone();
        rounds.push(best);
    }
    let chain = pick_chain(&rounds).ok_or_else(|| Error::NoCompatibleChain {
        precision,
        detail: format!(
            "surviving classes {:?} admit no strictly increasing choice",
            rounds.iter().map(|c| c.members.iter().map(|j| j + 1).collect::<Vec<_>>()).collect::<Vec<_>>()
        ),
    })?;
    let top = &work[*chain.last().unwrap()];
    let last = rounds.last().unwrap();
    let x_top = if top.complex.degrees().contains(&d) {
        let t = (d - top.complex.lo()) as usize;
        top.xs.iter().map(|per| constant_part(&per[t]).reduce_precision(precision)).collect()
    } else {
        Vec::new()
    };
    Ok(LimitData {
        precision,
        chain: chain.iter().map(|j| j + 1).collect(),
        i_inf: last.i_images.clone(),
        phi_inf: last.phi_images.clone(),
        x_top,
        witness: top.witness.reduce_precision(precision),
        class_sizes: rounds.iter().map(|c| c.members.len()).collect(),
        lower_cohomology_levels,
        deltas: rounds.into_iter().map(|c| c.delta).collect(),
    })
}

/// Strictly increasing `j_1 < .. < j_N` with `j_m` in the `m`-th class.
fn pick_chain(rounds: &[Class]) -> Option<Vec<usize>> {
    fn rec(rounds: &[Class], after: Option<usize>, acc: &mut Vec<usize>) -> bool {
        let Some(class) = rounds.get(acc.len()) else { return true };
        for &j in &class.members {
            if after.is_some_and(|a| j <= a) {
                continue;
            }
            acc.push(j);
            if rec(rounds, Some(j), acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    rec(rounds, None, &mut acc).then_some(acc)
}
