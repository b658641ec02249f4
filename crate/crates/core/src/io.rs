//! JSON formats for rings, complexes, graded modules, towers and scenario
//! sidecars. Parsing goes through plain serde structs and then through the
//! validating constructors.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::complexes::{make_complex, FreeComplex};
use crate::error::{Error, Result};
use crate::graded::GradedModule;
use crate::linalg::{Matrix, ZMat};
use crate::patcher::{BaseData, BaseModule, Level, PatchingTower, TowerParams};
use crate::rings::{Elem, RingSpec};
use crate::scenario::{Perturbation, Sidecar};

/// An element as `[[exponents, coefficient], ...]`.
pub type ElemJson = Vec<(Vec<u32>, i64)>;
pub type MatrixJson = Vec<Vec<ElemJson>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ring: RingSpec,
    pub lo: i32,
    pub ranks: Vec<usize>,
    pub differentials: Vec<MatrixJson>,
}

/// `gens x rels` presentation matrix; columns are relations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub ring: RingSpec,
    pub gens: usize,
    pub relations: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub p: u64,
    pub q: usize,
    pub r: usize,
    pub d: i32,
    pub precisions: Vec<u32>,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
}

fn default_truncation() -> u32 {
    2
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseModuleJson {
    pub gens: usize,
    pub relations: Vec<Vec<i64>>,
    pub x_actions: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseJson {
    pub ideal: Vec<ElemJson>,
    pub h: BaseModuleJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelJson {
    pub n: u32,
    pub complex: ComplexJson,
    pub i_images: Vec<ElemJson>,
    pub phi_images: Vec<ElemJson>,
    pub x_actions: Vec<Vec<MatrixJson>>,
    pub base_iso: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerJson {
    pub params: ParamsJson,
    pub base: BaseJson,
    pub levels: Vec<LevelJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SidecarJson {
    pub rank: usize,
    pub tau: BTreeMap<i32, usize>,
    pub delta: ComplexJson,
    pub expected_error: Option<String>,
    pub perturbation: Perturbation,
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

pub fn elem_to_json(e: &Elem) -> ElemJson {
    e.terms().iter().map(|(x, &c)| (x.clone(), c as i64)).collect()
}

pub fn elem_from_json(spec: RingSpec, e: &ElemJson) -> Result<Elem> {
    if let Some((x, _)) = e.iter().find(|(x, _)| x.len() != spec.q) {
        return Err(Error::Parse(format!("exponent vector {x:?} needs {} entries", spec.q)));
    }
    Ok(Elem::from_terms(spec, e.iter().cloned()))
}

pub fn matrix_to_json(a: &Matrix) -> MatrixJson {
    (0..a.rows()).map(|r| a.row(r).iter().map(elem_to_json).collect()).collect()
}

pub fn matrix_from_json(spec: RingSpec, rows: usize, cols: usize, a: &MatrixJson) -> Result<Matrix> {
    if a.len() != rows || a.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!("expected a {rows}x{cols} matrix")));
    }
    let rows = a
        .iter()
        .map(|r| r.iter().map(|e| elem_from_json(spec, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(spec, cols, rows)
}

pub fn complex_to_json(c: &FreeComplex) -> ComplexJson {
    ComplexJson {
        ring: *c.spec(),
        lo: c.lo(),
        ranks: c.ranks().to_vec(),
        differentials: c.differentials().iter().map(matrix_to_json).collect(),
    }
}

pub fn complex_from_json(j: &ComplexJson) -> Result<FreeComplex> {
    j.ring.validate()?;
    if j.differentials.len() + 1 != j.ranks.len() && !(j.ranks.is_empty() && j.differentials.is_empty()) {
        return Err(Error::ShapeMismatch(format!(
            "{} differentials for {} ranks",
            j.differentials.len(),
            j.ranks.len()
        )));
    }
    let diffs = j
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| matrix_from_json(j.ring, j.ranks[k], j.ranks[k + 1], d))
        .collect::<Result<Vec<_>>>()?;
    make_complex(j.ring, j.lo, j.ranks.clone(), diffs)
}

pub fn parse_complex(s: &str) -> Result<FreeComplex> {
    complex_from_json(&from_str(s)?)
}

pub fn module_to_json(m: &GradedModule) -> ModuleJson {
    let rels = m.relations();
    let relations = (0..m.gens()).map(|i| rels.iter().map(|r| elem_to_json(&r[i])).collect()).collect();
    ModuleJson { ring: *m.spec(), gens: m.gens(), relations, degrees: Some(m.gen_degrees().to_vec()) }
}

pub fn module_from_json(j: &ModuleJson) -> Result<GradedModule> {
    j.ring.validate()?;
    let cols = j.relations.first().map_or(0, |r| r.len());
    if j.relations.len() != j.gens && !(j.relations.is_empty() && cols == 0) {
        return Err(Error::ShapeMismatch(format!("relations matrix needs {} rows", j.gens)));
    }
    let matrix = if j.relations.is_empty() {
        vec![Vec::new(); j.gens]
    } else {
        matrix_from_json(j.ring, j.gens, cols, &j.relations)
            .map(|a| (0..a.rows()).map(|r| a.row(r).to_vec()).collect())?
    };
    GradedModule::from_columns(j.ring, &matrix, j.degrees.clone())
}

pub fn parse_module(s: &str) -> Result<GradedModule> {
    module_from_json(&from_str(s)?)
}

fn zmat_to_ints(a: &ZMat) -> Vec<Vec<i64>> {
    (0..a.rows()).map(|r| a.row(r).iter().map(|&x| x as i64).collect()).collect()
}

pub fn tower_to_json(t: &PatchingTower) -> TowerJson {
    let pr = &t.params;
    TowerJson {
        params: ParamsJson {
            p: pr.p,
            q: pr.q,
            r: pr.r,
            d: pr.d,
            precisions: pr.precisions.clone(),
            truncation: pr.truncation,
        },
        base: BaseJson {
            ideal: t.base.ideal.iter().map(elem_to_json).collect(),
            h: BaseModuleJson {
                gens: t.base.h.gens,
                relations: t.base.h.relations.clone(),
                x_actions: t.base.h.x_actions.clone(),
            },
        },
        levels: t
            .levels
            .iter()
            .map(|lv| LevelJson {
                n: lv.n,
                complex: complex_to_json(&lv.complex),
                i_images: lv.i_images.iter().map(elem_to_json).collect(),
                phi_images: lv.phi_images.iter().map(elem_to_json).collect(),
                x_actions: lv.x_actions.iter().map(|xs| xs.iter().map(matrix_to_json).collect()).collect(),
                base_iso: zmat_to_ints(&lv.base_iso),
            })
            .collect(),
    }
}

pub fn tower_from_json(j: &TowerJson) -> Result<PatchingTower> {
    let pj = &j.params;
    let params = TowerParams {
        p: pj.p,
        q: pj.q,
        r: pj.r,
        d: pj.d,
        precisions: pj.precisions.clone(),
        truncation: pj.truncation,
    };
    params.validate()?;
    if params.precisions.len() != j.levels.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} precisions for {} levels",
            params.precisions.len(),
            j.levels.len()
        )));
    }
    let model = params.r_model(params.model_precision())?;
    let elems = |es: &[ElemJson]| es.iter().map(|e| elem_from_json(model, e)).collect::<Result<Vec<_>>>();
    let base = BaseData {
        ideal: elems(&j.base.ideal)?,
        h: BaseModule {
            gens: j.base.h.gens,
            relations: j.base.h.relations.clone(),
            x_actions: j.base.h.x_actions.clone(),
        },
    };
    let mut levels = Vec::new();
    for (k, lj) in j.levels.iter().enumerate() {
        let complex = complex_from_json(&lj.complex)?;
        let spec = *complex.spec();
        let ranks = complex.ranks().to_vec();
        let x_actions = lj
            .x_actions
            .iter()
            .map(|xs| {
                if xs.len() != ranks.len() {
                    return Err(Error::ShapeMismatch(format!("level {}: one action matrix per degree", k + 1)));
                }
                xs.iter().zip(&ranks).map(|(x, &n)| matrix_from_json(spec, n, n, x)).collect()
            })
            .collect::<Result<Vec<Vec<Matrix>>>>()?;
        let cols = lj.base_iso.first().map_or(base.h.gens, |r| r.len());
        if lj.base_iso.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("level {}: ragged base map", k + 1)));
        }
        let base_iso = ZMat::from_rows(params.p, params.precisions[k], cols, &lj.base_iso);
        levels.push(Level {
            n: lj.n,
            complex,
            i_images: elems(&lj.i_images)?,
            phi_images: elems(&lj.phi_images)?,
            x_actions,
            base_iso,
        });
    }
    let tower = PatchingTower { params, base, levels };
    if tower.levels.len() >= 2 {
        tower.check_shapes()?;
    }
    Ok(tower)
}

pub fn parse_tower(s: &str) -> Result<PatchingTower> {
    tower_from_json(&from_str(s)?)
}

pub fn sidecar_to_json(s: &Sidecar) -> SidecarJson {
    SidecarJson {
        rank: s.rank,
        tau: s.tau.clone(),
        delta: complex_to_json(&s.delta),
        expected_error: s.expected_error.clone(),
        perturbation: s.perturbation,
    }
}

pub fn sidecar_from_json(j: &SidecarJson) -> Result<Sidecar> {
    Ok(Sidecar {
        rank: j.rank,
        tau: j.tau.clone(),
        delta: complex_from_json(&j.delta)?,
        expected_error: j.expected_error.clone(),
        perturbation: j.perturbation,
    })
}

pub fn parse_sidecar(s: &str) -> Result<Sidecar> {
    sidecar_from_json(&from_str(s)?)
}
