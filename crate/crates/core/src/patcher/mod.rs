//! Patching towers of complexes over the rings `S_n^{(m_n)}` into a limit
//! complex over `S_inf`, with the hypothesis checks and the freeness
//! certificate.

mod certify;
mod model;
mod patch;
mod validate;

pub use certify::{certify, fiber_model, CertificateChecks, FreenessCertificate, LowerCohomologyKill};
pub use model::{eval_at_matrices, eval_at_zmats, ideal_span, RModel};
pub use patch::{patch, LimitData, BASIS_SEARCH_BUDGET};
pub use validate::{hypothesis_report, validate_hypotheses, LevelReport, ValidationReport};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ZMat};
use crate::rings::{make_patch_ring, truncated_ring, Elem, RingSpec};

/// Shape of a tower: `S_inf = Z_p[[T_1..T_q]]`, `R_inf` a power series ring
/// in `g = q - r` variables, the hypothesis interval `[d - r, d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerParams {
    pub p: u64,
    pub q: usize,
    pub r: usize,
    pub d: i32,
    /// `m_j` for the `j`-th level.
    pub precisions: Vec<u32>,
    /// Truncation degree `D` of the `R_inf` model `(Z/p^m)[x]/(x)^{D+1}`.
    pub truncation: u32,
}

impl TowerParams {
    pub fn g(&self) -> usize {
        self.q - self.r
    }

    /// The largest level precision; images of `i_n` and `phi_n` live in the
    /// `R_inf` model at this precision.
    pub fn model_precision(&self) -> u32 {
        self.precisions.iter().copied().max().unwrap_or(1)
    }

    pub fn r_model(&self, m: u32) -> Result<RingSpec> {
        truncated_ring(self.p, m, self.g(), self.truncation)
    }

    pub fn interval(&self) -> (i32, i32) {
        (self.d - self.r as i32, self.d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r > self.q {
            return Err(Error::InvalidParameter(format!("r = {} exceeds q = {}", self.r, self.q)));
        }
        if self.q == 0 {
            return Err(Error::InvalidParameter("towers need q >= 1".into()));
        }
        if self.precisions.contains(&0) {
            return Err(Error::InvalidParameter("level precisions must be >= 1".into()));
        }
        self.r_model(self.model_precision())?;
        Ok(())
    }
}

/// `H` over `R = R_inf / J`: a finite `Z_p`-module `Z^gens / relations`
/// with the action of each `x_k` (row `i` holds `g_i x_k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseModule {
    pub gens: usize,
    pub relations: Vec<Vec<i64>>,
    pub x_actions: Vec<Vec<Vec<i64>>>,
}

impl BaseModule {
    pub fn relations_mod(&self, p: u64, m: u32) -> ZMat {
        ZMat::from_rows(p, m, self.gens, &self.relations)
    }

    pub fn action_mod(&self, k: usize, p: u64, m: u32) -> ZMat {
        ZMat::from_rows(p, m, self.gens, &self.x_actions[k])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseData {
    /// Generators of `J`, so `R = R_inf / J`, in the model at the model
    /// precision.
    pub ideal: Vec<Elem>,
    pub h: BaseModule,
}

/// One level `C_n` of the tower with its structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub n: u32,
    pub complex: FreeComplex,
    /// `i_n(T_j)` for `j = 1..q`, in the `R_inf` model.
    pub i_images: Vec<Elem>,
    /// `phi_n(x_k)` for `k = 1..g`, in the `R_inf` model, read modulo `J`.
    pub phi_images: Vec<Elem>,
    /// `x_actions[k][t]` is the chain-level action of `x_k` on the term of
    /// degree `lo + t`.
    pub x_actions: Vec<Vec<Matrix>>,
    /// `H^d(C_n) / a -> H / p^{m_n}` on the basis of `C_n^d`.
    pub base_iso: ZMat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchingTower {
    pub params: TowerParams,
    pub base: BaseData,
    pub levels: Vec<Level>,
}

impl PatchingTower {
    /// The ring the `j`-th level (0-based) must live over.
    pub fn level_ring(&self, j: usize) -> Result<RingSpec> {
        let pr = &self.params;
        make_patch_ring(pr.p, pr.precisions[j], self.levels[j].n, pr.q)
    }

    /// Structural checks: ring agreement, shapes of every map.
    pub fn check_shapes(&self) -> Result<()> {
        let pr = &self.params;
        pr.validate()?;
        if pr.precisions.len() != self.levels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} precisions for {} levels",
                pr.precisions.len(),
                self.levels.len()
            )));
        }
        let model = pr.r_model(pr.model_precision())?;
        let g = pr.g();
        if self.base.ideal.iter().any(|f| *f.spec() != model) {
            return Err(Error::SpecMismatch("ideal J outside the R_inf model".into()));
        }
        let h = &self.base.h;
        if h.relations.iter().any(|r| r.len() != h.gens) {
            return Err(Error::ShapeMismatch("relation of H with the wrong length".into()));
        }
        if h.x_actions.len() != g
            || h.x_actions.iter().any(|a| a.len() != h.gens || a.iter().any(|r| r.len() != h.gens))
        {
            return Err(Error::ShapeMismatch(format!("H needs {g} square actions of size {}", h.gens)));
        }
        for (j, lv) in self.levels.iter().enumerate() {
            let level = j + 1;
            let spec = self.level_ring(j)?;
            if *lv.complex.spec() != spec {
                return Err(Error::SpecMismatch(format!("level {level} complex is not over S_{}^({})", lv.n, pr.precisions[j])));
            }
            if lv.i_images.len() != pr.q || lv.phi_images.len() != g {
                return Err(Error::ShapeMismatch(format!("level {level} needs {} images of i_n and {g} of phi_n", pr.q)));
            }
            if lv.i_images.iter().chain(&lv.phi_images).any(|e| *e.spec() != model) {
                return Err(Error::SpecMismatch(format!("level {level} images outside the R_inf model")));
            }
            let ranks = lv.complex.ranks();
            if lv.x_actions.len() != g {
                return Err(Error::ShapeMismatch(format!("level {level} has {} x-actions, need {g}", lv.x_actions.len())));
            }
            for (k, xs) in lv.x_actions.iter().enumerate() {
                let ok = xs.len() == ranks.len()
                    && xs.iter().zip(ranks).all(|(x, &n)| x.rows() == n && x.cols() == n && *x.spec() == spec);
                if !ok {
                    return Err(Error::ShapeMismatch(format!("level {level}: action of x_{} has the wrong shape", k + 1)));
                }
            }
            let w = &lv.base_iso;
            if w.rows() != lv.complex.rank(pr.d) || w.cols() != h.gens || w.m != pr.precisions[j] || w.p != pr.p {
                return Err(Error::ShapeMismatch(format!(
                    "level {level}: base map must be {}x{} over Z/{}^{}",
                    lv.complex.rank(pr.d),
                    h.gens,
                    pr.p,
                    pr.precisions[j]
                )));
            }
        }
        Ok(())
    }
}
