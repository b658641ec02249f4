use std::collections::BTreeMap;

use serde::Serialize;

use super::model::{eval_at_matrices, eval_at_zmats, span_rows, RModel};
use super::{BaseModule, Level, PatchingTower};
use crate::complexes::{cohomology, cohomology_log_size, minimize_with_maps, FreeComplex, TauProfile};
use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, Matrix, ScalarExpander, SpanBasis, ZMat};
use crate::rings::{Elem, RingMap, RingSpec};

/// Outcome of the hypothesis checks on one level.
#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub n: u32,
    pub precision: u32,
    pub tau: BTreeMap<i32, usize>,
    pub tau_in_range: bool,
    pub tau_constant: bool,
    pub augmentation_killed: bool,
    pub action_compatible: bool,
    pub base_iso: bool,
    /// `H^{d-1}(C_n) != 0`: lower cohomology present at finite level.
    pub lower_cohomology_nonzero: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub tau: BTreeMap<i32, usize>,
    pub passed: bool,
    pub levels: Vec<LevelReport>,
    #[serde(skip)]
    first: Option<Error>,
}

impl ValidationReport {
    /// The designated error: hypotheses in order (range, constancy,
    /// augmentation, action, base), levels in order within each.
    pub fn first_failure(&self) -> Option<&Error> {
        self.first.as_ref()
    }
}

/// A level after minimization, with its structure transported to the
/// minimal model.
#[derive(Debug, Clone)]
pub(crate) struct Prepared {
    pub spec: RingSpec,
    pub min: FreeComplex,
    /// Induced chain-level actions on `min`, per variable and degree.
    pub xs: Vec<Vec<Matrix>>,
    /// Base map on the basis of `min^d`.
    pub witness: ZMat,
    pub tau: BTreeMap<i32, usize>,
}

/// Constant terms of a matrix over a finite local ring: its image modulo
/// the augmentation ideal.
pub(crate) fn constant_part(a: &Matrix) -> ZMat {
    let spec = a.spec();
    let mut out = ZMat::zeros(spec.p, spec.m, a.rows(), a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).constant_term());
        }
    }
    out
}

pub(crate) fn prepare(lv: &Level, d: i32) -> Result<Prepared> {
    let c = &lv.complex;
    let spec = *c.spec();
    let mm = minimize_with_maps(c)?;
    let mut xs = Vec::new();
    for xk in &lv.x_actions {
        let mut per = Vec::new();
        for (t, x) in xk.iter().enumerate() {
            per.push(mm.incl[t].mul(x)?.mul(&mm.proj[t])?);
        }
        xs.push(per);
    }
    let witness = if c.degrees().contains(&d) && c.rank(d) > 0 {
        let t = (d - c.lo()) as usize;
        constant_part(&mm.incl[t]).mul(&lv.base_iso)
    } else {
        ZMat::zeros(spec.p, spec.m, mm.complex.rank(d), lv.base_iso.cols())
    };
    let tau = TauProfile::from_ranks(mm.complex.lo(), mm.complex.ranks()).taus;
    Ok(Prepared { spec, min: mm.complex, xs, witness, tau })
}

fn rows_in(span: &SpanBasis, a: &ZMat) -> bool {
    (0..a.rows()).all(|r| span.contains(&sparse_from_dense(a.row(r))))
}

/// The base check at one precision: `w` maps the top term of a minimal
/// complex (top degree `d`, incoming differential `d_in`) onto `H / p^m`.
/// Returns the first failing property.
#[allow(clippy::too_many_arguments)]
pub(crate) fn check_base(
    h: &BaseModule,
    ideal: &RModel,
    phis: &[Elem],
    d_in: Option<&ZMat>,
    top_rank: usize,
    w: &ZMat,
    xs_top: &[ZMat],
    p: u64,
    m: u32,
) -> Option<String> {
    let gens = h.gens;
    let rel_rows = h.relations_mod(p, m);
    let rel = span_rows(&rel_rows);
    let acts: Vec<ZMat> = (0..h.x_actions.len()).map(|k| h.action_mod(k, p, m)).collect();
    for (k, a) in acts.iter().enumerate() {
        if !rows_in(&rel, &rel_rows.mul(a)) {
            return Some(format!("relations of H are not stable under x_{}", k + 1));
        }
    }
    for f in &ideal.ideal {
        if !rows_in(&rel, &eval_at_zmats(f, &acts, p, m, gens)) {
            return Some(format!("J does not annihilate H ({f} acts nontrivially)"));
        }
    }
    if w.rows() != top_rank || w.cols() != gens {
        return Some(format!("base map is {}x{}, expected {top_rank}x{gens}", w.rows(), w.cols()));
    }
    if let Some(din) = d_in {
        if !rows_in(&rel, &din.mul(w)) {
            return Some("base map does not vanish on coboundaries".into());
        }
    }
    let image = rel.extend((0..w.rows()).map(|r| sparse_from_dense(w.row(r))));
    if image.log_size() != gens as u32 * m {
        return Some("base map is not surjective".into());
    }
    let top_log = top_rank as u32 * m - d_in.map_or(0, |din| span_rows(din).log_size());
    let h_log = gens as u32 * m - rel.log_size();
    if top_log != h_log {
        return Some(format!("H^d / a has p^{top_log} elements, H / p^{m} has p^{h_log}"));
    }
    for (k, x) in xs_top.iter().enumerate() {
        let phi = eval_at_zmats(&phis[k], &acts, p, m, gens);
        let lhs = x.mul(w);
        let rhs = w.mul(&phi);
        let diff = lhs.add(&rhs.scale(p.pow(m) - 1));
        if !rows_in(&rel, &diff) {
            return Some(format!("base map does not intertwine x_{} with phi_n(x_{})", k + 1, k + 1));
        }
    }
    None
}

fn reduce_elems(es: &[Elem], target: RingSpec) -> Result<Vec<Elem>> {
    if es.is_empty() {
        return Ok(Vec::new());
    }
    let f = crate::rings::reduction_map(*es[0].spec(), target)?;
    es.iter().map(|e| f.apply(e)).collect()
}

struct Ctx<'a> {
    tower: &'a PatchingTower,
    ideal: RModel,
    prepared: Vec<Prepared>,
}

impl Ctx<'_> {
    fn tau_range(&self, j: usize) -> Option<Error> {
        let (lo, hi) = self.tower.params.interval();
        let tau = &self.prepared[j].tau;
        tau.keys()
            .find(|&&i| i < lo || i > hi)
            .map(|&degree| Error::TauOutOfRange { level: j + 1, degree, lo, hi })
    }

    fn tau_constant(&self, j: usize) -> Option<Error> {
        (self.prepared[j].tau != self.prepared[0].tau).then_some(Error::TauNotConstant { first: 1, level: j + 1 })
    }

    fn augmentation(&self, j: usize) -> Result<Option<Error>> {
        let lv = &self.tower.levels[j];
        let model = self.ideal.spec;
        let phi = RingMap::new(model, model, lv.phi_images.clone())?;
        for (t, img) in lv.i_images.iter().enumerate() {
            if !self.ideal.contains(&phi.apply(img)?) {
                return Ok(Some(Error::AugmentationNotKilled { level: j + 1, variable: t }));
            }
        }
        Ok(None)
    }

    fn action(&self, j: usize) -> Result<Option<Error>> {
        let level = j + 1;
        let lv = &self.tower.levels[j];
        let c = &lv.complex;
        let mismatch = |detail: String| Ok(Some(Error::ActionMismatch { level, detail }));
        for (k, xk) in lv.x_actions.iter().enumerate() {
            for (t, d) in c.differentials().iter().enumerate() {
                if xk[t].mul(d)? != d.mul(&xk[t + 1])? {
                    return mismatch(format!("x_{} does not commute with d^{}", k + 1, c.lo() + t as i32));
                }
            }
        }
        let prep = &self.prepared[j];
        let min = &prep.min;
        let spec = prep.spec;
        let i_images = reduce_elems(&lv.i_images, RingSpec { m: spec.m, ..self.ideal.spec })?;
        let mut exp = ScalarExpander::new(spec)?;
        for i in min.degrees() {
            let t = (i - min.lo()) as usize;
            let n = min.rank(i);
            if n == 0 || cohomology_log_size(min, i)? == 0 {
                continue;
            }
            let h = cohomology(min, i)?;
            let xs: Vec<Matrix> = prep.xs.iter().map(|per| per[t].clone()).collect();
            for (v, img) in i_images.iter().enumerate() {
                let tv = Matrix::identity(spec, n).scale(&Elem::var(spec, v));
                let delta = tv.add(&eval_at_matrices(img, &xs, spec, n)?.scale(&Elem::constant(spec, -1)))?;
                let big = exp.expand_sparse(&delta)?;
                if h.sq.gens.rows.iter().any(|z| !h.sq.rels.contains(&big.apply(z))) {
                    return mismatch(format!("T_{} and i_n(T_{}) act differently on H^{i}", v + 1, v + 1));
                }
            }
        }
        Ok(None)
    }

    fn base(&self, j: usize) -> Result<Option<Error>> {
        let lv = &self.tower.levels[j];
        let prep = &self.prepared[j];
        let pr = &self.tower.params;
        let (p, m) = (pr.p, prep.spec.m);
        let d = pr.d;
        let ideal = self.ideal.at_precision(m)?;
        let phis = reduce_elems(&lv.phi_images, ideal.spec)?;
        // Well-definedness on the given complex, before minimization.
        if let Some(din) = lv.complex.differential(d - 1) {
            let rel = span_rows(&self.tower.base.h.relations_mod(p, m));
            if !rows_in(&rel, &constant_part(din).mul(&lv.base_iso)) {
                return Ok(Some(Error::BaseMismatch {
                    level: j + 1,
                    detail: "base map does not vanish on coboundaries".into(),
                }));
            }
        }
        let min = &prep.min;
        let d_in = min.differential(d - 1).map(constant_part);
        let xs_top: Vec<ZMat> = if min.degrees().contains(&d) {
            let t = (d - min.lo()) as usize;
            prep.xs.iter().map(|per| constant_part(&per[t])).collect()
        } else {
            Vec::new()
        };
        let detail = check_base(
            &self.tower.base.h,
            &ideal,
            &phis,
            d_in.as_ref(),
            min.rank(d),
            &prep.witness,
            &xs_top,
            p,
            m,
        );
        Ok(detail.map(|detail| Error::BaseMismatch { level: j + 1, detail }))
    }
}

fn run(tower: &PatchingTower, fail_fast: bool) -> Result<(ValidationReport, Vec<Prepared>)> {
    if tower.levels.len() < 2 {
        return Err(Error::InsufficientTower { levels: tower.levels.len(), needed: 2 });
    }
    tower.check_shapes()?;
    let pr = &tower.params;
    let model = pr.r_model(pr.model_precision())?;
    let ideal = RModel::new(model, tower.base.ideal.clone())?;
    let prepared = tower.levels.iter().map(|lv| prepare(lv, pr.d)).collect::<Result<Vec<_>>>()?;
    let ctx = Ctx { tower, ideal, prepared };
    let count = tower.levels.len();
    let mut failures: Vec<Vec<Option<Error>>> = vec![Vec::new(); count];
    let mut first: Option<Error> = None;
    for stage in 0..5 {
        for (j, fails) in failures.iter_mut().enumerate() {
            let e = match stage {
                0 => ctx.tau_range(j),
                1 => ctx.tau_constant(j),
                2 => ctx.augmentation(j)?,
                3 => ctx.action(j)?,
                _ => ctx.base(j)?,
            };
            if first.is_none() {
                first = e.clone();
            }
            fails.push(e);
        }
        if fail_fast {
            if let Some(e) = first {
                return Err(e);
            }
        }
    }
    let mut levels = Vec::new();
    for (j, fails) in failures.iter().enumerate() {
        let min = &ctx.prepared[j].min;
        levels.push(LevelReport {
            level: j + 1,
            n: tower.levels[j].n,
            precision: pr.precisions[j],
            tau: ctx.prepared[j].tau.clone(),
            tau_in_range: fails[0].is_none(),
            tau_constant: fails[1].is_none(),
            augmentation_killed: fails[2].is_none(),
            action_compatible: fails[3].is_none(),
            base_iso: fails[4].is_none(),
            lower_cohomology_nonzero: cohomology_log_size(min, pr.d - 1)? > 0,
            witnesses: fails.iter().flatten().map(|e| e.to_string()).collect(),
        });
    }
    let report = ValidationReport { tau: ctx.prepared[0].tau.clone(), passed: first.is_none(), levels, first };
    Ok((report, ctx.prepared))
}

/// Runs every hypothesis check on every level. Errors only for malformed
/// towers; failed hypotheses are recorded in the report.
pub fn hypothesis_report(tower: &PatchingTower) -> Result<ValidationReport> {
    Ok(run(tower, false)?.0)
}

/// Checks the hypotheses and returns the first failure, in the order
/// range, constancy, augmentation, action, base.
pub fn validate_hypotheses(tower: &PatchingTower) -> Result<ValidationReport> {
    Ok(run(tower, true)?.0)
}

pub(crate) fn validated(tower: &PatchingTower) -> Result<(ValidationReport, Vec<Prepared>)> {
    run(tower, true)
}
