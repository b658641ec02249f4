use std::collections::BTreeMap;

use serde::Serialize;

use super::model::{span_rows, RModel};
use super::patch::LimitData;
use super::validate::{check_base, constant_part};
use super::PatchingTower;
use crate::complexes::{make_complex, tau_profile, FreeComplex};
use crate::error::{Error, Result};
use crate::graded::{cohomology_modules, module_invariants, verify_height_amplitude, HAReport, ModuleInvariants};
use crate::linalg::Matrix;
use crate::rings::{graded_ring, Elem, RingMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub tau_concentrated: bool,
    pub fiber_vanishing_below_top: bool,
    pub projdim_eq_r: bool,
    pub depth_eq_budget: bool,
    pub base_iso: bool,
    pub surjection_iso: bool,
}

/// Finite levels may carry cohomology below the top degree that the limit
/// no longer has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCohomologyKill {
    /// Levels (1-based) with `H^{d-1}(C_n) != 0`.
    pub levels_with_lower_cohomology: Vec<usize>,
    pub fiber_lower_vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreenessCertificate {
    pub precision: u32,
    pub chain: Vec<usize>,
    pub rank: usize,
    pub tau: BTreeMap<i32, usize>,
    /// Depth of the limit cohomology over `S_inf`, `1 + depth` of the fiber.
    pub depth: usize,
    pub projdim: usize,
    pub checks: CertificateChecks,
    pub lower_cohomology: LowerCohomologyKill,
    pub fiber: HAReport,
    pub fiber_invariants: ModuleInvariants,
    #[serde(skip)]
    pub limit: LimitData,
}

/// The limit complex read over `F_p[T_1..T_q]`: coefficients mod `p`,
/// exponents kept.
pub fn fiber_model(delta: &FreeComplex) -> Result<FreeComplex> {
    let spec = *delta.spec();
    let g = graded_ring(spec.p, spec.q)?;
    let diffs: Vec<Matrix> = delta
        .differentials()
        .iter()
        .map(|d| {
            d.map_entries(g, |e| {
                Elem::from_terms(g, e.terms().iter().map(|(x, &c)| (x.clone(), (c % spec.p) as i64)))
            })
        })
        .collect();
    make_complex(g, delta.lo(), delta.ranks().to_vec(), diffs)
}

/// Checks (a)-(e) on the limit of a patched tower. Fails with the first
/// violated property.
pub fn certify(tower: &PatchingTower, limit: &LimitData) -> Result<FreenessCertificate> {
    let pr = &tower.params;
    let (p, n, r, d) = (pr.p, limit.precision, pr.r, pr.d);
    let q = pr.q;
    let delta = limit.delta();

    // (a) tau of the limit inside [d - r, d].
    let (lo, hi) = pr.interval();
    let tau = tau_profile(delta)?.taus;
    if let Some(bad) = tau.keys().find(|&&i| i < lo || i > hi) {
        return Err(Error::ConcentrationFailed(format!("tau^{bad} of the limit is nonzero")));
    }

    // (b) the fiber over F_p[T]: every support height equals r and the
    // cohomology sits in degree d.
    let fiber = fiber_model(delta).map_err(|e| Error::ConcentrationFailed(format!("fiber model: {e}")))?;
    let ha = verify_height_amplitude(&fiber).map_err(|e| match e {
        Error::NotGraded(m) => Error::ConcentrationFailed(format!("fiber model is not graded: {m}")),
        other => other,
    })?;
    if let Some(&h) = ha.height_profile.iter().find(|&&h| h < r) {
        return Err(Error::HeightAmplitudeViolated { height: h, r });
    }
    if ha.height_profile.is_empty() || ha.height_profile.iter().any(|&h| h != r) {
        return Err(Error::ConcentrationFailed(format!("support heights {:?}, expected {{{r}}}", ha.height_profile)));
    }
    let iii = &ha.part_iii;
    if !(iii.applicable && iii.lower_vanishing && iii.top_perfect && ha.d_plus == Some(d)) {
        return Err(Error::ConcentrationFailed(format!(
            "fiber cohomology not a perfect module in degree {d} (top {:?}, lower vanishing {})",
            ha.d_plus, iii.lower_vanishing
        )));
    }
    let modules = cohomology_modules(&fiber)?;
    let fiber_lower_vanishes = modules.get(&(d - 1)).is_none_or(|m| m.is_zero());

    // (c) projective dimension r and depth q - r of the top fiber module.
    let inv = module_invariants(&modules[&d])?;
    let projdim_eq_r = inv.projdim == Some(r);
    let depth_eq_budget = inv.depth == Some(q - r);
    if !(projdim_eq_r && depth_eq_budget) {
        return Err(Error::ConcentrationFailed(format!(
            "top fiber cohomology has projdim {:?}, depth {:?}; expected {r}, {}",
            inv.projdim,
            inv.depth,
            q - r
        )));
    }

    // (d) the base map at precision N.
    let model = pr.r_model(pr.model_precision())?;
    let ideal = RModel::new(model, tower.base.ideal.clone())?.at_precision(n)?;
    let d_in = delta.differential(d - 1).map(constant_part);
    let top_level = *limit.chain.last().expect("nonempty chain");
    if let Some(detail) = check_base(
        &tower.base.h,
        &ideal,
        &limit.phi_inf,
        d_in.as_ref(),
        delta.rank(d),
        &limit.witness,
        &limit.x_top,
        p,
        n,
    ) {
        return Err(Error::BaseMismatch { level: top_level, detail });
    }

    // (e) R_inf / i_inf(a) -> R is an isomorphism, H is free over R.
    let model_n = ideal.spec;
    let phi = RingMap::new(model_n, model_n, limit.phi_inf.clone())?;
    for (j, img) in limit.i_inf.iter().enumerate() {
        if !ideal.contains(&phi.apply(img)?) {
            return Err(Error::SurjectionNotIso(format!("phi_inf(i_inf(T_{})) is nonzero in R", j + 1)));
        }
    }
    let mut powers = vec![Elem::one(model_n)];
    let mut frontier = vec![Elem::one(model_n)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for x in &limit.phi_inf {
                let e = f * x;
                if !e.is_zero() && !powers.contains(&e) {
                    powers.push(e.clone());
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    if !ideal.spans_with(&powers) {
        return Err(Error::SurjectionNotIso("phi_inf is not surjective onto R".into()));
    }
    let source = RModel::new(model_n, limit.i_inf.clone())?;
    let (src_log, tgt_log) = (source.quotient_log_size(), ideal.quotient_log_size());
    if src_log != tgt_log {
        return Err(Error::SurjectionNotIso(format!(
            "|R_inf / i_inf(a)| = p^{src_log} but |R| = p^{tgt_log} at precision {n}"
        )));
    }
    let h = &tower.base.h;
    let rank = minimal_generators(h, p);
    let h_log = h.gens as u32 * n - span_rows(&h.relations_mod(p, n)).log_size();
    if h_log != rank as u32 * tgt_log {
        return Err(Error::SurjectionNotIso(format!("H / p^{n} is not free of rank {rank} over R")));
    }

    let levels_with_lower_cohomology = limit.lower_cohomology_levels.clone();
    Ok(FreenessCertificate {
        precision: n,
        chain: limit.chain.clone(),
        rank,
        tau,
        depth: q - r + 1,
        projdim: r,
        checks: CertificateChecks {
            tau_concentrated: true,
            fiber_vanishing_below_top: true,
            projdim_eq_r,
            depth_eq_budget,
            base_iso: true,
            surjection_iso: true,
        },
        lower_cohomology: LowerCohomologyKill { levels_with_lower_cohomology, fiber_lower_vanishes },
        fiber: ha,
        fiber_invariants: inv,
        limit: limit.clone(),
    })
}

/// `dim_k H / mH` with `m = (p, x_1, .., x_g)`.
fn minimal_generators(h: &super::BaseModule, p: u64) -> usize {
    let mut all = h.relations_mod(p, 1);
    for k in 0..h.x_actions.len() {
        all = all.vstack(&h.action_mod(k, p, 1));
    }
    h.gens - span_rows(&all).log_size() as usize
}
