use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::module::GradedModule;
use super::resolution::{ext_module, graded_cohomology};
use super::shifts::infer_complex_shifts;
use super::support::profile_components;
use super::tools::{ideal_dim, ideal_gb};
use crate::complexes::{make_complex, tau_profile, FreeComplex};
use crate::linalg::Matrix;
use crate::rings::Elem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartI {
    pub verdict: Verdict,
    /// Heights exceeding the amplitude.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartII {
    pub verdict: Verdict,
    /// Cohomology degrees `j != d+` whose support meets a minimal component
    /// of height equal to the amplitude.
    pub failing_degrees: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartIII {
    pub applicable: bool,
    pub lower_vanishing: bool,
    pub top_perfect: bool,
    /// Hilbert functions of `H^{-d-}` of the dual and of `Ext^a(H^{d+}, R)`
    /// agree through the truncation degree.
    pub duality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub degree: i32,
    pub generators: usize,
    pub dim: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HAReport {
    pub amplitude: usize,
    pub d_plus: Option<i32>,
    pub d_minus: Option<i32>,
    pub height_profile: BTreeSet<usize>,
    pub cohomology: Vec<CohomologyEntry>,
    pub part_i: PartI,
    pub part_ii: PartII,
    pub part_iii: PartIII,
}

impl HAReport {
    pub fn passes(&self) -> bool {
        self.part_i.verdict != Verdict::Fail
            && self.part_ii.verdict != Verdict::Fail
            && (!self.part_iii.applicable
                || (self.part_iii.lower_vanishing && self.part_iii.top_perfect && self.part_iii.duality != Some(false)))
    }
}

pub const DUALITY_DEGREE: i32 = 6;

pub fn verify_height_amplitude(c: &FreeComplex) -> Result<HAReport> {
    super::module::check_graded_ring(c.spec())?;
    for i in c.degrees() {
        if let Some(d) = c.differential(i) {
            if let Some((r, col)) = (0..d.rows())
                .flat_map(|r| (0..d.cols()).map(move |col| (r, col)))
                .find(|&(r, col)| d.get(r, col).constant_term() != 0)
            {
                return Err(Error::NotMinimalInput { degree: i, row: r, col });
            }
        }
    }
    let spec = *c.spec();
    let p = spec.p;
    let q = spec.q;
    let shifts = infer_complex_shifts(c)?;
    let tau = tau_profile(c)?;
    let amplitude = tau.amplitude().unwrap_or(0).max(0) as usize;
    let (d_plus, d_minus) = (tau.d_plus(), tau.d_minus());

    let h = cohomology_with_shifts(c, &shifts)?;
    let cohomology = h
        .iter()
        .map(|(&degree, m)| CohomologyEntry { degree, generators: m.gens(), dim: m.dim() })
        .collect();
    let total = h.values().fold(GradedModule::free(spec, Vec::new())?, |acc, m| acc.direct_sum(m));
    let components = profile_components(&total)?;
    let height_profile: BTreeSet<usize> = components.iter().map(|(h, _)| *h).collect();

    let witnesses: Vec<usize> = height_profile.iter().copied().filter(|&x| x > amplitude).collect();
    let part_i = PartI { verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail }, witnesses };

    let part_ii = match components.iter().find(|(ht, _)| *ht == amplitude) {
        None => PartII { verdict: Verdict::NotApplicable, failing_degrees: Vec::new() },
        Some((_, z)) => {
            let mut failing = Vec::new();
            for (&j, m) in &h {
                if Some(j) == d_plus || m.gens() == 0 {
                    continue;
                }
                let mut sum = z.clone();
                sum.extend(m.annihilator());
                if ideal_dim(p, &ideal_gb(p, &sum), q) == (q - amplitude) as i32 {
                    failing.push(j);
                }
            }
            let verdict = if failing.is_empty() { Verdict::Pass } else { Verdict::Fail };
            PartII { verdict, failing_degrees: failing }
        }
    };

    let applicable = !height_profile.is_empty() && height_profile.iter().all(|&x| x == amplitude);
    let part_iii = if !applicable {
        PartIII { applicable, lower_vanishing: false, top_perfect: false, duality: None }
    } else {
        let top = d_plus.expect("nonzero cohomology");
        let lower_vanishing = h.iter().all(|(&j, m)| j >= top || m.gens() == 0);
        let inv = super::invariants::module_invariants(&h[&top])?;
        let top_perfect = inv.perfect == Some(true) && inv.grade == Some(amplitude);
        let duality = Some(duality_holds(c, &shifts, &h[&top], amplitude)?);
        PartIII { applicable, lower_vanishing, top_perfect, duality }
    };

    Ok(HAReport { amplitude, d_plus, d_minus, height_profile, cohomology, part_i, part_ii, part_iii })
}

fn cohomology_with_shifts(c: &FreeComplex, shifts: &BTreeMap<i32, Vec<i32>>) -> Result<BTreeMap<i32, GradedModule>> {
    c.degrees().map(|i| Ok((i, graded_cohomology(c, shifts, i)?.minimal_presentation()))).collect()
}

/// Every `H^i(C)` as a graded module, with generator degrees inferred from
/// the differentials.
pub fn cohomology_modules(c: &FreeComplex) -> Result<BTreeMap<i32, GradedModule>> {
    super::module::check_graded_ring(c.spec())?;
    cohomology_with_shifts(c, &infer_complex_shifts(c)?)
}

/// Koszul complex `0 -> R -> R^c -> ... -> R -> 0` of `forms` in degrees
/// `[0, c]`, basis of each term ordered by subsets as bitmasks.
pub fn koszul_complex(forms: &[Elem]) -> Result<FreeComplex> {
    let Some(first) = forms.first() else {
        return Err(Error::InvalidParameter("need at least one form".into()));
    };
    let spec = *first.spec();
    let c = forms.len();
    let subsets = |k: usize| -> Vec<u32> { (0u32..1 << c).filter(|s| s.count_ones() as usize == k).collect() };
    let mut diffs = Vec::new();
    for k in 0..c {
        let (src, dst) = (subsets(k), subsets(k + 1));
        let mut d = Matrix::zeros(spec, src.len(), dst.len());
        for (a, &s) in src.iter().enumerate() {
            for (j, f) in forms.iter().enumerate() {
                if s & (1 << j) != 0 {
                    continue;
                }
                let b = dst.iter().position(|&x| x == s | (1 << j)).unwrap();
                let sign = (s & ((1 << j) - 1)).count_ones() % 2;
                d.set(a, b, if sign == 0 { f.clone() } else { f.neg() });
            }
        }
        diffs.push(d);
    }
    make_complex(spec, 0, (0..=c).map(|k| subsets(k).len()).collect(), diffs)
}

/// Compares `H^{-d-}` of the dual complex with `Ext^a(H^{d+}, R)` by Hilbert
/// functions up to [`DUALITY_DEGREE`] beyond their lowest generator degree.
fn duality_holds(
    c: &FreeComplex,
    shifts: &BTreeMap<i32, Vec<i32>>,
    top: &GradedModule,
    amplitude: usize,
) -> Result<bool> {
    let c = c.trimmed();
    let dual = c.dual();
    let dual_shifts: BTreeMap<i32, Vec<i32>> =
        shifts.iter().map(|(&i, s)| (-i, s.iter().map(|x| -x).collect())).collect();
    let lhs = graded_cohomology(&dual, &dual_shifts, -c.lo())?;
    let rhs = ext_module(top, amplitude as i32)?;
    let lo = lhs.gen_degrees().iter().chain(rhs.gen_degrees()).copied().min().unwrap_or(0);
    let hi = DUALITY_DEGREE.max(lo + DUALITY_DEGREE);
    Ok(lhs.hilbert_function(lo, hi) == rhs.hilbert_function(lo, hi))
}
