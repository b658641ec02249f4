//! Seeded synthetic patching towers with known limits, and their
//! single-hypothesis perturbations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{make_complex, FreeComplex};
use crate::error::{Error, Result};
use crate::graded::koszul_complex;
use crate::linalg::{Matrix, ZMat};
use crate::patcher::{BaseData, BaseModule, Level, PatchingTower, TowerParams};
use crate::rings::{make_patch_ring, Elem, RingSpec};

/// Which hypothesis a generated tower breaks (at level 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Perturbation {
    None,
    TauNotConstant,
    TauOutOfRange,
    ActionMismatch,
    AugmentationNotKilled,
    BaseMismatch,
}

impl Perturbation {
    pub const ALL: [Perturbation; 5] = [
        Perturbation::TauNotConstant,
        Perturbation::TauOutOfRange,
        Perturbation::ActionMismatch,
        Perturbation::AugmentationNotKilled,
        Perturbation::BaseMismatch,
    ];

    /// Name of the error `validate_hypotheses` must report.
    pub fn expected_error(self) -> Option<&'static str> {
        match self {
            Perturbation::None => None,
            Perturbation::TauNotConstant => Some("TauNotConstant"),
            Perturbation::TauOutOfRange => Some("TauOutOfRange"),
            Perturbation::ActionMismatch => Some("ActionMismatch"),
            Perturbation::AugmentationNotKilled => Some("AugmentationNotKilled"),
            Perturbation::BaseMismatch => Some("BaseMismatch"),
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Perturbation::None => "none",
            Perturbation::TauNotConstant => "tau-not-constant",
            Perturbation::TauOutOfRange => "tau-out-of-range",
            Perturbation::ActionMismatch => "action-mismatch",
            Perturbation::AugmentationNotKilled => "augmentation-not-killed",
            Perturbation::BaseMismatch => "base-mismatch",
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Perturbation::None)
            .chain(Perturbation::ALL)
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown perturbation {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioParams {
    pub p: u64,
    pub q: usize,
    pub r: usize,
    /// Top degree; defaults to `q`.
    pub d: Option<i32>,
    pub levels: usize,
    /// Level precisions; default `m_j = j`.
    pub precisions: Option<Vec<u32>>,
    pub seed: u64,
    /// Number of copies of the Koszul block.
    pub rank: usize,
    pub truncation: u32,
    pub perturbation: Perturbation,
    /// Maximum number of contractible pairs mixed into each level.
    pub padding: usize,
}

impl ScenarioParams {
    pub fn new(p: u64, q: usize, r: usize, levels: usize, seed: u64) -> Self {
        ScenarioParams {
            p,
            q,
            r,
            d: None,
            levels,
            precisions: None,
            seed,
            rank: 1,
            truncation: 2,
            perturbation: Perturbation::None,
            padding: 2,
        }
    }

    pub fn top_degree(&self) -> i32 {
        self.d.unwrap_or(self.q as i32)
    }

    fn precisions(&self) -> Vec<u32> {
        self.precisions.clone().unwrap_or_else(|| (1..=self.levels as u32).collect())
    }
}

/// What the generator knows about the limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar {
    pub rank: usize,
    pub tau: BTreeMap<i32, usize>,
    /// The limit complex over `S_K^{(K)}`, `K` the largest precision any
    /// level supports.
    pub delta: FreeComplex,
    pub expected_error: Option<String>,
    pub perturbation: Perturbation,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub tower: PatchingTower,
    pub sidecar: Sidecar,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `rank` copies of the Koszul complex on `T_{g+1}..T_q` in degrees
/// `[d - r, d]`; the first form is squared when `square_first`.
fn template(spec: RingSpec, g: usize, d: i32, rank: usize, square_first: bool) -> Result<FreeComplex> {
    let q = spec.q;
    let r = q - g;
    let block = if r == 0 {
        FreeComplex::free(spec, d, 1)
    } else {
        let mut forms: Vec<Elem> = (g..q).map(|i| Elem::var(spec, i)).collect();
        if square_first {
            forms[0] = forms[0].pow(2);
        }
        koszul_complex(&forms)?.shift(-(d - r as i32))
    };
    let mut out = block.clone();
    for _ in 1..rank {
        out = out.direct_sum(&block)?;
    }
    Ok(out)
}

/// A complex as raw rows, with a flag per basis vector marking padding.
struct Raw {
    spec: RingSpec,
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<Vec<Vec<Elem>>>,
    pad: Vec<Vec<bool>>,
}

impl Raw {
    fn of(c: &FreeComplex) -> Raw {
        let diffs = c
            .differentials()
            .iter()
            .map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
            .collect();
        Raw {
            spec: *c.spec(),
            lo: c.lo(),
            ranks: c.ranks().to_vec(),
            diffs,
            pad: c.ranks().iter().map(|&n| vec![false; n]).collect(),
        }
    }

    /// Makes degrees `i` and `i + 1` present.
    fn cover(&mut self, i: i32) {
        while i < self.lo {
            self.lo -= 1;
            self.ranks.insert(0, 0);
            self.pad.insert(0, Vec::new());
            self.diffs.insert(0, Vec::new());
        }
        while i + 1 > self.lo + self.ranks.len() as i32 - 1 {
            self.ranks.push(0);
            self.pad.push(Vec::new());
            let rows = self.ranks[self.ranks.len() - 2];
            self.diffs.push(vec![Vec::new(); rows]);
        }
    }

    /// Adds `e` in degree `i` and `f` in degree `i + 1` with `d(e) = f`,
    /// `d` on the old part of degree `i` gaining the column `b`, and the
    /// incoming differential corrected so `d^2 = 0`.
    fn add_pair(&mut self, i: i32, b: Vec<Elem>, pos_e: usize, pos_f: usize) {
        self.cover(i);
        let zero = Elem::zero(self.spec);
        let t = (i - self.lo) as usize;
        // Column f of d^i: b on old rows; the new row e is the unit vector.
        let dt = &mut self.diffs[t];
        for (row, x) in dt.iter_mut().zip(&b) {
            row.insert(pos_f, x.clone());
        }
        let mut erow = vec![zero.clone(); self.ranks[t + 1] + 1];
        erow[pos_f] = Elem::one(self.spec);
        dt.insert(pos_e, erow);
        // d^{i+1} gains the zero row f.
        if t + 1 < self.diffs.len() {
            let cols = self.ranks[t + 2];
            self.diffs[t + 1].insert(pos_f, vec![zero.clone(); cols]);
        }
        // d^{i-1} gains the column a = -d^{i-1} b.
        if t > 0 {
            for row in self.diffs[t - 1].iter_mut() {
                let mut a = zero.clone();
                for (x, y) in row.iter().zip(&b) {
                    a = &a + &(x * y);
                }
                row.insert(pos_e, a.neg());
            }
        }
        self.ranks[t] += 1;
        self.ranks[t + 1] += 1;
        self.pad[t].insert(pos_e, true);
        self.pad[t + 1].insert(pos_f, true);
    }

    fn build(self) -> Result<(FreeComplex, Vec<Vec<bool>>)> {
        let diffs = self
            .diffs
            .into_iter()
            .enumerate()
            .map(|(k, rows)| Matrix::from_rows(self.spec, self.ranks[k + 1], rows))
            .collect::<Result<Vec<_>>>()?;
        Ok((make_complex(self.spec, self.lo, self.ranks, diffs)?, self.pad))
    }
}

fn random_nonunit(rng: &mut ChaCha8Rng, spec: RingSpec) -> Elem {
    if rng.gen_bool(0.4) {
        return Elem::zero(spec);
    }
    let c = rng.gen_range(1..spec.p) as i64;
    if spec.m >= 2 && rng.gen_bool(0.3) {
        return Elem::constant(spec, c * spec.p as i64);
    }
    let bound = spec.level_exponent();
    loop {
        let exps: Vec<u32> = (0..spec.q).map(|_| rng.gen_range(0..bound.min(3))).collect();
        if exps.iter().any(|&e| e > 0) {
            return Elem::monomial(spec, exps, c);
        }
    }
}

/// Builds a tower whose limit is the Koszul template, with optional
/// perturbation at level 2. Deterministic in the seed.
pub fn generate(params: &ScenarioParams) -> Result<Scenario> {
    let ScenarioParams { p, q, r, rank, truncation, perturbation, .. } = *params;
    if r > q {
        return Err(Error::InvalidParams(format!("r = {r} exceeds q = {q}")));
    }
    if q == 0 {
        return Err(Error::InvalidParams("q must be >= 1".into()));
    }
    if params.levels < 2 {
        return Err(Error::InvalidParams(format!("{} level(s); need at least 2", params.levels)));
    }
    if rank == 0 {
        return Err(Error::InvalidParams("rank must be >= 1".into()));
    }
    let precisions = params.precisions();
    if precisions.len() != params.levels || precisions.contains(&0) {
        return Err(Error::InvalidParams("one positive precision per level".into()));
    }
    let g = q - r;
    let d = params.top_degree();
    let tparams = TowerParams { p, q, r, d, precisions: precisions.clone(), truncation };
    tparams.validate().map_err(|e| Error::InvalidParams(e.to_string()))?;
    let big_m = tparams.model_precision();
    if perturbation == Perturbation::AugmentationNotKilled && big_m < 2 {
        return Err(Error::InvalidParams("augmentation perturbation needs a level of precision >= 2".into()));
    }
    let model = tparams.r_model(big_m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut levels = Vec::new();
    for (j, &m) in precisions.iter().enumerate() {
        let n = j as u32 + 1;
        let spec = make_patch_ring(p, m, n, q).map_err(|e| Error::InvalidParams(e.to_string()))?;
        let hit = |kind: Perturbation| perturbation == kind && j == 1;
        let copies = if hit(Perturbation::TauNotConstant) { 2 * rank } else { rank };
        let square = hit(Perturbation::ActionMismatch) && g == 0;
        let f = template(spec, g, d, copies, square)?;
        let mut raw = Raw::of(&f);
        for _ in 0..rng.gen_range(0..=params.padding) {
            let i = rng.gen_range(d - r as i32 - 1..=d - 1);
            raw.cover(i);
            let t = (i - raw.lo) as usize;
            let b: Vec<Elem> = (0..raw.ranks[t]).map(|_| random_nonunit(&mut rng, spec)).collect();
            let pos_e = rng.gen_range(0..=raw.ranks[t]);
            let pos_f = rng.gen_range(0..=raw.ranks[t + 1]);
            raw.add_pair(i, b, pos_e, pos_f);
        }
        let (mut complex, pad) = raw.build()?;
        if hit(Perturbation::TauOutOfRange) {
            complex = complex.shift(-1);
        }
        let lo = complex.lo();
        let ranks = complex.ranks().to_vec();
        let mut x_actions = Vec::new();
        for k in 0..g {
            let factor = if hit(Perturbation::ActionMismatch) && k == 0 { 2 } else { 1 };
            let t = Elem::var(spec, k).scale(factor);
            x_actions.push(ranks.iter().map(|&nr| Matrix::identity(spec, nr).scale(&t)).collect());
        }
        let top_rank = complex.rank(d);
        let mut base_iso = ZMat::zeros(p, m, top_rank, rank);
        if complex.degrees().contains(&d) && !hit(Perturbation::BaseMismatch) {
            let flags = &pad[(d - lo) as usize];
            let mut k = 0;
            for (row, &is_pad) in flags.iter().enumerate() {
                if !is_pad {
                    if k < rank {
                        base_iso.set(row, k, 1);
                    }
                    k += 1;
                }
            }
        }
        let mut i_images: Vec<Elem> =
            (0..q).map(|t| if t < g { Elem::var(model, t) } else { Elem::zero(model) }).collect();
        if hit(Perturbation::AugmentationNotKilled) {
            i_images[0] = &i_images[0] + &Elem::constant(model, p as i64);
        }
        let phi_images = (0..g).map(|k| Elem::var(model, k)).collect();
        levels.push(Level { n, complex, i_images, phi_images, x_actions, base_iso });
    }

    let base = BaseData {
        ideal: (0..g).map(|k| Elem::var(model, k)).collect(),
        h: BaseModule { gens: rank, relations: Vec::new(), x_actions: vec![vec![vec![0; rank]; rank]; g] },
    };
    let top = precisions.iter().enumerate().map(|(j, &m)| m.min(j as u32 + 1)).max().unwrap_or(1);
    let limit_ring = make_patch_ring(p, top, top, q)?;
    let tau = (0..=r).map(|k| (d - r as i32 + k as i32, rank * binomial(r, k))).collect();
    let sidecar = Sidecar {
        rank,
        tau,
        delta: template(limit_ring, g, d, rank, false)?,
        expected_error: perturbation.expected_error().map(String::from),
        perturbation,
    };
    Ok(Scenario { tower: PatchingTower { params: tparams, base, levels }, sidecar })
}
