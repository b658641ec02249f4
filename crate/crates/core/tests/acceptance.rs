//! Acceptance suite. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion with its wall time.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::graded::{random_graded_complex, random_module};
use patchtower_core::complexes::{cohomology, minimize, tau_profile, FreeComplex};
use patchtower_core::graded::{
    cohomology_modules, depth, ext_module, koszul_complex, module_invariants, verify_height_amplitude, GradedModule,
    HAReport, Verdict,
};
use patchtower_core::linalg::{howell_rows, kernel, solve, ZMat};
use patchtower_core::patcher::{certify, fiber_model, patch, validate_hypotheses};
use patchtower_core::rings::{graded_ring, reduction_map, Elem};
use patchtower_core::scenario::{generate, Perturbation, ScenarioParams};
use rand::Rng;

/// Outcome of one criterion: pass flag plus a one-line summary.
type Verdict_ = (bool, String);

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Hilbert function values from the first nonzero degree on, `len` of them.
fn aligned_hilbert(m: &GradedModule, len: i32) -> Vec<u64> {
    let lo = m.gen_degrees().iter().copied().min().unwrap_or(0);
    m.hilbert_function(lo, lo + len - 1).into_values().collect()
}

// 1. amplitude of the minimal resolution equals projective dimension; the
// projective dimension is cross-checked through Koszul depth and
// Auslander-Buchsbaum.
fn criterion_1() -> Verdict_ {
    let start = Instant::now();
    let (mut checked, mut zero, mut bad) = (0, 0, Vec::new());
    for seed in 0..60u64 {
        let mut rng = common::rng(10_000 + seed);
        let s = graded_ring([2, 3][seed as usize % 2], 2).unwrap();
        let m = random_module(&mut rng, s);
        let inv = module_invariants(&m).unwrap();
        let Some(pd) = inv.projdim else {
            zero += 1;
            continue;
        };
        checked += 1;
        let ab = s.q - depth(&m);
        if inv.amplitude != Some(pd) || ab != pd {
            bad.push(seed);
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && checked + zero >= 50 && t < Duration::from_secs(10);
    (ok, format!("{checked} nonzero modules (+{zero} zero), am = projdim = q - depth; mismatches {bad:?}"))
}

/// Heights of the minimal primes of a monomial ideal: minimal vertex covers
/// of the supports of its generators, by exhaustive search.
fn monomial_heights_oracle(q: usize, gens: &[Vec<u32>]) -> BTreeSet<usize> {
    let supports: Vec<u32> =
        gens.iter().map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0, |m, (i, _)| m | 1 << i)).collect();
    if supports.contains(&0) {
        return BTreeSet::new();
    }
    let covers: Vec<u32> = (0u32..1 << q).filter(|&c| supports.iter().all(|&s| s & c != 0)).collect();
    covers
        .iter()
        .filter(|&&c| !covers.iter().any(|&d| d != c && d & c == d))
        .map(|c| c.count_ones() as usize)
        .collect()
}

fn suite_2() -> Vec<FreeComplex> {
    (0..120u64)
        .map(|seed| {
            let mut rng = common::rng(20_000 + seed);
            let s = graded_ring([2, 3][seed as usize % 2], 3).unwrap();
            random_graded_complex(&mut rng, s)
        })
        .collect()
}

// 2. Support heights never exceed the amplitude; monomial annihilators
// agree with the vertex-cover oracle.
fn criterion_2(suite: &[FreeComplex], reports: &mut Vec<HAReport>) -> Verdict_ {
    let start = Instant::now();
    let (mut monomial, mut bad) = (0, Vec::new());
    for (k, c) in suite.iter().enumerate() {
        let r = verify_height_amplitude(c).unwrap();
        let amp_ok = r.amplitude <= 2 && c.ranks().iter().all(|&n| n <= 3);
        if !amp_ok || r.height_profile.iter().any(|&h| h > r.amplitude) || r.part_i.verdict != Verdict::Pass {
            bad.push(k);
        }
        let total = cohomology_modules(c)
            .unwrap()
            .into_values()
            .fold(GradedModule::free(*c.spec(), vec![]).unwrap(), |a, m| a.direct_sum(&m));
        let ann = total.annihilator_ideal();
        if ann.iter().all(|f| f.terms().len() == 1) {
            monomial += 1;
            let exps: Vec<Vec<u32>> = ann.iter().map(|f| f.terms().keys().next().unwrap().clone()).collect();
            if r.height_profile != monomial_heights_oracle(3, &exps) {
                bad.push(k);
            }
        }
        reports.push(r);
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && suite.len() >= 100 && monomial > 0 && t < Duration::from_secs(60);
    (ok, format!("{} complexes, {monomial} monomial oracle cases; failures {bad:?}", suite.len()))
}

/// Random linear forms in `q` variables that are linearly independent,
/// checked by trying every nontrivial combination.
fn independent_linear_forms(rng: &mut rand_chacha::ChaCha8Rng, p: u64, q: usize, c: usize) -> Vec<Vec<u64>> {
    loop {
        let forms: Vec<Vec<u64>> = (0..c).map(|_| (0..q).map(|_| rng.gen_range(0..p)).collect()).collect();
        let independent = (1..p.pow(c as u32)).all(|mut code| {
            let mut v = vec![0u64; q];
            for f in &forms {
                let a = code % p;
                code /= p;
                for (x, y) in v.iter_mut().zip(f) {
                    *x = (*x + a * y) % p;
                }
            }
            v.iter().any(|&x| x != 0)
        });
        if independent {
            return forms;
        }
    }
}

fn suite_3() -> Vec<(usize, FreeComplex)> {
    let mut out = Vec::new();
    let mut rng = common::rng(30_000);
    for p in [2u64, 3] {
        for q in 1..=3usize {
            for c in 1..=q.min(3) {
                for _ in 0..2 {
                    let s = graded_ring(p, q).unwrap();
                    let forms = independent_linear_forms(&mut rng, p, q, c)
                        .into_iter()
                        .map(|f| {
                            Elem::from_terms(
                                s,
                                f.iter().enumerate().map(|(j, &a)| {
                                    let mut e = vec![0; q];
                                    e[j] = 1;
                                    (e, a as i64)
                                }),
                            )
                        })
                        .collect::<Vec<_>>();
                    out.push((c, koszul_complex(&forms).unwrap()));
                }
            }
        }
    }
    out
}

/// `F_p[T_1..T_q] / (c linear forms)`: a polynomial ring in `q - c`
/// variables.
fn quotient_hilbert(q: usize, c: usize, len: i32) -> Vec<u64> {
    let n = (q - c) as i64;
    (0..len as i64).map(|k| if n == 0 { u64::from(k == 0) } else { binom(k + n - 1, n - 1) }).collect()
}

// 3. Koszul complexes on regular sequences of linear forms.
fn criterion_3(suite: &[(usize, FreeComplex)]) -> Verdict_ {
    let mut bad = Vec::new();
    for (k, (c, kc)) in suite.iter().enumerate() {
        let q = kc.spec().q;
        let h = cohomology_modules(kc).unwrap();
        let lower_zero = (0..*c as i32).all(|i| h[&i].is_zero());
        let top = &h[&(*c as i32)];
        let inv = module_invariants(top).unwrap();
        let perfect = inv.grade == Some(*c) && inv.projdim == Some(*c) && inv.perfect == Some(true);
        let hilbert = aligned_hilbert(top, 7) == quotient_hilbert(q, *c, 7);
        let r = verify_height_amplitude(kc).unwrap();
        let iii = r.part_iii.applicable && r.part_iii.lower_vanishing && r.part_iii.top_perfect;
        if !(lower_zero && perfect && hilbert && iii) {
            bad.push(k);
        }
    }
    (bad.is_empty(), format!("{} Koszul complexes (c <= 3, q <= 3); failures {bad:?}", suite.len()))
}

/// Dimension, multiplicity and number of minimal generators. These do not
/// see a separate twist on each direct summand, which the inferred gradings
/// of a complex and of its dual are free to choose differently.
fn twist_invariants(m: &GradedModule) -> (i32, i64, usize) {
    let m = m.minimal_presentation();
    let dim = m.dim();
    let lo = m.gen_degrees().iter().copied().min().unwrap_or(0);
    let hf: Vec<i64> = m.hilbert_function(lo, lo + 30).into_values().map(|x| x as i64).collect();
    let e = if dim <= 0 {
        hf.iter().sum()
    } else {
        let mut diff = hf;
        for _ in 1..dim {
            diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        }
        *diff.last().unwrap()
    };
    (dim, e, m.gens())
}

// 4. H^0 of the dual complex against Ext^a of the top cohomology, through
// seven degrees from the first generator.
fn criterion_4(suite2: &[FreeComplex], reports: &[HAReport], suite3: &[(usize, FreeComplex)]) -> Verdict_ {
    let mut cases: Vec<(&FreeComplex, Option<usize>)> = Vec::new();
    for (c, r) in suite2.iter().zip(reports) {
        if r.part_iii.applicable && r.part_iii.lower_vanishing {
            cases.push((c, None));
        }
    }
    cases.extend(suite3.iter().map(|(k, c)| (c, Some(*k))));
    let mut bad = Vec::new();
    for (n, (c, koszul)) in cases.iter().enumerate() {
        let r = verify_height_amplitude(c).unwrap();
        let t = c.trimmed();
        let lhs = cohomology_modules(&t.dual()).unwrap().remove(&-t.lo()).unwrap();
        let h = cohomology_modules(c).unwrap();
        let rhs = ext_module(&h[&r.d_plus.unwrap()], r.amplitude as i32).unwrap();
        let mut ok = r.part_iii.duality == Some(true) && twist_invariants(&lhs) == twist_invariants(&rhs);
        if let Some(k) = koszul {
            ok &= aligned_hilbert(&lhs, 7) == aligned_hilbert(&rhs, 7);
            ok &= aligned_hilbert(&rhs, 7) == quotient_hilbert(c.spec().q, *k, 7);
        }
        if !ok {
            bad.push(n);
        }
    }
    let from2 = cases.iter().filter(|(_, k)| k.is_none()).count();
    (bad.is_empty() && from2 > 0, format!("{} complexes ({from2} random, {} Koszul); failures {bad:?}", cases.len(), suite3.len()))
}

// 5. The top degree read off tau is the top degree with nonzero cohomology.
fn criterion_5() -> Verdict_ {
    let rings = common::small_rings();
    let mut bad = Vec::new();
    let total = 120u64;
    for seed in 0..total {
        let mut rng = common::rng(50_000 + seed);
        let s = rings[seed as usize % rings.len()];
        assert!(s.modulus().pow(s.coefficient_rank() as u32) <= 81);
        let len = rng.gen_range(1..=4);
        let ranks = common::random_ranks(&mut rng, len, 3);
        let lo = rng.gen_range(-2..=1);
        let min = common::random_minimal_complex(&mut rng, s, lo, &ranks);
        let pads = rng.gen_range(0..=2);
        let c = common::disguise(&mut rng, &min, pads, 5);
        let top = c.degrees().rev().find(|&i| !cohomology(&c, i).unwrap().is_zero());
        if tau_profile(&c).unwrap().d_plus() != top {
            bad.push(seed);
        }
    }
    (bad.is_empty(), format!("{total} complexes over rings with <= 81 elements; mismatches {bad:?}"))
}

fn all_vectors(md: u64, len: usize) -> Vec<Vec<u64>> {
    (0..md.pow(len as u32))
        .map(|mut code| {
            (0..len)
                .map(|_| {
                    let x = code % md;
                    code /= md;
                    x
                })
                .collect()
        })
        .collect()
}

fn span(gens: &ZMat, len: usize) -> BTreeSet<Vec<u64>> {
    let md = gens.modulus();
    let mut s: BTreeSet<Vec<u64>> = [vec![0; len]].into();
    for r in 0..gens.rows() {
        let g = gens.row(r);
        s = s
            .iter()
            .flat_map(|v| (0..md).map(move |c| v.iter().zip(g).map(|(a, b)| (a + c * b) % md).collect()))
            .collect();
    }
    s
}

fn matches_enumeration(a: &ZMat) -> bool {
    let md = a.modulus();
    let ker: BTreeSet<Vec<u64>> =
        all_vectors(md, a.rows()).into_iter().filter(|x| a.left_apply(x).iter().all(|&y| y == 0)).collect();
    if span(&kernel(a), a.rows()) != ker {
        return false;
    }
    let image = span(a, a.cols());
    if span(&howell_rows(a).0, a.cols()) != image {
        return false;
    }
    all_vectors(md, a.cols()).into_iter().all(|b| match solve(a, &b) {
        Ok(x) => a.left_apply(&x) == b,
        Err(_) => !image.contains(&b),
    })
}

// 6. Kernels, solutions and Howell spans over Z/4 and Z/9: every matrix up
// to 2x2 exhaustively, plus seeded random shapes up to 3x3.
fn criterion_6() -> Verdict_ {
    let mut count = 0;
    let mut bad = 0;
    let mut rng = common::rng(60_000);
    for (p, m) in [(2u64, 2u32), (3, 2)] {
        let md = p.pow(m);
        for rows in 1..=2 {
            for cols in 1..=2 {
                for entries in all_vectors(md, rows * cols) {
                    let a = ZMat::from_residue_rows(p, m, cols, entries.chunks(cols).map(|r| r.to_vec()).collect());
                    count += 1;
                    bad += usize::from(!matches_enumeration(&a));
                }
            }
        }
        for _ in 0..300 {
            let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let data = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..md)).collect()).collect();
            let a = ZMat::from_residue_rows(p, m, cols, data);
            count += 1;
            bad += usize::from(!matches_enumeration(&a));
        }
    }
    (bad == 0, format!("{count} matrices over Z/4 and Z/9; disagreements {bad}"))
}

const CONFIGS: [(usize, usize); 4] = [(1, 0), (1, 1), (2, 1), (2, 2)];

// 7. Ground-truth towers: certificate rank, level-wise cohomology of the
// limit against the generator's template, and the lower-cohomology kill.
fn criterion_7() -> Verdict_ {
    let mut notes = Vec::new();
    let mut ok = true;
    for (q, r) in CONFIGS {
        let sc = generate(&ScenarioParams::new(3, q, r, 3, 7)).unwrap();
        let d = sc.tower.params.d;
        let start = Instant::now();
        let limit = patch(&sc.tower, 2).unwrap();
        let cert = certify(&sc.tower, &limit).unwrap();
        let t = start.elapsed();
        let mut good = cert.rank == sc.sidecar.rank && cert.tau == sc.sidecar.tau && t < Duration::from_secs(30);
        for delta in &limit.deltas {
            let red = reduction_map(*sc.sidecar.delta.spec(), *delta.spec()).unwrap();
            let truth = sc.sidecar.delta.tensor_along(&red).unwrap();
            good &= truth.degrees().all(|i| {
                cohomology(delta, i).unwrap().fingerprint() == cohomology(&truth, i).unwrap().fingerprint()
            });
        }
        good &= minimize(limit.delta()).unwrap() == minimize(&sc.sidecar.delta.tensor_along(
            &reduction_map(*sc.sidecar.delta.spec(), *limit.delta().spec()).unwrap(),
        ).unwrap()).unwrap();
        if (q, r) == (2, 1) {
            let finite: Vec<bool> =
                sc.tower.levels.iter().map(|lv| !cohomology(&lv.complex, d - 1).unwrap().is_zero()).collect();
            let fiber = cohomology_modules(&fiber_model(limit.delta()).unwrap()).unwrap();
            let fiber_zero = fiber.get(&(d - 1)).is_none_or(|m| m.is_zero());
            let kill = finite.iter().all(|&x| x) && fiber_zero && cert.lower_cohomology.fiber_lower_vanishes;
            good &= kill && cert.lower_cohomology.levels_with_lower_cohomology == vec![1, 2, 3];
            notes.push(format!("({q},{r}) {:.2}s kill {}", t.as_secs_f64(), if kill { "yes" } else { "no" }));
        } else {
            notes.push(format!("({q},{r}) {:.2}s", t.as_secs_f64()));
        }
        ok &= good;
    }
    (ok, format!("towers {}", notes.join(", ")))
}

// 8. Every perturbation is rejected with its own error and never certified.
fn criterion_8() -> Verdict_ {
    let mut wrong = Vec::new();
    let mut runs = 0;
    for (q, r) in CONFIGS {
        for pert in Perturbation::ALL {
            let mut params = ScenarioParams::new(3, q, r, 3, 7);
            params.perturbation = pert;
            let sc = generate(&params).unwrap();
            runs += 1;
            let expected = pert.expected_error();
            let validated = validate_hypotheses(&sc.tower).err().map(|e| e.name());
            let certified = patch(&sc.tower, 2).and_then(|l| certify(&sc.tower, &l));
            let patched = certified.as_ref().err().map(|e| e.name());
            if expected.is_none() || validated != expected || patched != expected {
                wrong.push(format!("({q},{r}) {pert}: {validated:?}/{patched:?}"));
            }
        }
    }
    (wrong.is_empty(), format!("{runs} perturbed towers, false certificates or wrong errors: {wrong:?}"))
}

fn main() -> ExitCode {
    let mut results: BTreeMap<usize, bool> = BTreeMap::new();
    let mut report = |n: usize, label: &str, f: &mut dyn FnMut() -> Verdict_| {
        let start = Instant::now();
        let (ok, detail) = f();
        let t = start.elapsed();
        println!("{} criterion {n} [{label}] {:.2}s: {detail}", if ok { "PASS" } else { "FAIL" }, t.as_secs_f64());
        results.insert(n, ok);
    };
    let s2 = suite_2();
    let s3 = suite_3();
    let mut reports = Vec::new();
    report(1, "am = projdim", &mut criterion_1);
    report(2, "height <= amplitude", &mut || criterion_2(&s2, &mut reports));
    report(3, "Koszul concentration", &mut || criterion_3(&s3));
    report(4, "duality", &mut || criterion_4(&s2, &reports, &s3));
    report(5, "top degree from tau", &mut criterion_5);
    report(6, "Howell vs enumeration", &mut criterion_6);
    report(7, "tower certification", &mut criterion_7);
    report(8, "perturbations rejected", &mut criterion_8);
    let passed = results.values().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
