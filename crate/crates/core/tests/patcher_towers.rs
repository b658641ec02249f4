use patchtower_core::complexes::{minimize, tau_profile};
use patchtower_core::patcher::{certify, hypothesis_report, patch, validate_hypotheses};
use patchtower_core::rings::reduction_map;
use patchtower_core::scenario::{generate, Perturbation, ScenarioParams};

const CONFIGS: [(usize, usize); 4] = [(1, 0), (1, 1), (2, 1), (2, 2)];

#[test]
fn ground_truth_towers_certify() {
    for (q, r) in CONFIGS {
        let sc = generate(&ScenarioParams::new(3, q, r, 3, 7)).unwrap();
        let start = std::time::Instant::now();
        let limit = patch(&sc.tower, 2).unwrap();
        let cert = certify(&sc.tower, &limit).unwrap();
        eprintln!("(q, r) = ({q}, {r}): {:?}", start.elapsed());
        assert_eq!(cert.rank, sc.sidecar.rank);
        assert_eq!(cert.tau, sc.sidecar.tau);
        let red = reduction_map(*sc.sidecar.delta.spec(), *limit.delta().spec()).unwrap();
        let expected = minimize(&sc.sidecar.delta.tensor_along(&red).unwrap()).unwrap();
        assert_eq!(minimize(limit.delta()).unwrap(), expected);
        assert_eq!(cert.depth, 1 + q - r);
        assert_eq!(cert.projdim, r);
        assert!(cert.lower_cohomology.fiber_lower_vanishes);
        if (q, r) == (2, 1) {
            assert_eq!(cert.lower_cohomology.levels_with_lower_cohomology, vec![1, 2, 3]);
        }
    }
}

#[test]
fn lower_precision_certifies_too() {
    let sc = generate(&ScenarioParams::new(3, 2, 1, 3, 11)).unwrap();
    for n in 1..=2 {
        let limit = patch(&sc.tower, n).unwrap();
        assert_eq!(limit.chain.len(), n as usize);
        certify(&sc.tower, &limit).unwrap();
    }
}

#[test]
fn perturbations_fail_with_their_error() {
    for (q, r) in CONFIGS {
        for pert in Perturbation::ALL {
            let mut params = ScenarioParams::new(3, q, r, 3, 5);
            params.perturbation = pert;
            let sc = generate(&params).unwrap();
            let err = validate_hypotheses(&sc.tower).unwrap_err();
            assert_eq!(Some(err.name()), pert.expected_error(), "({q}, {r}) {pert}: {err}");
            assert_eq!(patch(&sc.tower, 2).unwrap_err().name(), err.name());
        }
    }
}

#[test]
fn report_lists_every_level() {
    let mut params = ScenarioParams::new(3, 1, 1, 3, 2);
    params.perturbation = Perturbation::BaseMismatch;
    let sc = generate(&params).unwrap();
    let rep = hypothesis_report(&sc.tower).unwrap();
    assert!(!rep.passed);
    assert_eq!(rep.levels.len(), 3);
    assert!(!rep.levels[1].base_iso);
    assert!(rep.levels[0].base_iso && rep.levels[2].base_iso);
    assert_eq!(rep.first_failure().unwrap().name(), "BaseMismatch");
}

#[test]
fn padded_levels_minimize_to_the_template() {
    for seed in 0..5 {
        let sc = generate(&ScenarioParams::new(3, 2, 1, 2, seed)).unwrap();
        for lv in &sc.tower.levels {
            assert_eq!(tau_profile(&lv.complex).unwrap().taus, sc.sidecar.tau);
        }
    }
}

#[test]
fn generator_is_deterministic_and_checks_params() {
    let a = generate(&ScenarioParams::new(3, 2, 1, 2, 9)).unwrap();
    let b = generate(&ScenarioParams::new(3, 2, 1, 2, 9)).unwrap();
    assert_eq!(a.tower, b.tower);
    assert_eq!(generate(&ScenarioParams::new(3, 1, 2, 2, 0)).unwrap_err().name(), "InvalidParams");
    assert_eq!(generate(&ScenarioParams::new(3, 1, 1, 1, 0)).unwrap_err().name(), "InvalidParams");
}

fn single_map_tower(maps: [&dyn Fn(patchtower_core::RingSpec) -> patchtower_core::Elem; 3]) -> patchtower_core::patcher::PatchingTower {
    use patchtower_core::complexes::make_complex;
    use patchtower_core::Matrix;
    let mut params = ScenarioParams::new(3, 1, 1, 3, 0);
    params.padding = 0;
    let mut tower = generate(&params).unwrap().tower;
    for (lv, f) in tower.levels.iter_mut().zip(maps) {
        let s = *lv.complex.spec();
        let d = Matrix::from_rows(s, 1, vec![vec![f(s)]]).unwrap();
        lv.complex = make_complex(s, 0, vec![1, 1], vec![d]).unwrap();
    }
    tower
}

#[test]
fn incompatible_levels_leave_no_chain() {
    use patchtower_core::Elem;
    let t = |s| Elem::var(s, 0);
    let tower = single_map_tower([
        &|s| &t(s) + &t(s).pow(2),
        &t,
        &|s| &t(s) + &t(s).pow(2).scale(3),
    ]);
    validate_hypotheses(&tower).unwrap();
    let err = patch(&tower, 2).unwrap_err();
    assert_eq!(err.name(), "NoCompatibleChain", "{err}");
    assert_eq!(patch(&tower, 1).unwrap().chain, vec![2]);
}

#[test]
fn zero_limit_violates_the_height_bound() {
    use patchtower_core::complexes::make_complex;
    use patchtower_core::Matrix;
    let sc = generate(&ScenarioParams::new(3, 1, 1, 3, 4)).unwrap();
    let mut limit = patch(&sc.tower, 2).unwrap();
    let delta = limit.deltas.last_mut().unwrap();
    let s = *delta.spec();
    *delta = make_complex(s, 0, vec![1, 1], vec![Matrix::zeros(s, 1, 1)]).unwrap();
    let err = certify(&sc.tower, &limit).unwrap_err();
    assert_eq!(err.name(), "HeightAmplitudeViolated", "{err}");
}

#[test]
fn short_towers_are_rejected() {
    let mut sc = generate(&ScenarioParams::new(3, 1, 1, 2, 0)).unwrap();
    sc.tower.levels.truncate(1);
    sc.tower.params.precisions.truncate(1);
    assert_eq!(validate_hypotheses(&sc.tower).unwrap_err().name(), "InsufficientTower");
    let sc = generate(&ScenarioParams::new(3, 1, 1, 2, 0)).unwrap();
    assert_eq!(patch(&sc.tower, 3).unwrap_err().name(), "InsufficientTower");
}

#[test]
fn oracle_round_trip_over_small_parameters() {
    use patchtower_core::complexes::cohomology;
    for p in [2, 3] {
        for q in 1..=2 {
            for r in 0..=q {
                for seed in 0..3 {
                    let sc = generate(&ScenarioParams::new(p, q, r, 3, seed)).unwrap();
                    let limit = patch(&sc.tower, 2).unwrap();
                    let cert = certify(&sc.tower, &limit).unwrap();
                    assert_eq!((cert.rank, &cert.tau), (sc.sidecar.rank, &sc.sidecar.tau), "p={p} q={q} r={r}");
                    for delta in &limit.deltas {
                        let red = reduction_map(*sc.sidecar.delta.spec(), *delta.spec()).unwrap();
                        let truth = sc.sidecar.delta.tensor_along(&red).unwrap();
                        for i in truth.degrees() {
                            let a = cohomology(delta, i).unwrap().fingerprint();
                            let b = cohomology(&truth, i).unwrap().fingerprint();
                            assert_eq!(a, b, "p={p} q={q} r={r} degree {i}");
                        }
                    }
                }
            }
        }
    }
}
