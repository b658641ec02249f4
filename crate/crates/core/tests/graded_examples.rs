use patchtower_core::graded::{ext_module, minimal_graded_resolution, module_invariants, GradedModule};
use patchtower_core::rings::{graded_ring, Elem, RingSpec};

fn t(s: RingSpec, i: usize) -> Elem {
    Elem::var(s, i)
}

fn residue_field(s: RingSpec) -> GradedModule {
    let vars: Vec<Elem> = (0..s.q).map(|i| t(s, i)).collect();
    GradedModule::cyclic(s, &vars).unwrap()
}

#[test]
fn resolutions() {
    let s = graded_ring(3, 2).unwrap();
    let k = minimal_graded_resolution(&residue_field(s)).unwrap();
    assert_eq!(k.betti, vec![1, 2, 1]);
    assert_eq!(k.shifts, vec![vec![0], vec![1, 1], vec![2]]);
    let free = minimal_graded_resolution(&GradedModule::free(s, vec![0]).unwrap()).unwrap();
    assert_eq!(free.length(), 0);
    let xy = &t(s, 0) * &t(s, 1);
    let r = minimal_graded_resolution(&GradedModule::cyclic(s, std::slice::from_ref(&xy)).unwrap()).unwrap();
    assert_eq!(r.betti, vec![1, 1]);
    let d = r.complex.differential(-1).unwrap();
    assert_eq!(d.get(0, 0), &xy);
    for m in [k, free, r] {
        assert!(m.complex.differentials().iter().all(|d| d.entries().iter().all(|e| e.constant_term() == 0)));
    }
}

#[test]
fn invariants_of_examples() {
    let s = graded_ring(2, 2).unwrap();
    let k = module_invariants(&residue_field(s)).unwrap();
    assert_eq!((k.dim, k.depth, k.grade, k.projdim, k.perfect), (0, Some(0), Some(2), Some(2), Some(true)));
    let r = module_invariants(&GradedModule::free(s, vec![0]).unwrap()).unwrap();
    assert_eq!((r.dim, r.depth, r.grade, r.projdim), (2, Some(2), Some(0), Some(0)));
    let c = module_invariants(&GradedModule::cyclic(s, &[t(s, 0)]).unwrap()).unwrap();
    assert_eq!((c.dim, c.depth, c.grade, c.projdim, c.amplitude), (1, Some(1), Some(1), Some(1), Some(1)));
    let zero = module_invariants(&GradedModule::cyclic(s, &[Elem::one(s)]).unwrap()).unwrap();
    assert_eq!((zero.dim, zero.depth, zero.projdim), (-1, None, None));
}

#[test]
fn ext_examples() {
    let s = graded_ring(3, 2).unwrap();
    let k = residue_field(s);
    assert!(ext_module(&k, 0).unwrap().is_zero());
    assert!(ext_module(&k, 1).unwrap().is_zero());
    let e2 = ext_module(&k, 2).unwrap();
    assert_eq!(e2.hilbert_function(-3, 3).values().sum::<u64>(), 1);
    assert_eq!(e2.hilbert_function(-2, -2)[&-2], 1);
    let r = GradedModule::free(s, vec![0]).unwrap();
    assert_eq!(ext_module(&r, 0).unwrap().hilbert_function(0, 4), r.hilbert_function(0, 4));
    let c = GradedModule::cyclic(s, &[t(s, 0)]).unwrap();
    let e1 = ext_module(&c, 1).unwrap();
    // Ext^1(R/(T_1), R) = R/(T_1)(1).
    assert_eq!(e1.hilbert_function(-1, 4).values().copied().collect::<Vec<_>>(), vec![1; 6]);
    assert_eq!(e1.gen_degrees(), &[-1]);
}

mod height_amplitude {
    use super::*;
    use patchtower_core::complexes::make_complex;
    use patchtower_core::graded::{verify_height_amplitude, Verdict};
    use patchtower_core::linalg::Matrix;
    use std::collections::BTreeSet;

    #[test]
    fn koszul_two_variables() {
        let s = graded_ring(3, 2).unwrap();
        let d0 = Matrix::from_rows(s, 2, vec![vec![t(s, 0), t(s, 1)]]).unwrap();
        let d1 = Matrix::from_rows(s, 1, vec![vec![t(s, 1)], vec![t(s, 0).neg()]]).unwrap();
        let c = make_complex(s, 0, vec![1, 2, 1], vec![d0, d1]).unwrap();
        let r = verify_height_amplitude(&c).unwrap();
        assert_eq!(r.amplitude, 2);
        assert_eq!(r.height_profile, BTreeSet::from([2]));
        assert_eq!(r.part_i.verdict, Verdict::Pass);
        assert_eq!(r.part_ii.verdict, Verdict::Pass);
        assert!(r.part_iii.applicable && r.part_iii.lower_vanishing && r.part_iii.top_perfect);
        assert_eq!(r.part_iii.duality, Some(true));
        assert!(r.passes());
    }

    #[test]
    fn single_map() {
        let s = graded_ring(2, 2).unwrap();
        let c = make_complex(s, 0, vec![1, 1], vec![Matrix::from_rows(s, 1, vec![vec![t(s, 0)]]).unwrap()]).unwrap();
        let r = verify_height_amplitude(&c).unwrap();
        assert_eq!((r.amplitude, r.height_profile.clone()), (1, BTreeSet::from([1])));
        assert!(r.part_iii.applicable && r.part_iii.lower_vanishing && r.part_iii.top_perfect);
        assert_eq!(r.part_iii.duality, Some(true));

        let z = make_complex(s, 0, vec![1, 1], vec![Matrix::zeros(s, 1, 1)]).unwrap();
        let r = verify_height_amplitude(&z).unwrap();
        assert_eq!(r.amplitude, 1);
        assert_eq!(r.height_profile, BTreeSet::from([0]));
        assert_eq!(r.part_i.verdict, Verdict::Pass);
        assert!(!r.part_iii.applicable);
    }

    #[test]
    fn units_are_rejected() {
        let s = graded_ring(2, 1).unwrap();
        let c = make_complex(s, 0, vec![1, 1], vec![Matrix::from_rows(s, 1, vec![vec![Elem::one(s)]]).unwrap()]).unwrap();
        assert_eq!(verify_height_amplitude(&c).unwrap_err().name(), "NotMinimalInput");
    }
}
