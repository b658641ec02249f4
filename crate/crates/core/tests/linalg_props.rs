use std::collections::BTreeSet;

use patchtower_core::linalg::{howell_rows, kernel, solve, ZMat};
use proptest::prelude::*;

fn all_vectors(md: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..md).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn span(gens: &ZMat, len: usize) -> BTreeSet<Vec<u64>> {
    let md = gens.modulus();
    let mut s: BTreeSet<Vec<u64>> = [vec![0; len]].into();
    for r in 0..gens.rows() {
        let g = gens.row(r);
        let mut next = BTreeSet::new();
        for v in &s {
            for c in 0..md {
                next.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % md).collect());
            }
        }
        s = next;
    }
    s
}

fn matrix(p: u64, m: u32) -> impl Strategy<Value = ZMat> {
    let md = p.pow(m);
    (1usize..=3, 1usize..=3).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..md, r * c).prop_map(move |data| {
            let rows = data.chunks(c).map(|x| x.to_vec()).collect();
            ZMat::from_residue_rows(p, m, c, rows)
        })
    })
}

fn check_against_enumeration(a: &ZMat) {
    let md = a.modulus();
    let kernel_set: BTreeSet<Vec<u64>> = all_vectors(md, a.rows())
        .into_iter()
        .filter(|x| a.left_apply(x).iter().all(|&y| y == 0))
        .collect();
    assert_eq!(span(&kernel(a), a.rows()), kernel_set);
    let image = span(a, a.cols());
    for b in all_vectors(md, a.cols()) {
        match solve(a, &b) {
            Ok(x) => assert_eq!(a.left_apply(&x), b),
            Err(_) => assert!(!image.contains(&b)),
        }
    }
    assert_eq!(span(&howell_rows(a).0, a.cols()), image);
}

proptest! {
    #[test]
    fn kernel_and_solve_match_enumeration_z4(a in matrix(2, 2)) {
        check_against_enumeration(&a);
    }

    #[test]
    fn kernel_and_solve_match_enumeration_z9(a in matrix(3, 2)) {
        check_against_enumeration(&a);
    }

    #[test]
    fn howell_is_invariant_under_row_mixing(
        a in matrix(3, 2),
        mix in proptest::collection::vec(0u64..9, 9),
        unit in proptest::sample::select(vec![1u64, 2, 4, 5, 7, 8]),
    ) {
        // Append combinations of existing rows and rescale one row by a unit.
        let combos = mix.chunks(a.rows()).take(3).map(|c| {
            let c = &c[..a.rows().min(c.len())];
            let mut v = vec![0u64; a.rows()];
            v[..c.len()].copy_from_slice(c);
            a.left_apply(&v)
        });
        let mut b = a.clone();
        for v in combos {
            b.push_row(&v);
        }
        for c in 0..b.cols() {
            let x = b.get(0, c);
            b.set(0, c, x * unit);
        }
        prop_assert_eq!(howell_rows(&a).0, howell_rows(&b).0);
    }
}
