use std::collections::BTreeSet;

use super::gb::{Engine, ModuleOrder, MonoOrder, Vector};
use super::module::{check_graded_ring, elem_to_terms, vector_to_row, GradedModule};
use super::resolution::{ext_from_resolution, minimal_graded_resolution};
use super::tools::{ideal_dim, ideal_gb, saturation};
use crate::error::{Error, Result};
use crate::rings::Elem;

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Elem], order: MonoOrder) -> Result<Vec<Elem>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let spec = *first.spec();
    check_graded_ring(&spec)?;
    if gens.iter().any(|g| *g.spec() != spec) {
        return Err(Error::SpecMismatch("generators over different rings".into()));
    }
    let e = Engine::new(spec.p, ModuleOrder::graded(order, vec![0]));
    let vs: Vec<Vector> = gens.iter().map(|g| e.normalize(elem_to_terms(g, 0))).collect();
    Ok(e.groebner(&vs).into_iter().map(|v| vector_to_row(spec, &v, 1).remove(0)).collect())
}

/// Annihilators of the nonzero `Ext^h(M, R)`, indexed by `h`.
pub(crate) fn ext_annihilators(m: &GradedModule) -> Result<Vec<Option<Vec<Vector>>>> {
    let spec = *m.spec();
    let res = minimal_graded_resolution(m)?;
    let mut out = Vec::new();
    for h in 0..=res.length() {
        let ext = ext_from_resolution(&res, h as i32, spec)?;
        out.push(if ext.is_zero() { None } else { Some(ext.annihilator()) });
    }
    Ok(out)
}

/// For each height `h` of the profile, the ideal whose height-`h` minimal
/// primes are exactly the height-`h` minimal primes of `Supp M`.
pub(crate) fn profile_components(m: &GradedModule) -> Result<Vec<(usize, Vec<Vector>)>> {
    let p = m.spec().p;
    let q = m.spec().q;
    let anns = ext_annihilators(m)?;
    let mut lower: Vec<&Vec<Vector>> = Vec::new();
    let mut out = Vec::new();
    for (h, ann) in anns.iter().enumerate() {
        let Some(ann) = ann else { continue };
        let mut z = ideal_gb(p, ann);
        for l in &lower {
            z = saturation(p, &z, l);
        }
        if ideal_dim(p, &z, q) == (q - h) as i32 {
            out.push((h, z));
        }
        lower.push(ann);
    }
    Ok(out)
}

/// Heights of the minimal primes of `Supp M`.
pub fn support_height_profile(m: &GradedModule) -> Result<BTreeSet<usize>> {
    Ok(profile_components(m)?.into_iter().map(|(h, _)| h).collect())
}

/// Heights of the minimal primes of a monomial ideal, by exhaustive search
/// over the primes generated by subsets of the variables.
pub fn monomial_minimal_prime_heights(q: usize, exponents: &[Vec<u32>]) -> BTreeSet<usize> {
    if exponents.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return BTreeSet::new();
    }
    let covers = |mask: u32| exponents.iter().all(|e| (0..q).any(|i| mask & (1 << i) != 0 && e[i] > 0));
    let all: Vec<u32> = (0u32..1 << q).filter(|&m| covers(m)).collect();
    all.iter()
        .filter(|&&m| !all.iter().any(|&o| o != m && o & m == o))
        .map(|m| m.count_ones() as usize)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::graded_ring;

    #[test]
    fn gb_examples() {
        let s = graded_ring(3, 2).unwrap();
        let (t1, t2) = (Elem::var(s, 0), Elem::var(s, 1));
        assert_eq!(groebner_basis(std::slice::from_ref(&t1), MonoOrder::Grevlex).unwrap(), vec![t1.clone()]);
        let g = vec![t1.sub(&t2), t2.pow(2)];
        let mut got = groebner_basis(&g, MonoOrder::Lex).unwrap();
        got.sort_by_key(|e| e.terms().len());
        let mut want = g.clone();
        want.sort_by_key(|e| e.terms().len());
        assert_eq!(got.len(), 2);
        assert!(want.iter().all(|w| got.contains(w)));
        let mono = vec![&t1 * &t2, t1.pow(2)];
        let got = groebner_basis(&mono, MonoOrder::Grlex).unwrap();
        assert!(got.len() == 2 && mono.iter().all(|w| got.contains(w)));
        assert!(groebner_basis(&[], MonoOrder::Lex).unwrap().is_empty());
    }

    #[test]
    fn profiles() {
        let s = graded_ring(2, 2).unwrap();
        let t = |i| Elem::var(s, i);
        let c = GradedModule::cyclic(s, &[t(0)]).unwrap();
        assert_eq!(support_height_profile(&c).unwrap(), BTreeSet::from([1]));
        let k = GradedModule::cyclic(s, &[t(0), t(1)]).unwrap();
        assert_eq!(support_height_profile(&k).unwrap(), BTreeSet::from([2]));
        let s3 = graded_ring(2, 3).unwrap();
        let t = |i| Elem::var(s3, i);
        let a = GradedModule::cyclic(s3, &[t(0)]).unwrap();
        let b = GradedModule::cyclic(s3, &[t(1), t(2)]).unwrap();
        assert_eq!(support_height_profile(&a.direct_sum(&b)).unwrap(), BTreeSet::from([1, 2]));
        // An embedded component must not show up: (T1^2, T1 T2) has Supp V(T1).
        let e = GradedModule::cyclic(s3, &[t(0).pow(2), &t(0) * &t(1)]).unwrap();
        assert_eq!(support_height_profile(&e).unwrap(), BTreeSet::from([1]));
        let zero = GradedModule::cyclic(s3, &[Elem::one(s3)]).unwrap();
        assert!(support_height_profile(&zero).unwrap().is_empty());
    }

    #[test]
    fn monomial_oracle() {
        assert_eq!(monomial_minimal_prime_heights(3, &[vec![1, 1, 0], vec![0, 0, 2]]), BTreeSet::from([2]));
        assert_eq!(monomial_minimal_prime_heights(2, &[vec![1, 0], vec![1, 1]]), BTreeSet::from([1]));
        assert_eq!(monomial_minimal_prime_heights(3, &[vec![1, 0, 0], vec![0, 1, 1]]), BTreeSet::from([2]));
    }
}
