use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rings::Elem;

/// Homogeneous degree of a nonzero polynomial.
pub(crate) fn homogeneous_degree(e: &Elem) -> Result<Option<i32>> {
    let mut degs = e.terms().keys().map(|k| k.iter().sum::<u32>() as i32);
    let Some(d) = degs.next() else { return Ok(None) };
    if degs.any(|x| x != d) {
        return Err(Error::NotGraded("inhomogeneous entry".into()));
    }
    Ok(Some(d))
}

/// Solves `pot[u] - pot[v] = w` over the given nodes. Every connected
/// component is translated so that its smallest value is 0.
pub(crate) fn solve_potentials(nodes: usize, constraints: &[(usize, usize, i32)]) -> Result<Vec<i32>> {
    let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); nodes];
    for &(u, v, w) in constraints {
        adj[u].push((v, -w));
        adj[v].push((u, w));
    }
    let mut pot: Vec<Option<i32>> = vec![None; nodes];
    for start in 0..nodes {
        if pot[start].is_some() {
            continue;
        }
        pot[start] = Some(0);
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let pu = pot[u].unwrap();
            for &(v, w) in &adj[u] {
                match pot[v] {
                    None => {
                        pot[v] = Some(pu + w);
                        comp.push(v);
                        stack.push(v);
                    }
                    Some(pv) if pv != pu + w => {
                        return Err(Error::NotGraded("no consistent grading exists".into()));
                    }
                    _ => {}
                }
            }
        }
        let min = comp.iter().map(|&u| pot[u].unwrap()).min().unwrap();
        for &u in &comp {
            pot[u] = Some(pot[u].unwrap() - min);
        }
    }
    Ok(pot.into_iter().map(Option::unwrap).collect())
}

/// Generator degrees making every relation row homogeneous.
pub(crate) fn infer_generator_degrees(rows: &[Vec<Elem>], gens: usize) -> Result<Vec<i32>> {
    let mut cons = Vec::new();
    for (j, r) in rows.iter().enumerate() {
        for (c, e) in r.iter().enumerate() {
            if let Some(d) = homogeneous_degree(e)? {
                cons.push((gens + j, c, d));
            }
        }
    }
    let pot = solve_potentials(gens + rows.len(), &cons)?;
    Ok(pot[..gens].to_vec())
}

/// Shifts for every free module of a complex so that all differentials are
/// homogeneous of degree 0. Keys are cohomological degrees.
pub(crate) fn infer_complex_shifts(c: &crate::complexes::FreeComplex) -> Result<BTreeMap<i32, Vec<i32>>> {
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for i in c.degrees() {
        offset.insert(i, total);
        total += c.rank(i);
    }
    let mut cons = Vec::new();
    for i in c.degrees() {
        if let Some(d) = c.differential(i) {
            for a in 0..d.rows() {
                for b in 0..d.cols() {
                    if let Some(w) = homogeneous_degree(d.get(a, b))? {
                        cons.push((offset[&i] + a, offset[&(i + 1)] + b, w));
                    }
                }
            }
        }
    }
    let pot = solve_potentials(total, &cons)?;
    Ok(c.degrees().map(|i| (i, pot[offset[&i]..offset[&i] + c.rank(i)].to_vec())).collect())
}
