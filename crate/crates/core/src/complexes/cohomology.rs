use serde::Serialize;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::linalg::{scale_row, Matrix, ScalarExpander, SpanBasis, SparseMat, SparseRow, ZMat};
use crate::rings::{Elem, RingSpec};

/// `K / I` for spans `I <= K` of one ambient `(Z/p^m)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquotient {
    pub gens: SpanBasis,
    pub rels: SpanBasis,
}

impl Subquotient {
    pub fn new(gens: SpanBasis, rels: SpanBasis) -> Self {
        debug_assert!(gens.contains_span(&rels), "relations outside the generators");
        Subquotient { gens, rels }
    }

    pub fn p(&self) -> u64 {
        self.gens.p
    }

    pub fn m(&self) -> u32 {
        self.gens.m
    }

    /// `log_p` of the cardinality.
    pub fn log_size(&self) -> u32 {
        self.gens.log_size() - self.rels.log_size()
    }

    pub fn is_zero(&self) -> bool {
        self.log_size() == 0
    }

    /// Elementary divisors as exponents `e` of cyclic summands `Z/p^e`,
    /// largest first. Counted through the sizes of `p^j M`.
    pub fn profile(&self) -> Vec<u32> {
        let (p, m) = (self.p(), self.m());
        let base = self.rels.log_size();
        let mut s = vec![self.log_size()];
        for j in 1..=m {
            if *s.last().unwrap() == 0 {
                s.push(0);
                continue;
            }
            let pj = p.pow(j);
            let span = self.rels.extend(self.gens.rows.iter().map(|r| scale_row(p, m, r, pj)));
            s.push(span.log_size() - base);
        }
        // c[j] = number of summands of exponent > j.
        let c: Vec<u32> = (0..m as usize).map(|j| s[j] - s[j + 1]).collect();
        let mut out = Vec::new();
        for e in (1..=m as usize).rev() {
            let above = if e < m as usize { c[e] } else { 0 };
            for _ in 0..(c[e - 1] - above) {
                out.push(e as u32);
            }
        }
        out
    }

    /// `K / (I + extra)`; the extra rows must lie in `K`.
    pub fn quotient(&self, extra: impl IntoIterator<Item = SparseRow>) -> Subquotient {
        Subquotient { gens: self.gens.clone(), rels: self.rels.extend(extra) }
    }
}

/// A cohomology module of a complex over a finite ring, kept as a
/// subquotient of the underlying `Z/p^m`-module of `F^i`.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub spec: RingSpec,
    pub degree: i32,
    pub sq: Subquotient,
    var_blocks: Vec<Vec<SparseRow>>,
    rho: usize,
}

/// Invariants of a finite module up to isomorphism used for comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleFingerprint {
    pub profile: Vec<u32>,
    pub mod_maximal: Vec<u32>,
    pub mod_variables: Vec<Vec<u32>>,
    pub annihilators: Vec<Vec<u32>>,
}

impl FiniteModule {
    pub fn log_size(&self) -> u32 {
        self.sq.log_size()
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_zero()
    }

    /// Cardinality when it fits in `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        (self.spec.p as u128).checked_pow(self.log_size())
    }

    pub fn profile(&self) -> Vec<u32> {
        self.sq.profile()
    }

    /// `v * T_t` on the ambient free module.
    pub fn mul_var(&self, t: usize, v: &[(usize, u64)]) -> SparseRow {
        let md = self.spec.modulus();
        let mut acc = std::collections::BTreeMap::<usize, u64>::new();
        for &(idx, a) in v {
            let (copy, k) = (idx / self.rho, idx % self.rho);
            for &(l, c) in &self.var_blocks[t][k] {
                let e = acc.entry(copy * self.rho + l).or_insert(0);
                *e = (*e + a * c) % md;
            }
        }
        acc.into_iter().filter(|&(_, x)| x != 0).collect()
    }

    /// Matrix of `T_t` on the Howell generators of the cocycles, row `i`
    /// holding the coordinates of `g_i T_t`.
    pub fn action_matrix(&self, t: usize) -> ZMat {
        let k = &self.sq.gens;
        let rows = k
            .rows
            .iter()
            .map(|g| k.coordinates(&self.mul_var(t, g)).expect("cocycles are a submodule"))
            .collect();
        ZMat::from_residue_rows(k.p, k.m, k.rows.len(), rows)
    }

    /// `M / (T_t : t in vars) M`.
    pub fn quotient_by_vars(&self, vars: &[usize]) -> Subquotient {
        let extra: Vec<SparseRow> =
            vars.iter().flat_map(|&t| self.sq.gens.rows.iter().map(move |g| self.mul_var(t, g))).collect();
        self.sq.quotient(extra)
    }

    /// `{x in M : T_t x = 0}`.
    pub fn annihilator_of(&self, t: usize) -> Subquotient {
        let (p, m) = (self.sq.p(), self.sq.m());
        let k = &self.sq.gens;
        let images = SparseMat { p, m, cols: k.cols, rows: k.rows.iter().map(|g| self.mul_var(t, g)).collect() };
        let stacked = images.vstack(&self.sq.rels.as_matrix());
        let ker = stacked.kernel();
        let nk = k.rows.len();
        let gens_mat = k.as_matrix();
        let rows: Vec<SparseRow> = ker
            .rows
            .iter()
            .map(|y| {
                let head: SparseRow = y.iter().copied().filter(|&(c, _)| c < nk).collect();
                gens_mat.apply(&head)
            })
            .collect();
        let gens = self.sq.rels.extend(rows);
        Subquotient::new(gens, self.sq.rels.clone())
    }

    pub fn fingerprint(&self) -> ModuleFingerprint {
        let vars: Vec<usize> = (0..self.spec.q).collect();
        ModuleFingerprint {
            profile: self.profile(),
            mod_maximal: self.quotient_by_vars(&vars).profile(),
            mod_variables: vars.iter().map(|&t| self.quotient_by_vars(&[t]).profile()).collect(),
            annihilators: vars.iter().map(|&t| self.annihilator_of(t).profile()).collect(),
        }
    }
}

fn expander(spec: &RingSpec) -> Result<ScalarExpander> {
    if !spec.is_finite() {
        return Err(Error::UnsupportedRing("cohomology over the polynomial ring needs the graded module tools".into()));
    }
    ScalarExpander::new(*spec)
}

fn var_blocks(exp: &mut ScalarExpander, spec: RingSpec) -> Vec<Vec<SparseRow>> {
    (0..spec.q).map(|t| exp.block(&Elem::var(spec, t)).clone()).collect()
}

/// `H^i(C)` as a subquotient of the underlying `Z/p^m`-module of `F^i`.
pub fn cohomology(c: &FreeComplex, i: i32) -> Result<FiniteModule> {
    let spec = *c.spec();
    let mut exp = expander(&spec)?;
    let rho = exp.rank();
    let n = c.rank(i) * rho;
    let (p, m) = (spec.p, spec.m);
    let gens = match c.differential(i) {
        Some(d) => exp.expand_sparse(d)?.kernel(),
        None => SpanBasis::full(p, m, n),
    };
    let rels = match c.differential(i - 1) {
        Some(d) => exp.expand_sparse(d)?.span(),
        None => SpanBasis::zero(p, m, n),
    };
    let var_blocks = var_blocks(&mut exp, spec);
    Ok(FiniteModule { spec, degree: i, sq: Subquotient::new(gens, rels), var_blocks, rho })
}

/// `log_p |H^i(C)|`, from image sizes alone.
pub fn cohomology_log_size(c: &FreeComplex, i: i32) -> Result<u32> {
    let spec = *c.spec();
    let mut exp = expander(&spec)?;
    let n = (c.rank(i) * exp.rank()) as u32;
    let image = |exp: &mut ScalarExpander, d: Option<&Matrix>| -> Result<u32> {
        Ok(match d {
            Some(d) => exp.expand_sparse(d)?.span().log_size(),
            None => 0,
        })
    };
    let out_image = image(&mut exp, c.differential(i))?;
    let in_image = image(&mut exp, c.differential(i - 1))?;
    Ok(n * spec.m - out_image - in_image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::make_complex;
    use crate::rings::make_patch_ring;

    fn one_by_one(s: RingSpec, e: Elem) -> FreeComplex {
        make_complex(s, 0, vec![1, 1], vec![Matrix::from_rows(s, 1, vec![vec![e]]).unwrap()]).unwrap()
    }

    #[test]
    fn multiplication_by_t() {
        let s = make_patch_ring(3, 1, 1, 1).unwrap();
        let c = one_by_one(s, Elem::var(s, 0));
        let h0 = cohomology(&c, 0).unwrap();
        let h1 = cohomology(&c, 1).unwrap();
        assert_eq!(h0.cardinality(), Some(3));
        assert_eq!(h1.cardinality(), Some(3));
        // H^0 is spanned by T^2.
        assert_eq!(h0.sq.gens.rows, vec![vec![(2, 1)]]);
        assert_eq!(cohomology_log_size(&c, 1).unwrap(), 1);
    }

    #[test]
    fn zero_and_identity_differentials() {
        let s = make_patch_ring(3, 1, 1, 1).unwrap();
        let c = one_by_one(s, Elem::zero(s));
        assert_eq!(cohomology(&c, 0).unwrap().cardinality(), Some(27));
        assert_eq!(cohomology(&c, 1).unwrap().cardinality(), Some(27));
        let c = one_by_one(s, Elem::one(s));
        assert!(cohomology(&c, 0).unwrap().is_zero());
        assert!(cohomology(&c, 1).unwrap().is_zero());
    }

    #[test]
    fn elementary_divisors() {
        // Over Z/9[T]/((1+T)^3-1), R/(3) is (Z/3)^3 and R/(T) is Z/9.
        let s = make_patch_ring(3, 2, 1, 1).unwrap();
        let c = one_by_one(s, Elem::constant(s, 3));
        assert_eq!(cohomology(&c, 1).unwrap().profile(), vec![1, 1, 1]);
        let c = one_by_one(s, Elem::var(s, 0));
        let h1 = cohomology(&c, 1).unwrap();
        assert_eq!(h1.profile(), vec![2]);
        assert_eq!(h1.fingerprint().annihilators, vec![vec![2]]);
    }

    #[test]
    fn graded_ring_is_rejected() {
        let g = crate::rings::graded_ring(3, 1).unwrap();
        let c = FreeComplex::free(g, 0, 1);
        assert!(matches!(cohomology(&c, 0), Err(Error::UnsupportedRing(_))));
    }
}
