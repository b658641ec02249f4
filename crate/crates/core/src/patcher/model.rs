use crate::error::Result;
use crate::linalg::{sparse_from_dense, Matrix, ScalarExpander, SpanBasis, ZMat};
use crate::rings::{reduction_map, Elem, RingSpec};

/// `Z/p^m`-span of all monomial multiples of `gens` inside a finite ring,
/// in monomial-basis coordinates.
pub fn ideal_span(spec: RingSpec, gens: &[Elem]) -> Result<SpanBasis> {
    let mut exp = ScalarExpander::new(spec)?;
    let mut rows = Vec::new();
    for f in gens {
        rows.extend(exp.block(f).iter().cloned());
    }
    Ok(SpanBasis::of_rows(spec.p, spec.m, exp.rank(), rows))
}

/// A quotient `A / I` of a truncated model ring, kept through the span of
/// the ideal.
#[derive(Debug, Clone)]
pub struct RModel {
    pub spec: RingSpec,
    pub ideal: Vec<Elem>,
    span: SpanBasis,
}

impl RModel {
    pub fn new(spec: RingSpec, ideal: Vec<Elem>) -> Result<Self> {
        let span = ideal_span(spec, &ideal)?;
        Ok(RModel { spec, ideal, span })
    }

    /// The same quotient with the coefficients reduced to `Z/p^m`.
    pub fn at_precision(&self, m: u32) -> Result<RModel> {
        let target = RingSpec { m, ..self.spec };
        let f = reduction_map(self.spec, target)?;
        let ideal = self.ideal.iter().map(|e| f.apply(e)).collect::<Result<_>>()?;
        RModel::new(target, ideal)
    }

    pub fn with_extra(&self, gens: &[Elem]) -> Result<RModel> {
        let mut ideal = self.ideal.clone();
        ideal.extend(gens.iter().cloned());
        RModel::new(self.spec, ideal)
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.span.contains(&sparse_from_dense(&coords(e)))
    }

    /// `log_p |A / I|`.
    pub fn quotient_log_size(&self) -> u32 {
        self.spec.coefficient_rank() as u32 * self.spec.m - self.span.log_size()
    }

    /// True when the elements, with the ideal, span everything as a
    /// `Z/p^m`-module.
    pub fn spans_with(&self, elems: &[Elem]) -> bool {
        let all = self.span.extend(elems.iter().map(|e| sparse_from_dense(&coords(e))));
        all.log_size() == self.spec.coefficient_rank() as u32 * self.spec.m
    }
}

/// Row span of a matrix over `Z/p^m`.
pub(crate) fn span_rows(a: &ZMat) -> SpanBasis {
    SpanBasis::of_rows(a.p, a.m, a.cols(), (0..a.rows()).map(|r| sparse_from_dense(a.row(r))).collect())
}

fn coords(e: &Elem) -> Vec<u64> {
    let spec = e.spec();
    let mut v = vec![0; spec.coefficient_rank()];
    for (exps, &c) in e.terms() {
        v[spec.basis_index(exps)] = c;
    }
    v
}

/// `f(X_1, .., X_g)` for square matrices over `spec`; coefficients travel
/// along `Z/p^M -> Z/p^m`.
pub fn eval_at_matrices(f: &Elem, xs: &[Matrix], spec: RingSpec, n: usize) -> Result<Matrix> {
    let mut out = Matrix::zeros(spec, n, n);
    let mut powers: Vec<Vec<Matrix>> = xs.iter().map(|_| vec![Matrix::identity(spec, n)]).collect();
    for (exps, &c) in f.terms() {
        let mut term = Matrix::identity(spec, n).scale(&Elem::constant(spec, c as i64));
        for (k, &e) in exps.iter().enumerate() {
            while powers[k].len() <= e as usize {
                let next = powers[k].last().unwrap().mul(&xs[k])?;
                powers[k].push(next);
            }
            term = term.mul(&powers[k][e as usize])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// As [`eval_at_matrices`] for matrices over `Z/p^m`.
pub fn eval_at_zmats(f: &Elem, xs: &[ZMat], p: u64, m: u32, n: usize) -> ZMat {
    let md = p.pow(m);
    let mut out = ZMat::zeros(p, m, n, n);
    for (exps, &c) in f.terms() {
        let mut term = ZMat::identity(p, m, n).scale(c % md);
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&xs[k]);
            }
        }
        out = out.add(&term);
    }
    out
}
