//! Coefficient rings and the ring tower.
//!
//! Four families of rings share one element type:
//!
//! * `Z/p^m` (`coefficient`),
//! * the finite local rings `(Z/p^m)[T_1..T_q] / ((1+T_i)^{p^n} - 1)`
//!   (`patch`), with monomial basis `T^a`, `0 <= a_i < p^n`,
//! * the polynomial ring `F_p[T_1..T_q]` viewed as a graded-local ring
//!   (`graded`),
//! * truncated power series `(Z/p^m)[x_1..x_g] / (x)^{D+1}` used to model
//!   the auxiliary ring of a patching tower (`truncated`, with `n = D`).
//!
//! Elements are kept in canonical normal form: a sorted map from exponent
//! vectors to least nonnegative residues with no stored zeros, so equality of
//! elements is equality of maps.

mod map;

pub use map::{reduction_map, residue_field_map, RingMap};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residues are kept below this bound so products fit in `u64`.
const MAX_MODULUS: u64 = 1 << 31;
/// Upper bound on the coefficient rank `p^{nq}` of a patch ring.
const MAX_PATCH_RANK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Coefficient,
    Patch,
    Graded,
    Truncated,
}

/// Parameters of one ring in the family. See the module docs for the meaning
/// of `n` per kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub q: usize,
    pub kind: RingKind,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `Z/p^m`.
pub fn coefficient_ring(p: u64, m: u32) -> Result<RingSpec> {
    let spec = RingSpec { p, m, n: 0, q: 0, kind: RingKind::Coefficient };
    spec.validate()?;
    Ok(spec)
}

/// `S_n^{(m)} = (Z/p^m)[T_1..T_q] / ((1+T_i)^{p^n} - 1)`.
///
/// With `q = 0` there are no relations and the result is the coefficient
/// ring `Z/p^m` itself.
pub fn make_patch_ring(p: u64, m: u32, n: u32, q: usize) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m < 1 {
        return Err(Error::InvalidParameter(format!("precision m = {m} must be >= 1")));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(format!("level n = {n} must be >= 1")));
    }
    if q == 0 {
        return coefficient_ring(p, m);
    }
    let spec = RingSpec { p, m, n, q, kind: RingKind::Patch };
    spec.validate()?;
    Ok(spec)
}

/// `F_p[T_1..T_q]`, graded by total degree.
pub fn graded_ring(p: u64, q: usize) -> Result<RingSpec> {
    let spec = RingSpec { p, m: 1, n: 0, q, kind: RingKind::Graded };
    spec.validate()?;
    Ok(spec)
}

/// `(Z/p^m)[x_1..x_g] / (x_1..x_g)^{degree+1}`.
pub fn truncated_ring(p: u64, m: u32, g: usize, degree: u32) -> Result<RingSpec> {
    let spec = RingSpec { p, m, n: degree, q: g, kind: RingKind::Truncated };
    spec.validate()?;
    Ok(spec)
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NonPrime(self.p));
        }
        if self.m < 1 {
            return Err(Error::InvalidParameter("precision m must be >= 1".into()));
        }
        match checked_pow(self.p, self.m as u64) {
            Some(md) if md < MAX_MODULUS => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "p^m = {}^{} is too large",
                    self.p, self.m
                )))
            }
        }
        match self.kind {
            RingKind::Coefficient => {
                if self.q != 0 || self.n != 0 {
                    return Err(Error::InvalidParameter("coefficient ring has q = n = 0".into()));
                }
            }
            RingKind::Patch => {
                if self.n < 1 || self.q < 1 {
                    return Err(Error::InvalidParameter("patch ring needs n >= 1 and q >= 1".into()));
                }
                let level = checked_pow(self.p, self.n as u64);
                let rank = level.and_then(|l| checked_pow(l, self.q as u64));
                if !matches!(rank, Some(r) if r <= MAX_PATCH_RANK) {
                    return Err(Error::InvalidParameter(format!(
                        "patch ring rank p^(nq) too large (p={}, n={}, q={})",
                        self.p, self.n, self.q
                    )));
                }
            }
            RingKind::Graded => {
                if self.m != 1 {
                    return Err(Error::InvalidParameter("graded ring requires m = 1".into()));
                }
            }
            RingKind::Truncated => {
                if self.n < 1 {
                    return Err(Error::InvalidParameter("truncation degree must be >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// `p^m`.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `p^n`, the exponent bound of a patch ring.
    pub fn level_exponent(&self) -> u32 {
        self.p.pow(self.n) as u32
    }

    pub fn is_finite(&self) -> bool {
        self.kind != RingKind::Graded
    }

    /// Free rank over `Z/p^m` of a finite ring.
    pub fn coefficient_rank(&self) -> usize {
        match self.kind {
            RingKind::Coefficient => 1,
            RingKind::Patch => (self.level_exponent() as usize).pow(self.q as u32),
            RingKind::Truncated => self.monomial_basis().len(),
            RingKind::Graded => panic!("graded ring has no finite coefficient rank"),
        }
    }

    /// Monomial basis of a finite ring, in canonical (lexicographic) order.
    pub fn monomial_basis(&self) -> Vec<Vec<u32>> {
        match self.kind {
            RingKind::Coefficient => vec![vec![]],
            RingKind::Patch => {
                let bound = self.level_exponent();
                let mut out = vec![vec![]];
                for _ in 0..self.q {
                    let mut next = Vec::with_capacity(out.len() * bound as usize);
                    for prefix in &out {
                        for e in 0..bound {
                            let mut v = prefix.clone();
                            v.push(e);
                            next.push(v);
                        }
                    }
                    out = next;
                }
                out
            }
            RingKind::Truncated => {
                let mut out = vec![vec![]];
                for _ in 0..self.q {
                    let mut next = Vec::new();
                    for prefix in &out {
                        let used: u32 = prefix.iter().sum();
                        for e in 0..=(self.n - used) {
                            let mut v = prefix.clone();
                            v.push(e);
                            next.push(v);
                        }
                    }
                    out = next;
                }
                out
            }
            RingKind::Graded => panic!("graded ring has no finite monomial basis"),
        }
    }

    /// Index of a basis monomial inside [`monomial_basis`](Self::monomial_basis).
    pub fn basis_index(&self, exps: &[u32]) -> usize {
        match self.kind {
            RingKind::Coefficient => 0,
            RingKind::Patch => {
                let bound = self.level_exponent() as usize;
                exps.iter().fold(0, |acc, &e| acc * bound + e as usize)
            }
            _ => self
                .monomial_basis()
                .iter()
                .position(|b| b.as_slice() == exps)
                .expect("monomial outside basis"),
        }
    }

    /// Univariate relation table for a patch ring: row `e` holds `T^e`
    /// reduced, as a dense vector of length `p^n`, for `e <= 2(p^n - 1)`.
    fn patch_powers(&self) -> Vec<Vec<u64>> {
        let big_n = self.level_exponent() as usize;
        let md = self.modulus();
        // (1+T)^N - 1 = sum_{k=1}^{N} C(N,k) T^k, monic in T^N.
        let mut binom = vec![0u64; big_n + 1];
        binom[0] = 1;
        for i in 1..=big_n {
            for k in (1..=i).rev() {
                binom[k] = (binom[k] + binom[k - 1]) % md;
            }
        }
        // T^N = -sum_{k=1}^{N-1} C(N,k) T^k
        let top: Vec<u64> = (0..big_n)
            .map(|k| if k == 0 { 0 } else { (md - binom[k] % md) % md })
            .collect();
        let mut table = Vec::with_capacity(2 * big_n);
        for e in 0..big_n {
            let mut v = vec![0u64; big_n];
            v[e] = 1;
            table.push(v);
        }
        for _ in big_n..=(2 * big_n).saturating_sub(2) {
            let prev = table.last().unwrap();
            let mut v = vec![0u64; big_n];
            // multiply prev by T
            for k in (1..big_n).rev() {
                v[k] = prev[k - 1];
            }
            let carry = prev[big_n - 1];
            if carry != 0 {
                for k in 0..big_n {
                    v[k] = (v[k] + carry * top[k]) % md;
                }
            }
            table.push(v);
        }
        table
    }

    /// Reduced univariate `T^e` in a patch ring, for arbitrary `e`.
    fn patch_univariate_power(&self, e: u64, table: &[Vec<u64>]) -> Vec<u64> {
        if (e as usize) < table.len() {
            return table[e as usize].clone();
        }
        let big_n = self.level_exponent() as usize;
        let md = self.modulus();
        let mut v = table[table.len() - 1].clone();
        let mut cur = table.len() as u64 - 1;
        while cur < e {
            let carry = v[big_n - 1];
            for k in (1..big_n).rev() {
                v[k] = v[k - 1];
            }
            v[0] = 0;
            if carry != 0 {
                for k in 0..big_n {
                    v[k] = (v[k] + carry * table[big_n][k]) % md;
                }
            }
            cur += 1;
        }
        v
    }
}

/// An element of one of the rings above, in canonical normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    spec: RingSpec,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = if self.spec.kind == RingKind::Truncated { "x" } else { "T" };
        let mut first = true;
        for (exps, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{var}{}", i + 1)
                    } else {
                        format!("{var}{}^{e}", i + 1)
                    }
                })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", mono.join("*"))?,
                _ => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

fn add_into(acc: &mut HashMap<Vec<u32>, u64>, exps: Vec<u32>, c: u64, md: u64) {
    if c == 0 {
        return;
    }
    let slot = acc.entry(exps).or_insert(0);
    *slot = (*slot + c) % md;
}

pub(crate) fn mod_inverse(a: u64, md: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % md as i128, md as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(md as i128) as u64)
}

impl Elem {
    pub fn zero(spec: RingSpec) -> Self {
        Elem { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: RingSpec) -> Self {
        Self::constant(spec, 1)
    }

    pub fn constant(spec: RingSpec, c: i64) -> Self {
        Self::monomial(spec, vec![0; spec.q], c)
    }

    /// The variable `T_i` (or `x_i` in a truncated ring), zero-based.
    pub fn var(spec: RingSpec, i: usize) -> Self {
        let mut exps = vec![0; spec.q];
        exps[i] = 1;
        Self::monomial(spec, exps, 1)
    }

    pub fn monomial(spec: RingSpec, exps: Vec<u32>, c: i64) -> Self {
        Self::from_terms(spec, [(exps, c)])
    }

    /// Builds an element from arbitrary (possibly unreduced, repeated)
    /// terms. Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(spec: RingSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let md = spec.modulus();
        let mut acc = HashMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), spec.q, "exponent vector length must equal q");
            let c = c.rem_euclid(md as i64) as u64;
            add_into(&mut acc, exps, c, md);
        }
        Self::normalize(spec, acc)
    }

    fn normalize(spec: RingSpec, raw: HashMap<Vec<u32>, u64>) -> Self {
        let md = spec.modulus();
        let mut terms = BTreeMap::new();
        match spec.kind {
            RingKind::Coefficient | RingKind::Graded => {
                for (e, c) in raw {
                    if c % md != 0 {
                        terms.insert(e, c % md);
                    }
                }
            }
            RingKind::Truncated => {
                for (e, c) in raw {
                    if c % md != 0 && e.iter().sum::<u32>() <= spec.n {
                        terms.insert(e, c % md);
                    }
                }
            }
            RingKind::Patch => {
                let bound = spec.level_exponent();
                let needs = raw.keys().any(|e| e.iter().any(|&x| x >= bound));
                if !needs {
                    for (e, c) in raw {
                        if c % md != 0 {
                            terms.insert(e, c % md);
                        }
                    }
                } else {
                    let table = spec.patch_powers();
                    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
                    for (e, c) in raw {
                        if c % md == 0 {
                            continue;
                        }
                        expand_patch_monomial(&spec, &table, &e, c, &mut acc);
                    }
                    for (e, c) in acc {
                        if c != 0 {
                            terms.insert(e, c);
                        }
                    }
                }
            }
        }
        Elem { spec, terms }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == 1
    }

    pub fn constant_term(&self) -> u64 {
        self.terms.get(&vec![0; self.spec.q]).copied().unwrap_or(0)
    }

    /// True when every term is constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Local-ring unit criterion: the constant term is a unit mod `p`.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_multiple_of(self.spec.p)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// `Some(deg)` when all terms share one total degree (zero is homogeneous
    /// of every degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let lo = self.order()?;
        (self.total_degree()? == lo).then_some(lo)
    }

    pub fn normal_form(&self) -> Elem {
        let raw = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        Self::normalize(self.spec, raw)
    }

    fn check_same(&self, other: &Elem) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!("{:?} vs {:?}", self.spec, other.spec)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Elem) -> Elem {
        let md = self.spec.modulus();
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert(0);
            *slot = (*slot + c) % md;
            if *slot == 0 {
                terms.remove(e);
            }
        }
        Elem { spec: self.spec, terms }
    }

    fn mul_unchecked(&self, other: &Elem) -> Elem {
        if self.is_zero() || other.is_zero() {
            return Elem::zero(self.spec);
        }
        let md = self.spec.modulus();
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                add_into(&mut acc, e, ca * cb % md, md);
            }
        }
        Self::normalize(self.spec, acc)
    }

    pub fn neg(&self) -> Elem {
        let md = self.spec.modulus();
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), md - c)).collect();
        Elem { spec: self.spec, terms }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self + &other.neg()
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: i64) -> Elem {
        let md = self.spec.modulus();
        let c = c.rem_euclid(md as i64) as u64;
        let terms = self
            .terms
            .iter()
            .map(|(e, &x)| (e.clone(), x * c % md))
            .filter(|(_, x)| *x != 0)
            .collect();
        Elem { spec: self.spec, terms }
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = Elem::one(self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Two-sided inverse of a unit.
    ///
    /// In finite rings the maximal ideal is nilpotent, so Newton iteration
    /// from the inverse of the constant term terminates. In the graded model
    /// only nonzero constants are invertible.
    pub fn invert(&self) -> Result<Elem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let md = self.spec.modulus();
        let c0 = mod_inverse(self.constant_term(), md).ok_or(Error::NotAUnit)?;
        let mut y = Elem::constant(self.spec, c0 as i64);
        if self.spec.kind == RingKind::Graded {
            if !self.is_constant() {
                return Err(Error::UnsupportedRing(
                    "non-constant unit has no polynomial inverse".into(),
                ));
            }
            return Ok(y);
        }
        let two = Elem::constant(self.spec, 2);
        for _ in 0..64 {
            if (self * &y).is_one() {
                return Ok(y);
            }
            y = &y * &two.sub(&(self * &y));
        }
        Err(Error::NotAUnit)
    }

    /// Reduce coefficients modulo `p^m'` into another spec with the same
    /// monomials (used by ring maps that fix the variables).
    pub(crate) fn recast(&self, target: RingSpec) -> Elem {
        let raw = self.terms.iter().map(|(e, &c)| (e.clone(), c % target.modulus())).collect();
        Self::normalize(target, raw)
    }

    /// Integer coefficient vector over the monomial basis of a finite ring.
    pub fn to_coefficient_vector(&self) -> Vec<u64> {
        let mut v = vec![0; self.spec.coefficient_rank()];
        for (e, &c) in &self.terms {
            v[self.spec.basis_index(e)] = c;
        }
        v
    }

    pub fn from_coefficient_vector(spec: RingSpec, v: &[u64]) -> Elem {
        let basis = spec.monomial_basis();
        let terms = basis
            .into_iter()
            .zip(v)
            .filter(|(_, &c)| c % spec.modulus() != 0)
            .map(|(e, &c)| (e, c % spec.modulus()))
            .collect();
        Elem { spec, terms }
    }
}

fn expand_patch_monomial(
    spec: &RingSpec,
    table: &[Vec<u64>],
    exps: &[u32],
    c: u64,
    acc: &mut HashMap<Vec<u32>, u64>,
) {
    let md = spec.modulus();
    let bound = spec.level_exponent();
    let mut partial: Vec<(Vec<u32>, u64)> = vec![(Vec::with_capacity(exps.len()), c)];
    for &e in exps {
        if e < bound {
            for (v, _) in partial.iter_mut() {
                v.push(e);
            }
            continue;
        }
        let uni = spec.patch_univariate_power(e as u64, table);
        let mut next = Vec::new();
        for (v, coef) in &partial {
            for (k, &u) in uni.iter().enumerate() {
                if u != 0 {
                    let mut w = v.clone();
                    w.push(k as u32);
                    next.push((w, coef * u % md));
                }
            }
        }
        partial = next;
    }
    for (v, coef) in partial {
        add_into(acc, v, coef, md);
    }
}

impl std::ops::Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl std::ops::Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl std::ops::Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        Elem::sub(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3t() -> RingSpec {
        make_patch_ring(3, 1, 1, 1).unwrap()
    }

    #[test]
    fn patch_relation_p3() {
        let r = f3t();
        assert_eq!(r.coefficient_rank(), 3);
        assert_eq!(r.monomial_basis(), vec![vec![0], vec![1], vec![2]]);
        let t = Elem::var(r, 0);
        assert!(t.pow(3).is_zero());
        assert!(Elem::monomial(r, vec![3], 1).normal_form().is_zero());
    }

    #[test]
    fn patch_relation_p2_m2() {
        // (1+T)^2 - 1 = T^2 + 2T over Z/4, so T^2 = -2T = 2T.
        let r = make_patch_ring(2, 2, 1, 1).unwrap();
        let t2 = Elem::monomial(r, vec![2], 1);
        assert_eq!(t2, Elem::monomial(r, vec![1], 2));
        assert_eq!(r.coefficient_rank(), 2);
    }

    #[test]
    fn q_zero_is_coefficient_field() {
        let r = make_patch_ring(3, 1, 1, 0).unwrap();
        assert_eq!(r.kind, RingKind::Coefficient);
        assert_eq!(r.coefficient_rank(), 1);
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(make_patch_ring(4, 1, 1, 1), Err(Error::NonPrime(4)));
        assert!(matches!(make_patch_ring(3, 0, 1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_patch_ring(3, 1, 0, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn invert_one_plus_t() {
        let r = f3t();
        let x = &Elem::one(r) + &Elem::var(r, 0);
        let y = x.invert().unwrap();
        let expected = Elem::from_terms(r, [(vec![0], 1), (vec![1], 2), (vec![2], 1)]);
        assert_eq!(y, expected);
        assert!((&x * &y).is_one());
        assert!(!Elem::var(r, 0).is_unit());
        assert_eq!(Elem::var(r, 0).invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn spec_mismatch() {
        let a = Elem::one(f3t());
        let b = Elem::one(make_patch_ring(3, 2, 1, 1).unwrap());
        assert!(matches!(a.try_add(&b), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn graded_inverse_only_for_constants() {
        let r = graded_ring(3, 2).unwrap();
        let c = Elem::constant(r, 2);
        assert_eq!(c.invert().unwrap(), Elem::constant(r, 2));
        let u = &c + &Elem::var(r, 0);
        assert!(u.is_unit());
        assert!(matches!(u.invert(), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let r = truncated_ring(3, 2, 2, 2).unwrap();
        let x = Elem::var(r, 0);
        let y = Elem::var(r, 1);
        assert!((&(&x * &y) * &x).is_zero());
        assert_eq!(r.monomial_basis().len(), 6);
    }
}
