//! Buchberger's algorithm for submodules of `F_p[T_1..T_q]^n`.
//!
//! Vectors are lists of terms sorted strictly decreasing in the active
//! module order, so the leading term is always at index 0.

use std::cmp::Ordering;

use crate::rings::mod_inverse;

pub const MAX_VARS: usize = 6;

pub type Mono = [u16; MAX_VARS];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mono: Mono,
    pub coef: u32,
}

pub type Vector = Vec<Term>;

/// Monomial orders on `T^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoOrder {
    Lex,
    Grlex,
    Grevlex,
}

/// A module order: optional elimination block (components below `split`
/// dominate), then shifted degree, then the monomial order, then position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonoOrder,
    pub shifts: Vec<i32>,
    pub split: Option<u32>,
}

pub fn mono_degree(m: &Mono) -> i32 {
    m.iter().map(|&e| e as i32).sum()
}

pub fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i].max(b[i]);
    }
    out
}

pub fn mono_div(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i] - b[i];
    }
    out
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i] + b[i];
    }
    out
}

fn mono_cmp(order: MonoOrder, a: &Mono, b: &Mono) -> Ordering {
    match order {
        MonoOrder::Lex => a.cmp(b),
        MonoOrder::Grlex => mono_degree(a).cmp(&mono_degree(b)).then_with(|| a.cmp(b)),
        MonoOrder::Grevlex => mono_degree(a).cmp(&mono_degree(b)).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }),
    }
}

impl ModuleOrder {
    pub fn graded(mono: MonoOrder, shifts: Vec<i32>) -> Self {
        ModuleOrder { mono, shifts, split: None }
    }

    fn shift(&self, c: u32) -> i32 {
        self.shifts.get(c as usize).copied().unwrap_or(0)
    }

    pub fn cmp(&self, a: (u32, &Mono), b: (u32, &Mono)) -> Ordering {
        if let Some(s) = self.split {
            let ord = (a.0 < s).cmp(&(b.0 < s));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        if self.mono != MonoOrder::Lex {
            let da = mono_degree(a.1) + self.shift(a.0);
            let db = mono_degree(b.1) + self.shift(b.0);
            if da != db {
                return da.cmp(&db);
            }
        }
        mono_cmp(self.mono, a.1, b.1).then_with(|| b.0.cmp(&a.0))
    }

    fn term_cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp((a.comp, &a.mono), (b.comp, &b.mono))
    }

    pub fn sort(&self, v: &mut Vector) {
        v.sort_by(|a, b| self.term_cmp(b, a));
    }
}

/// Arithmetic context.
#[derive(Debug, Clone)]
pub struct Engine {
    pub p: u32,
    pub order: ModuleOrder,
}

impl Engine {
    pub fn new(p: u64, order: ModuleOrder) -> Self {
        Engine { p: p as u32, order }
    }

    fn inv(&self, c: u32) -> u32 {
        mod_inverse(c as u64, self.p as u64).expect("nonzero in a field") as u32
    }

    /// Canonical form: sorted, like terms merged, zeros dropped.
    pub fn normalize(&self, mut v: Vector) -> Vector {
        self.order.sort(&mut v);
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coef = (last.coef + t.coef) % self.p;
                    if last.coef == 0 {
                        out.pop();
                    }
                }
                _ => {
                    if t.coef % self.p != 0 {
                        out.push(Term { coef: t.coef % self.p, ..t });
                    }
                }
            }
        }
        out
    }

    /// `f - c * T^m * g`.
    pub fn sub_mul(&self, f: &[Term], c: u32, m: &Mono, g: &[Term]) -> Vector {
        let p = self.p as u64;
        let nc = (p - c as u64 % p) % p;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() || j < g.len() {
            let gt = (j < g.len()).then(|| Term {
                comp: g[j].comp,
                mono: mono_mul(&g[j].mono, m),
                coef: (nc * g[j].coef as u64 % p) as u32,
            });
            let ord = match (i < f.len(), &gt) {
                (true, Some(t)) => self.order.term_cmp(&f[i], t),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(f[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let t = gt.unwrap();
                    if t.coef != 0 {
                        out.push(t);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (f[i].coef + gt.unwrap().coef) % self.p;
                    if c != 0 {
                        out.push(Term { coef: c, ..f[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn scale(&self, v: &[Term], c: u32) -> Vector {
        let p = self.p as u64;
        v.iter()
            .map(|t| Term { coef: (t.coef as u64 * c as u64 % p) as u32, ..*t })
            .filter(|t| t.coef != 0)
            .collect()
    }

    #[cfg(test)]
    pub fn add(&self, f: &[Term], g: &[Term]) -> Vector {
        self.sub_mul(f, self.p - 1, &[0; MAX_VARS], g)
    }

    pub fn mul_mono(&self, v: &[Term], c: u32, m: &Mono) -> Vector {
        self.sub_mul(&[], (self.p - c % self.p) % self.p, m, v)
    }

    pub fn monic(&self, v: Vector) -> Vector {
        match v.first() {
            Some(t) if t.coef != 1 => {
                let inv = self.inv(t.coef);
                self.scale(&v, inv)
            }
            _ => v,
        }
    }

    fn find_reducer<'a>(&self, t: &Term, basis: &'a [Vector]) -> Option<&'a Vector> {
        basis.iter().find(|g| g[0].comp == t.comp && mono_divides(&g[0].mono, &t.mono))
    }

    /// Full reduction against monic `basis`.
    pub fn reduce(&self, f: &[Term], basis: &[Vector]) -> Vector {
        let mut f = f.to_vec();
        let mut rem = Vec::new();
        let mut start = 0;
        while start < f.len() {
            let t = f[start];
            match self.find_reducer(&t, basis) {
                Some(g) => {
                    let m = mono_div(&t.mono, &g[0].mono);
                    let tail = self.sub_mul(&f[start..], t.coef, &m, g);
                    f.truncate(start);
                    f.extend(tail);
                }
                None => {
                    rem.push(t);
                    start += 1;
                }
            }
        }
        rem
    }

    /// Reduced Groebner basis of the span of `gens`.
    pub fn groebner(&self, gens: &[Vector]) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut queue: Vec<Vector> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        // Popped smallest first.
        queue.sort_by(|a, b| self.order.term_cmp(&b[0], &a[0]));
        let single_comp = gens.iter().flatten().all(|t| t.comp == 0);
        loop {
            let next = if let Some(g) = queue.pop() {
                Some(g)
            } else {
                // Pick the pair with the smallest lcm.
                if pairs.is_empty() {
                    break;
                }
                let (idx, _) = pairs
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        let la = self.pair_lcm(&basis, **a);
                        let lb = self.pair_lcm(&basis, **b);
                        self.order.cmp((la.0, &la.1), (lb.0, &lb.1))
                    })
                    .unwrap();
                let (i, j) = pairs.swap_remove(idx);
                Some(self.spoly(&basis[i], &basis[j]))
            };
            let Some(g) = next else { break };
            let h = self.reduce(&g, &basis);
            if h.is_empty() {
                continue;
            }
            let h = self.monic(h);
            let k = basis.len();
            let lk = h[0];
            // Chain criterion.
            pairs.retain(|&(i, j)| {
                let (ci, li) = (basis[i][0].comp, basis[i][0].mono);
                let lj = basis[j][0].mono;
                if ci != lk.comp {
                    return true;
                }
                let lij = mono_lcm(&li, &lj);
                !(mono_divides(&lk.mono, &lij)
                    && mono_lcm(&li, &lk.mono) != lij
                    && mono_lcm(&lj, &lk.mono) != lij)
            });
            for (i, b) in basis.iter().enumerate() {
                if b[0].comp != lk.comp {
                    continue;
                }
                let coprime = b[0].mono.iter().zip(&lk.mono).all(|(x, y)| *x == 0 || *y == 0);
                if single_comp && coprime {
                    continue;
                }
                pairs.push((i, k));
            }
            basis.push(h);
        }
        self.interreduce(basis)
    }

    fn pair_lcm(&self, basis: &[Vector], (i, j): (usize, usize)) -> (u32, Mono) {
        (basis[i][0].comp, mono_lcm(&basis[i][0].mono, &basis[j][0].mono))
    }

    fn spoly(&self, f: &Vector, g: &Vector) -> Vector {
        let l = mono_lcm(&f[0].mono, &g[0].mono);
        let a = self.mul_mono(f, 1, &mono_div(&l, &f[0].mono));
        self.sub_mul(&a, 1, &mono_div(&l, &g[0].mono), g)
    }

    /// Minimal then reduced basis.
    fn interreduce(&self, mut basis: Vec<Vector>) -> Vec<Vector> {
        basis.sort_by(|a, b| self.order.term_cmp(&a[0], &b[0]));
        let mut minimal: Vec<Vector> = Vec::new();
        for g in basis {
            let redundant = minimal
                .iter()
                .any(|h| h[0].comp == g[0].comp && mono_divides(&h[0].mono, &g[0].mono));
            if !redundant {
                minimal.push(g);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Vector> =
                minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            let head = minimal[i][0];
            let tail = self.reduce(&minimal[i][1..], &others);
            let mut v = vec![head];
            v.extend(tail);
            out.push(v);
        }
        out.sort_by(|a, b| self.order.term_cmp(&b[0], &a[0]));
        out
    }

    pub fn is_member(&self, f: &[Term], gb: &[Vector]) -> bool {
        self.reduce(f, gb).is_empty()
    }
}
