use super::{Elem, RingKind, RingSpec};
use crate::error::{Error, Result};

/// A ring homomorphism determined by the images of the variables.
///
/// Coefficients travel along the canonical residue map `Z/p^m -> Z/p^{m'}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    source: RingSpec,
    target: RingSpec,
    images: Vec<Elem>,
}

impl RingMap {
    /// Builds the map and checks that every defining relation of the source
    /// is sent to zero.
    pub fn new(source: RingSpec, target: RingSpec, images: Vec<Elem>) -> Result<Self> {
        if source.p != target.p || target.m > source.m {
            return Err(Error::IllDefinedMap(format!(
                "no coefficient map Z/{}^{} -> Z/{}^{}",
                source.p, source.m, target.p, target.m
            )));
        }
        if source.kind == RingKind::Graded && target.kind != RingKind::Graded {
            return Err(Error::IllDefinedMap("graded source needs a graded target".into()));
        }
        if images.len() != source.q {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.q
            )));
        }
        if let Some(bad) = images.iter().find(|e| *e.spec() != target) {
            return Err(Error::SpecMismatch(format!("image {bad} not in target ring")));
        }
        let map = RingMap { source, target, images };
        map.check_relations()?;
        Ok(map)
    }

    pub fn identity(spec: RingSpec) -> Self {
        let images = (0..spec.q).map(|i| Elem::var(spec, i)).collect();
        RingMap { source: spec, target: spec, images }
    }

    fn check_relations(&self) -> Result<()> {
        let one = Elem::one(self.target);
        match self.source.kind {
            RingKind::Patch => {
                let big_n = self.source.level_exponent() as u64;
                for (i, img) in self.images.iter().enumerate() {
                    let rel = (&one + img).pow(big_n).sub(&one);
                    if !rel.is_zero() {
                        return Err(Error::IllDefinedMap(format!(
                            "(1+T_{})^{big_n} - 1 maps to {rel}",
                            i + 1
                        )));
                    }
                }
            }
            RingKind::Truncated => {
                // Every monomial of degree D+1 in the images must vanish.
                let d = self.source.n;
                let mut frontier = vec![(one.clone(), 0usize)];
                for _ in 0..=d {
                    let mut next = Vec::new();
                    for (acc, start) in &frontier {
                        for (j, img) in self.images.iter().enumerate().skip(*start) {
                            next.push((acc * img, j));
                        }
                    }
                    frontier = next;
                }
                if let Some((bad, _)) = frontier.iter().find(|(e, _)| !e.is_zero()) {
                    return Err(Error::IllDefinedMap(format!(
                        "degree {} monomial in the images is {bad}",
                        d + 1
                    )));
                }
            }
            RingKind::Coefficient | RingKind::Graded => {}
        }
        Ok(())
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    pub fn target(&self) -> &RingSpec {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        if *x.spec() != self.source {
            return Err(Error::SpecMismatch(format!(
                "map source {:?}, element in {:?}",
                self.source,
                x.spec()
            )));
        }
        if self.is_variable_preserving() {
            return Ok(x.recast(self.target));
        }
        let md = self.target.modulus() as i64;
        let mut out = Elem::zero(self.target);
        let mut powers: Vec<Vec<Elem>> = vec![vec![Elem::one(self.target)]; self.source.q];
        for (exps, &c) in x.terms() {
            let mut term = Elem::constant(self.target, (c as i64) % md);
            for (i, &e) in exps.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &self.images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// True for maps sending `T_i -> T_i` between rings of the same shape,
    /// where application is a coefficient reduction followed by normal form.
    fn is_variable_preserving(&self) -> bool {
        self.source.q == self.target.q
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, img)| *img == Elem::var(self.target, i))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        if self.target != next.source {
            return Err(Error::SpecMismatch("maps do not compose".into()));
        }
        let images = self.images.iter().map(|e| next.apply(e)).collect::<Result<_>>()?;
        RingMap::new(self.source, next.target, images)
    }
}

/// The tower reduction `S_n^{(m)} -> S_{n'}^{(m')}`, `T_i -> T_i`.
pub fn reduction_map(source: RingSpec, target: RingSpec) -> Result<RingMap> {
    let kinds_ok = matches!(
        (source.kind, target.kind),
        (RingKind::Patch, RingKind::Patch)
            | (RingKind::Coefficient, RingKind::Coefficient)
            | (RingKind::Truncated, RingKind::Truncated)
    );
    if !kinds_ok || source.p != target.p || source.q != target.q {
        return Err(Error::NotAReduction(format!("{source:?} -> {target:?}")));
    }
    if target.n > source.n || target.m > source.m {
        return Err(Error::NotAReduction(format!(
            "target (n={}, m={}) exceeds source (n={}, m={})",
            target.n, target.m, source.n, source.m
        )));
    }
    let images = (0..target.q).map(|i| Elem::var(target, i)).collect();
    RingMap::new(source, target, images)
}

/// The augmentation onto the residue field `F_p`: every variable goes to 0.
pub fn residue_field_map(source: RingSpec) -> Result<RingMap> {
    let k = super::coefficient_ring(source.p, 1)?;
    if source.kind == RingKind::Graded {
        return Err(Error::UnsupportedRing("use the graded module tools for F_p[T]".into()));
    }
    RingMap::new(source, k, vec![Elem::zero(k); source.q])
}
