use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use super::MorphError;
use crate::exact::{HalfInt, Rational};
use crate::pbw::{Monomial, NCPoly, Presentation};

/// An algebra map determined by generator images.
///
/// A localized source generator `L` must map to `c·L'` with `L'` the target's
/// localized generator (`c = 1` when half-integer powers occur).
#[derive(Clone, Debug)]
pub struct GenMorphism {
    pub name: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<NCPoly>,
    inverse_images: Option<Vec<NCPoly>>,
    /// Number of source relations whose defect was checked to vanish.
    relations_checked: usize,
}

/// One failing relation: `φ(g_j)φ(g_i) − φ(g_i)φ(g_j) − φ(R_ji)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationDefect {
    pub left: String,
    pub right: String,
    pub defect: String,
}

/// Generator images as display strings, in source order.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismText {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: BTreeMap<String, String>,
}

/// Certifies the relations of `source` on the proposed images.
pub fn extend_morphism(
    name: impl Into<String>,
    images: Vec<NCPoly>,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
) -> Result<GenMorphism, MorphError> {
    if images.len() != source.ngens() {
        return Err(MorphError::WrongImageCount { expected: source.ngens(), found: images.len() });
    }
    for img in &images {
        target.check_poly(img)?;
    }
    let mut m = GenMorphism {
        name: name.into(),
        source: source.clone(),
        target: target.clone(),
        images,
        inverse_images: None,
        relations_checked: 0,
    };
    if let Some(last) = source.ngens().checked_sub(1).filter(|_| source.localized().is_some()) {
        m.localized_scalar(last)?;
    }
    let n = source.ngens();
    let mut failures = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let lhs = target.commutator(&m.images[j], &m.images[i])?;
            let rhs = m.apply(&source.rule(j, i))?;
            let defect = &lhs - &rhs;
            if !defect.is_zero() {
                failures.push(RelationDefect {
                    left: source.names()[j].clone(),
                    right: source.names()[i].clone(),
                    defect: target.format(&defect),
                });
            }
        }
    }
    if !failures.is_empty() {
        return Err(MorphError::RelationViolated { morphism: m.name, failures });
    }
    m.relations_checked = n * n.saturating_sub(1) / 2;
    Ok(m)
}

impl GenMorphism {
    pub fn identity(p: Arc<Presentation>) -> GenMorphism {
        let images = (0..p.ngens()).map(|i| p.gen(i)).collect::<Vec<_>>();
        GenMorphism {
            name: "id".into(),
            source: p.clone(),
            target: p,
            inverse_images: Some(images.clone()),
            images,
            relations_checked: 0,
        }
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[NCPoly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &NCPoly {
        &self.images[i]
    }

    pub fn relations_checked(&self) -> usize {
        self.relations_checked
    }

    pub fn inverse_images(&self) -> Option<&[NCPoly]> {
        self.inverse_images.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_endomorphism(&self) -> bool {
        same_presentation(&self.source, &self.target)
    }

    /// The scalar `c` in `L ↦ c·L'`.
    fn localized_scalar(&self, last: usize) -> Result<Rational, MorphError> {
        let img = &self.images[last];
        let bad = || MorphError::LocalizedImage { generator: self.source.names()[last].clone() };
        let tl = self.target.ngens().checked_sub(1).filter(|_| self.target.localized().is_some()).ok_or_else(bad)?;
        let (m, c) = img.leading().ok_or_else(bad)?;
        if img.len() != 1 || *m != Monomial::generator(self.target.ngens(), tl) {
            return Err(bad());
        }
        Ok(c.clone())
    }

    /// `φ(p)`.
    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly, MorphError> {
        let mut out = NCPoly::zero();
        for (m, c) in p.terms() {
            let mut acc = self.target.one();
            for (i, e) in m.exponents().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let factor = self.power(i, e)?;
                acc = self.target.mul(&acc, &factor)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    fn power(&self, i: usize, e: HalfInt) -> Result<NCPoly, MorphError> {
        if let Some(k) = e.to_natural() {
            return Ok(self.target.pow(&self.images[i], k as u32)?);
        }
        // only a localized final generator carries other exponents
        let c = self.localized_scalar(i)?;
        let tl = self.target.ngens() - 1;
        let coef = if e.is_integer() {
            let k = e.to_int().expect("integer");
            let base = if k < 0 { c.recip() } else { c };
            num_traits::pow(base, k.unsigned_abs() as usize)
        } else if c.is_one() {
            Rational::one()
        } else {
            return Err(MorphError::LocalizedImage { generator: self.source.names()[i].clone() });
        };
        Ok(self.target.gen_pow(tl, e)?.scaled(&coef))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GenMorphism) -> Result<GenMorphism, MorphError> {
        if !same_presentation(&self.target, &other.source) {
            return Err(MorphError::NotComposable { first: self.name.clone(), second: other.name.clone() });
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(GenMorphism {
            name: format!("{}∘{}", other.name, self.name),
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            inverse_images: None,
            relations_checked: self.relations_checked,
        })
    }

    /// Attaches inverse images after checking they define a morphism and
    /// that both compositions are the identity on generators.
    pub fn with_inverse(mut self, inverse_images: Vec<NCPoly>) -> Result<GenMorphism, MorphError> {
        let inv = extend_morphism(
            format!("{}^-1", self.name),
            inverse_images.clone(),
            self.target.clone(),
            self.source.clone(),
        )?;
        if !self.then(&inv)?.is_identity() || !inv.then(&self)?.is_identity() {
            return Err(MorphError::NotInverse { morphism: self.name.clone() });
        }
        self.inverse_images = Some(inverse_images);
        Ok(self)
    }

    /// The certified inverse as a morphism.
    pub fn inverse(&self) -> Option<GenMorphism> {
        let imgs = self.inverse_images.clone()?;
        Some(GenMorphism {
            name: format!("{}^-1", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            images: imgs,
            inverse_images: Some(self.images.clone()),
            relations_checked: self.relations_checked,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && self.images.iter().enumerate().all(|(i, p)| *p == self.source.gen(i))
    }

    /// Same generator images (both must be endomorphisms of the same algebra).
    pub fn same_map(&self, other: &GenMorphism) -> bool {
        same_presentation(&self.source, &other.source)
            && same_presentation(&self.target, &other.target)
            && self.images == other.images
    }

    pub fn to_text(&self) -> MorphismText {
        MorphismText {
            name: self.name.clone(),
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
            images: self
                .source
                .names()
                .iter()
                .zip(&self.images)
                .map(|(g, p)| (g.clone(), self.target.format(p)))
                .collect(),
        }
    }
}

pub fn same_presentation(a: &Presentation, b: &Presentation) -> bool {
    std::ptr::eq(a, b) || (a.names() == b.names() && a.localized() == b.localized() && a.name() == b.name())
}
