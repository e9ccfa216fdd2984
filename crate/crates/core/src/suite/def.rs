use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebras::{build_enveloping, build_sl2, build_weyl, build_weyl_localized, sln_constants, AlgError, WeylConvention};
use crate::pbw::{format_poly, parse_normal_form, Lattice, Monomial, NCPoly, PbwError, Presentation};
use crate::whittaker::{derive_walgebra, derived_presentation, WhittakerError};

#[derive(Debug, Error)]
pub enum DefError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown generator `{name}` in {field}")]
    UnknownGenerator { name: String, field: String },
    #[error("relation {left}·{right} is not filtration-lowering (degree {degree}, bound {bound})")]
    NonLoweringRelation { left: String, right: String, degree: String, bound: String },
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
}

impl DefError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        DefError::Parse { location: format!("field `{}`", field.into()), message: message.into() }
    }

    fn from_pbw(e: PbwError, field: &str) -> Self {
        match e {
            PbwError::UnknownGenerator(name) => DefError::UnknownGenerator { name, field: field.to_string() },
            PbwError::Parse(message) => DefError::field(field, message),
            PbwError::NonLoweringRelation { left, right, degree, bound } => {
                DefError::NonLoweringRelation { left, right, degree, bound }
            }
            other => DefError::Pbw(other),
        }
    }
}

/// An explicit presentation: ordered generators and rewrite rules
/// `pair[0]·pair[1] = normal` where `pair[0]` comes later in the order.
/// Pairs that are not listed commute.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<RelationDef>,
    /// Exponent lattice of the last generator when it is inverted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localized_final: Option<Lattice>,
    /// Filtration weights; all 1 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDef {
    pub pair: [String; 2],
    pub normal: String,
}

/// A named library constructor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constructor", rename_all = "snake_case")]
pub enum ConstructorDef {
    Weyl {
        d: usize,
        #[serde(default)]
        convention: Option<WeylConvention>,
        #[serde(default)]
        localized: Option<Lattice>,
    },
    Sl2,
    Sln {
        n: usize,
    },
    /// The minimal W-algebra derived from the Whittaker model.
    Walgebra {
        algebra: String,
    },
}

impl ConstructorDef {
    pub fn build(&self) -> Result<Presentation, DefError> {
        match self {
            ConstructorDef::Weyl { d, convention, localized } => {
                if *d == 0 {
                    return Err(DefError::field("d", "need at least one pair"));
                }
                let c = convention.unwrap_or(WeylConvention::PaperWd);
                Ok(match localized {
                    None => build_weyl(*d, c),
                    Some(l) => build_weyl_localized(*d, c, *l)?,
                })
            }
            ConstructorDef::Sl2 => Ok(build_sl2()),
            ConstructorDef::Sln { n } => {
                if !(2..=5).contains(n) {
                    return Err(DefError::field("n", "supported range is 2..=5"));
                }
                let sc = sln_constants(*n);
                let order: Vec<usize> = (0..sc.dim()).collect();
                Ok(build_enveloping(&sc, &order)?.with_name(format!("U(sl{n})")))
            }
            ConstructorDef::Walgebra { algebra } => {
                let d = derive_walgebra(algebra, 4)?;
                Ok(derived_presentation(&d, 3)?.presentation)
            }
        }
    }
}

impl AlgebraDef {
    pub fn build(&self) -> Result<Presentation, DefError> {
        let names = &self.generators;
        let n = names.len();
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; n]);
        let index = |g: &str, field: &str| {
            names
                .iter()
                .position(|x| x == g)
                .ok_or_else(|| DefError::UnknownGenerator { name: g.to_string(), field: field.to_string() })
        };
        let mut rules: Vec<((usize, usize), NCPoly)> = Vec::new();
        for (k, r) in self.relations.iter().enumerate() {
            let field = format!("relations[{k}].pair");
            let (j, i) = (index(&r.pair[0], &field)?, index(&r.pair[1], &field)?);
            if j <= i {
                return Err(DefError::field(field, format!("`{}` must come after `{}` in the generator order", r.pair[0], r.pair[1])));
            }
            if rules.iter().any(|(p, _)| *p == (j, i)) {
                return Err(DefError::field(field, "pair listed twice"));
            }
            let nfield = format!("relations[{k}].normal");
            let normal = parse_normal_form(names, &r.normal).map_err(|e| DefError::from_pbw(e, &nfield))?;
            let mut exps = vec![0u32; n];
            exps[i] += 1;
            exps[j] += 1;
            let rest = &normal - &NCPoly::monomial(Monomial::from_naturals(&exps));
            rules.push(((j, i), rest));
        }
        Presentation::new(self.name.clone(), names.clone(), weights, rules, self.localized_final)
            .map_err(|e| DefError::from_pbw(e, "relations"))
    }
}

/// Either document form, as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum DefDocument {
    Explicit(AlgebraDef),
    Constructor(ConstructorDef),
}

impl DefDocument {
    pub fn parse(text: &str) -> Result<Self, DefError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DefError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, DefError> {
        let shape = |e: serde_json::Error| DefError::Parse { location: "document".into(), message: e.to_string() };
        if value.get("constructor").is_some() {
            Ok(DefDocument::Constructor(serde_json::from_value(value).map_err(shape)?))
        } else {
            Ok(DefDocument::Explicit(serde_json::from_value(value).map_err(shape)?))
        }
    }

    pub fn build(&self) -> Result<Presentation, DefError> {
        match self {
            DefDocument::Explicit(d) => d.build(),
            DefDocument::Constructor(c) => c.build(),
        }
    }
}

/// Parses a JSON definition document into a validated presentation.
pub fn parse_algebra_def(text: &str) -> Result<Presentation, DefError> {
    DefDocument::parse(text)?.build()
}

/// The explicit document of a presentation; rules are listed by pair in
/// generator order and commuting pairs are omitted.
pub fn presentation_to_def(p: &Presentation) -> AlgebraDef {
    let names = p.names();
    let mut pairs: Vec<(usize, usize)> = p.rules().map(|(k, _)| k).collect();
    pairs.sort_unstable_by_key(|&(j, i)| (i, j));
    let relations = pairs
        .into_iter()
        .map(|(j, i)| {
            let mut exps = vec![0u32; names.len()];
            exps[i] += 1;
            exps[j] += 1;
            let normal = &NCPoly::monomial(Monomial::from_naturals(&exps)) + &p.rule(j, i);
            RelationDef { pair: [names[j].clone(), names[i].clone()], normal: format_poly(names, &normal) }
        })
        .collect();
    let weights = p.weights().iter().any(|&w| w != 1).then(|| p.weights().to_vec());
    AlgebraDef {
        name: p.name().to_string(),
        generators: names.to_vec(),
        relations,
        localized_final: p.localized(),
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::same_presentation;

    const W1: &str = r#"{"name":"W1","generators":["z","d"],"relations":[{"pair":["d","z"],"normal":"z*d - 1"}]}"#;

    #[test]
    fn weyl_document() {
        let p = parse_algebra_def(W1).unwrap();
        let c = p.commutator(&p.gen(0), &p.gen(1)).unwrap();
        assert_eq!(p.format(&c), "1");
        let reference = build_weyl(1, WeylConvention::PaperWd).with_names(vec!["z".into(), "d".into()]).unwrap();
        assert!(same_presentation(&p, &reference));
    }

    #[test]
    fn section_five_sign() {
        let p = parse_algebra_def(&W1.replace("z*d - 1", "z*d + 1")).unwrap();
        let reference = build_weyl(1, WeylConvention::SectionFiveWx).with_names(vec!["z".into(), "d".into()]).unwrap();
        assert!(same_presentation(&p, &reference));
    }

    #[test]
    fn errors() {
        let bad = W1.replace(r#"["d","z"]"#, r#"["q","z"]"#);
        assert!(matches!(parse_algebra_def(&bad), Err(DefError::UnknownGenerator { name, .. }) if name == "q"));
        let bad = W1.replace("z*d - 1", "z*d - q");
        assert!(matches!(parse_algebra_def(&bad), Err(DefError::UnknownGenerator { name, .. }) if name == "q"));
        let bad = W1.replace("z*d - 1", "z*d + z^2");
        assert!(matches!(parse_algebra_def(&bad), Err(DefError::NonLoweringRelation { .. })));
        match parse_algebra_def("{\"name\": \"x\",\n \"generators\": [") {
            Err(DefError::Parse { location, .. }) => assert!(location.starts_with("line 2"), "{location}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra_def(r#"{"name":"x"}"#), Err(DefError::Parse { message, .. }) if message.contains("generators")));
    }

    #[test]
    fn round_trip() {
        for doc in [
            W1.to_string(),
            r#"{"constructor":"sl2"}"#.to_string(),
            r#"{"constructor":"weyl","d":2,"localized":"half"}"#.to_string(),
            r#"{"constructor":"sln","n":3}"#.to_string(),
        ] {
            let p = parse_algebra_def(&doc).unwrap();
            let def = presentation_to_def(&p);
            let text = serde_json::to_string(&def).unwrap();
            let q = parse_algebra_def(&text).unwrap();
            assert!(same_presentation(&p, &q), "{doc}");
            assert_eq!(presentation_to_def(&q), def);
        }
    }
}
