//! JSON algebra specifications.

use std::collections::HashMap;

use dhom_core::exactfield::Scalar;
use dhom_core::quivalg::{AlgebraSpec, Quiver, Relation};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecDoc {
    /// Only `"Q"` is supported.
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    /// Each relation is a linear combination of paths, written left to right.
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    #[serde(default = "Coeff::one")]
    pub coeff: Coeff,
    pub path: Vec<String>,
}

/// An integer or a rational written as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn one() -> Coeff {
        Coeff::Int(1)
    }

    fn to_scalar(&self) -> Option<Scalar> {
        match self {
            Coeff::Int(n) => Some(dhom_core::exactfield::int(*n)),
            Coeff::Text(s) => s.trim().parse().ok(),
        }
    }
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Parse { location: location.into(), message: message.into() }
}

impl AlgebraSpecDoc {
    pub fn from_json(text: &str) -> Result<AlgebraSpecDoc, CliError> {
        serde_json::from_str(text)
            .map_err(|e| parse_error(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents serialize")
    }

    /// Checks field, endpoints and relation paths, naming the offending arrow.
    pub fn to_spec(&self) -> Result<AlgebraSpec, CliError> {
        if self.field != "Q" {
            return Err(parse_error("field", format!("unsupported field '{}', expected \"Q\"", self.field)));
        }
        if self.d == 0 {
            return Err(parse_error("d", "d must be at least 1"));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            for (end, v) in [("from", &a.from), ("to", &a.to)] {
                if !self.vertices.contains(v) {
                    return Err(parse_error(
                        format!("arrows[{i}].{end}"),
                        format!("arrow '{}' uses unknown vertex '{v}'", a.name),
                    ));
                }
            }
        }
        let by_name: HashMap<&str, usize> = self.arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let mut relations = Vec::with_capacity(self.relations.len());
        for (r, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(parse_error(format!("relations[{r}]"), "empty relation"));
            }
            let mut terms = Vec::with_capacity(rel.len());
            for (t, term) in rel.iter().enumerate() {
                let here = format!("relations[{r}][{t}]");
                let c = term
                    .coeff
                    .to_scalar()
                    .ok_or_else(|| parse_error(format!("{here}.coeff"), "coefficient is not a rational number"))?;
                if term.path.is_empty() {
                    return Err(parse_error(format!("{here}.path"), "empty path"));
                }
                let mut path = Vec::with_capacity(term.path.len());
                for (k, name) in term.path.iter().enumerate() {
                    let &a = by_name
                        .get(name.as_str())
                        .ok_or_else(|| parse_error(format!("{here}.path[{k}]"), format!("unknown arrow '{name}'")))?;
                    if let Some(&prev) = path.last() {
                        let p: &ArrowDoc = &self.arrows[prev];
                        if p.to != self.arrows[a].from {
                            return Err(parse_error(
                                format!("{here}.path[{k}]"),
                                format!("arrow '{name}' does not start where '{}' ends", p.name),
                            ));
                        }
                    }
                    path.push(a);
                }
                terms.push((c, path));
            }
            relations.push(Relation { terms });
        }
        let arrows: Vec<(String, String, String)> =
            self.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
        let quiver = Quiver::new(self.vertices.clone(), &arrows).map_err(|e| parse_error("arrows", e.to_string()))?;
        Ok(AlgebraSpec { name: self.name.clone(), quiver, relations, d: self.d })
    }

    /// `k A_n / rad^l` on the quiver `n -> n-1 -> ... -> 1` with arrows `a_i : i+1 -> i`.
    pub fn nakayama(n: usize, l: usize, d: usize) -> AlgebraSpecDoc {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| ArrowDoc { name: format!("a{i}"), from: (i + 1).to_string(), to: i.to_string() })
            .collect();
        let relations = if l == 0 {
            Vec::new()
        } else {
            ((l + 1)..=n)
                .map(|s| {
                    let path = (0..l).map(|k| format!("a{}", s - 1 - k)).collect();
                    vec![TermDoc { coeff: Coeff::one(), path }]
                })
                .collect()
        };
        AlgebraSpecDoc { field: "Q".into(), name: Some(format!("nakayama-{n}-{l}-{d}")), vertices, arrows, relations, d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nakayama_doc_matches_core_generator() {
        let doc = AlgebraSpecDoc::nakayama(4, 2, 3);
        let spec = doc.to_spec().unwrap();
        let core = dhom_core::quivalg::nakayama_spec(4, 2, 3);
        assert_eq!(spec.relations, core.relations);
        assert_eq!(spec.quiver.vertices, core.quiver.vertices);
    }

    #[test]
    fn rational_coefficients_parse() {
        let c = Coeff::Text("-3/4".into()).to_scalar().unwrap();
        assert_eq!(c * dhom_core::exactfield::int(4), dhom_core::exactfield::int(-3));
        assert!(Coeff::Text("x".into()).to_scalar().is_none());
    }

    #[test]
    fn non_composable_path_names_both_arrows() {
        let mut doc = AlgebraSpecDoc::nakayama(3, 2, 2);
        doc.relations = vec![vec![TermDoc { coeff: Coeff::one(), path: vec!["a1".into(), "a2".into()] }]];
        let err = doc.to_spec().unwrap_err().to_string();
        assert!(err.contains("'a2'") && err.contains("'a1'"), "{err}");
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip(n in 1usize..7, l in 0usize..7, d in 1usize..4) {
            let doc = AlgebraSpecDoc::nakayama(n, l, d);
            let back = AlgebraSpecDoc::from_json(&doc.to_json()).unwrap();
            proptest::prop_assert_eq!(&back, &doc);
            proptest::prop_assert!(back.to_spec().is_ok());
        }
    }
}
