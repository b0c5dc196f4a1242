//! Display names for indecomposable modules and derived shift orbits.

use dhom_core::derived::{DerivedIndec, Origin, ProjComplex};
use dhom_core::modcat::Representation;
use dhom_core::quivalg::AlgRef;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NameMapDoc {
    #[serde(default)]
    pub modules: Vec<ModuleName>,
    #[serde(default)]
    pub complexes: Vec<ComplexName>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleName {
    pub name: String,
    pub dims: Vec<usize>,
}

/// A minimal complex of projectives, terms listed from lowest to highest degree
/// as the vertices of their indecomposable summands.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexName {
    pub name: String,
    pub terms: Vec<Vec<String>>,
}

impl NameMapDoc {
    pub fn from_json(text: &str) -> Result<NameMapDoc, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            location: format!("name map, line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    /// Name of a module, matched by dimension vector. Falls back to `M<i+1>`.
    pub fn module_name(&self, i: usize, m: &Representation) -> String {
        let dims = m.dim_vector();
        let mut hits = self.modules.iter().filter(|n| n.dims == dims);
        match (hits.next(), hits.next()) {
            (Some(n), None) => n.name.clone(),
            _ => format!("M{}", i + 1),
        }
    }

    fn complex_name(&self, alg: &AlgRef, c: &ProjComplex) -> Option<String> {
        let terms = complex_terms(alg, c);
        self.complexes.iter().find(|n| n.terms == terms).map(|n| n.name.clone())
    }

    /// One name per orbit; unnamed search results become `X1, X2, ...`.
    pub fn orbit_names(&self, alg: &AlgRef, modules: &[String], orbits: &[DerivedIndec]) -> Vec<String> {
        let mut fresh = 0;
        orbits
            .iter()
            .map(|o| match o.origin {
                Origin::Module(i) => modules[i].clone(),
                Origin::Search => self.complex_name(alg, &o.complex).unwrap_or_else(|| {
                    fresh += 1;
                    format!("X{fresh}")
                }),
            })
            .collect()
    }
}

/// Terms of `c` from its lowest degree up, as vertex ids.
pub fn complex_terms(alg: &AlgRef, c: &ProjComplex) -> Vec<Vec<String>> {
    if c.is_zero() {
        return Vec::new();
    }
    (c.lo..=c.hi()).map(|p| c.term(p).iter().map(|&v| alg.quiver.vertices[v].clone()).collect()).collect()
}
