//! JSON forms of complexes and knot complexes.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Arrow, Generator, TangleComplex, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::graph::{validate_graph, GraphDescription, LabeledGraph};
use crate::rational::{self, int, Rational};

/// File form of a tangle complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexData {
    pub graph: GraphDescription,
    pub generators: Vec<GeneratorData>,
    #[serde(default)]
    pub arrows: Vec<ArrowData>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub metadata: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorData {
    pub id: String,
    /// Grading per matching, keyed by canonical matching id.
    pub gr: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowData {
    pub from: String,
    pub to: String,
    pub exp: Vec<u32>,
}

/// File form of a knot Floer complex with Maslov and Alexander gradings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfkData {
    pub generators: Vec<CfkGenerator>,
    #[serde(default)]
    pub arrows: Vec<CfkArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct CfkGenerator {
    pub id: String,
    pub M: String,
    pub A: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfkArrow {
    pub from: String,
    pub to: String,
    pub z: u32,
    pub w: u32,
}

impl TangleComplex {
    pub fn from_data(data: &ComplexData) -> Result<TangleComplex> {
        let graph = validate_graph(&data.graph)?;
        let matchings = graph.enumerate_matchings();
        let index: HashMap<String, usize> =
            matchings.iter().enumerate().map(|(i, m)| (m.canonical_id(), i)).collect();
        let mut violations = Vec::new();

        let mut generators = Vec::with_capacity(data.generators.len());
        for g in &data.generators {
            let mut gradings: Vec<Option<Rational>> = vec![None; matchings.len()];
            for (key, value) in &g.gr {
                let Some(&k) = index.get(key) else {
                    violations.push(Violation::new(
                        "E_UNKNOWN_MATCHING",
                        format!("generator {} grades unknown matching {key}", g.id),
                    ));
                    continue;
                };
                match rational::parse(value) {
                    Ok(q) => gradings[k] = Some(q),
                    Err(e) => violations.push(Violation::new("E_PARSE", format!("generator {}: {e}", g.id))),
                }
            }
            for (k, q) in gradings.iter().enumerate() {
                // unparsable values were reported above
                if q.is_none() && !g.gr.contains_key(&matchings[k].canonical_id()) {
                    violations.push(Violation::new(
                        "E_MISSING_GRADING",
                        format!("generator {} has no grading for matching {}", g.id, matchings[k].canonical_id()),
                    ));
                }
            }
            generators.push(Generator {
                id: g.id.clone(),
                gradings: gradings.into_iter().map(|q| q.unwrap_or_else(|| int(0))).collect(),
            });
        }

        let ids: HashMap<&str, usize> =
            data.generators.iter().enumerate().rev().map(|(i, g)| (g.id.as_str(), i)).collect();
        let mut arrows = Vec::with_capacity(data.arrows.len());
        for a in &data.arrows {
            match (ids.get(a.from.as_str()), ids.get(a.to.as_str())) {
                (Some(&from), Some(&to)) => arrows.push(Arrow { from, to, exp: a.exp.clone() }),
                _ => violations.push(Violation::new(
                    "E_UNKNOWN_GENERATOR",
                    format!("arrow {} -> {} mentions an unknown generator", a.from, a.to),
                )),
            }
        }

        let c = TangleComplex::assemble(graph, generators, arrows, data.metadata.clone());
        if violations.is_empty() {
            violations = c.validate().violations;
        }
        if violations.is_empty() {
            Ok(c)
        } else {
            Err(Error::InvalidComplex(ValidationReport { violations }))
        }
    }

    pub fn to_data(&self) -> ComplexData {
        let keys: Vec<String> = self.matchings.iter().map(|m| m.canonical_id()).collect();
        ComplexData {
            graph: self.graph.description(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorData {
                    id: g.id.clone(),
                    gr: keys.iter().cloned().zip(g.gradings.iter().map(rational::format)).collect(),
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowData {
                    from: self.generators[a.from].id.clone(),
                    to: self.generators[a.to].id.clone(),
                    exp: a.exp.clone(),
                })
                .collect(),
            metadata: self.metadata.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<TangleComplex> {
        Self::from_data(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_data()).expect("complex serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TangleComplex> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Θ₂ complex of a knot: edge 1 is the z-strand and edge 2 the w-strand,
    /// with `gr_{e1} = M - 2A`, `gr_{e2} = M` and arrow exponents `(z, w)`.
    pub fn from_knot_cfk(k: &CfkData) -> Result<TangleComplex> {
        let mut ma = Vec::with_capacity(k.generators.len());
        for g in &k.generators {
            ma.push((rational::parse(&g.M)?, rational::parse(&g.A)?));
        }
        let ids: HashMap<&str, usize> =
            k.generators.iter().enumerate().rev().map(|(i, g)| (g.id.as_str(), i)).collect();
        let mut arrows = Vec::with_capacity(k.arrows.len());
        let mut unknown = Vec::new();
        for a in &k.arrows {
            let (Some(&from), Some(&to)) = (ids.get(a.from.as_str()), ids.get(a.to.as_str())) else {
                unknown.push(Violation::new(
                    "E_UNKNOWN_GENERATOR",
                    format!("arrow {} -> {} mentions an unknown generator", a.from, a.to),
                ));
                continue;
            };
            let drop = &ma[from].0 - &ma[to].0 + int(2 * a.w as i64);
            if drop != int(1) {
                return Err(Error::MaslovDrop(format!(
                    "{} -> {}: M(x) - M(y) + 2w = {drop}",
                    a.from, a.to
                )));
            }
            arrows.push(Arrow { from, to, exp: vec![a.z, a.w] });
        }
        if !unknown.is_empty() {
            return Err(Error::InvalidComplex(ValidationReport { violations: unknown }));
        }
        let generators = k
            .generators
            .iter()
            .zip(&ma)
            .map(|(g, (m, a))| Generator { id: g.id.clone(), gradings: vec![m - a * int(2), m.clone()] })
            .collect();
        TangleComplex::new(LabeledGraph::theta(2), generators, arrows, "imported knot complex")
    }

    pub fn load_cfk(path: impl AsRef<Path>) -> Result<TangleComplex> {
        let data: CfkData = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_knot_cfk(&data)
    }
}
