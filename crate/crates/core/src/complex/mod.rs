//! Multi-graded tangle complexes over the strand polynomial ring.
//!
//! A complex has one rational grading per perfect matching of its graph and
//! F₂ arrows labeled by exponent vectors in the strand variables `u_1..u_κ`.

mod io;
mod ops;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use io::{ArrowData, CfkArrow, CfkData, CfkGenerator, ComplexData, GeneratorData};
pub use ops::{diagonal_link_weights, glue, mirror, permute_edges, stabilize, tensor};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Matching};
use crate::rational::{int, Rational};
use crate::ring::EdgeMonomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    /// One grading per matching, aligned with [`TangleComplex::matchings`].
    pub gradings: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub exp: EdgeMonomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

impl Violation {
    pub fn code(&self) -> &'static str {
        self.code
    }

    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Violation { code, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// Every violated invariant of a complex; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleComplex {
    graph: LabeledGraph,
    matchings: Vec<Matching>,
    generators: Vec<Generator>,
    arrows: Vec<Arrow>,
    pub metadata: String,
}

impl TangleComplex {
    /// Assembles and validates a complex. Arrows are sorted and generator
    /// gradings must follow the graph's matching order.
    pub fn new(
        graph: LabeledGraph,
        generators: Vec<Generator>,
        arrows: Vec<Arrow>,
        metadata: impl Into<String>,
    ) -> Result<TangleComplex> {
        let c = Self::assemble(graph, generators, arrows, metadata);
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidComplex(report))
        }
    }

    pub(crate) fn assemble(
        graph: LabeledGraph,
        generators: Vec<Generator>,
        mut arrows: Vec<Arrow>,
        metadata: impl Into<String>,
    ) -> TangleComplex {
        let matchings = graph.enumerate_matchings();
        arrows.sort();
        TangleComplex { graph, matchings, generators, arrows, metadata: metadata.into() }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Number of boundary-sphere pairs, `|v_+|`.
    pub fn boundary_pairs(&self) -> usize {
        self.graph.boundary_pairs()
    }

    /// Expected free rank of t-modified homology, `2^{n-1}`.
    pub fn expected_rank(&self) -> usize {
        1usize << (self.boundary_pairs() - 1)
    }

    pub fn is_theta(&self) -> bool {
        self.graph.is_theta()
    }

    pub fn matching_index(&self, m: &Matching) -> Option<usize> {
        self.matchings.binary_search(m).ok()
    }

    pub fn generator_index(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    /// Grading of generator `x` at matching index `m`.
    pub fn grading(&self, x: usize, m: usize) -> &Rational {
        &self.generators[x].gradings[m]
    }

    /// Checks the coloring ideal, the grading relation on every arrow and
    /// matching, and `∂² = 0`.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        if !self.graph.coloring_ideal_is_trivial() {
            v.push(Violation::new("E_UNSUPPORTED_IDEAL", "the graph's coloring ideal is nontrivial"));
        }
        if self.matchings.is_empty() {
            v.push(Violation::new("E_EMPTY_POLYTOPE", "the graph has no perfect matching"));
        }
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if ids.insert(&g.id, i).is_some() {
                v.push(Violation::new("E_DUPLICATE_GENERATOR", format!("generator {} listed twice", g.id)));
            }
            if g.gradings.len() != self.matchings.len() {
                v.push(Violation::new(
                    "E_MISSING_GRADING",
                    format!("generator {} has {} gradings for {} matchings", g.id, g.gradings.len(), self.matchings.len()),
                ));
            }
        }
        let kappa = self.edge_count();
        let n = self.generators.len();
        let mut graded_ok = true;
        for a in &self.arrows {
            if a.from >= n || a.to >= n {
                v.push(Violation::new("E_UNKNOWN_GENERATOR", format!("arrow {} -> {}", a.from, a.to)));
                graded_ok = false;
                continue;
            }
            let label = format!("{} -> {}", self.generators[a.from].id, self.generators[a.to].id);
            if a.exp.len() != kappa {
                v.push(Violation::new(
                    "E_EXPONENT_LENGTH",
                    format!("arrow {label} has {} exponents for {kappa} edges", a.exp.len()),
                ));
                graded_ok = false;
                continue;
            }
            let (gx, gy) = (&self.generators[a.from].gradings, &self.generators[a.to].gradings);
            if gx.len() != self.matchings.len() || gy.len() != self.matchings.len() {
                continue;
            }
            for (k, m) in self.matchings.iter().enumerate() {
                let weight: u64 = m.edges().iter().map(|&i| a.exp[i] as u64).sum();
                let lhs = &gx[k] - &gy[k] + int(2 * weight as i64);
                if lhs != int(1) {
                    v.push(Violation::new(
                        "E_GRADING",
                        format!("arrow {label} at matching {}: gr(x) - gr(y) + 2|a| = {lhs}", m.canonical_id()),
                    ));
                }
            }
        }
        if graded_ok {
            v.extend(self.d_squared_violations());
        }
        ValidationReport { violations: v }
    }

    fn d_squared_violations(&self) -> Vec<Violation> {
        let mut out_arrows: Vec<Vec<&Arrow>> = vec![Vec::new(); self.generators.len()];
        for a in &self.arrows {
            out_arrows[a.from].push(a);
        }
        let mut v = Vec::new();
        for x in 0..self.generators.len() {
            let mut parity: BTreeMap<(usize, EdgeMonomial), bool> = BTreeMap::new();
            for a in &out_arrows[x] {
                for b in &out_arrows[a.to] {
                    let e = crate::ring::monomial_product(&a.exp, &b.exp);
                    let p = parity.entry((b.to, e)).or_insert(false);
                    *p = !*p;
                }
            }
            let mut bad: Vec<usize> = parity.into_iter().filter(|(_, odd)| *odd).map(|((z, _), _)| z).collect();
            bad.dedup();
            for z in bad {
                v.push(Violation::new(
                    "E_D_SQUARED",
                    format!("d^2 != 0 from {} to {}", self.generators[x].id, self.generators[z].id),
                ));
            }
        }
        v
    }

    /// Replaces the free-form metadata text.
    pub fn with_metadata(mut self, metadata: impl Into<String>) -> Self {
        self.metadata = metadata.into();
        self
    }
}
