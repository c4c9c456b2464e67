//! Labeled balanced bipartite graphs and their perfect matchings.
//!
//! Vertices are opaque string ids split into a `+` part and a `-` part. Edges
//! always run from a `-` vertex to a `+` vertex and their order is the
//! authoritative labeling: edge `i` (1-based in every external form) is the
//! strand carrying the weight `t_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Graph file form: `{"pos":[..],"neg":[..],"edges":[["n1","p1"],..]}`.
///
/// An edge may also be written `{"id":k,"ends":["n1","p1"]}`; when any edge
/// carries an explicit id, the ids must be exactly `1..=κ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescription {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
    pub edges: Vec<EdgeDescription>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeDescription {
    Pair([String; 2]),
    Indexed { id: usize, ends: [String; 2] },
}

impl EdgeDescription {
    fn ends(&self) -> &[String; 2] {
        match self {
            EdgeDescription::Pair(e) => e,
            EdgeDescription::Indexed { ends, .. } => ends,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    /// Edge endpoints are not one `-` and one `+` vertex.
    Bipartite { edge: usize, ends: [String; 2] },
    /// A connected component has different numbers of `+` and `-` vertices.
    Unbalanced { component: Vec<String>, pos: usize, neg: usize },
    /// Duplicate or gapped edge indices, or an empty edge list.
    Index(String),
    UnknownVertex { edge: usize, vertex: String },
    DuplicateVertex(String),
}

impl GraphViolation {
    pub fn code(&self) -> &'static str {
        match self {
            GraphViolation::Bipartite { .. } => "E_BIPARTITE",
            GraphViolation::Unbalanced { .. } => "E_UNBALANCED",
            GraphViolation::Index(_) => "E_INDEX",
            GraphViolation::UnknownVertex { .. } => "E_UNKNOWN_VERTEX",
            GraphViolation::DuplicateVertex(_) => "E_DUPLICATE_VERTEX",
        }
    }
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::Bipartite { edge, ends } => {
                write!(f, "edge {edge} ({}, {}) does not join a - vertex to a + vertex", ends[0], ends[1])
            }
            GraphViolation::Unbalanced { component, pos, neg } => write!(
                f,
                "component {{{}}} has {pos} + vertices and {neg} - vertices",
                component.join(",")
            ),
            GraphViolation::Index(s) => write!(f, "{s}"),
            GraphViolation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} mentions unknown vertex {vertex}")
            }
            GraphViolation::DuplicateVertex(v) => write!(f, "vertex {v} listed twice"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Index into [`LabeledGraph::neg_vertices`].
    pub neg: usize,
    /// Index into [`LabeledGraph::pos_vertices`].
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub edges: Vec<usize>,
}

/// A validated balanced bipartite graph. Edge indices are 0-based here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pos: Vec<String>,
    neg: Vec<String>,
    edges: Vec<Edge>,
    components: Vec<Component>,
}

/// A perfect matching, stored as sorted 0-based edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn from_edges(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    /// Sorted 0-based edge indices.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// 1-based edge indices joined by `-`, e.g. `"1-3"`.
    pub fn canonical_id(&self) -> String {
        self.edges.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join("-")
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.canonical_id())
    }
}

/// Validates a raw description, collecting every violation.
pub fn validate_graph(raw: &GraphDescription) -> Result<LabeledGraph> {
    let mut violations = Vec::new();

    let mut sign: HashMap<&str, (bool, usize)> = HashMap::new();
    for (i, v) in raw.pos.iter().enumerate() {
        if sign.insert(v, (true, i)).is_some() {
            violations.push(GraphViolation::DuplicateVertex(v.clone()));
        }
    }
    for (i, v) in raw.neg.iter().enumerate() {
        if sign.insert(v, (false, i)).is_some() {
            violations.push(GraphViolation::DuplicateVertex(v.clone()));
        }
    }

    if raw.edges.is_empty() {
        violations.push(GraphViolation::Index("graph has no edges".into()));
    }

    // Edge order: explicit ids when given, array position otherwise.
    let explicit = raw.edges.iter().any(|e| matches!(e, EdgeDescription::Indexed { .. }));
    let mut order: Vec<usize> = (0..raw.edges.len()).collect();
    if explicit {
        let mut ids = Vec::with_capacity(raw.edges.len());
        for (k, e) in raw.edges.iter().enumerate() {
            match e {
                EdgeDescription::Indexed { id, .. } => ids.push((*id, k)),
                EdgeDescription::Pair(_) => violations.push(GraphViolation::Index(format!(
                    "edge at position {} has no id while others do",
                    k + 1
                ))),
            }
        }
        ids.sort_unstable();
        let expected: Vec<usize> = (1..=raw.edges.len()).collect();
        let got: Vec<usize> = ids.iter().map(|p| p.0).collect();
        if got != expected {
            violations.push(GraphViolation::Index(format!(
                "edge ids {got:?} are not exactly 1..={}",
                raw.edges.len()
            )));
        } else {
            order = ids.into_iter().map(|p| p.1).collect();
        }
    }

    let mut edges = Vec::with_capacity(raw.edges.len());
    for (label, &k) in order.iter().enumerate() {
        let ends = raw.edges[k].ends();
        let a = sign.get(ends[0].as_str()).copied();
        let b = sign.get(ends[1].as_str()).copied();
        let mut known = true;
        for (end, s) in ends.iter().zip([a, b]) {
            if s.is_none() {
                known = false;
                violations.push(GraphViolation::UnknownVertex { edge: label + 1, vertex: end.clone() });
            }
        }
        if !known {
            continue;
        }
        match (a.unwrap(), b.unwrap()) {
            ((false, n), (true, p)) | ((true, p), (false, n)) => edges.push(Edge { neg: n, pos: p }),
            _ => violations.push(GraphViolation::Bipartite { edge: label + 1, ends: ends.clone() }),
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidGraph(violations));
    }

    let components = find_components(raw.pos.len(), raw.neg.len(), &edges);
    for c in &components {
        if c.pos.len() != c.neg.len() {
            let mut names: Vec<String> = c.pos.iter().map(|&i| raw.pos[i].clone()).collect();
            names.extend(c.neg.iter().map(|&i| raw.neg[i].clone()));
            violations.push(GraphViolation::Unbalanced { component: names, pos: c.pos.len(), neg: c.neg.len() });
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidGraph(violations));
    }

    Ok(LabeledGraph { pos: raw.pos.clone(), neg: raw.neg.clone(), edges, components })
}

fn find_components(npos: usize, nneg: usize, edges: &[Edge]) -> Vec<Component> {
    // union-find over pos vertices 0..npos and neg vertices npos..npos+nneg
    let mut parent: Vec<usize> = (0..npos + nneg).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in edges {
        let a = find(&mut parent, e.pos);
        let b = find(&mut parent, npos + e.neg);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
    for v in 0..npos + nneg {
        let r = find(&mut parent, v);
        let c = by_root.entry(r).or_insert_with(|| Component { pos: vec![], neg: vec![], edges: vec![] });
        if v < npos {
            c.pos.push(v);
        } else {
            c.neg.push(v - npos);
        }
    }
    for (i, e) in edges.iter().enumerate() {
        let r = find(&mut parent, e.pos);
        by_root.get_mut(&r).unwrap().edges.push(i);
    }
    by_root.into_values().collect()
}

impl LabeledGraph {
    pub fn pos_vertices(&self) -> &[String] {
        &self.pos
    }

    pub fn neg_vertices(&self) -> &[String] {
        &self.neg
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges, κ.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of `+` vertices, which is also the number of boundary-sphere pairs.
    pub fn boundary_pairs(&self) -> usize {
        self.pos.len()
    }

    /// Two vertices joined by all κ edges.
    pub fn is_theta(&self) -> bool {
        self.pos.len() == 1 && self.neg.len() == 1
    }

    /// The Θ_n graph on vertices `v-` and `v+`.
    pub fn theta(n: usize) -> LabeledGraph {
        Self::theta_named(n, "v+", "v-")
    }

    pub fn theta_named(n: usize, pos: &str, neg: &str) -> LabeledGraph {
        assert!(n > 0, "Θ_0 has no edges");
        let raw = GraphDescription {
            pos: vec![pos.into()],
            neg: vec![neg.into()],
            edges: (0..n).map(|_| EdgeDescription::Pair([neg.into(), pos.into()])).collect(),
        };
        validate_graph(&raw).expect("Θ_n is valid")
    }

    /// Disjoint union of `n` Θ₂ graphs labeled so that component `i` carries
    /// edges `i` and `n + i`.
    pub fn link_graph(n: usize) -> LabeledGraph {
        assert!(n > 0);
        let pos: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        let neg: Vec<String> = (1..=n).map(|i| format!("n{i}")).collect();
        let edges = (0..2 * n)
            .map(|k| EdgeDescription::Pair([neg[k % n].clone(), pos[k % n].clone()]))
            .collect();
        validate_graph(&GraphDescription { pos, neg, edges }).expect("link graph is valid")
    }

    /// The cycle through `p1, ..., pk` and `n1, ..., nk`, edges listed in
    /// cycle order starting `n1 - p1 - n2`.
    pub fn cycle(k: usize) -> LabeledGraph {
        assert!(k > 0);
        let pos: Vec<String> = (1..=k).map(|i| format!("p{i}")).collect();
        let neg: Vec<String> = (1..=k).map(|i| format!("n{i}")).collect();
        let edges = (0..2 * k)
            .map(|j| {
                let p = j / 2;
                let n = (p + j % 2) % k;
                EdgeDescription::Pair([neg[n].clone(), pos[p].clone()])
            })
            .collect();
        validate_graph(&GraphDescription { pos, neg, edges }).expect("cycle is valid")
    }

    pub fn description(&self) -> GraphDescription {
        GraphDescription {
            pos: self.pos.clone(),
            neg: self.neg.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDescription::Pair([self.neg[e.neg].clone(), self.pos[e.pos].clone()]))
                .collect(),
        }
    }

    fn neg_incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.neg.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.neg].push(i);
        }
        inc
    }

    pub fn is_perfect_matching(&self, edges: &[usize]) -> bool {
        let mut pos_hit = vec![0usize; self.pos.len()];
        let mut neg_hit = vec![0usize; self.neg.len()];
        for &i in edges {
            let Some(e) = self.edges.get(i) else { return false };
            pos_hit[e.pos] += 1;
            neg_hit[e.neg] += 1;
        }
        pos_hit.iter().chain(neg_hit.iter()).all(|&c| c == 1)
    }

    /// Every perfect matching, ordered lexicographically by edge index sequence.
    pub fn enumerate_matchings(&self) -> Vec<Matching> {
        let inc = self.neg_incidence();
        let mut used = vec![false; self.pos.len()];
        let mut chosen = Vec::with_capacity(self.neg.len());
        let mut out = Vec::new();
        self.backtrack(0, &inc, &mut used, &mut chosen, &mut out);
        out.sort();
        out
    }

    fn backtrack(
        &self,
        v: usize,
        inc: &[Vec<usize>],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matching>,
    ) {
        if v == self.neg.len() {
            if self.pos.len() == self.neg.len() {
                out.push(Matching::from_edges(chosen.clone()));
            }
            return;
        }
        for &i in &inc[v] {
            let p = self.edges[i].pos;
            if used[p] {
                continue;
            }
            used[p] = true;
            chosen.push(i);
            self.backtrack(v + 1, inc, used, chosen, out);
            chosen.pop();
            used[p] = false;
        }
    }

    /// The weight vector t_m: 2 on the matching's edges, 0 elsewhere.
    pub fn matching_weight(&self, m: &Matching) -> Result<Vec<Rational>> {
        if !self.is_perfect_matching(m.edges()) {
            return Err(Error::NotMatching(m.to_string()));
        }
        let mut t = vec![int(0); self.edges.len()];
        for &i in m.edges() {
            t[i] = int(2);
        }
        Ok(t)
    }

    /// Whether the coloring ideal vanishes: in every component, the `+` vertex
    /// monomials and the `-` vertex monomials agree as F₂ sums.
    pub fn coloring_ideal_is_trivial(&self) -> bool {
        let mut pos_mono: Vec<Vec<usize>> = vec![Vec::new(); self.pos.len()];
        let mut neg_mono: Vec<Vec<usize>> = vec![Vec::new(); self.neg.len()];
        for (i, e) in self.edges.iter().enumerate() {
            pos_mono[e.pos].push(i);
            neg_mono[e.neg].push(i);
        }
        self.components.iter().all(|c| {
            let mut parity: BTreeMap<&Vec<usize>, u32> = BTreeMap::new();
            for &p in &c.pos {
                *parity.entry(&pos_mono[p]).or_default() += 1;
            }
            for &n in &c.neg {
                *parity.entry(&neg_mono[n]).or_default() += 1;
            }
            parity.values().all(|k| k % 2 == 0)
        })
    }

    /// For each vertex, the list of incident edges; `+` vertices first.
    pub fn vertex_edge_lists(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.pos.len() + self.neg.len()];
        for (i, e) in self.edges.iter().enumerate() {
            lists[e.pos].push(i);
            lists[self.pos.len() + e.neg].push(i);
        }
        lists
    }

    /// Vertex slot (as in [`Self::vertex_edge_lists`]) of both ends of an edge.
    pub(crate) fn edge_ends(&self, i: usize) -> (usize, usize) {
        let e = self.edges[i];
        (self.pos.len() + e.neg, e.pos)
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.pos.len() + self.neg.len()
    }
}
