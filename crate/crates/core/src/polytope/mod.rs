//! The solution polytope `L_G = {t ≥ 0 : Σ_{e ∋ v} t_e = 2 for every vertex v}`.
//!
//! Its vertices are the matching weights `t_m`. This module decides membership,
//! splits points into convex combinations of matching vertices by repeatedly
//! cutting along loops of fractional edges, and applies the loop move that
//! zeroes a chosen coordinate.

mod delta;
pub mod linalg;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use delta::{DeltaComplex, Location};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Matching};
use crate::rational::{int, Rational};

pub type WeightVector = Vec<Rational>;

/// Matching vertices of `L_G` (in matching order) and its affine dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPolytope {
    pub matchings: Vec<Matching>,
    pub vertices: Vec<WeightVector>,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCombination {
    pub terms: Vec<(Matching, Rational)>,
}

impl ConvexCombination {
    /// Σ coeff · t_m.
    pub fn evaluate(&self, g: &LabeledGraph) -> WeightVector {
        let mut t = vec![int(0); g.edge_count()];
        for (m, c) in &self.terms {
            for &i in m.edges() {
                t[i] += c * int(2);
            }
        }
        t
    }

    pub fn is_valid(&self) -> bool {
        let sum: Rational = self.terms.iter().map(|(_, c)| c.clone()).sum();
        sum.is_one() && self.terms.iter().all(|(_, c)| c > &int(0) && c <= &int(1))
    }
}

pub fn solution_polytope(g: &LabeledGraph) -> SolutionPolytope {
    let matchings = g.enumerate_matchings();
    let vertices: Vec<WeightVector> =
        matchings.iter().map(|m| g.matching_weight(m).expect("enumerated matching")).collect();
    let refs: Vec<&[Rational]> = vertices.iter().map(|v| v.as_slice()).collect();
    let dimension = linalg::affine_dimension(&refs);
    SolutionPolytope { matchings, vertices, dimension }
}

/// Whether `t` satisfies the vertex equations (signs not checked).
pub fn satisfies_equations(g: &LabeledGraph, t: &[Rational]) -> bool {
    if t.len() != g.edge_count() {
        return false;
    }
    let two = int(2);
    g.vertex_edge_lists()
        .iter()
        .all(|edges| edges.iter().map(|&i| &t[i]).fold(int(0), |a, b| a + b) == two)
}

pub fn contains(g: &LabeledGraph, t: &[Rational]) -> bool {
    t.iter().all(|x| x >= &int(0)) && satisfies_equations(g, t)
}

pub fn require_in_polytope(g: &LabeledGraph, t: &[Rational]) -> Result<()> {
    if t.len() != g.edge_count() {
        return Err(Error::NotInPolytope(format!(
            "expected {} coordinates, got {}",
            g.edge_count(),
            t.len()
        )));
    }
    if !contains(g, t) {
        return Err(Error::NotInPolytope(show(t)));
    }
    Ok(())
}

pub(crate) fn show(t: &[Rational]) -> String {
    format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn is_fractional(x: &Rational) -> bool {
    !x.is_zero() && x != &int(2)
}

/// Finds a loop of fractional edges by walking from the lowest-index
/// fractional edge, always leaving a vertex along its lowest-index fractional
/// edge other than the one just used. Returns the loop's edges in order.
fn fractional_loop(g: &LabeledGraph, t: &[Rational]) -> Option<Vec<usize>> {
    let frac: Vec<bool> = t.iter().map(is_fractional).collect();
    let start = frac.iter().position(|&f| f)?;
    let incident = g.vertex_edge_lists();
    let (v0, mut v) = g.edge_ends(start);
    let mut seen: Vec<Option<usize>> = vec![None; g.vertex_count()];
    seen[v0] = Some(0);
    let mut path = vec![start];
    let mut arrived = start;
    loop {
        if let Some(pos) = seen[v] {
            return Some(path[pos..].to_vec());
        }
        seen[v] = Some(path.len());
        let next = *incident[v].iter().find(|&&e| frac[e] && e != arrived)?;
        let (a, b) = g.edge_ends(next);
        v = if a == v { b } else { a };
        path.push(next);
        arrived = next;
    }
}

/// Writes `t` as a convex combination of matching vertices.
pub fn decompose_to_matchings(g: &LabeledGraph, t: &[Rational]) -> Result<ConvexCombination> {
    require_in_polytope(g, t)?;
    let mut pending: BTreeMap<WeightVector, Rational> = BTreeMap::new();
    pending.insert(t.to_vec(), int(1));
    let mut done: BTreeMap<Matching, Rational> = BTreeMap::new();

    // Points with more fractional coordinates are split first so that equal
    // points reached along different branches merge before being split.
    while let Some(point) = pending
        .keys()
        .max_by_key(|p| p.iter().filter(|x| is_fractional(x)).count())
        .cloned()
    {
        let w = pending.remove(&point).unwrap();
        let Some(cycle) = fractional_loop(g, &point) else {
            let edges = (0..point.len()).filter(|&i| point[i] == int(2)).collect();
            *done.entry(Matching::from_edges(edges)).or_insert_with(|| int(0)) += w;
            continue;
        };
        // positions are 1-based: j_1 is odd
        let odd = cycle.iter().step_by(2);
        let even = cycle.iter().skip(1).step_by(2);
        let t_o = odd.clone().map(|&i| point[i].clone()).min().unwrap();
        let t_e = even.clone().map(|&i| point[i].clone()).min().unwrap();
        let mut t1 = point.clone();
        let mut t2 = point.clone();
        for &i in odd {
            t1[i] += &t_e;
            t2[i] -= &t_o;
        }
        for &i in even {
            t1[i] -= &t_e;
            t2[i] += &t_o;
        }
        let total = &t_o + &t_e;
        *pending.entry(t1).or_insert_with(|| int(0)) += &w * &t_o / &total;
        *pending.entry(t2).or_insert_with(|| int(0)) += &w * &t_e / &total;
    }

    Ok(ConvexCombination { terms: done.into_iter().collect() })
}

/// Zeroes `t` on the first edge of `cycle` by shifting its value alternately
/// around the loop. The result satisfies the vertex equations but may be
/// negative.
pub fn loop_move(g: &LabeledGraph, t: &[Rational], cycle: &[usize]) -> Result<WeightVector> {
    if !satisfies_equations(g, t) {
        return Err(Error::NotInPolytope(show(t)));
    }
    check_loop(g, cycle)?;
    let shift = t[cycle[0]].clone();
    let mut out = t.to_vec();
    out[cycle[0]] = int(0);
    for (j, &e) in cycle.iter().enumerate().skip(1) {
        if j % 2 == 0 {
            out[e] -= &shift;
        } else {
            out[e] += &shift;
        }
    }
    Ok(out)
}

fn check_loop(g: &LabeledGraph, cycle: &[usize]) -> Result<()> {
    let label = || cycle.iter().map(|e| format!("e{}", e + 1)).collect::<Vec<_>>().join(",");
    if cycle.len() < 2 || cycle.iter().any(|&e| e >= g.edge_count()) {
        return Err(Error::NotALoop(label()));
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cycle.len() {
        return Err(Error::NotALoop(label()));
    }
    let (a, b) = g.edge_ends(cycle[0]);
    let closes_from = |start: usize, mut v: usize| {
        for &e in &cycle[1..] {
            let (x, y) = g.edge_ends(e);
            v = if x == v {
                y
            } else if y == v {
                x
            } else {
                return false;
            };
        }
        v == start
    };
    if closes_from(a, b) || closes_from(b, a) {
        Ok(())
    } else {
        Err(Error::NotALoop(label()))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::{validate_graph, EdgeDescription, GraphDescription};
    use crate::rational::ratio;

    pub(crate) fn cycle4() -> LabeledGraph {
        let d = GraphDescription {
            pos: vec!["p1".into(), "p2".into()],
            neg: vec!["n1".into(), "n2".into()],
            edges: [("n1", "p1"), ("n2", "p1"), ("n2", "p2"), ("n1", "p2")]
                .iter()
                .map(|(a, b)| EdgeDescription::Pair([a.to_string(), b.to_string()]))
                .collect(),
        };
        validate_graph(&d).unwrap()
    }

    pub(crate) fn path4() -> LabeledGraph {
        let d = GraphDescription {
            pos: vec!["p1".into(), "p2".into()],
            neg: vec!["n1".into(), "n2".into()],
            edges: [("n1", "p1"), ("n2", "p1"), ("n2", "p2")]
                .iter()
                .map(|(a, b)| EdgeDescription::Pair([a.to_string(), b.to_string()]))
                .collect(),
        };
        validate_graph(&d).unwrap()
    }

    fn v(xs: &[(i64, i64)]) -> WeightVector {
        xs.iter().map(|&(p, q)| ratio(p, q)).collect()
    }

    fn ints(xs: &[i64]) -> WeightVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn terms(c: &ConvexCombination) -> Vec<(String, Rational)> {
        c.terms.iter().map(|(m, q)| (m.canonical_id(), q.clone())).collect()
    }

    #[test]
    fn polytope_vertices_and_dimension() {
        let p = solution_polytope(&LabeledGraph::theta(2));
        assert_eq!(p.vertices, vec![ints(&[2, 0]), ints(&[0, 2])]);
        assert_eq!(p.dimension, 1);
        let p = solution_polytope(&LabeledGraph::theta(1));
        assert_eq!(p.vertices, vec![ints(&[2])]);
        assert_eq!(p.dimension, 0);
        let p = solution_polytope(&path4());
        assert_eq!(p.vertices, vec![ints(&[2, 0, 2])]);
        assert_eq!(p.dimension, 0);
        assert_eq!(solution_polytope(&LabeledGraph::link_graph(2)).dimension, 2);
    }

    #[test]
    fn membership() {
        let g = LabeledGraph::theta(2);
        assert!(contains(&g, &ints(&[1, 1])));
        assert!(!contains(&g, &ints(&[3, -1])));
        assert!(!contains(&g, &ints(&[1])));
        assert!(contains(&LabeledGraph::theta(3), &v(&[(1, 1), (1, 2), (1, 2)])));
    }

    #[test]
    fn decomposes_theta3_point() {
        let c = decompose_to_matchings(&LabeledGraph::theta(3), &v(&[(1, 1), (1, 2), (1, 2)])).unwrap();
        assert_eq!(
            terms(&c),
            vec![("1".into(), ratio(1, 2)), ("2".into(), ratio(1, 4)), ("3".into(), ratio(1, 4))]
        );
    }

    #[test]
    fn decomposes_midpoints() {
        let c = decompose_to_matchings(&LabeledGraph::theta(2), &ints(&[1, 1])).unwrap();
        assert_eq!(terms(&c), vec![("1".into(), ratio(1, 2)), ("2".into(), ratio(1, 2))]);
        let c = decompose_to_matchings(&cycle4(), &ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(terms(&c), vec![("1-3".into(), ratio(1, 2)), ("2-4".into(), ratio(1, 2))]);
    }

    #[test]
    fn decompose_rejects_outside_points() {
        let e = decompose_to_matchings(&LabeledGraph::theta(2), &ints(&[3, -1])).unwrap_err();
        assert_eq!(e.code(), "E_NOT_IN_POLYTOPE");
    }

    #[test]
    fn loop_moves() {
        assert_eq!(loop_move(&cycle4(), &ints(&[1, 1, 1, 1]), &[0, 1, 2, 3]).unwrap(), ints(&[0, 2, 0, 2]));
        assert_eq!(
            loop_move(&LabeledGraph::theta(2), &v(&[(1, 2), (3, 2)]), &[0, 1]).unwrap(),
            ints(&[0, 2])
        );
        let t = ints(&[0, 2, 0, 2]);
        assert_eq!(loop_move(&cycle4(), &t, &[0, 1, 2, 3]).unwrap(), t);
        // the walk may start at either end of the first edge
        assert_eq!(loop_move(&cycle4(), &ints(&[1, 1, 1, 1]), &[0, 3, 2, 1]).unwrap(), ints(&[0, 2, 0, 2]));
    }

    #[test]
    fn rejects_non_loops() {
        let g = cycle4();
        for bad in [&[0, 2][..], &[0, 1, 2], &[0, 0], &[0]] {
            let e = loop_move(&g, &ints(&[1, 1, 1, 1]), bad).unwrap_err();
            assert_eq!(e.code(), "E_NOT_A_LOOP", "{bad:?}");
        }
    }
}
