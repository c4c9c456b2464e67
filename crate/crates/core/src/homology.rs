//! t-modified complexes and their homology over the long power series ring.
//!
//! Specializing `u_i ↦ u^{t_i}` turns every arrow into a power of `u`. The
//! grading `gr_t` is the barycentric combination of matching gradings over the
//! Δ-complex simplex containing `t`, and the differential drops it by one, so
//! every matrix entry is a single monomial. Reduction therefore never needs to
//! invert a series: a minimal-valuation pivot divides every entry in its row.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::TangleComplex;
use crate::error::{Error, Result};
use crate::polytope::{DeltaComplex, WeightVector};
use crate::rational::{int, Rational};
use crate::ring::{specialized_exponent, HahnElement};

/// Differential of a complex after specializing at `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TModifiedComplex {
    pub t: WeightVector,
    /// `gr_t` of each generator.
    pub gradings: Vec<Rational>,
    /// Nonzero entries `(source, target) ↦ exponent`.
    pub entries: BTreeMap<(usize, usize), Rational>,
}

impl TModifiedComplex {
    pub fn entry(&self, x: usize, y: usize) -> HahnElement {
        self.entries.get(&(x, y)).map_or_else(HahnElement::zero, |e| HahnElement::monomial(e.clone()))
    }

    /// Whether the specialized differential squares to zero.
    pub fn squares_to_zero(&self) -> bool {
        let mut out: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for ((x, y), e) in &self.entries {
            out.entry(*x).or_default().push((*y, e));
        }
        for targets in out.values() {
            let mut sum: BTreeMap<usize, HahnElement> = BTreeMap::new();
            for (y, e1) in targets {
                for (z, e2) in out.get(y).map(Vec::as_slice).unwrap_or(&[]) {
                    let acc = sum.entry(*z).or_default();
                    *acc = acc.add(&HahnElement::monomial(*e1 + *e2));
                }
            }
            if sum.values().any(|h| !h.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Whether every entry has exponent `gr_t(y) - gr_t(x) + 1 ≥ 0`.
    pub fn is_homogeneous(&self) -> bool {
        self.entries.iter().all(|((x, y), e)| {
            e >= &int(0) && e == &(&self.gradings[*y] - &self.gradings[*x] + int(1))
        })
    }
}

/// Free and torsion summands of t-modified homology.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyStructure {
    /// Gradings of a homogeneous free basis, ascending.
    pub free: Vec<Rational>,
    /// `(grading, b)` for each summand `R/(u^b)`, sorted.
    pub torsion: Vec<(Rational, Rational)>,
}

/// A complex together with its Δ-complex, ready to be evaluated at many `t`.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    complex: &'a TangleComplex,
    delta: DeltaComplex,
    /// Complex matching index of each Δ-complex vertex.
    vertex_matching: Vec<usize>,
}

impl<'a> Evaluator<'a> {
    pub fn new(complex: &'a TangleComplex) -> Result<Self> {
        let delta = DeltaComplex::build(complex.graph())?;
        let vertex_matching = delta
            .matchings()
            .iter()
            .map(|m| complex.matching_index(m).expect("same graph"))
            .collect();
        Ok(Evaluator { complex, delta, vertex_matching })
    }

    pub fn complex(&self) -> &'a TangleComplex {
        self.complex
    }

    pub fn delta(&self) -> &DeltaComplex {
        &self.delta
    }

    /// `gr_t` of every generator.
    pub fn gradings(&self, t: &[Rational]) -> Result<Vec<Rational>> {
        let loc = self.delta.locate(self.complex.graph(), t)?;
        Ok(self
            .complex
            .generators()
            .iter()
            .map(|g| {
                loc.simplex
                    .iter()
                    .zip(&loc.coords)
                    .fold(int(0), |acc, (&v, c)| acc + c * &g.gradings[self.vertex_matching[v]])
            })
            .collect())
    }

    pub fn t_modify(&self, t: &[Rational]) -> Result<TModifiedComplex> {
        let gradings = self.gradings(t)?;
        let mut sums: BTreeMap<(usize, usize), HahnElement> = BTreeMap::new();
        for a in self.complex.arrows() {
            let acc = sums.entry((a.from, a.to)).or_default();
            *acc = acc.add(&HahnElement::monomial(specialized_exponent(&a.exp, t)));
        }
        let mut entries = BTreeMap::new();
        for ((x, y), h) in sums {
            if h.is_zero() {
                continue;
            }
            let expected = &gradings[y] - &gradings[x] + int(1);
            match h.as_monomial() {
                Some(e) if e == &expected => {
                    entries.insert((x, y), e.clone());
                }
                _ => {
                    let ids = &self.complex.generators();
                    return Err(Error::Inhomogeneous(format!(
                        "entry {} -> {} is {h}, expected u^{{{expected}}}",
                        ids[x].id, ids[y].id
                    )));
                }
            }
        }
        Ok(TModifiedComplex { t: t.to_vec(), gradings, entries })
    }

    pub fn homology(&self, t: &[Rational]) -> Result<HomologyStructure> {
        Ok(reduce(&self.t_modify(t)?))
    }

    /// Upsilon at `t`: the free gradings, which must number `2^{n-1}`.
    pub fn upsilon(&self, t: &[Rational]) -> Result<Vec<Rational>> {
        let h = self.homology(t)?;
        check_rank(self.complex, &h)?;
        Ok(h.free)
    }
}

fn check_rank(c: &TangleComplex, h: &HomologyStructure) -> Result<()> {
    let expected = c.expected_rank();
    if h.free.len() != expected {
        return Err(Error::Rank { expected, found: h.free.len() });
    }
    Ok(())
}

pub fn t_modify(c: &TangleComplex, t: &[Rational]) -> Result<TModifiedComplex> {
    Evaluator::new(c)?.t_modify(t)
}

/// Splits off one `R/(u^p)` pair at a time, always pivoting on a minimal
/// exponent (ties broken by target, then source). Column operations clear the
/// pivot's row; by `∂² = 0` nothing hits the pivot source, so both pivot
/// generators can then be dropped.
pub fn reduce(tc: &TModifiedComplex) -> HomologyStructure {
    let n = tc.gradings.len();
    let mut cols: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for ((x, y), e) in &tc.entries {
        cols[*x].insert(*y, e.clone());
        rows[*y].insert(*x);
    }
    let mut alive = vec![true; n];
    let mut torsion = Vec::new();

    loop {
        let pivot = cols
            .iter()
            .enumerate()
            .flat_map(|(x, col)| col.iter().map(move |(y, e)| (e, *y, x)))
            .min();
        let Some((p, y0, x0)) = pivot.map(|(e, y, x)| (e.clone(), y, x)) else { break };

        let pivot_col: Vec<(usize, Rational)> = cols[x0].iter().map(|(z, f)| (*z, f.clone())).collect();
        let others: Vec<usize> = rows[y0].iter().copied().filter(|&x| x != x0).collect();
        for x in others {
            let shift = &cols[x][&y0] - &p;
            debug_assert!(shift >= int(0), "pivot is not minimal");
            for (z, f) in &pivot_col {
                let e = &shift + f;
                match cols[x].get(z) {
                    Some(old) => {
                        debug_assert_eq!(old, &e, "inhomogeneous column operation");
                        cols[x].remove(z);
                        rows[*z].remove(&x);
                    }
                    None => {
                        cols[x].insert(*z, e);
                        rows[*z].insert(x);
                    }
                }
            }
        }

        for g in [x0, y0] {
            alive[g] = false;
            for z in std::mem::take(&mut cols[g]).into_keys() {
                rows[z].remove(&g);
            }
            for x in std::mem::take(&mut rows[g]) {
                cols[x].remove(&g);
            }
        }
        if p > int(0) {
            torsion.push((tc.gradings[y0].clone(), p));
        }
    }

    let mut free: Vec<Rational> = (0..n).filter(|&x| alive[x]).map(|x| tc.gradings[x].clone()).collect();
    free.sort();
    torsion.sort();
    HomologyStructure { free, torsion }
}

pub fn upsilon_at(c: &TangleComplex, t: &[Rational]) -> Result<Vec<Rational>> {
    Evaluator::new(c)?.upsilon(t)
}

/// The d-invariant of a Θ₁ complex: Upsilon at the single point `t = (2)`.
pub fn d_invariant(c: &TangleComplex) -> Result<Rational> {
    if c.edge_count() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "the d-invariant needs a complex over one edge, not {}",
            c.edge_count()
        )));
    }
    let h = Evaluator::new(c)?.homology(&[int(2)])?;
    if h.free.len() != 1 {
        return Err(Error::Rank { expected: 1, found: h.free.len() });
    }
    Ok(h.free[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{gen, trefoil};
    use crate::complex::{Arrow, Generator};
    use crate::graph::LabeledGraph;
    use crate::rational::ratio;

    fn unknot() -> TangleComplex {
        TangleComplex::new(LabeledGraph::theta(2), vec![gen("x", &[int(0), int(0)])], vec![], "").unwrap()
    }

    fn theta1(gens: &[(&str, i64)], arrows: &[(usize, usize)]) -> TangleComplex {
        TangleComplex::new(
            LabeledGraph::theta(1),
            gens.iter().map(|(id, g)| gen(id, &[int(*g)])).collect(),
            arrows.iter().map(|&(from, to)| Arrow { from, to, exp: vec![0] }).collect(),
            "",
        )
        .unwrap()
    }

    #[test]
    fn unknot_is_zero_everywhere() {
        let c = unknot();
        let tc = t_modify(&c, &[int(1), int(1)]).unwrap();
        assert_eq!(tc.gradings, vec![int(0)]);
        assert!(tc.entries.is_empty());
        assert_eq!(upsilon_at(&c, &[ratio(1, 3), ratio(5, 3)]).unwrap(), vec![int(0)]);
    }

    #[test]
    fn trefoil_gradings_follow_the_knot_line() {
        // gr_t = M - t_1 A
        let c = trefoil();
        let ev = Evaluator::new(&c).unwrap();
        assert_eq!(ev.gradings(&[int(1), int(1)]).unwrap(), vec![int(-1), int(-1), int(-1)]);
        assert_eq!(ev.gradings(&[int(2), int(0)]).unwrap(), vec![int(-2), int(-1), int(0)]);
        assert_eq!(ev.gradings(&[int(0), int(2)]).unwrap(), vec![int(0), int(-1), int(-2)]);
    }

    #[test]
    fn trefoil_at_three_halves() {
        let c = trefoil();
        let t = [ratio(3, 2), ratio(1, 2)];
        let tc = t_modify(&c, &t).unwrap();
        assert!(tc.is_homogeneous());
        assert!(tc.squares_to_zero());
        let h = reduce(&tc);
        assert_eq!(h.free, vec![ratio(-1, 2)]);
        assert_eq!(h.torsion, vec![(ratio(-3, 2), ratio(1, 2))]);
    }

    #[test]
    fn single_pair_is_torsion() {
        let tc = TModifiedComplex {
            t: vec![],
            gradings: vec![int(0), ratio(-1, 2)],
            entries: [((0, 1), ratio(1, 2))].into_iter().collect(),
        };
        let h = reduce(&tc);
        assert!(h.free.is_empty());
        assert_eq!(h.torsion, vec![(ratio(-1, 2), ratio(1, 2))]);
    }

    #[test]
    fn column_operations_keep_the_right_survivor() {
        // x1 -> y (u^1), x2 -> y (u^2): pivot x1, x2 becomes a cycle at its own grading
        let tc = TModifiedComplex {
            t: vec![],
            gradings: vec![int(0), int(1), int(0)],
            entries: [((0, 2), int(1)), ((1, 2), int(2))].into_iter().collect(),
        };
        let h = reduce(&tc);
        assert_eq!(h.free, vec![int(1)]);
        assert_eq!(h.torsion, vec![(int(0), int(1))]);
    }

    #[test]
    fn d_invariants() {
        assert_eq!(d_invariant(&theta1(&[("x", 0)], &[])).unwrap(), int(0));
        assert_eq!(d_invariant(&theta1(&[("x", -2), ("a", 1), ("b", 0)], &[(1, 2)])).unwrap(), int(-2));
        let lens = theta1(&[("x", 0), ("y", 0)], &[]);
        assert_eq!(d_invariant(&lens).unwrap_err().code(), "E_RANK");
        let half = TangleComplex::new(
            LabeledGraph::theta(1),
            vec![Generator { id: "x".into(), gradings: vec![ratio(1, 2)] }],
            vec![],
            "",
        )
        .unwrap();
        assert_eq!(d_invariant(&half).unwrap(), ratio(1, 2));
    }

    #[test]
    fn rank_is_enforced() {
        let c = TangleComplex::new(
            LabeledGraph::theta(2),
            vec![gen("x", &[int(0), int(0)]), gen("y", &[int(0), int(0)])],
            vec![],
            "",
        )
        .unwrap();
        assert_eq!(upsilon_at(&c, &[int(1), int(1)]).unwrap_err().code(), "E_RANK");
    }

    #[test]
    fn cancelled_arrows_vanish_after_specializing() {
        let g = LabeledGraph::link_graph(2);
        let c = TangleComplex::new(
            g,
            vec![gen("x", &vec![ratio(-1, 2); 4]), gen("y", &vec![ratio(1, 2); 4])],
            vec![
                Arrow { from: 0, to: 1, exp: vec![1, 0, 1, 0] },
                Arrow { from: 0, to: 1, exp: vec![0, 1, 0, 1] },
            ],
            "",
        )
        .unwrap();
        let t = crate::complex::diagonal_link_weights(2, &ratio(1, 2)).unwrap();
        assert_eq!(upsilon_at(&c, &t).unwrap(), vec![ratio(-1, 2), ratio(1, 2)]);
    }
}
