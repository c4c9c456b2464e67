//! Slow, independent references for cross-checking the main algorithms.
//!
//! [`brute_matchings`] filters every edge subset. [`persistence_reduce`]
//! reads t-modified homology off a barcode: the grading-`d` part of the
//! homology is the homology of the F₂ span of generators with `gr_t ≥ d`, so
//! the whole module is the degree-one persistent homology of a three-term
//! filtered complex built from the unspecialized differential.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Matching};
use crate::homology::TModifiedComplex;
use crate::rational::{int, Rational};

pub fn brute_matchings(g: &LabeledGraph) -> Result<Vec<Matching>> {
    let k = g.edge_count();
    if k > 20 {
        return Err(Error::TooLarge(format!("{k} edges exceed the brute-force limit of 20")));
    }
    let size = g.pos_vertices().len();
    let mut out: Vec<Matching> = (0u32..1 << k)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|edges| g.is_perfect_matching(edges))
        .map(Matching::from_edges)
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Barcode {
    /// Birth gradings of infinite bars, ascending.
    pub infinite: Vec<Rational>,
    /// `(birth grading, length)` of finite bars of positive length, sorted.
    pub finite: Vec<(Rational, Rational)>,
}

#[derive(Debug, Clone)]
struct Cell {
    /// Filtration value times the common denominator.
    key: BigInt,
    degree: u8,
    generator: usize,
}

pub fn persistence_reduce(tc: &TModifiedComplex) -> Barcode {
    let n = tc.gradings.len();
    let denom = tc.gradings.iter().fold(BigInt::one(), |acc, g| acc.lcm(g.denom()));
    let scale = Rational::from_integer(denom.clone());
    let clear = |q: Rational| -> BigInt {
        let v = q * &scale;
        debug_assert!(v.is_integer());
        v.to_integer()
    };

    // degree 2 enters at 1 - gr, degree 1 at -gr, degree 0 at -gr - 1
    let mut cells: Vec<Cell> = Vec::with_capacity(3 * n);
    for (x, g) in tc.gradings.iter().enumerate() {
        cells.push(Cell { key: clear(int(1) - g), degree: 2, generator: x });
        cells.push(Cell { key: clear(-g.clone()), degree: 1, generator: x });
        cells.push(Cell { key: clear(-g.clone() - int(1)), degree: 0, generator: x });
    }
    cells.sort_by(|a, b| (&a.key, a.degree, a.generator).cmp(&(&b.key, b.degree, b.generator)));
    let mut position = vec![[0usize; 3]; n];
    for (i, c) in cells.iter().enumerate() {
        position[c.generator][c.degree as usize] = i;
    }

    let mut targets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, y) in tc.entries.keys() {
        targets[*x].push(*y);
    }

    // boundary columns as sorted row index sets
    let mut columns: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| {
            if c.degree == 0 {
                return Vec::new();
            }
            let mut col: Vec<usize> =
                targets[c.generator].iter().map(|&y| position[y][c.degree as usize - 1]).collect();
            col.sort_unstable();
            col
        })
        .collect();

    let mut low_owner: Vec<Option<usize>> = vec![None; cells.len()];
    let mut paired_with: Vec<Option<usize>> = vec![None; cells.len()];
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match low_owner[low] {
                Some(k) => {
                    let other = columns[k].clone();
                    columns[j] = symmetric_difference(&columns[j], &other);
                }
                None => {
                    low_owner[low] = Some(j);
                    paired_with[low] = Some(j);
                    paired_with[j] = Some(low);
                    break;
                }
            }
        }
    }

    let mut bar = Barcode::default();
    for (i, c) in cells.iter().enumerate() {
        if c.degree != 1 || !columns[i].is_empty() {
            continue;
        }
        match paired_with[i] {
            None => bar.infinite.push(tc.gradings[c.generator].clone()),
            Some(j) => {
                let length = Rational::new(&cells[j].key - &c.key, denom.clone());
                if length > int(0) {
                    bar.finite.push((Rational::new(-c.key.clone(), denom.clone()), length));
                }
            }
        }
    }
    bar.infinite.sort();
    bar.finite.sort();
    bar
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::trefoil;
    use crate::homology::{reduce, t_modify};
    use crate::rational::ratio;

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_matchings(&LabeledGraph::theta(3)).unwrap().len(), 3);
        assert_eq!(brute_matchings(&crate::graph::tests::cycle4()).unwrap().len(), 2);
        assert_eq!(brute_matchings(&LabeledGraph::theta(21)).unwrap_err().code(), "E_TOO_LARGE");
    }

    #[test]
    fn empty_differential_gives_infinite_bars() {
        let tc = TModifiedComplex { t: vec![], gradings: vec![int(0), int(-1)], entries: Default::default() };
        let b = persistence_reduce(&tc);
        assert_eq!(b.infinite, vec![int(-1), int(0)]);
        assert!(b.finite.is_empty());
    }

    #[test]
    fn single_pair_gives_one_finite_bar() {
        let tc = TModifiedComplex {
            t: vec![],
            gradings: vec![int(0), ratio(-1, 2)],
            entries: [((0, 1), ratio(1, 2))].into_iter().collect(),
        };
        let b = persistence_reduce(&tc);
        assert!(b.infinite.is_empty());
        assert_eq!(b.finite, vec![(ratio(-1, 2), ratio(1, 2))]);
    }

    #[test]
    fn agrees_with_reduce_on_trefoil() {
        let c = trefoil();
        for t in [[int(1), int(1)], [ratio(3, 2), ratio(1, 2)], [ratio(1, 3), ratio(5, 3)], [int(2), int(0)]] {
            let tc = t_modify(&c, &t).unwrap();
            let h = reduce(&tc);
            let b = persistence_reduce(&tc);
            assert_eq!(b.infinite, h.free);
            assert_eq!(b.finite, h.torsion);
        }
    }
}
