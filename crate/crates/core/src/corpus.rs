//! Named complexes and seeded random inputs shared by the selftest, the
//! integration tests and the examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{glue, mirror, stabilize, tensor, Arrow, CfkArrow, CfkData, CfkGenerator, Generator};
use crate::graph::{validate_graph, EdgeDescription, GraphDescription, LabeledGraph, Matching};
use crate::polytope::WeightVector;
use crate::rational::{int, Rational};
use crate::TangleComplex;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One generator in grading 0 over Θ_n.
pub fn unknot(n: usize) -> TangleComplex {
    let g = Generator { id: "x".into(), gradings: vec![int(0); n] };
    TangleComplex::new(LabeledGraph::theta(n), vec![g], vec![], format!("unknot Θ_{n}")).expect("valid")
}

/// A Θ₁ complex with one generator in grading `d`, as for a rational
/// homology sphere whose d-invariant is `d`.
pub fn theta1(d: Rational) -> TangleComplex {
    let g = Generator { id: "x".into(), gradings: vec![d.clone()] };
    TangleComplex::new(LabeledGraph::theta(1), vec![g], vec![], format!("Θ₁ with d = {d}")).expect("valid")
}

fn cfk(gens: &[(&str, i64, i64)], arrows: &[(&str, &str, u32, u32)]) -> CfkData {
    CfkData {
        generators: gens
            .iter()
            .map(|(id, m, a)| CfkGenerator { id: id.to_string(), M: m.to_string(), A: a.to_string() })
            .collect(),
        arrows: arrows
            .iter()
            .map(|(f, t, z, w)| CfkArrow { from: f.to_string(), to: t.to_string(), z: *z, w: *w })
            .collect(),
    }
}

pub fn trefoil_cfk() -> CfkData {
    staircase_cfk(&[1, 1])
}

/// Figure-eight: a square plus an isolated generator.
pub fn figure_eight_cfk() -> CfkData {
    cfk(
        &[("p", 0, 0), ("q", 1, 1), ("r", -1, -1), ("s", 0, 0), ("x", 0, 0)],
        &[("p", "q", 0, 1), ("p", "r", 1, 0), ("q", "s", 1, 0), ("r", "s", 0, 1)],
    )
}

/// Staircase with step lengths `h_1, v_1, h_2, v_2, ...`. Arrows run
/// `y_j → x_{j-1}` with `w^{h_j}` and `y_j → x_j` with `z^{v_j}`; the top
/// generator sits in Maslov grading 0 and Alexander grading half the total.
pub fn staircase_cfk(steps: &[u32]) -> CfkData {
    assert!(!steps.is_empty() && steps.len().is_multiple_of(2), "steps come in (h, v) pairs");
    let total: i64 = steps.iter().map(|&s| s as i64).sum();
    let (mut m, mut a) = (0i64, total / 2);
    let mut gens = vec![CfkGenerator { id: "x0".into(), M: m.to_string(), A: a.to_string() }];
    let mut arrows = Vec::new();
    for (j, pair) in steps.chunks(2).enumerate() {
        let (h, v) = (pair[0], pair[1]);
        a -= h as i64;
        m += 1 - 2 * h as i64;
        gens.push(CfkGenerator { id: format!("y{}", j + 1), M: m.to_string(), A: a.to_string() });
        a -= v as i64;
        m -= 1;
        gens.push(CfkGenerator { id: format!("x{}", j + 1), M: m.to_string(), A: a.to_string() });
        arrows.push(CfkArrow { from: format!("y{}", j + 1), to: format!("x{j}"), z: 0, w: h });
        arrows.push(CfkArrow { from: format!("y{}", j + 1), to: format!("x{}", j + 1), z: v, w: 0 });
    }
    CfkData { generators: gens, arrows }
}

pub fn knot(data: &CfkData, name: &str) -> TangleComplex {
    TangleComplex::from_knot_cfk(data).expect("corpus knot imports").with_metadata(name)
}

pub fn trefoil() -> TangleComplex {
    knot(&trefoil_cfk(), "trefoil")
}

pub fn figure_eight() -> TangleComplex {
    knot(&figure_eight_cfk(), "figure-eight")
}

pub fn torus_3_4() -> TangleComplex {
    knot(&staircase_cfk(&[1, 2, 2, 1]), "T(3,4)")
}

pub fn torus_2_5() -> TangleComplex {
    knot(&staircase_cfk(&[1, 1, 1, 1]), "T(2,5)")
}

/// A symmetric staircase with 1 to 3 stairs and steps of length 1 to 3.
pub fn random_staircase_cfk(rng: &mut impl Rng) -> CfkData {
    let half = rng.gen_range(1..=3);
    let mut steps: Vec<u32> = (0..half).map(|_| rng.gen_range(1..=3)).collect();
    let back: Vec<u32> = steps.iter().rev().copied().collect();
    steps.extend(back);
    staircase_cfk(&steps)
}

/// Two unknotted components over `link_graph(2)` whose two arrows cancel
/// once specialized at any `t`.
pub fn unlink() -> TangleComplex {
    let half = Rational::new(1.into(), 2.into());
    TangleComplex::new(
        LabeledGraph::link_graph(2),
        vec![
            Generator { id: "x".into(), gradings: vec![-half.clone(); 4] },
            Generator { id: "y".into(), gradings: vec![half; 4] },
        ],
        vec![Arrow { from: 0, to: 1, exp: vec![1, 0, 1, 0] }, Arrow { from: 0, to: 1, exp: vec![0, 1, 0, 1] }],
        "two-component unlink",
    )
    .expect("valid")
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub complex: TangleComplex,
    /// Built from knots in S³, so the jump parity statement applies.
    pub knot_like: bool,
}

fn entry(name: impl Into<String>, complex: TangleComplex, knot_like: bool) -> Entry {
    let name = name.into();
    Entry { complex: complex.with_metadata(name.clone()), name, knot_like }
}

/// The regression corpus: 52 complexes, deterministic.
pub fn corpus() -> Vec<Entry> {
    let t = trefoil();
    let mt = mirror(&t);
    let e8 = figure_eight();
    let t34 = torus_3_4();
    let t25 = torus_2_5();
    let ok = |r: crate::Result<TangleComplex>| r.expect("corpus construction");

    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(entry(format!("unknot Θ_{n}"), unknot(n), n >= 2));
    }
    for d in [int(0), int(2), int(-2)] {
        out.push(entry(format!("Θ₁ d={d}"), theta1(d), false));
    }
    for (name, c) in [
        ("trefoil", &t),
        ("mirror trefoil", &mt),
        ("figure-eight", &e8),
        ("T(3,4)", &t34),
        ("T(2,5)", &t25),
    ] {
        out.push(entry(name, c.clone(), true));
    }
    out.push(entry("mirror T(3,4)", mirror(&t34), true));
    out.push(entry("mirror T(2,5)", mirror(&t25), true));

    let mut r = rng(0x5eed);
    for k in 0..12 {
        out.push(entry(format!("staircase #{k}"), knot(&random_staircase_cfk(&mut r), ""), true));
    }

    for (name, a, b) in [
        ("trefoil # trefoil", &t, &t),
        ("trefoil # mirror trefoil", &t, &mt),
        ("trefoil # figure-eight", &t, &e8),
        ("figure-eight # figure-eight", &e8, &e8),
        ("T(3,4) # trefoil", &t34, &t),
        ("T(2,5) # mirror trefoil", &t25, &mt),
        ("T(3,4) # mirror T(3,4)", &t34, &mirror(&t34)),
    ] {
        out.push(entry(name, ok(tensor(a, b)), true));
    }
    out.push(entry("trefoil # trefoil # trefoil", ok(tensor(&ok(tensor(&t, &t)), &t)), true));

    for (name, c, slot, extra) in [
        ("trefoil stabilized at 1", &t, 1, 1),
        ("trefoil stabilized at 2", &t, 2, 1),
        ("trefoil stabilized twice at 2", &t, 2, 2),
        ("figure-eight stabilized at 1", &e8, 1, 1),
        ("T(3,4) stabilized at 2", &t34, 2, 1),
        ("mirror trefoil stabilized twice at 1", &mt, 1, 2),
        ("unknot Θ_2 stabilized twice at 1", &unknot(2), 1, 2),
    ] {
        out.push(entry(name, ok(stabilize(c, slot, extra)), true));
    }
    let t_e8 = ok(tensor(&t, &e8));
    out.push(entry("trefoil # figure-eight stabilized at 2", ok(stabilize(&t_e8, 2, 1)), true));
    out.push(entry(
        "stabilized trefoil # stabilized mirror",
        ok(tensor(&ok(stabilize(&t, 2, 1)), &ok(stabilize(&mt, 2, 1)))),
        true,
    ));

    let st1 = ok(stabilize(&t, 1, 1));
    for (name, a, b) in [
        ("trefoil glued to trefoil", &t, &t),
        ("trefoil glued to unknot Θ_3", &t, &unknot(3)),
        ("stabilized trefoil glued to trefoil", &st1, &t),
        ("trefoil glued to T(2,5)", &t, &t25),
        ("figure-eight glued to trefoil", &e8, &t),
        ("T(3,4) glued to mirror trefoil", &t34, &mt),
        ("trefoil glued to stabilized trefoil", &t, &st1),
    ] {
        out.push(entry(name, ok(glue(a, b)), true));
    }

    out.push(entry("two-component unlink", unlink(), false));
    out
}

/// Pairs of Θ complexes over the same number of edges, for additivity checks.
pub fn tensor_pairs() -> Vec<(Entry, Entry)> {
    let all = corpus();
    let find = |n: &str| all.iter().find(|e| e.name == n).cloned().expect("corpus name");
    [
        ("trefoil", "trefoil"),
        ("trefoil", "mirror trefoil"),
        ("trefoil", "figure-eight"),
        ("T(3,4)", "trefoil"),
        ("T(2,5)", "mirror T(3,4)"),
        ("staircase #0", "staircase #1"),
        ("unknot Θ_2", "T(3,4)"),
        ("trefoil stabilized at 2", "trefoil stabilized at 1"),
        ("unknot Θ_3", "trefoil stabilized at 1"),
        ("T(3,4) stabilized at 2", "figure-eight stabilized at 1"),
    ]
    .into_iter()
    .map(|(a, b)| (find(a), find(b)))
    .collect()
}

/// A balanced bipartite graph with 1 to 4 vertices per side and at most
/// `max_edges` edges, containing a planted perfect matching.
pub fn random_balanced_graph(rng: &mut impl Rng, max_edges: usize) -> LabeledGraph {
    let side = rng.gen_range(1..=4.min(max_edges));
    let pos: Vec<String> = (1..=side).map(|i| format!("p{i}")).collect();
    let neg: Vec<String> = (1..=side).map(|i| format!("n{i}")).collect();
    let mut perm: Vec<usize> = (0..side).collect();
    perm.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = perm.iter().enumerate().map(|(i, &j)| (i, j)).collect();
    let total = rng.gen_range(side..=max_edges);
    while pairs.len() < total {
        pairs.push((rng.gen_range(0..side), rng.gen_range(0..side)));
    }
    pairs.shuffle(rng);
    let edges = pairs.into_iter().map(|(i, j)| EdgeDescription::Pair([neg[i].clone(), pos[j].clone()])).collect();
    validate_graph(&GraphDescription { pos, neg, edges }).expect("balanced graph is valid")
}

/// A random convex combination of the matching vertices. With `interior`
/// every coefficient is positive.
pub fn random_point(g: &LabeledGraph, matchings: &[Matching], rng: &mut impl Rng, interior: bool) -> WeightVector {
    let lo = if interior { 1 } else { 0 };
    let mut weights: Vec<i64> = matchings.iter().map(|_| rng.gen_range(lo..=6)).collect();
    if weights.iter().all(|&w| w == 0) {
        let k = rng.gen_range(0..weights.len());
        weights[k] = 1;
    }
    let sum: i64 = weights.iter().sum();
    let mut t = vec![int(0); g.edge_count()];
    for (m, w) in matchings.iter().zip(&weights) {
        for &e in m.edges() {
            t[e] += Rational::new((2 * w).into(), sum.into());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::upsilon_at;
    use crate::rational::ratio;

    #[test]
    fn corpus_is_large_and_valid() {
        let c = corpus();
        assert!(c.len() >= 50);
        for e in &c {
            assert!(e.complex.validate().is_valid(), "{}", e.name);
        }
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn torus_3_4_gradings() {
        let d = staircase_cfk(&[1, 2, 2, 1]);
        let ma: Vec<(&str, &str)> = d.generators.iter().map(|g| (g.M.as_str(), g.A.as_str())).collect();
        assert_eq!(ma, vec![("0", "3"), ("-1", "2"), ("-2", "0"), ("-5", "-2"), ("-6", "-3")]);
    }

    #[test]
    fn trefoil_matches_hand_gradings() {
        let t = trefoil();
        let gr: Vec<_> = t.generators().iter().map(|g| g.gradings.clone()).collect();
        assert_eq!(gr, vec![vec![int(-2), int(0)], vec![int(-1), int(-1)], vec![int(0), int(-2)]]);
        assert_eq!(upsilon_at(&t, &[int(1), int(1)]).unwrap(), vec![int(-1)]);
    }

    #[test]
    fn random_graphs_have_matchings() {
        let mut r = rng(1);
        for _ in 0..50 {
            let g = random_balanced_graph(&mut r, 12);
            assert!(g.edge_count() <= 12);
            let ms = g.enumerate_matchings();
            assert!(!ms.is_empty());
            let t = random_point(&g, &ms, &mut r, true);
            assert!(crate::polytope::contains(&g, &t));
        }
    }

    #[test]
    fn figure_eight_is_flat() {
        let e = figure_eight();
        for t in [[int(1), int(1)], [ratio(1, 3), ratio(5, 3)]] {
            assert_eq!(upsilon_at(&e, &t).unwrap(), vec![int(0)]);
        }
    }
}
