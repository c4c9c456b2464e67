use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use theta_upsilon::complex::{mirror, stabilize, Arrow, Generator};
use theta_upsilon::corpus::{self, Entry};
use theta_upsilon::homology::{reduce, Evaluator};
use theta_upsilon::oracle::{brute_matchings, persistence_reduce};
use theta_upsilon::pl::{jump_delta, line_point, point_on, reconstruct_segment, vertex_weight, SegmentOptions};
use theta_upsilon::polytope::{decompose_to_matchings, loop_move};
use theta_upsilon::rational::{int, is_even_integer, Rational};
use theta_upsilon::TangleComplex;

fn entries() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(corpus::corpus)
}

/// Corpus entries whose Upsilon has rank one over Θ_n, n ≥ 2.
fn theta_entries() -> Vec<&'static Entry> {
    entries().iter().filter(|e| e.complex.is_theta() && e.complex.edge_count() >= 2).collect()
}

fn random_t(e: &Entry, rng: &mut impl Rng) -> Vec<Rational> {
    corpus::random_point(e.complex.graph(), e.complex.matchings(), rng, false)
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=24);
    Rational::new(rng.gen_range(0..=q).into(), q.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn segments_agree_with_pointwise_evaluation(k in 0usize..64, seed in any::<u64>()) {
        let list = theta_entries();
        let e = list[k % list.len()];
        let ev = Evaluator::new(&e.complex).unwrap();
        let mut rng = corpus::rng(seed);
        let (t0, t1) = (random_t(e, &mut rng), random_t(e, &mut rng));
        let p = reconstruct_segment(&ev, &t0, &t1, &SegmentOptions::default()).unwrap();
        prop_assert!(p.certified);
        let f = &p.functions[0];
        for _ in 0..25 {
            let s = small_rational(&mut rng);
            prop_assert_eq!(f.value_at(&s).unwrap(), ev.upsilon(&point_on(&t0, &t1, &s)).unwrap()[0].clone());
        }
        // breakpoint values are fresh evaluations, so the function is continuous there
        for (s, v) in f.breakpoints.iter().zip(&f.values) {
            prop_assert_eq!(v, &ev.upsilon(&point_on(&t0, &t1, s)).unwrap()[0]);
        }
    }

    #[test]
    fn reduction_matches_persistence(k in 0usize..64, seed in any::<u64>()) {
        let e = &entries()[k % entries().len()];
        let ev = Evaluator::new(&e.complex).unwrap();
        let mut rng = corpus::rng(seed);
        let tc = ev.t_modify(&random_t(e, &mut rng)).unwrap();
        let (h, b) = (reduce(&tc), persistence_reduce(&tc));
        prop_assert_eq!(h.free, b.infinite);
        prop_assert_eq!(h.torsion, b.finite);
    }

    #[test]
    fn reduction_ignores_generator_order(k in 0usize..64, seed in any::<u64>()) {
        let e = &entries()[k % entries().len()];
        let c = &e.complex;
        let mut rng = corpus::rng(seed);
        let mut order: Vec<usize> = (0..c.generators().len()).collect();
        order.shuffle(&mut rng);
        let mut place = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            place[old] = new;
        }
        let generators: Vec<Generator> = order.iter().map(|&i| c.generators()[i].clone()).collect();
        let arrows: Vec<Arrow> = c
            .arrows()
            .iter()
            .map(|a| Arrow { from: place[a.from], to: place[a.to], exp: a.exp.clone() })
            .collect();
        let shuffled = TangleComplex::new(c.graph().clone(), generators, arrows, "").unwrap();
        let t = random_t(e, &mut rng);
        let h1 = reduce(&Evaluator::new(c).unwrap().t_modify(&t).unwrap());
        let h2 = reduce(&Evaluator::new(&shuffled).unwrap().t_modify(&t).unwrap());
        prop_assert_eq!(h1, h2);
    }

    #[test]
    fn jumps_are_even(k in 0usize..64, num in 1i64..40, den in 1i64..40) {
        let list: Vec<&Entry> = theta_entries().into_iter().filter(|e| e.knot_like).collect();
        let e = list[k % list.len()];
        let n = e.complex.edge_count();
        let len = Rational::new(2.into(), (n as i64 - 1).into());
        let a = Rational::new(num.into(), den.into());
        prop_assume!(a > int(0) && a < len);
        let ev = Evaluator::new(&e.complex).unwrap();
        let j = jump_delta(&ev, 1 + k % n, &a, &SegmentOptions::default()).unwrap();
        prop_assert!(is_even_integer(&j.parity_product()), "{}: a·Δ = {}", e.name, j.parity_product());
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let g = corpus::random_balanced_graph(&mut rng, 12);
        let ms = g.enumerate_matchings();
        prop_assert_eq!(&ms, &brute_matchings(&g).unwrap());
        let t = corpus::random_point(&g, &ms, &mut rng, false);
        let c = decompose_to_matchings(&g, &t).unwrap();
        prop_assert!(c.is_valid());
        prop_assert_eq!(c.evaluate(&g), t);
    }

    #[test]
    fn mirroring_negates_knot_upsilon(k in 0usize..64, seed in any::<u64>()) {
        let list: Vec<&Entry> = theta_entries().into_iter().filter(|e| e.knot_like).collect();
        let e = list[k % list.len()];
        let m = mirror(&e.complex);
        let (ev, evm) = (Evaluator::new(&e.complex).unwrap(), Evaluator::new(&m).unwrap());
        let t = random_t(e, &mut corpus::rng(seed));
        prop_assert_eq!(evm.upsilon(&t).unwrap()[0].clone(), -ev.upsilon(&t).unwrap()[0].clone());
    }

    #[test]
    fn stabilization_regroups_weights(k in 0usize..64, seed in any::<u64>()) {
        let list = theta_entries();
        let e = list[k % list.len()];
        let n = e.complex.edge_count();
        let slot = 1 + k % n;
        let s = stabilize(&e.complex, slot, 1).unwrap();
        prop_assert_eq!(s.generators().len(), e.complex.generators().len());
        prop_assert!(s.validate().is_valid());
        let (ev, evs) = (Evaluator::new(&e.complex).unwrap(), Evaluator::new(&s).unwrap());
        let mut rng = corpus::rng(seed);
        let ts = corpus::random_point(s.graph(), s.matchings(), &mut rng, false);
        let mut t = ts[..n].to_vec();
        t[slot - 1] += &ts[n];
        prop_assert_eq!(evs.upsilon(&ts).unwrap(), ev.upsilon(&t).unwrap());
        // a zero weight on the new edge recovers the original point
        let mut padded = t.clone();
        padded.push(int(0));
        prop_assert_eq!(evs.upsilon(&padded).unwrap(), ev.upsilon(&t).unwrap());
    }

    #[test]
    fn loop_moves_stay_in_the_polytope(seed in any::<u64>()) {
        let g = theta_upsilon::LabeledGraph::cycle(3);
        let mut rng = corpus::rng(seed);
        let t = corpus::random_point(&g, &g.enumerate_matchings(), &mut rng, true);
        let moved = loop_move(&g, &t, &[0, 1, 2, 3, 4, 5]).unwrap();
        prop_assert!(theta_upsilon::polytope::contains(&g, &moved));
        prop_assert!(moved.iter().any(|x| x == &int(0)));
    }
}

#[test]
fn knot_upsilon_vanishes_at_vertices() {
    for e in theta_entries().into_iter().filter(|e| e.knot_like) {
        let ev = Evaluator::new(&e.complex).unwrap();
        for i in 0..e.complex.edge_count() {
            assert_eq!(ev.upsilon(&vertex_weight(e.complex.edge_count(), i)).unwrap(), vec![int(0)], "{}", e.name);
        }
    }
}

#[test]
fn line_points_sum_to_two() {
    for n in 2..6 {
        let a = Rational::new(1.into(), (n as i64).into());
        let t = line_point(n, 0, &a);
        assert_eq!(t.iter().sum::<Rational>(), int(2));
    }
}
