//! The acceptance checks, runnable from the library, the CLI and the tests.
//!
//! Each check is exact: rationals are compared with `==` and nothing is
//! sampled with a tolerance. Random inputs come from a seeded ChaCha stream.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::complex::{glue, stabilize, tensor, Arrow, Generator};
use crate::corpus::{self, Entry};
use crate::error::Result;
use crate::graph::LabeledGraph;
use crate::homology::{d_invariant, reduce, Evaluator};
use crate::oracle::{brute_matchings, persistence_reduce};
use crate::pl::{f_i_components, jump_delta, reconstruct_segment, tau_matrix, vertex_weight, SegmentOptions};
use crate::polytope::{decompose_to_matchings, DeltaComplex};
use crate::rational::{int, ratio, Rational};
use crate::TangleComplex;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    /// Failures, or a short summary when everything passed.
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({} checks, {:.2}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.checks,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

/// Collects failures for one criterion.
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {} ({})", what(), e, e.code()));
                None
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    fn finish(self, id: u32, name: &'static str, start: Instant, summary: String) -> CriterionReport {
        let passed = self.failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!("{} failures, first: {}", self.failures.len(), shown.join(" | "))
        };
        CriterionReport { id, name, passed, checks: self.checks, detail, elapsed: start.elapsed() }
    }
}

fn random_t(c: &TangleComplex, rng: &mut impl Rng) -> Vec<Rational> {
    corpus::random_point(c.graph(), c.matchings(), rng, false)
}

/// Criterion 1: matching enumeration against brute force, and exact
/// convex decomposition of interior points.
pub fn polytope_correctness(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let tallies: Vec<Tally> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let mut tally = Tally::new();
            let mut rng = corpus::rng(seed ^ (k << 20) ^ 0x1);
            let g = corpus::random_balanced_graph(&mut rng, 12);
            let ms = g.enumerate_matchings();
            if let Some(brute) = tally.record(brute_matchings(&g), || format!("graph {k}")) {
                tally.check(ms == brute, || format!("graph {k}: enumeration differs from brute force"));
            }
            for _ in 0..50 {
                let t = corpus::random_point(&g, &ms, &mut rng, true);
                if let Some(cc) = tally.record(decompose_to_matchings(&g, &t), || format!("graph {k}")) {
                    tally.check(cc.is_valid() && cc.evaluate(&g) == t, || format!("graph {k}: round trip failed"));
                }
            }
            tally
        })
        .collect();
    let mut tally = Tally::new();
    tallies.into_iter().for_each(|t| tally.merge(t));
    let elapsed = start.elapsed();
    tally.check(elapsed < Duration::from_secs(30), || format!("took {:.1}s, limit 30s", elapsed.as_secs_f64()));
    tally.finish(1, "polytope correctness", start, "200 graphs, 10000 round trips".into())
}

/// Criterion 2: hand-derived triangulations and exact point location.
pub fn delta_soundness(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let square = LabeledGraph::link_graph(2);
    let c4 = LabeledGraph::cycle(2);
    // (graph, dimension, top simplices)
    let cases: [(&str, LabeledGraph, usize, Vec<Vec<usize>>); 4] = [
        ("Θ₂", LabeledGraph::theta(2), 1, vec![vec![0, 1]]),
        ("Θ₃", LabeledGraph::theta(3), 2, vec![vec![0, 1, 2]]),
        ("C₄", c4, 1, vec![vec![0, 1]]),
        ("2-link square", square, 2, vec![vec![0, 1, 3], vec![0, 2, 3]]),
    ];
    let mut rng = corpus::rng(seed ^ 0x2);
    for (name, g, dim, tops) in &cases {
        let Some(dc) = tally.record(DeltaComplex::build(g), || name.to_string()) else { continue };
        tally.check(dc.dimension() == *dim, || format!("{name}: dimension {}", dc.dimension()));
        tally.check(dc.top_simplices() == tops.as_slice(), || format!("{name}: top simplices {:?}", dc.top_simplices()));
        for _ in 0..250 {
            let t = corpus::random_point(g, dc.matchings(), &mut rng, false);
            if let Some(loc) = tally.record(dc.locate(g, &t), || format!("{name}: locate")) {
                let positive = loc.coords.iter().all(|x| x > &int(0));
                let sum: Rational = loc.coords.iter().sum();
                tally.check(positive && sum == int(1) && dc.reconstruct(&loc) == t, || {
                    format!("{name}: reconstruction of {t:?}")
                });
            }
        }
    }
    let diagonal = DeltaComplex::build(&LabeledGraph::link_graph(2)).map(|dc| dc.simplices()[1].contains(&vec![0, 3]));
    tally.check(matches!(diagonal, Ok(true)), || "square lacks its diagonal".into());
    tally.finish(2, "delta-complex soundness", start, "4 triangulations, 1000 located points".into())
}

/// Criterion 3: every specialized entry obeys the grading law and ∂² = 0.
pub fn grading_law(seed: u64, entries: &[Entry]) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    for (k, e) in entries.iter().enumerate() {
        let Some(ev) = tally.record(Evaluator::new(&e.complex), || e.name.clone()) else { continue };
        let mut rng = corpus::rng(seed ^ 0x3 ^ ((k as u64) << 16));
        for _ in 0..20 {
            let t = random_t(&e.complex, &mut rng);
            if let Some(tc) = tally.record(ev.t_modify(&t), || e.name.clone()) {
                tally.check(tc.is_homogeneous() && tc.squares_to_zero(), || format!("{} at {t:?}", e.name));
            }
        }
    }
    let n = entries.len();
    tally.finish(3, "grading law", start, format!("{n} complexes x 20 points"))
}

/// Criterion 4: pivot reduction against the persistence oracle.
pub fn oracle_equivalence(seed: u64, entries: &[Entry]) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    for (k, e) in entries.iter().enumerate() {
        let Some(ev) = tally.record(Evaluator::new(&e.complex), || e.name.clone()) else { continue };
        let mut rng = corpus::rng(seed ^ 0x4 ^ ((k as u64) << 16));
        for _ in 0..10 {
            let t = random_t(&e.complex, &mut rng);
            if let Some(tc) = tally.record(ev.t_modify(&t), || e.name.clone()) {
                let (h, b) = (reduce(&tc), persistence_reduce(&tc));
                tally.check(h.free == b.infinite && h.torsion == b.finite, || format!("{} at {t:?}", e.name));
            }
        }
    }
    let short = tally.checks < 500;
    let count = tally.checks;
    tally.check(!short, || format!("only {count} comparisons"));
    tally.finish(4, "oracle equivalence", start, format!("{count} comparisons"))
}

/// Criterion 5: the trefoil and figure-eight through import, segments, jumps
/// and τ.
pub fn knot_recovery() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let opts = SegmentOptions::default();

    let tref = TangleComplex::from_knot_cfk(&corpus::trefoil_cfk());
    if let Some(c) = tally.record(tref, || "trefoil import".into()) {
        let ev = Evaluator::new(&c).expect("valid complex");
        let seg = reconstruct_segment(&ev, &vertex_weight(2, 0), &vertex_weight(2, 1), &opts);
        if let Some(p) = tally.record(seg, || "trefoil segment".into()) {
            let f = &p.functions[0];
            tally.check(p.certified, || "trefoil segment uncertified".into());
            tally.check(f.values[0] == int(0) && f.values.last() == Some(&int(0)), || {
                format!("trefoil vertex values {:?}", f.values)
            });
            let inner = f.interior_breakpoints();
            tally.check(inner.len() == 1, || format!("trefoil has {} interior breakpoints", inner.len()));
            if let Some(s) = inner.first() {
                // t(s) = (2 - 2s, 2s) = t^1_a with a = 2s
                let a = s * int(2);
                if let Some(j) = tally.record(jump_delta(&ev, 1, &a, &opts), || "trefoil jump".into()) {
                    tally.check(j.parity_product() == int(2), || format!("a·Δ = {}", j.parity_product()));
                }
            }
        }
        if let Some(m) = tally.record(tau_matrix(&ev, &opts), || "trefoil tau".into()) {
            for (i, j) in [(0, 1), (1, 0)] {
                let abs = m[i][j].clone().map(|x| if x < int(0) { -x } else { x });
                tally.check(abs == Some(int(1)), || format!("|τ| entry ({i},{j}) = {:?}", m[i][j]));
            }
        }
    }

    let e8 = TangleComplex::from_knot_cfk(&corpus::figure_eight_cfk());
    if let Some(c) = tally.record(e8, || "figure-eight import".into()) {
        let ev = Evaluator::new(&c).expect("valid complex");
        let seg = reconstruct_segment(&ev, &vertex_weight(2, 0), &vertex_weight(2, 1), &opts);
        if let Some(p) = tally.record(seg, || "figure-eight segment".into()) {
            let f = &p.functions[0];
            tally.check(p.certified && f.values.iter().all(|v| v == &int(0)) && f.breakpoints.len() == 2, || {
                format!("figure-eight is not identically zero: {:?}", f.values)
            });
        }
    }
    tally.finish(5, "knot recovery", start, "trefoil V with a·Δ = 2, |τ| = 1; figure-eight flat".into())
}

/// Criterion 6: Upsilon of a tensor product is the sum.
pub fn additivity(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let pairs = corpus::tensor_pairs();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let Some(ab) = tally.record(tensor(&a.complex, &b.complex), || format!("{} # {}", a.name, b.name)) else {
            continue;
        };
        let evs = [&a.complex, &b.complex, &ab].map(|c| Evaluator::new(c).expect("valid complex"));
        let mut rng = corpus::rng(seed ^ 0x6 ^ ((k as u64) << 16));
        for _ in 0..30 {
            let t = random_t(&ab, &mut rng);
            let vals: Vec<_> = evs.iter().map(|ev| ev.upsilon(&t)).collect();
            match (&vals[0], &vals[1], &vals[2]) {
                (Ok(x), Ok(y), Ok(z)) => {
                    tally.check(z.len() == 1 && z[0] == &x[0] + &y[0], || format!("{} # {} at {t:?}", a.name, b.name))
                }
                _ => tally.check(false, || format!("{} # {}: evaluation failed", a.name, b.name)),
            }
        }
    }
    tally.finish(6, "additivity", start, format!("{} pairs x 30 points", pairs.len()))
}

/// Criterion 7: the gluing formula with regrouped weights.
pub fn gluing(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let t = corpus::trefoil();
    let st = stabilize(&t, 1, 1).expect("stabilization");
    let cases = [
        ("trefoil, unknot Θ_2", t.clone(), corpus::unknot(2)),
        ("trefoil, unknot Θ_3", t.clone(), corpus::unknot(3)),
        ("unknot Θ_3, trefoil", corpus::unknot(3), t.clone()),
        ("trefoil, trefoil", t.clone(), t.clone()),
        ("stabilized trefoil, trefoil", st.clone(), t.clone()),
        ("trefoil, stabilized trefoil", t.clone(), st),
    ];
    for (k, (name, x, y)) in cases.iter().enumerate() {
        let Some(g) = tally.record(glue(x, y), || name.to_string()) else { continue };
        let (n, m) = (x.edge_count(), y.edge_count());
        let [evx, evy, evg] = [x, y, &g].map(|c| Evaluator::new(c).expect("valid complex"));
        let mut rng = corpus::rng(seed ^ 0x7 ^ ((k as u64) << 16));
        for _ in 0..20 {
            let tt = random_t(&g, &mut rng);
            let mut tx: Vec<Rational> = tt[..n - 1].to_vec();
            tx.push(tt[n - 1..].iter().sum());
            let mut ty: Vec<Rational> = tt[n - 1..].to_vec();
            ty.push(tt[..n - 1].iter().sum());
            debug_assert_eq!(ty.len(), m);
            match (evg.upsilon(&tt), evx.upsilon(&tx), evy.upsilon(&ty)) {
                (Ok(z), Ok(a), Ok(b)) => tally.check(z[0] == &a[0] + &b[0], || format!("{name} at {tt:?}")),
                _ => tally.check(false, || format!("{name}: evaluation failed")),
            }
        }
    }
    tally.finish(7, "gluing", start, format!("{} gluings x 20 points", cases.len()))
}

/// Criterion 8: d-invariants of Θ₁ complexes.
pub fn d_invariants() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    for d in [int(0), int(2), int(-2), ratio(1, 2), ratio(-3, 4)] {
        let c = corpus::theta1(d.clone());
        if let Some(v) = tally.record(d_invariant(&c), || format!("Θ₁ d={d}")) {
            tally.check(v == d, || format!("Θ₁ d={d} gave {v}"));
        }
    }
    // a cancelling pair and a torsion pair next to the surviving generator
    let g = |id: &str, d: i64| Generator { id: id.into(), gradings: vec![int(d)] };
    let c = TangleComplex::new(
        LabeledGraph::theta(1),
        vec![g("a", 0), g("b", -1), g("c", 1), g("e", 2), g("x", -4)],
        vec![Arrow { from: 0, to: 1, exp: vec![0] }, Arrow { from: 2, to: 3, exp: vec![1] }],
        "",
    );
    if let Some(c) = tally.record(c, || "Θ₁ with pairs".into()) {
        if let Some(v) = tally.record(d_invariant(&c), || "Θ₁ with pairs".into()) {
            tally.check(v == int(-4), || format!("Θ₁ with pairs gave {v}"));
        }
    }
    tally.finish(8, "d-invariant", start, "S³ gives 0, free grading returned".into())
}

/// Criterion 9: f_i is additive under tensor products, and vanishes on the
/// unknot and the trefoil.
pub fn fi_homomorphism() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let opts = SegmentOptions::default();
    let k = 5;
    let fi = |c: &TangleComplex, i: usize| -> Result<Vec<Rational>> {
        Ok(f_i_components(&Evaluator::new(c)?, i, k, &opts)?.values)
    };
    for (name, c) in [("unknot", corpus::unknot(2)), ("trefoil", corpus::trefoil())] {
        for i in 1..=2 {
            if let Some(v) = tally.record(fi(&c, i), || format!("{name} f_{i}")) {
                tally.check(v.iter().all(|x| x == &int(0)), || format!("{name} f_{i} = {v:?}"));
            }
        }
    }
    if let Some(v) = tally.record(fi(&corpus::torus_3_4(), 1), || "T(3,4) f_1".into()) {
        let want: Vec<Rational> = [1, 0, 0, 0, 0].map(int).to_vec();
        tally.check(v == want, || format!("T(3,4) f_1 = {v:?}"));
    }
    let pairs: Vec<(Entry, Entry)> = corpus::tensor_pairs()
        .into_iter()
        .filter(|(a, _)| a.complex.edge_count() == 2)
        .take(4)
        .collect();
    for (a, b) in &pairs {
        let Some(ab) = tally.record(tensor(&a.complex, &b.complex), || a.name.clone()) else { continue };
        let (x, y, z) = (fi(&a.complex, 1), fi(&b.complex, 1), fi(&ab, 1));
        match (x, y, z) {
            (Ok(x), Ok(y), Ok(z)) => {
                let sum: Vec<Rational> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
                tally.check(z == sum, || format!("f_1({} # {}) = {z:?}, sum {sum:?}", a.name, b.name));
            }
            _ => tally.check(false, || format!("{} # {}: f_1 failed", a.name, b.name)),
        }
    }
    tally.finish(9, "f_i homomorphism", start, format!("{} pairs, K = {k}", pairs.len()))
}

/// Runs criteria 1 to 9 and reports the total time as criterion 10.
pub fn run(seed: u64) -> SelftestReport {
    let start = Instant::now();
    let entries = corpus::corpus();
    let mut criteria = vec![
        polytope_correctness(seed),
        delta_soundness(seed),
        grading_law(seed, &entries),
        oracle_equivalence(seed, &entries),
        knot_recovery(),
        additivity(seed),
        gluing(seed),
        d_invariants(),
        fi_homomorphism(),
    ];
    let elapsed = start.elapsed();
    let passed = elapsed < Duration::from_secs(120);
    criteria.push(CriterionReport {
        id: 10,
        name: "selftest runtime",
        passed,
        checks: 1,
        detail: format!("{:.2}s of 120s", elapsed.as_secs_f64()),
        elapsed,
    });
    SelftestReport { seed, criteria }
}
