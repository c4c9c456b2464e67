//! Upsilon along segments of `L_G`, and the invariants read off its slopes.
//!
//! Along a segment every `gr_t(x)` is affine on each stretch that stays inside
//! one top simplex, and each Upsilon value is one of these generator lines.
//! Since Upsilon is continuous it can only switch lines where two lines cross,
//! so an interval on which Upsilon meets its chord at every interior crossing
//! point is a single linear piece. Reconstruction bisects until every interval
//! passes that test, which makes accepted pieces exact rather than sampled.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::Evaluator;
use crate::polytope::{require_in_polytope, WeightVector};
use crate::rational::{int, is_integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentOptions {
    /// Bisection depth before an interval is accepted uncertified.
    pub max_depth: u32,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        SegmentOptions { max_depth: 20 }
    }
}

/// A continuous piecewise-linear function of `s ∈ [0, 1]` along
/// `t(s) = start + s (end - start)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    pub start: WeightVector,
    pub end: WeightVector,
    /// Sorted, starting at 0 and ending at 1.
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
}

impl PLFunction {
    pub fn value_at(&self, s: &Rational) -> Option<Rational> {
        let b = &self.breakpoints;
        if s < &b[0] || s > b.last()? {
            return None;
        }
        let k = b.partition_point(|x| x < s);
        if &b[k] == s {
            return Some(self.values[k].clone());
        }
        let (s0, s1) = (&b[k - 1], &b[k]);
        let (v0, v1) = (&self.values[k - 1], &self.values[k]);
        Some(v0 + (v1 - v0) * (s - s0) / (s1 - s0))
    }

    /// Slope on each piece.
    pub fn slopes(&self) -> Vec<Rational> {
        (1..self.breakpoints.len())
            .map(|k| {
                (&self.values[k] - &self.values[k - 1]) / (&self.breakpoints[k] - &self.breakpoints[k - 1])
            })
            .collect()
    }

    /// Breakpoints strictly inside the segment.
    pub fn interior_breakpoints(&self) -> &[Rational] {
        let n = self.breakpoints.len();
        if n <= 2 {
            &[]
        } else {
            &self.breakpoints[1..n - 1]
        }
    }

    /// Slope of the piece ending at or containing `s`.
    pub fn slope_left(&self, s: &Rational) -> Option<Rational> {
        let k = self.breakpoints.partition_point(|x| x < s);
        (k > 0 && k < self.breakpoints.len()).then(|| self.slopes()[k - 1].clone())
    }

    /// Slope of the piece starting at or containing `s`.
    pub fn slope_right(&self, s: &Rational) -> Option<Rational> {
        let k = self.breakpoints.partition_point(|x| x <= s);
        (k > 0 && k < self.breakpoints.len()).then(|| self.slopes()[k - 1].clone())
    }
}

/// Upsilon along a segment: one function per index, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentProfile {
    pub functions: Vec<PLFunction>,
    /// False when some interval hit the depth limit without passing the test.
    pub certified: bool,
    /// Number of distinct points at which Upsilon was computed.
    pub evaluations: usize,
}

impl SegmentProfile {
    /// The union of all functions' breakpoints.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let all: BTreeSet<&Rational> = self.functions.iter().flat_map(|f| &f.breakpoints).collect();
        all.into_iter().cloned().collect()
    }
}

pub fn point_on(t0: &[Rational], t1: &[Rational], s: &Rational) -> WeightVector {
    t0.iter().zip(t1).map(|(a, b)| a + s * (b - a)).collect()
}

struct Reconstructor<'e, 'a> {
    ev: &'e Evaluator<'a>,
    t0: &'e [Rational],
    t1: &'e [Rational],
    memo: Mutex<BTreeMap<Rational, Vec<Rational>>>,
}

impl Reconstructor<'_, '_> {
    fn eval_many(&self, points: &[Rational]) -> Result<()> {
        let missing: Vec<&Rational> = {
            let memo = self.memo.lock().unwrap();
            points.iter().filter(|s| !memo.contains_key(*s)).collect()
        };
        let values: Vec<(Rational, Vec<Rational>)> = missing
            .into_par_iter()
            .map(|s| Ok((s.clone(), self.ev.upsilon(&point_on(self.t0, self.t1, s))?)))
            .collect::<Result<_>>()?;
        self.memo.lock().unwrap().extend(values);
        Ok(())
    }

    fn value(&self, s: &Rational) -> Vec<Rational> {
        self.memo.lock().unwrap()[s].clone()
    }

    /// Split points where the segment enters or leaves a top simplex.
    fn simplex_breaks(&self) -> Result<BTreeSet<Rational>> {
        let mut cuts: BTreeSet<Rational> = [int(0), int(1)].into_iter().collect();
        if self.t0 == self.t1 {
            return Ok(cuts);
        }
        let dc = self.ev.delta();
        for simplex in dc.top_simplices() {
            let (Some(b0), Some(b1)) = (dc.barycentric(simplex, self.t0), dc.barycentric(simplex, self.t1)) else {
                return Err(Error::NotInPolytope("segment leaves the affine hull".into()));
            };
            let (mut lo, mut hi) = (int(0), int(1));
            for (x0, x1) in b0.iter().zip(&b1) {
                let d = x1 - x0;
                if d == int(0) {
                    if x0 < &int(0) {
                        hi = int(-1);
                    }
                } else {
                    let root = -x0 / &d;
                    if d > int(0) {
                        lo = lo.max(root);
                    } else {
                        hi = hi.min(root);
                    }
                }
            }
            if lo < hi {
                cuts.insert(lo);
                cuts.insert(hi);
            }
        }
        Ok(cuts)
    }

    fn run(&self, opts: &SegmentOptions) -> Result<SegmentProfile> {
        let cuts: Vec<Rational> = self.simplex_breaks()?.into_iter().collect();
        self.eval_many(&cuts)?;
        let mut accepted: Vec<(Rational, Rational)> = Vec::new();
        let mut certified = true;
        for w in cuts.windows(2) {
            certified &= self.certify_piece(&w[0], &w[1], opts, &mut accepted)?;
        }
        accepted.sort();

        let mut points: Vec<Rational> = accepted.iter().map(|(a, _)| a.clone()).collect();
        points.push(int(1));
        points.dedup();
        let rank = self.value(&points[0]).len();
        let functions = (0..rank)
            .map(|k| {
                let vals: Vec<Rational> = points.iter().map(|s| self.value(s)[k].clone()).collect();
                merge_collinear(self.t0, self.t1, &points, &vals)
            })
            .collect();
        let evaluations = self.memo.lock().unwrap().len();
        Ok(SegmentProfile { functions, certified, evaluations })
    }

    /// Bisects `[sa, sb]`, on which every generator grading is affine in `s`.
    fn certify_piece(
        &self,
        sa: &Rational,
        sb: &Rational,
        opts: &SegmentOptions,
        accepted: &mut Vec<(Rational, Rational)>,
    ) -> Result<bool> {
        let ga = self.ev.gradings(&point_on(self.t0, self.t1, sa))?;
        let gb = self.ev.gradings(&point_on(self.t0, self.t1, sb))?;
        let len = sb - sa;
        let mut lines: Vec<(Rational, Rational)> =
            ga.into_iter().zip(gb).map(|(a, b)| { let m = (&b - &a) / &len; (a, m) }).collect();
        lines.sort();
        lines.dedup();
        let slopes: BTreeSet<Rational> = lines.iter().map(|(_, m)| m.clone()).collect();
        let mut crossings = BTreeSet::new();
        for (i, (ai, mi)) in lines.iter().enumerate() {
            for (aj, mj) in &lines[i + 1..] {
                if mi != mj {
                    let c = sa + (aj - ai) / (mi - mj);
                    if &c > sa && &c < sb {
                        crossings.insert(c);
                    }
                }
            }
        }

        let mut certified = true;
        let mut stack = vec![(sa.clone(), sb.clone(), 0u32)];
        while let Some((a, b, depth)) = stack.pop() {
            let mid = (&a + &b) / int(2);
            let inside: Vec<Rational> = crossings
                .range((std::ops::Bound::Excluded(&a), std::ops::Bound::Excluded(&b)))
                .cloned()
                .collect();
            let mut probe = inside.clone();
            probe.push(mid.clone());
            self.eval_many(&probe)?;

            let (va, vb) = (self.value(&a), self.value(&b));
            let on_chord = |s: &Rational| {
                let v = self.value(s);
                v.iter().zip(va.iter().zip(&vb)).all(|(x, (ya, yb))| x == &(ya + (yb - ya) * (s - &a) / (&b - &a)))
            };
            let vm = self.value(&mid);
            let halves_ok = (0..va.len()).all(|k| {
                slopes.contains(&((&vm[k] - &va[k]) / (&mid - &a)))
                    && slopes.contains(&((&vb[k] - &vm[k]) / (&b - &mid)))
            });
            let failing: Vec<&Rational> = inside.iter().filter(|c| !on_chord(c)).collect();
            if halves_ok && on_chord(&mid) && failing.is_empty() {
                accepted.push((a, b));
                continue;
            }
            if depth >= opts.max_depth {
                certified = false;
                accepted.push((a, b));
                continue;
            }
            let split = failing
                .into_iter()
                .min_by_key(|c| ((*c - &mid).abs(), (*c).clone()))
                .cloned()
                .unwrap_or(mid);
            stack.push((split.clone(), b, depth + 1));
            stack.push((a, split, depth + 1));
        }
        Ok(certified)
    }
}

fn merge_collinear(t0: &[Rational], t1: &[Rational], s: &[Rational], v: &[Rational]) -> PLFunction {
    let mut bs = vec![s[0].clone()];
    let mut vs = vec![v[0].clone()];
    for k in 1..s.len() {
        if k + 1 < s.len() {
            let left = (&v[k] - &v[k - 1]) / (&s[k] - &s[k - 1]);
            let right = (&v[k + 1] - &v[k]) / (&s[k + 1] - &s[k]);
            if left == right {
                continue;
            }
        }
        bs.push(s[k].clone());
        vs.push(v[k].clone());
    }
    PLFunction { start: t0.to_vec(), end: t1.to_vec(), breakpoints: bs, values: vs }
}

/// Upsilon along `t0 → t1` as exact piecewise-linear functions.
pub fn reconstruct_segment(
    ev: &Evaluator,
    t0: &[Rational],
    t1: &[Rational],
    opts: &SegmentOptions,
) -> Result<SegmentProfile> {
    let g = ev.complex().graph();
    require_in_polytope(g, t0)?;
    require_in_polytope(g, t1)?;
    Reconstructor { ev, t0, t1, memo: Mutex::new(BTreeMap::new()) }.run(opts)
}

fn theta_edges(ev: &Evaluator, what: &str) -> Result<usize> {
    let c = ev.complex();
    if !c.is_theta() || c.edge_count() < 2 {
        return Err(Error::ShapeMismatch(format!("{what} needs a Θ_n complex with n ≥ 2")));
    }
    Ok(c.edge_count())
}

/// The matching vertex `t^i`: 2 on edge `i` (0-based), 0 elsewhere.
pub fn vertex_weight(n: usize, i: usize) -> WeightVector {
    (0..n).map(|j| if j == i { int(2) } else { int(0) }).collect()
}

/// `t^i_a` on the line `l_i`: `a` off edge `i` and `2 - (n-1)a` on it.
pub fn line_point(n: usize, i: usize, a: &Rational) -> WeightVector {
    let on = int(2) - a * int(n as i64 - 1);
    (0..n).map(|j| if j == i { on.clone() } else { a.clone() }).collect()
}

/// Entry `(i, j)` is the derivative of Upsilon at `t^i` in the direction
/// that lowers `t_i` and raises `t_j` at unit rate, which equals `-τ(K_ij)`.
/// The diagonal is `None`.
pub fn tau_matrix(ev: &Evaluator, opts: &SegmentOptions) -> Result<Vec<Vec<Option<Rational>>>> {
    let n = theta_edges(ev, "tau")?;
    let mut out = vec![vec![None; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            let prof = reconstruct_segment(ev, &vertex_weight(n, i), &vertex_weight(n, j), opts)?;
            if !prof.certified {
                return Err(Error::Uncertified(format!("segment from vertex {} to vertex {}", i + 1, j + 1)));
            }
            // t(s) = t^i + 2s V^i_j
            *cell = Some(prof.functions[0].slopes()[0].clone() / int(2));
        }
    }
    Ok(out)
}

/// The jump of the derivative of Upsilon along `l_i` at `t^i_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpValue {
    /// 1-based edge index.
    pub edge: usize,
    pub a: Rational,
    pub left: Rational,
    pub right: Rational,
    pub delta: Rational,
}

impl JumpValue {
    /// `a · Δ`, an even integer for complexes over integer homology spheres.
    pub fn parity_product(&self) -> Rational {
        &self.a * &self.delta
    }
}

pub fn jump_delta(ev: &Evaluator, edge: usize, a: &Rational, opts: &SegmentOptions) -> Result<JumpValue> {
    let n = theta_edges(ev, "jumps")?;
    if edge == 0 || edge > n {
        return Err(Error::Range(format!("edge {edge} of a Θ_{n} complex")));
    }
    let i = edge - 1;
    let len = Rational::new(2.into(), (n as i64 - 1).into());
    if a <= &int(0) || a >= &len {
        return Err(Error::Boundary(format!("a = {a} is not inside (0, {len})")));
    }
    let mut h = (&len / int(64)).min(a / int(2)).min((&len - a) / int(2));
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..4 {
        let lo = line_point(n, i, &(a - &h));
        let hi = line_point(n, i, &(a + &h));
        let prof = reconstruct_segment(ev, &lo, &hi, opts)?;
        if prof.certified {
            let f = &prof.functions[0];
            // s ↦ a - h + 2hs
            let scale = &h * int(2);
            let left = f.slope_left(&half).expect("interior point") / &scale;
            let right = f.slope_right(&half).expect("interior point") / &scale;
            let delta = &right - &left;
            return Ok(JumpValue { edge, a: a.clone(), left, right, delta });
        }
        h /= int(2);
    }
    Err(Error::Uncertified(format!("jump at a = {a} on edge {edge}")))
}

/// The first components of the homomorphism `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiComponents {
    pub edge: usize,
    pub values: Vec<Rational>,
    /// 1-based positions of values that are not integers.
    pub non_integral: Vec<usize>,
}

/// Component `k` is `Δ_i(a_k) / ((2k+1)(n-1))` at `a_k = 2 / ((2k+1)(n-1))`.
pub fn f_i_components(ev: &Evaluator, edge: usize, count: usize, opts: &SegmentOptions) -> Result<FiComponents> {
    let n = theta_edges(ev, "f_i")?;
    if count == 0 {
        return Err(Error::Range("at least one component is needed".into()));
    }
    let values: Vec<Rational> = (1..=count)
        .into_par_iter()
        .map(|k| {
            let d = int(((2 * k + 1) * (n - 1)) as i64);
            let a = int(2) / &d;
            Ok(jump_delta(ev, edge, &a, opts)?.delta / d)
        })
        .collect::<Result<_>>()?;
    let non_integral = values.iter().enumerate().filter(|(_, v)| !is_integer(v)).map(|(k, _)| k + 1).collect();
    Ok(FiComponents { edge, values, non_integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{gen, trefoil};
    use crate::complex::{stabilize, tensor, TangleComplex};
    use crate::graph::LabeledGraph;
    use crate::rational::ratio;

    fn opts() -> SegmentOptions {
        SegmentOptions::default()
    }

    fn unknot(n: usize) -> TangleComplex {
        TangleComplex::new(LabeledGraph::theta(n), vec![gen("x", &vec![int(0); n])], vec![], "").unwrap()
    }

    #[test]
    fn unknot_is_flat() {
        let c = unknot(2);
        let ev = Evaluator::new(&c).unwrap();
        let p = reconstruct_segment(&ev, &[int(2), int(0)], &[int(0), int(2)], &opts()).unwrap();
        assert!(p.certified);
        assert_eq!(p.functions[0].breakpoints, vec![int(0), int(1)]);
        assert_eq!(p.functions[0].values, vec![int(0), int(0)]);
    }

    #[test]
    fn trefoil_is_a_v() {
        let c = trefoil();
        let ev = Evaluator::new(&c).unwrap();
        let p = reconstruct_segment(&ev, &[int(2), int(0)], &[int(0), int(2)], &opts()).unwrap();
        let f = &p.functions[0];
        assert!(p.certified);
        assert_eq!(f.breakpoints, vec![int(0), ratio(1, 2), int(1)]);
        assert_eq!(f.values, vec![int(0), int(-1), int(0)]);
        for k in 0..=8 {
            let s = ratio(k, 8);
            let direct = ev.upsilon(&point_on(&f.start, &f.end, &s)).unwrap();
            assert_eq!(f.value_at(&s).unwrap(), direct[0]);
        }
    }

    #[test]
    fn trefoil_square_doubles() {
        let c = trefoil();
        let sq = tensor(&c, &c).unwrap();
        let (ev, ev2) = (Evaluator::new(&c).unwrap(), Evaluator::new(&sq).unwrap());
        let ends = ([int(2), int(0)], [int(0), int(2)]);
        let f = reconstruct_segment(&ev, &ends.0, &ends.1, &opts()).unwrap().functions.remove(0);
        let g = reconstruct_segment(&ev2, &ends.0, &ends.1, &opts()).unwrap().functions.remove(0);
        assert_eq!(g.breakpoints, f.breakpoints);
        assert_eq!(g.values, f.values.iter().map(|v| v * int(2)).collect::<Vec<_>>());
    }

    #[test]
    fn slopes_at_breakpoints() {
        let f = PLFunction {
            start: vec![],
            end: vec![],
            breakpoints: vec![int(0), ratio(1, 2), int(1)],
            values: vec![int(0), int(-1), int(0)],
        };
        assert_eq!(f.slope_left(&ratio(1, 2)), Some(int(-2)));
        assert_eq!(f.slope_right(&ratio(1, 2)), Some(int(2)));
        assert_eq!(f.slope_right(&int(0)), Some(int(-2)));
        assert_eq!(f.slope_left(&int(0)), None);
        assert_eq!(f.slope_right(&int(1)), None);
        assert_eq!(f.interior_breakpoints(), &[ratio(1, 2)]);
    }

    #[test]
    fn tau_of_trefoil_and_unknots() {
        let c = trefoil();
        let m = tau_matrix(&Evaluator::new(&c).unwrap(), &opts()).unwrap();
        assert_eq!(m[0][1], Some(int(-1)));
        assert_eq!(m[1][0], Some(int(-1)));
        let u = unknot(2);
        assert_eq!(tau_matrix(&Evaluator::new(&u).unwrap(), &opts()).unwrap()[0][1], Some(int(0)));
        let u3 = unknot(3);
        let m = tau_matrix(&Evaluator::new(&u3).unwrap(), &opts()).unwrap();
        assert!(m.iter().flatten().flatten().all(|x| x == &int(0)));
    }

    #[test]
    fn trefoil_jump() {
        let c = trefoil();
        let ev = Evaluator::new(&c).unwrap();
        let j = jump_delta(&ev, 1, &int(1), &opts()).unwrap();
        assert_eq!(j.delta, int(2));
        assert_eq!(j.parity_product(), int(2));
        assert_eq!(jump_delta(&ev, 1, &ratio(1, 3), &opts()).unwrap().delta, int(0));
        assert_eq!(jump_delta(&ev, 1, &int(2), &opts()).unwrap_err().code(), "E_BOUNDARY");
        assert_eq!(jump_delta(&ev, 1, &int(0), &opts()).unwrap_err().code(), "E_BOUNDARY");
    }

    #[test]
    fn f_i_of_trefoil_vanishes() {
        let c = trefoil();
        let f = f_i_components(&Evaluator::new(&c).unwrap(), 1, 3, &opts()).unwrap();
        assert_eq!(f.values, vec![int(0); 3]);
        assert!(f.non_integral.is_empty());
    }

    #[test]
    fn stabilized_trefoil_matches_regrouped_weights() {
        let c = trefoil();
        let s = stabilize(&c, 2, 1).unwrap();
        let (ev, evs) = (Evaluator::new(&c).unwrap(), Evaluator::new(&s).unwrap());
        let t = [ratio(1, 2), ratio(2, 3), ratio(5, 6)];
        let regrouped = [t[0].clone(), &t[1] + &t[2]];
        assert_eq!(evs.upsilon(&t).unwrap(), ev.upsilon(&regrouped).unwrap());
    }
}
