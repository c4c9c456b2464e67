//! Products, stabilization, gluing and relabeling of Θ-type complexes.

use super::{Arrow, Generator, TangleComplex};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::rational::{int, Rational};

fn require_theta(c: &TangleComplex, what: &str) -> Result<()> {
    if c.is_theta() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("{what} needs a Θ-type complex")))
    }
}

/// Tensor product over the strand ring: the vertex connected sum of two
/// Θ_n complexes on the same edge set.
pub fn tensor(c1: &TangleComplex, c2: &TangleComplex) -> Result<TangleComplex> {
    require_theta(c1, "tensor")?;
    require_theta(c2, "tensor")?;
    if c1.edge_count() != c2.edge_count() {
        return Err(Error::ShapeMismatch(format!(
            "tensor of complexes over {} and {} edges",
            c1.edge_count(),
            c2.edge_count()
        )));
    }
    let n2 = c2.generators().len();
    let pair = |i: usize, j: usize| i * n2 + j;
    let mut generators = Vec::with_capacity(c1.generators().len() * n2);
    for x in c1.generators() {
        for y in c2.generators() {
            generators.push(Generator {
                id: format!("({},{})", x.id, y.id),
                gradings: x.gradings.iter().zip(&y.gradings).map(|(a, b)| a + b).collect(),
            });
        }
    }
    let mut arrows = Vec::new();
    for a in c1.arrows() {
        for j in 0..n2 {
            arrows.push(Arrow { from: pair(a.from, j), to: pair(a.to, j), exp: a.exp.clone() });
        }
    }
    for b in c2.arrows() {
        for i in 0..c1.generators().len() {
            arrows.push(Arrow { from: pair(i, b.from), to: pair(i, b.to), exp: b.exp.clone() });
        }
    }
    let meta = format!("tensor({}, {})", c1.metadata, c2.metadata);
    TangleComplex::new(c1.graph().clone(), generators, arrows, meta)
}

/// Adds `extra` edges that copy edge `slot` (1-based): every arrow repeats its
/// `slot` exponent on them and their matchings take the `slot` gradings.
pub fn stabilize(c: &TangleComplex, slot: usize, extra: usize) -> Result<TangleComplex> {
    require_theta(c, "stabilize")?;
    let n = c.edge_count();
    if slot == 0 || slot > n {
        return Err(Error::BadSlot(format!("slot {slot} is not an edge of a complex over {n} edges")));
    }
    if extra == 0 {
        return Err(Error::Range("stabilization needs at least one new edge".into()));
    }
    let s = slot - 1;
    let g = LabeledGraph::theta_named(n + extra, &c.graph().pos_vertices()[0], &c.graph().neg_vertices()[0]);
    // Θ matchings are the single edges in order, so gradings extend by copies
    let generators = c
        .generators()
        .iter()
        .map(|x| {
            let mut gr = x.gradings.clone();
            gr.extend(std::iter::repeat_n(x.gradings[s].clone(), extra));
            Generator { id: x.id.clone(), gradings: gr }
        })
        .collect();
    let arrows = c
        .arrows()
        .iter()
        .map(|a| {
            let mut exp = a.exp.clone();
            exp.extend(std::iter::repeat_n(a.exp[s], extra));
            Arrow { from: a.from, to: a.to, exp }
        })
        .collect();
    let meta = format!("stabilize({}, {slot}, {extra})", c.metadata);
    TangleComplex::new(g, generators, arrows, meta)
}

/// Moves Θ edge `i` to position `perm[i]` (0-based).
pub fn permute_edges(c: &TangleComplex, perm: &[usize]) -> Result<TangleComplex> {
    require_theta(c, "permute_edges")?;
    let n = c.edge_count();
    let mut check = perm.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::ShapeMismatch(format!("{perm:?} is not a permutation of {n} edges")));
    }
    let place = |v: &[Rational]| {
        let mut out = vec![int(0); n];
        for (i, x) in v.iter().enumerate() {
            out[perm[i]] = x.clone();
        }
        out
    };
    let generators = c
        .generators()
        .iter()
        .map(|x| Generator { id: x.id.clone(), gradings: place(&x.gradings) })
        .collect();
    let arrows = c
        .arrows()
        .iter()
        .map(|a| {
            let mut exp = vec![0; n];
            for (i, &e) in a.exp.iter().enumerate() {
                exp[perm[i]] = e;
            }
            Arrow { from: a.from, to: a.to, exp }
        })
        .collect();
    TangleComplex::new(c.graph().clone(), generators, arrows, c.metadata.clone())
}

/// Glues the last boundary component of `c1` (over `n` edges) to the last of
/// `c2` (over `n'` edges). The result lives over `n + n' - 2` edges; edges
/// `1..n-1` come from `c1` and edges `n..n+n'-2` from `c2`.
pub fn glue(c1: &TangleComplex, c2: &TangleComplex) -> Result<TangleComplex> {
    require_theta(c1, "glue")?;
    require_theta(c2, "glue")?;
    let (n, m) = (c1.edge_count(), c2.edge_count());
    if n < 2 || m < 2 {
        return Err(Error::ShapeMismatch("gluing needs at least two edges on each side".into()));
    }
    let total = n + m - 2;
    let x1 = if m > 2 { stabilize(c1, n, m - 2)? } else { c1.clone() };
    let x2 = if n > 2 { stabilize(c2, m, n - 2)? } else { c2.clone() };
    // c2's edges 1..m-1 go to positions n..total, its glued edge and copies to 1..n-1
    let perm: Vec<usize> = (0..total).map(|i| if i < m - 1 { n - 1 + i } else { i - (m - 1) }).collect();
    let x2 = permute_edges(&x2, &perm)?;
    let glued = tensor(&x1, &x2)?;
    Ok(glued.with_metadata(format!("glue({}, {})", c1.metadata, c2.metadata)))
}

/// Reverses every arrow and negates every grading.
pub fn mirror(c: &TangleComplex) -> TangleComplex {
    let generators = c
        .generators()
        .iter()
        .map(|x| Generator { id: x.id.clone(), gradings: x.gradings.iter().map(|g| -g).collect() })
        .collect();
    let arrows = c
        .arrows()
        .iter()
        .map(|a| Arrow { from: a.to, to: a.from, exp: a.exp.clone() })
        .collect();
    TangleComplex::assemble(c.graph().clone(), generators, arrows, format!("mirror({})", c.metadata))
}

/// `(t,..,t, 2-t,..,2-t)` on the `n`-component link graph.
pub fn diagonal_link_weights(n: usize, t: &Rational) -> Result<Vec<Rational>> {
    if n == 0 || t < &int(0) || t > &int(2) {
        return Err(Error::Range(format!("diagonal weight {t} for {n} components")));
    }
    let mut v = vec![t.clone(); n];
    v.extend(std::iter::repeat_n(int(2) - t, n));
    Ok(v)
}
