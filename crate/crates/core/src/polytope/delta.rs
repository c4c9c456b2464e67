//! Cone triangulation of `L_G` and exact point location.
//!
//! Vertices are sorted lexicographically, so the smallest vertex of a face is
//! its lowest index. A face is triangulated by coning its smallest vertex over
//! the triangulations of the facets that avoid it. Faces are identified by
//! their sorted vertex index sets and memoized, which keeps the triangulations
//! of shared faces identical.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::{linalg, require_in_polytope, WeightVector};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Matching};
use crate::rational::{int, Rational};

type Face = Vec<usize>;

#[derive(Debug, Clone)]
struct FaceInfo {
    dim: usize,
    /// Facets avoiding the face's smallest vertex, each with the coordinates
    /// that vanish on it.
    far_facets: Vec<(Face, Vec<usize>)>,
}

#[derive(Debug, Clone)]
pub struct DeltaComplex {
    vertices: Vec<WeightVector>,
    matchings: Vec<Matching>,
    dimension: usize,
    top: Vec<Face>,
    simplices: Vec<Vec<Face>>,
    faces: HashMap<Face, FaceInfo>,
}

/// A simplex (sorted vertex indices) with positive barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub simplex: Vec<usize>,
    pub coords: Vec<Rational>,
}

impl DeltaComplex {
    pub fn build(g: &LabeledGraph) -> Result<DeltaComplex> {
        let mut pairs: Vec<(WeightVector, Matching)> = g
            .enumerate_matchings()
            .into_iter()
            .map(|m| (g.matching_weight(&m).expect("enumerated matching"), m))
            .collect();
        if pairs.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        pairs.sort();
        let (vertices, matchings): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();

        let mut dc = DeltaComplex {
            vertices,
            matchings,
            dimension: 0,
            top: Vec::new(),
            simplices: Vec::new(),
            faces: HashMap::new(),
        };
        let all: Face = (0..dc.vertices.len()).collect();
        dc.dimension = dc.affine_dim(&all);
        let mut memo = HashMap::new();
        dc.top = dc.triangulate(&all, &mut memo);
        dc.top.sort();

        let mut by_dim: BTreeMap<usize, BTreeSet<Face>> = BTreeMap::new();
        for s in &dc.top {
            for mask in 1u64..(1u64 << s.len()) {
                let sub: Face = (0..s.len()).filter(|&k| mask >> k & 1 == 1).map(|k| s[k]).collect();
                by_dim.entry(sub.len() - 1).or_default().insert(sub);
            }
        }
        dc.simplices = (0..=dc.dimension)
            .map(|d| by_dim.remove(&d).unwrap_or_default().into_iter().collect())
            .collect();
        Ok(dc)
    }

    fn affine_dim(&self, face: &[usize]) -> usize {
        let pts: Vec<&[Rational]> = face.iter().map(|&i| self.vertices[i].as_slice()).collect();
        linalg::affine_dimension(&pts)
    }

    fn face_info(&mut self, face: &Face) -> FaceInfo {
        if let Some(info) = self.faces.get(face) {
            return info.clone();
        }
        let dim = self.affine_dim(face);
        let mut far_facets = Vec::new();
        if dim > 0 {
            let kappa = self.vertices[0].len();
            let mut seen = BTreeSet::new();
            for i in 0..kappa {
                let sub: Face = face.iter().copied().filter(|&v| self.vertices[v][i].is_zero()).collect();
                if sub.is_empty() || sub.len() == face.len() || sub[0] == face[0] || !seen.insert(sub.clone()) {
                    continue;
                }
                if self.affine_dim(&sub) + 1 != dim {
                    continue;
                }
                let zeros = (0..kappa).filter(|&j| sub.iter().all(|&v| self.vertices[v][j].is_zero())).collect();
                far_facets.push((sub, zeros));
            }
        }
        let info = FaceInfo { dim, far_facets };
        self.faces.insert(face.clone(), info.clone());
        info
    }

    fn triangulate(&mut self, face: &Face, memo: &mut HashMap<Face, Vec<Face>>) -> Vec<Face> {
        if let Some(t) = memo.get(face) {
            return t.clone();
        }
        let info = self.face_info(face);
        let out = if info.dim == 0 {
            vec![vec![face[0]]]
        } else {
            let mut out = Vec::new();
            for (facet, _) in &info.far_facets {
                for s in self.triangulate(facet, memo) {
                    let mut cone = Vec::with_capacity(s.len() + 1);
                    cone.push(face[0]);
                    cone.extend(s);
                    out.push(cone);
                }
            }
            out
        };
        memo.insert(face.clone(), out.clone());
        out
    }

    /// Matching weight vectors in lexicographic order.
    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    /// The matching of each vertex.
    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Top-dimensional simplices.
    pub fn top_simplices(&self) -> &[Face] {
        &self.top
    }

    /// All simplices, indexed by dimension.
    pub fn simplices(&self) -> &[Vec<Face>] {
        &self.simplices
    }

    pub fn t_min(&self) -> &WeightVector {
        &self.vertices[0]
    }

    /// The simplex whose relative interior contains `t`, with its barycentric
    /// coordinates.
    pub fn locate(&self, g: &LabeledGraph, t: &[Rational]) -> Result<Location> {
        require_in_polytope(g, t)?;
        let all: Face = (0..self.vertices.len()).collect();
        self.locate_in(&all, t.to_vec())
    }

    fn locate_in(&self, face: &Face, t: WeightVector) -> Result<Location> {
        let base = &self.vertices[face[0]];
        if &t == base {
            return Ok(Location { simplex: vec![face[0]], coords: vec![int(1)] });
        }
        let info = self.faces.get(face).expect("face visited during triangulation");
        let lambda = (0..t.len())
            .filter(|&i| t[i] < base[i])
            .map(|i| &base[i] / (&base[i] - &t[i]))
            .min()
            .ok_or_else(|| Error::NotInPolytope(super::show(&t)))?;
        let p: WeightVector = base.iter().zip(&t).map(|(b, x)| b + &lambda * (x - b)).collect();
        let (facet, _) = info
            .far_facets
            .iter()
            .find(|(_, zeros)| zeros.iter().all(|&j| p[j].is_zero()))
            .ok_or_else(|| Error::NotInPolytope(super::show(&t)))?;
        let inner = self.locate_in(facet, p)?;
        if lambda.is_one() {
            return Ok(inner);
        }
        let inv = lambda.recip();
        let mut simplex = vec![face[0]];
        simplex.extend(inner.simplex);
        let mut coords = vec![int(1) - &inv];
        coords.extend(inner.coords.into_iter().map(|c| c * &inv));
        Ok(Location { simplex, coords })
    }

    /// Barycentric coordinates of `t` with respect to a simplex, possibly
    /// negative; `None` when `t` is off the simplex's affine hull.
    pub fn barycentric(&self, simplex: &[usize], t: &[Rational]) -> Option<Vec<Rational>> {
        let pts: Vec<&[Rational]> = simplex.iter().map(|&v| self.vertices[v].as_slice()).collect();
        linalg::barycentric(&pts, t)
    }

    /// Σ n_j t_{m_j} for a location.
    pub fn reconstruct(&self, loc: &Location) -> WeightVector {
        let mut t = vec![int(0); self.vertices[0].len()];
        for (&v, c) in loc.simplex.iter().zip(&loc.coords) {
            for (x, y) in t.iter_mut().zip(&self.vertices[v]) {
                *x += c * y;
            }
        }
        t
    }
}
