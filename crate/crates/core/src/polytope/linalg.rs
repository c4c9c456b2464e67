use num_traits::Zero;

use crate::rational::Rational;

/// Rank of a rational matrix given by rows, by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..ncols {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension(points: &[&[Rational]]) -> usize {
    let Some((first, rest)) = points.split_first() else { return 0 };
    rank(rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect())
}

/// Coefficients `β` with `Σ β_j p_j = t` and `Σ β_j = 1`, when the points are
/// affinely independent and `t` lies in their affine hull.
pub fn barycentric(points: &[&[Rational]], t: &[Rational]) -> Option<Vec<Rational>> {
    let k = points.len();
    let dim = t.len();
    // augmented rows: one per coordinate plus the normalization row
    let mut rows: Vec<Vec<Rational>> = (0..=dim)
        .map(|r| {
            let mut row: Vec<Rational> = points
                .iter()
                .map(|p| if r < dim { p[r].clone() } else { Rational::from_integer(1.into()) })
                .collect();
            row.push(if r < dim { t[r].clone() } else { Rational::from_integer(1.into()) });
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for c in 0..k {
        let p = (pivot_row..rows.len()).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][c].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != pivot_row && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=k {
                    let v = &f * &rows[pivot_row][j];
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
        assert_eq!(rank(m(&[&[0, 0]])), 0);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn barycentric_coordinates() {
        let pts = m(&[&[0, 0, 2, 2], &[0, 2, 2, 0], &[2, 2, 0, 0]]);
        let refs: Vec<&[Rational]> = pts.iter().map(|p| p.as_slice()).collect();
        let t: Vec<Rational> = vec![Rational::new(1.into(), 2.into()), int(1), Rational::new(3.into(), 2.into()), int(1)];
        let b = barycentric(&refs, &t).unwrap();
        assert_eq!(b, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 4.into()), Rational::new(1.into(), 4.into())]);
        assert!(barycentric(&refs, &[int(1), int(0), int(0), int(0)]).is_none());
    }

    #[test]
    fn affine_hull_of_square() {
        let pts = m(&[&[0, 0, 2, 2], &[0, 2, 2, 0], &[2, 0, 0, 2], &[2, 2, 0, 0]]);
        let refs: Vec<&[Rational]> = pts.iter().map(|p| p.as_slice()).collect();
        assert_eq!(affine_dimension(&refs), 2);
    }
}
