//! Dense linear algebra over fields and over a DVR.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Vectors act as columns.

use crate::ring::{Field, Ring};
use crate::scalars::{Dvr, DvrScalar};

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    vec![vec![ring.zero(); cols]; rows]
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zeros(ring, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ring.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &Matrix<E>) -> Matrix<E> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// The matrix whose columns are the given vectors.
pub fn from_columns<E: Clone>(cols: &[Vec<E>]) -> Matrix<E> {
    transpose(&cols.to_vec())
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| ring.mul_add(&row[k], &b[k][j], &acc))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.mul_add(x, y, &acc))
        })
        .collect()
}

pub fn vec_add<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn vec_scale<R: Ring>(ring: &R, c: &R::Elem, v: &[R::Elem]) -> Vec<R::Elem> {
    v.iter().map(|x| ring.mul(c, x)).collect()
}

pub fn is_zero_vec<R: Ring>(ring: &R, v: &[R::Elem]) -> bool {
    v.iter().all(|x| ring.is_zero(x))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = field.mul(&factor, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, &mut m.clone()).len()
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&a[r][free]);
            }
            v
        })
        .collect()
}

/// Some solution of `M v = b`, if one exists.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = aug[r][cols].clone();
    }
    Some(v)
}

/// Coordinates of `b` in the span of `vectors`, if it lies there.
pub fn coordinates<F: Field>(field: &F, vectors: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if vectors.is_empty() {
        return is_zero_vec(field, b).then(Vec::new);
    }
    solve(field, &from_columns(vectors), b)
}

/// An echelon basis of the span of the given vectors.
pub fn span_basis<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut m = vectors.to_vec();
    let r = rref(field, &mut m).len();
    m.truncate(r);
    m
}

/// Determinant over a DVR by fraction-free (Bareiss) elimination.
pub fn det_over_dvr(dvr: &Dvr, m: &Matrix<DvrScalar>) -> DvrScalar {
    let n = m.len();
    if n == 0 {
        return dvr.one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = dvr.one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !dvr.is_zero(&a[i][k])) else {
            return dvr.zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = dvr.sub(&dvr.mul(&a[i][j], &a[k][k]), &dvr.mul(&a[i][k], &a[k][j]));
                a[i][j] = dvr.checked_div(&t, &prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        dvr.neg(&d)
    } else {
        d
    }
}

/// Inverse of a matrix over a DVR; `None` unless the determinant is a unit.
pub fn inverse_over_dvr(dvr: &Dvr, m: &Matrix<DvrScalar>) -> Option<Matrix<DvrScalar>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(dvr, n);
    for c in 0..n {
        let p = (c..n).find(|&i| dvr.is_unit(&a[i][c]))?;
        a.swap(c, p);
        inv.swap(c, p);
        let u = dvr.unit_inverse(&a[c][c]).expect("unit pivot");
        a[c] = vec_scale(dvr, &u, &a[c]);
        inv[c] = vec_scale(dvr, &u, &inv[c]);
        for i in 0..n {
            if i != c && !dvr.is_zero(&a[i][c]) {
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = dvr.sub(&a[i][j], &dvr.mul(&f, &a[c][j]));
                    inv[i][j] = dvr.sub(&inv[i][j], &dvr.mul(&f, &inv[c][j]));
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FiniteField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| Rationals.from_int(x)).collect()).collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, &m), 2);
        let ns = nullspace(&Rationals, &m, 3);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&Rationals, &mat_vec(&Rationals, &m, &ns[0])));
    }

    #[test]
    fn solving() {
        let f5 = FiniteField::prime(5).unwrap();
        let m: Matrix<_> = [[1, 2], [3, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| f5.from_int(x)).collect())
            .collect();
        let b = vec![f5.from_int(1), f5.from_int(0)];
        let v = solve(&f5, &m, &b).unwrap();
        assert_eq!(mat_vec(&f5, &m, &v), b);
        let singular = q(&[&[1, 1], &[1, 1]]);
        assert!(solve(&Rationals, &singular, &[Rationals.from_int(1), Rationals.from_int(0)]).is_none());
    }

    #[test]
    fn dvr_determinant_and_inverse() {
        let z2 = Dvr::integers_at(2).unwrap();
        let m: Matrix<DvrScalar> = [[2, 2], [2, 8]]
            .iter()
            .map(|r| r.iter().map(|&x| z2.from_int(x)).collect())
            .collect();
        assert_eq!(det_over_dvr(&z2, &m), z2.from_int(12));
        assert!(inverse_over_dvr(&z2, &m).is_none());
        let u: Matrix<DvrScalar> = [[1, 2, 0], [0, 3, 1], [4, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| z2.from_int(x)).collect())
            .collect();
        let ui = inverse_over_dvr(&z2, &u).unwrap();
        assert_eq!(mat_mul(&z2, &u, &ui), identity(&z2, 3));
        let swap: Matrix<DvrScalar> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| z2.from_int(x)).collect())
            .collect();
        assert_eq!(det_over_dvr(&z2, &swap), z2.from_int(-1));
    }
}
