//! Dense exact linear algebra over any [`Field`], plus division-free
//! determinant and adjugate over any commutative [`Ring`].

use crate::ground_rings::{Field, Ring};

/// Row-major dense matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Which nonzero entry Gaussian elimination picks as pivot in a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pivoting {
    #[default]
    FirstNonzero,
    LastNonzero,
}

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

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(ring.zero(), |acc, (x, brow)| {
                        if ring.is_zero(x) {
                            acc
                        } else {
                            ring.add(&acc, &ring.mul(x, &brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(
                ring.zero(),
                |acc, (x, y)| {
                    if ring.is_zero(x) {
                        acc
                    } else {
                        ring.add(&acc, &ring.mul(x, y))
                    }
                },
            )
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &Matrix<E>) -> Matrix<E> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>, pivoting: Pivoting) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let candidates = (r..rows).filter(|&i| !field.is_zero(&m[i][c]));
        let found = match pivoting {
            Pivoting::FirstNonzero => candidates.into_iter().next(),
            Pivoting::LastNonzero => candidates.into_iter().last(),
        };
        let Some(p) = found else { continue };
        m.swap(r, p);
        let inv = field.inverse(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut().skip(c) {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work, Pivoting::FirstNonzero).len()
}

/// Basis of the right null space {v : m·v = 0}.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work, Pivoting::FirstNonzero);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&work[row][f]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>, pivoting: Pivoting) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, pivoting);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// One solution of m·x = b, `None` if inconsistent.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, Pivoting::FirstNonzero);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Characteristic polynomial coefficients `[1, c1, …, cn]` of
/// det(t·I − A) by Berkowitz's division-free algorithm.
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = a.len();
    if n == 0 {
        return vec![ring.one()];
    }
    // Berkowitz: build the Toeplitz products from the trailing principal submatrices.
    let mut poly = vec![ring.one(), ring.neg(&a[n - 1][n - 1])];
    for k in (0..n - 1).rev() {
        // submatrix on indices k..n, with a_kk, row R = a[k][k+1..], column C = a[k+1..][k]
        let m = n - k - 1;
        let sub: Vec<&[R::Elem]> = (k + 1..n).map(|i| &a[i][k + 1..]).collect();
        let row: Vec<R::Elem> = a[k][k + 1..].to_vec();
        let col: Vec<R::Elem> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        // Toeplitz column: [1, -a_kk, -R C, -R A C, ..., -R A^{m-1} C]
        let mut toeplitz = Vec::with_capacity(m + 2);
        toeplitz.push(ring.one());
        toeplitz.push(ring.neg(&a[k][k]));
        let mut v = col.clone();
        for _ in 0..m {
            let rv = row.iter().zip(&v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
            toeplitz.push(ring.neg(&rv));
            v = sub
                .iter()
                .map(|r| r.iter().zip(&v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y))))
                .collect();
        }
        // new poly = T * poly, T lower-triangular Toeplitz of size (m+2) x (m+1)
        let next: Vec<R::Elem> = (0..m + 2)
            .map(|i| (0..=i.min(m)).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&toeplitz[i - j], &poly[j]))))
            .collect();
        poly = next;
    }
    poly
}

pub fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.len();
    let cp = charpoly(ring, a);
    if n % 2 == 0 {
        cp[n].clone()
    } else {
        ring.neg(&cp[n])
    }
}

/// Adjugate via Cayley–Hamilton: adj(A) = (−1)^{n−1}(A^{n−1} + c1 A^{n−2} + … + c_{n−1} I).
pub fn adjugate<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let cp = charpoly(ring, a);
    let mut acc = identity(ring, n);
    for c in cp.iter().take(n).skip(1) {
        acc = mat_mul(ring, &acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = ring.add(&row[i], c);
        }
    }
    if n % 2 == 0 {
        acc.iter().map(|row| row.iter().map(|x| ring.neg(x)).collect()).collect()
    } else {
        acc
    }
}
