//! Fraction-free exact linear algebra: Bareiss determinants and Sylvester
//! resultant matrices.

use crate::field::Field;
use crate::poly::Poly;

/// Determinant by Bareiss fraction-free elimination (consumes the matrix).
pub fn determinant<T: Field>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "non-square matrix");
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of two coefficient vectors given highest degree first,
/// with formal degrees m = a.len()−1 and n = b.len()−1.
pub fn sylvester<T: Field>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut out = vec![vec![T::zero(); size]; size];
    for (r, row) in out.iter_mut().enumerate().take(n) {
        for (j, c) in a.iter().enumerate() {
            row[r + j] = c.clone();
        }
    }
    for (r, row) in out.iter_mut().skip(n).enumerate() {
        for (j, c) in b.iter().enumerate() {
            row[r + j] = c.clone();
        }
    }
    out
}

/// Resultant of two binary forms of the same formal degree d, coefficients
/// ordered by descending X-power: the determinant of the 2d×2d band matrix.
pub fn resultant_forms<T: Field>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "forms of different formal degree");
    assert!(a.len() >= 2, "degree must be at least 1");
    determinant(sylvester(a, b))
}

/// Resultant of two univariate polynomials at their actual degrees.
/// Res(f, g) = 0 when either is zero; constants follow the usual
/// conventions Res(c, g) = c^deg g.
pub fn resultant_polys<T: Field>(f: &Poly<T>, g: &Poly<T>) -> T {
    match (f.deg(), g.deg()) {
        (None, _) | (_, None) => T::zero(),
        (Some(0), Some(dg)) => {
            let mut acc = T::one();
            for _ in 0..dg {
                acc = acc * f.coeff(0).clone();
            }
            acc
        }
        (Some(df), Some(0)) => {
            let mut acc = T::one();
            for _ in 0..df {
                acc = acc * g.coeff(0).clone();
            }
            acc
        }
        (Some(_), Some(_)) => {
            let fa: Vec<T> = f.coeffs().iter().rev().cloned().collect();
            let fb: Vec<T> = g.coeffs().iter().rev().cloned().collect();
            determinant(sylvester(&fa, &fb))
        }
    }
}
