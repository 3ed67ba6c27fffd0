//! Small dense complex-matrix helpers shared by the representation and the
//! circuit simulator.  Everything here is desk-scale (n in the hundreds at
//! most), so plain Gauss-Jordan and square-and-multiply are plenty.

use ndarray::Array2;
use num_complex::Complex64;

pub type CMat = Array2<Complex64>;

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ||M^dag M - I||_F; zero for exact unitaries.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    frobenius(&(dagger(m).dot(m) - identity(n)))
}

/// Gauss-Jordan with partial pivoting.  None if the pivot collapses, which
/// for our well-conditioned basis-change blocks means a logic error upstream.
pub fn inverse(m: &CMat) -> Option<CMat> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "inverse of a non-square matrix");
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[[i, col]]
                    .norm()
                    .partial_cmp(&a[[j, col]].norm())
                    .unwrap()
            })
            .unwrap();
        if a[[pivot, col]].norm() < 1e-14 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap([pivot, k], [col, k]);
                inv.swap([pivot, k], [col, k]);
            }
        }
        let p = a[[col, col]];
        for k in 0..n {
            a[[col, k]] /= p;
            inv[[col, k]] /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[[row, col]];
            if f.norm() == 0.0 {
                continue;
            }
            for k in 0..n {
                let (ac, ic) = (a[[col, k]], inv[[col, k]]);
                a[[row, k]] -= f * ac;
                inv[[row, k]] -= f * ic;
            }
        }
    }
    Some(inv)
}

pub fn matpow(m: &CMat, e: i64) -> Option<CMat> {
    if e < 0 {
        inverse(m).map(|inv| matpow_unsigned(&inv, e.unsigned_abs()))
    } else {
        Some(matpow_unsigned(m, e as u64))
    }
}

fn matpow_unsigned(m: &CMat, mut e: u64) -> CMat {
    let mut acc = identity(m.nrows());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.dot(&base);
        }
        base = base.dot(&base);
        e >>= 1;
    }
    acc
}
