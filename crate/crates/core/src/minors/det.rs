use super::Matrix;
use crate::error::{Error, Result};
use crate::subset;

/// Largest order accepted by [`leibniz_minor`].
pub const LEIBNIZ_MAX: usize = 12;

/// `det K_S`, with `det K_{} = 1`.
///
/// Orders up to 4 use cofactor expansion; larger orders use LU with partial
/// pivoting. `s` may be given in any order.
pub fn principal_minor(k: &Matrix, s: &[usize]) -> Result<f64> {
    let s = subset::normalize(s, k.n())?;
    Ok(det(&k.principal_submatrix(&s), s.len()))
}

/// `det K_S` by summing all `|S|!` Leibniz terms (zero entries are skipped).
/// Meant as an independent reference; limited to `|S| <= 12`.
pub fn leibniz_minor(k: &Matrix, s: &[usize]) -> Result<f64> {
    let s = subset::normalize(s, k.n())?;
    if s.len() > LEIBNIZ_MAX {
        return Err(Error::CapExceeded(format!(
            "Leibniz expansion limited to order {LEIBNIZ_MAX}, got {}",
            s.len()
        )));
    }
    let a = k.principal_submatrix(&s);
    Ok(leibniz(&a, s.len()))
}

fn leibniz(a: &[f64], m: usize) -> f64 {
    fn go(a: &[f64], m: usize, row: usize, used: u32, odd: bool, acc: f64, total: &mut f64) {
        if row == m {
            *total += if odd { -acc } else { acc };
            return;
        }
        for c in 0..m {
            if used >> c & 1 == 1 {
                continue;
            }
            let x = a[row * m + c];
            if x == 0.0 {
                continue;
            }
            // inversions added: previously used columns that are larger than c
            let inv = (used >> (c + 1)).count_ones();
            go(a, m, row + 1, used | 1 << c, odd ^ (inv & 1 == 1), acc * x, total);
        }
    }
    let mut total = 0.0;
    go(a, m, 0, 0, false, 1.0, &mut total);
    total
}

/// Determinant of a row-major `m x m` matrix.
pub fn det(a: &[f64], m: usize) -> f64 {
    debug_assert_eq!(a.len(), m * m);
    match m {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => det3(a, [0, 1, 2], [0, 1, 2], 3),
        4 => {
            let mut d = 0.0;
            for c in 0..4 {
                let x = a[c];
                if x == 0.0 {
                    continue;
                }
                let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
                let minor = det3(a, [1, 2, 3], [cols[0], cols[1], cols[2]], 4);
                d += if c % 2 == 0 { x * minor } else { -x * minor };
            }
            d
        }
        _ => det_lu(a.to_vec(), m),
    }
}

fn det3(a: &[f64], r: [usize; 3], c: [usize; 3], m: usize) -> f64 {
    let e = |i: usize, j: usize| a[r[i] * m + c[j]];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

fn det_lu(mut a: Vec<f64>, m: usize) -> f64 {
    let mut d = 1.0;
    for col in 0..m {
        let mut piv = col;
        let mut best = a[col * m + col].abs();
        for r in col + 1..m {
            let v = a[r * m + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..m {
                a.swap(col * m + j, piv * m + j);
            }
            d = -d;
        }
        let p = a[col * m + col];
        d *= p;
        for r in col + 1..m {
            let f = a[r * m + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col + 1..m {
                a[r * m + j] -= f * a[col * m + j];
            }
        }
    }
    d
}
