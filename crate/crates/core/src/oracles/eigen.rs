//! Eigenvalues of small dense real matrices: reduction to upper Hessenberg
//! form by stabilized elimination, then Francis double-shift QR with
//! exceptional shifts (the EISPACK `elmhes` + `hqr` pair).

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Reduces `a` in place to upper Hessenberg form with the same spectrum.
fn hessenberg<const N: usize>(a: &mut [[f64; N]; N]) {
    for m in 1..N.saturating_sub(1) {
        let mut pivot = 0.0f64;
        let mut row = m;
        for (j, r) in a.iter().enumerate().skip(m) {
            if r[m - 1].abs() > pivot.abs() {
                pivot = r[m - 1];
                row = j;
            }
        }
        if row != m {
            for j in (m - 1)..N {
                let tmp = a[row][j];
                a[row][j] = a[m][j];
                a[m][j] = tmp;
            }
            for r in a.iter_mut() {
                r.swap(row, m);
            }
        }
        if pivot != 0.0 {
            for i in (m + 1)..N {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= pivot;
                    a[i][m - 1] = y;
                    for j in m..N {
                        a[i][j] -= y * a[m][j];
                    }
                    for r in a.iter_mut() {
                        r[m] += y * r[i];
                    }
                }
            }
        }
    }
    for i in 2..N {
        for j in 0..(i - 1) {
            a[i][j] = 0.0;
        }
    }
}

/// All eigenvalues of `matrix`, in the order they deflate.
pub fn eigenvalues<const N: usize>(matrix: &[[f64; N]; N]) -> Result<Vec<Complex64>> {
    let mut a = *matrix;
    hessenberg(&mut a);

    let mut wr = [0.0; N];
    let mut wi = [0.0; N];
    let mut anorm = 0.0;
    for i in 0..N {
        for j in i.saturating_sub(1)..N {
            anorm += a[i][j].abs();
        }
    }

    let mut nn = N as isize - 1;
    let mut t = 0.0;
    let mut its = 0;
    while nn >= 0 {
        let n = nn as usize;

        // small subdiagonal element
        let mut l = n;
        while l >= 1 {
            let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
            if s == 0.0 {
                s = anorm;
            }
            if a[l][l - 1].abs() + s == s {
                a[l][l - 1] = 0.0;
                break;
            }
            l -= 1;
        }

        let mut x = a[n][n];
        if l == n {
            // one root
            wr[n] = x + t;
            wi[n] = 0.0;
            nn -= 1;
            its = 0;
            continue;
        }

        let mut y = a[n - 1][n - 1];
        let mut w = a[n][n - 1] * a[n - 1][n];
        if l == n - 1 {
            // two roots
            let p = 0.5 * (y - x);
            let q = p * p + w;
            let z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                let z = p + sign(z, p);
                wr[n - 1] = x + z;
                wr[n] = if z != 0.0 { x - w / z } else { x + z };
                wi[n - 1] = 0.0;
                wi[n] = 0.0;
            } else {
                wr[n - 1] = x + p;
                wr[n] = x + p;
                wi[n - 1] = -z;
                wi[n] = z;
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if its == MAX_ITER_PER_EIGENVALUE {
            return Err(Error::InvalidArgument(
                "QR iteration did not converge".into(),
            ));
        }
        if its == 10 || its == 20 {
            // exceptional shift
            t += x;
            for (i, row) in a.iter_mut().enumerate().take(n + 1) {
                row[i] -= x;
            }
            let s = a[n][n - 1].abs() + a[n - 1][n - 2].abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        its += 1;

        // two consecutive small subdiagonal elements
        let mut m = n - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = a[m][m];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - rr - ss;
            r = a[m + 2][m + 1];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a[m][m - 1].abs() * (q.abs() + r.abs());
            let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
            if u + v == v {
                break;
            }
            m -= 1;
        }
        for i in (m + 2)..=n {
            a[i][i - 2] = 0.0;
            if i != m + 2 {
                a[i][i - 3] = 0.0;
            }
        }

        // double-shift QR sweep on rows/columns l..=n
        for k in m..n {
            if k != m {
                p = a[k][k - 1];
                q = a[k + 1][k - 1];
                r = if k != n - 1 { a[k + 2][k - 1] } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = sign((p * p + q * q + r * r).sqrt(), p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    a[k][k - 1] = -a[k][k - 1];
                }
            } else {
                a[k][k - 1] = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            let z = r / s;
            q /= p;
            r /= p;
            for j in k..=n {
                let mut pp = a[k][j] + q * a[k + 1][j];
                if k != n - 1 {
                    pp += r * a[k + 2][j];
                    a[k + 2][j] -= pp * z;
                }
                a[k + 1][j] -= pp * y;
                a[k][j] -= pp * x;
            }
            let top = n.min(k + 3);
            for row in a.iter_mut().take(top + 1).skip(l) {
                let mut pp = x * row[k] + y * row[k + 1];
                if k != n - 1 {
                    pp += z * row[k + 2];
                    row[k + 2] -= pp * r;
                }
                row[k + 1] -= pp * q;
                row[k] -= pp;
            }
        }
    }

    Ok(wr
        .iter()
        .zip(wi.iter())
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect())
}
