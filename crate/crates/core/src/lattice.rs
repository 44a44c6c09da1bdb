//! Integer and exact rational linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<i64>>`. Intermediate integer work runs in
//! `i128`; anything that needs division runs over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divide out the content of `v`. The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_slice(v);
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let d = &f * &m[row][c];
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = to_rational(rows);
    rref(&mut m, ncols).len()
}

/// Basis of the rational kernel `{x : rows · x = 0}`.
pub fn rational_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = to_rational(rows);
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Clear denominators and divide out the content.
pub fn primitive_from_rational(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("lattice coordinate overflows i64")
        })
        .collect()
}

/// Unimodular column reduction: returns `(u, r)` where `u` is an `n × n`
/// unimodular matrix with `rows · u = [H | 0]` and `H` has `r` columns of
/// full column rank. Columns `r..n` of `u` span the integer kernel; columns
/// `0..r` span a lattice complement of it.
pub fn column_echelon(rows: &[Vec<i64>], n: usize) -> (Vec<Vec<i64>>, usize) {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();

    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in m.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |m: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };

    let mut col = 0;
    for i in 0..a.len() {
        if col == n {
            break;
        }
        for j in col + 1..n {
            while a[i][j] != 0 {
                let q = a[i][col] / a[i][j];
                col_op(&mut a, col, j, q);
                col_op(&mut u, col, j, q);
                col_swap(&mut a, col, j);
                col_swap(&mut u, col, j);
            }
        }
        if a[i][col] != 0 {
            col += 1;
        }
    }
    let u = u
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("unimodular entry overflows i64")).collect())
        .collect();
    (u, col)
}

pub fn column(m: &[Vec<i64>], c: usize) -> Vec<i64> {
    m.iter().map(|r| r[c]).collect()
}

/// Row Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped. Canonical for the lattice.
pub fn row_hnf(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if pivot_row == a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows >= pivot_row
            let best = (pivot_row..a.len())
                .filter(|&r| a[r][c] != 0)
                .min_by_key(|&r| a[r][c].abs());
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..a.len() {
                if a[r][c] != 0 {
                    let q = a[r][c] / a[pivot_row][c];
                    for k in 0..n {
                        a[r][k] -= q * a[pivot_row][k];
                    }
                    if a[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < a.len() && a[pivot_row][c] != 0 {
            if a[pivot_row][c] < 0 {
                for k in 0..n {
                    a[pivot_row][k] = -a[pivot_row][k];
                }
            }
            pivots.push((pivot_row, c));
            pivot_row += 1;
        }
    }
    for &(pr, c) in &pivots {
        let p = a[pr][c];
        for r in 0..pr {
            let q = a[r][c].div_euclid(p);
            if q != 0 {
                for k in 0..n {
                    a[r][k] -= q * a[pr][k];
                }
            }
        }
    }
    a.truncate(pivot_row);
    a.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("HNF entry overflows i64")).collect())
        .collect()
}

/// Canonical lattice basis of `{u ∈ ℤⁿ : rows · u = 0}`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    let (u, r) = column_echelon(rows, n);
    let kernel: Vec<Vec<i64>> = (r..n).map(|c| column(&u, c)).collect();
    row_hnf(&kernel, n)
}

/// Integer coefficients `c` with `Σ cᵢ · basis[i] = v`, if they exist.
/// The basis rows must be linearly independent.
pub fn solve_integer(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let sol = solve_rational(basis, v)?;
    sol.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

/// Rational coefficients `c` with `Σ cᵢ · basis[i] = v`, if they exist.
pub fn solve_rational(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = basis.len();
    if k == 0 {
        return is_zero(v).then(Vec::new);
    }
    // augmented system: n equations in k unknowns
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|b| BigRational::from_integer(BigInt::from(b[i]))).collect();
            row.push(BigRational::from_integer(BigInt::from(v[i])));
            row
        })
        .collect();
    let pivots = rref(&mut m, k);
    if pivots.len() != k {
        return None;
    }
    for row in m.iter().skip(k) {
        if !row[k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|r| m[r][k].clone()).collect())
}

/// Exact inverse of a square integer matrix.
pub fn rational_inverse(w: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = w.len();
    let mut m: Vec<Vec<BigRational>> = w
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    if rref(&mut m, n).len() != n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(w: &[Vec<i64>]) -> BigInt {
    let n = w.len();
    let mut m = to_rational(w);
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    det.to_integer()
}

/// `|det w|` and the integer matrix `|det w| · w⁻¹`.
pub fn scaled_inverse(w: &[Vec<i64>]) -> Option<(i64, Vec<Vec<i64>>)> {
    let det = determinant(w).abs().to_i64()?;
    if det == 0 {
        return None;
    }
    let inv = rational_inverse(w)?;
    let d = BigRational::from_integer(BigInt::from(det));
    let adj = inv
        .iter()
        .map(|r| r.iter().map(|x| (x * &d).to_integer().to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((det, adj))
}

pub fn transpose(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    (0..ncols).map(|c| column(m, c)).collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| dot(r, v)).collect()
}
