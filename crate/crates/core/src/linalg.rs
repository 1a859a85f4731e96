//! Small exact integer and polynomial helpers shared by the other modules.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Dense integer matrix, row-major.
pub type IMat = Vec<Vec<i64>>;

/// Integer polynomial, coefficients from degree 0 upward.
pub type Poly = Vec<i128>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let p = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += x * b[t][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose(a: &IMat) -> IMat {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Adjugate matrix, so that `a * adj(a) = det(a) * I`.
pub fn adjugate(a: &IMat) -> IMat {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let d = det(&minor).to_i64().expect("cofactor fits i64");
            out[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    out
}

fn berkowitz_i128(a: &IMat) -> Option<Vec<i128>> {
    let n = a.len();
    let mut v: Vec<i128> = vec![1];
    for r in 0..n {
        let arr = a[r][r] as i128;
        let row: Vec<i128> = (0..r).map(|j| a[r][j] as i128).collect();
        let mut col: Vec<i128> = (0..r).map(|i| a[i][r] as i128).collect();
        let mut t: Vec<i128> = Vec::with_capacity(r + 2);
        t.push(1);
        t.push(arr.checked_neg()?);
        for _ in 0..r {
            let mut s: i128 = 0;
            for j in 0..r {
                s = s.checked_add(row[j].checked_mul(col[j])?)?;
            }
            t.push(s.checked_neg()?);
            let mut next = vec![0i128; r];
            for i in 0..r {
                let mut acc: i128 = 0;
                for j in 0..r {
                    acc = acc.checked_add((a[i][j] as i128).checked_mul(col[j])?)?;
                }
                next[i] = acc;
            }
            col = next;
        }
        let mut nv = vec![0i128; r + 2];
        for i in 0..r + 2 {
            let mut acc: i128 = 0;
            for j in 0..=r.min(i) {
                if i - j < t.len() && j < v.len() {
                    acc = acc.checked_add(t[i - j].checked_mul(v[j])?)?;
                }
            }
            nv[i] = acc;
        }
        v = nv;
    }
    v.reverse();
    Some(v)
}

fn berkowitz_big(a: &IMat) -> Vec<BigInt> {
    let n = a.len();
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let row: Vec<BigInt> = (0..r).map(|j| BigInt::from(a[r][j])).collect();
        let mut col: Vec<BigInt> = (0..r).map(|i| BigInt::from(a[i][r])).collect();
        let mut t: Vec<BigInt> = vec![BigInt::one(), -BigInt::from(a[r][r])];
        for _ in 0..r {
            let s: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-s);
            col = (0..r)
                .map(|i| (0..r).map(|j| BigInt::from(a[i][j]) * &col[j]).sum())
                .collect();
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for j in 0..=r.min(i) {
                if i - j < t.len() && j < v.len() {
                    *slot += &t[i - j] * &v[j];
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

/// `f(a)` for an integer polynomial `f`, by Horner's rule.
pub fn poly_eval_matrix(f: &Poly, a: &IMat) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for c in f.iter().rev() {
        let mut next: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if a[k][j] != 0 {
                        next[i][j] += &acc[i][k] * a[k][j];
                    }
                }
            }
            next[i][i] += BigInt::from(*c);
        }
        acc = next;
    }
    acc
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let g = m[r][c].clone();
                for j in 0..cols {
                    let v = &m[i][j] * &g - &m[r][j] * &f;
                    m[i][j] = v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Characteristic polynomial det(tI - a), division-free.
pub fn charpoly(a: &IMat) -> Poly {
    match berkowitz_i128(a) {
        Some(p) => p,
        None => berkowitz_big(a)
            .into_iter()
            .map(|c| {
                c.to_i128()
                    .expect("characteristic polynomial coefficient overflow")
            })
            .collect(),
    }
}

pub fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

pub fn poly_eval(p: &Poly, x: i128) -> i128 {
    p.iter().rev().fold(0i128, |acc, &c| acc * x + c)
}

/// Division by a monic polynomial; returns (quotient, remainder).
pub fn poly_divrem_monic(p: &Poly, d: &Poly) -> (Poly, Poly) {
    let mut r = p.clone();
    poly_trim(&mut r);
    let dd = d.len() - 1;
    debug_assert_eq!(*d.last().unwrap(), 1);
    if r.len() <= dd {
        return (vec![0], r);
    }
    let mut q = vec![0i128; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in d.iter().enumerate() {
                r[k + j] -= c * dj;
            }
        }
    }
    r.truncate(dd.max(1));
    poly_trim(&mut r);
    (q, r)
}

/// The m-th cyclotomic polynomial.
pub fn cyclotomic(m: u32) -> Poly {
    assert!(m >= 1);
    let mut p: Poly = vec![0; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divrem_monic(&p, &cyclotomic(d));
            debug_assert!(r.iter().all(|&c| c == 0));
            p = q;
        }
    }
    p
}

/// Multiplicity of `f` as a factor of `p` (f monic, non-constant).
pub fn factor_multiplicity(p: &Poly, f: &Poly) -> usize {
    let mut cur = p.clone();
    let mut k = 0;
    loop {
        let (q, r) = poly_divrem_monic(&cur, f);
        if r.iter().any(|&c| c != 0) || cur.len() < f.len() {
            return k;
        }
        k += 1;
        cur = q;
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::Integer::lcm(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(30).len(), 9);
    }

    #[test]
    fn charpoly_matches_det() {
        let a = vec![vec![2, 1, 0], vec![-1, 3, 4], vec![5, 0, 1]];
        let p = charpoly(&a);
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], 1);
        assert_eq!(-p[2], 6);
        let d = det(&a).to_i128().unwrap();
        assert_eq!(p[0], -d);
        assert_eq!(
            p,
            berkowitz_big(&a)
                .iter()
                .map(|c| c.to_i128().unwrap())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn adjugate_identity() {
        let a = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        let d = det(&a).to_i64().unwrap();
        let prod = mat_mul(&a, &adjugate(&a));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod[i][j], if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn multiplicity() {
        let p = vec![1i128, 2, 1];
        assert_eq!(factor_multiplicity(&p, &cyclotomic(2)), 2);
        assert_eq!(factor_multiplicity(&p, &cyclotomic(1)), 0);
    }
}
