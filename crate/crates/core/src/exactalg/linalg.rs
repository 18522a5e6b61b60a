//! Exact rank and inversion, plus the small multiprecision solvers
//! (LU, Householder least squares) used by the numeric layer.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mp::{real_abs, real_zero, Cplx, Real};
use super::nummatrix::NumMatrix;
use super::opmatrix::{CoVec, OpMatrix};
use super::rational::Rat;

const P61: u64 = (1u64 << 61) - 1;

fn mod_p(x: &BigInt) -> u64 {
    let p = BigInt::from(P61);
    let r = ((x % &p) + &p) % &p;
    r.to_u64().unwrap()
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

/// Rank modulo 2^61−1. Never exceeds the rational rank, so a full modular
/// rank certifies full rational rank.
fn rank_mod_p(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_p).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = powmod(a[rank][c], P61 - 2);
        for i in rank + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let f = mulmod(a[i][c], inv);
            for j in c..cols {
                let t = mulmod(f, a[rank][j]);
                a[i][j] = (a[i][j] + P61 - t) % P61;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free (Bareiss) elimination; exact integer rank.
fn rank_bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

fn int_rows(rows: &[CoVec]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.numerators().to_vec()).collect()
}

/// Exact rank of a family of covectors.
pub fn rank(rows: &[CoVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.dim();
    let ints = int_rows(rows);
    let full = rows.len().min(cols);
    let r = rank_mod_p(&ints, cols);
    if r == full {
        return r;
    }
    rank_bareiss(ints, cols)
}

pub fn rank_matrix(m: &OpMatrix) -> usize {
    let rows: Vec<CoVec> = (0..m.dim()).map(|i| m.row(i)).collect();
    rank(&rows)
}

/// Exact inverse by rational Gauss–Jordan; `None` when singular.
pub fn inverse(m: &OpMatrix) -> Option<OpMatrix> {
    let n = m.dim();
    let mut a: Vec<Vec<Rat>> = m.to_rows();
    let mut inv: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                if !a[c][j].is_zero() {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
                if !inv[c][j].is_zero() {
                    let t = &f * &inv[c][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(OpMatrix::from_fn(n, |i, j| inv[i][j].clone()))
}

/// Matrix whose rows are the given covectors.
pub fn rows_to_matrix(rows: &[CoVec]) -> OpMatrix {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.dim() == n), "need a square family");
    OpMatrix::from_entries(
        n,
        rows.iter().enumerate().flat_map(|(i, r)| r.support().into_iter().map(move |j| (i, j, r.get(j)))),
    )
}

/// LU with partial pivoting; returns `None` for an exactly singular pivot.
pub struct NumLu {
    lu: NumMatrix,
    perm: Vec<usize>,
}

impl NumLu {
    pub fn new(a: &NumMatrix) -> Option<Self> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| lu.get(i, c).abs1().partial_cmp(&lu.get(j, c).abs1()).unwrap())?;
            if lu.get(p, c).is_zero() {
                return None;
            }
            if p != c {
                perm.swap(p, c);
                for j in 0..n {
                    let t = lu.get(p, j).clone();
                    lu.set(p, j, lu.get(c, j).clone());
                    lu.set(c, j, t);
                }
            }
            let piv = lu.get(c, c).clone();
            for i in c + 1..n {
                if lu.get(i, c).is_zero() {
                    continue;
                }
                let f = lu.get(i, c) / &piv;
                for j in c + 1..n {
                    let v = lu.get(i, j) - &(&f * lu.get(c, j));
                    lu.set(i, j, v);
                }
                lu.set(i, c, f);
            }
        }
        Some(Self { lu, perm })
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Cplx]) -> Vec<Cplx> {
        let n = self.lu.dim();
        let mut y: Vec<Cplx> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu.get(i, j) * &y[j];
                y[i] = &y[i] - &t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu.get(i, j) * &y[j];
                y[i] = &y[i] - &t;
            }
            y[i] = &y[i] / self.lu.get(i, i);
        }
        y
    }

    pub fn inverse(&self) -> NumMatrix {
        let n = self.lu.dim();
        let bits = self.lu.bits();
        let cols: Vec<Vec<Cplx>> = (0..n)
            .map(|j| {
                let e: Vec<Cplx> = (0..n).map(|i| if i == j { Cplx::one(bits) } else { Cplx::zero(bits) }).collect();
                self.solve(&e)
            })
            .collect();
        NumMatrix::from_fn(n, bits, |i, j| cols[j][i].clone())
    }
}

/// Infinity-norm of a numeric matrix.
pub fn norm_inf(a: &NumMatrix) -> Real {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).fold(real_zero(a.bits()), |acc, j| acc + a.get(i, j).abs1()))
        .fold(real_zero(a.bits()), |m, r| if r > m { r } else { m })
}

/// Infinity-norm condition number; `None` when singular.
pub fn condition_number(a: &NumMatrix) -> Option<Real> {
    let lu = NumLu::new(a)?;
    Some(norm_inf(a) * norm_inf(&lu.inverse()))
}

/// Least-squares solution of an overdetermined complex system by
/// Householder QR. Returns the solution and the residual 2-norm.
pub fn lstsq(a: &[Vec<Cplx>], b: &[Cplx]) -> Option<(Vec<Cplx>, Real)> {
    let m = a.len();
    let n = a.first().map(Vec::len).unwrap_or(0);
    let bits = b.first().map(Cplx::bits).unwrap_or(128);
    if n == 0 {
        let r: Real = b.iter().fold(real_zero(bits), |acc, x| acc + x.norm_sqr());
        return Some((Vec::new(), r.sqrt()));
    }
    if m < n {
        return None;
    }
    let two = super::mp::real_from_bigint(&BigInt::from(2), bits);
    let mut r: Vec<Vec<Cplx>> = a.to_vec();
    let mut y: Vec<Cplx> = b.to_vec();
    for k in 0..n {
        let norm: Real = (k..m).fold(real_zero(bits), |acc, i| acc + r[i][k].norm_sqr()).sqrt();
        if super::mp::real_is_zero(&norm) {
            return None;
        }
        // alpha = -e^{i arg x_k} ‖x‖
        let xk = r[k][k].clone();
        let xabs = xk.abs();
        let phase = if super::mp::real_is_zero(&xabs) {
            Cplx::one(bits)
        } else {
            Cplx { re: &xk.re / &xabs, im: &xk.im / &xabs }
        };
        let alpha = -&phase.scale_real(&norm);
        let mut v: Vec<Cplx> = (k..m).map(|i| r[i][k].clone()).collect();
        v[0] = &v[0] - &alpha;
        let vnorm2: Real = v.iter().fold(real_zero(bits), |acc, x| acc + x.norm_sqr());
        if super::mp::real_is_zero(&vnorm2) {
            continue;
        }
        for j in k..n {
            let mut s = Cplx::zero(bits);
            for (t, vi) in v.iter().enumerate() {
                s = &s + &(&vi.conj() * &r[k + t][j]);
            }
            let f = Cplx { re: &s.re * &two / &vnorm2, im: &s.im * &two / &vnorm2 };
            for (t, vi) in v.iter().enumerate() {
                r[k + t][j] = &r[k + t][j] - &(vi * &f);
            }
        }
        let mut s = Cplx::zero(bits);
        for (t, vi) in v.iter().enumerate() {
            s = &s + &(&vi.conj() * &y[k + t]);
        }
        let f = Cplx { re: &s.re * &two / &vnorm2, im: &s.im * &two / &vnorm2 };
        for (t, vi) in v.iter().enumerate() {
            y[k + t] = &y[k + t] - &(vi * &f);
        }
    }
    let mut x = vec![Cplx::zero(bits); n];
    for i in (0..n).rev() {
        let mut s = y[i].clone();
        for j in i + 1..n {
            s = &s - &(&r[i][j] * &x[j]);
        }
        if r[i][i].is_zero() {
            return None;
        }
        x[i] = &s / &r[i][i];
    }
    let res: Real = (n..m).fold(real_zero(bits), |acc, i| acc + y[i].norm_sqr());
    Some((x, res.sqrt()))
}

/// Largest modulus among the entries of a dense complex system.
pub fn max_abs_rows(a: &[Vec<Cplx>]) -> Real {
    let bits = a.first().and_then(|r| r.first()).map(Cplx::bits).unwrap_or(128);
    a.iter().flatten().map(Cplx::abs1).fold(real_zero(bits), |m, x| if x > m { x } else { m })
}

pub fn real_max(a: Real, b: Real) -> Real {
    if a > b {
        a
    } else {
        b
    }
}

pub fn real_abs_ref(x: &Real) -> Real {
    real_abs(x)
}

/// Exact determinant of a small rational matrix by Bareiss.
pub fn det_exact(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    if n == 0 {
        return Rat::one();
    }
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// `true` when every entry is zero.
pub fn all_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mp::{real_pow10, Precision};
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn rank_detects_dependence() {
        let a = CoVec::from_rats(&[int(1), rat(1, 2), int(0)]);
        let b = CoVec::from_rats(&[int(0), int(1), int(3)]);
        let c = a.scale(&rat(2, 3)).add(&b.scale(&int(-5)));
        assert_eq!(rank(&[a.clone(), b.clone(), c]), 2);
        assert_eq!(rank(&[a, b, CoVec::unit(3, 2)]), 3);
    }

    #[test]
    fn bareiss_agrees_with_modular_rank_on_full_matrices() {
        let rows: Vec<Vec<BigInt>> = (0..5).map(|i| (0..5).map(|j| BigInt::from((i * i + 3 * j + 1) % 7)).collect()).collect();
        assert_eq!(rank_bareiss(rows.clone(), 5), rank_mod_p(&rows, 5));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = OpMatrix::from_fn(4, |i, j| rat(((i * 3 + j * 5) % 7) as i64 - 2, 1 + (i + j) as i64 % 2));
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), OpMatrix::identity(4));
        let sing = OpMatrix::from_fn(3, |i, j| int((i * j) as i64));
        assert!(inverse(&sing).is_none());
    }

    #[test]
    fn determinant_matches_leibniz() {
        let a = vec![vec![int(2), int(1), int(0)], vec![rat(1, 2), int(3), int(1)], vec![int(0), int(4), int(5)]];
        // 2(15-4) - 1(5/2 - 0) + 0
        assert_eq!(det_exact(&a), rat(39, 2));
    }

    #[test]
    fn least_squares_recovers_consistent_solution() {
        let bits = Precision::new(50).bits();
        let c = |re: f64, im: f64| Cplx::from_f64(re, im, bits);
        let a = vec![vec![c(1.0, 0.0), c(2.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(3.0, 0.0), c(-1.0, 2.0)]];
        let x = [c(0.5, -1.0), c(2.0, 0.25)];
        let b: Vec<Cplx> = a.iter().map(|r| &(&r[0] * &x[0]) + &(&r[1] * &x[1])).collect();
        let (sol, res) = lstsq(&a, &b).unwrap();
        assert!(res < real_pow10(-45, bits));
        for (s, t) in sol.iter().zip(&x) {
            assert!((s - t).abs() < real_pow10(-45, bits));
        }
    }

    #[test]
    fn numeric_lu_inverse() {
        let bits = Precision::new(40).bits();
        let m = OpMatrix::from_fn(3, |i, j| rat((i * 2 + j * 7) as i64 % 5 + (i == j) as i64 * 4, 3));
        let a = NumMatrix::from_exact(&m, bits);
        let inv = NumLu::new(&a).unwrap().inverse();
        let err = a.mul(&inv).sub(&NumMatrix::identity(3, bits)).max_abs();
        assert!(err < real_pow10(-38, bits));
        assert!(condition_number(&a).is_some());
    }
}
