//! Dense multiprecision complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::mp::{real_zero, Cplx, Real};
use super::opmatrix::{CoVec, OpMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct NumMatrix {
    dim: usize,
    bits: usize,
    data: Vec<Cplx>,
}

impl NumMatrix {
    pub fn zero(dim: usize, bits: usize) -> Self {
        Self { dim, bits, data: vec![Cplx::zero(bits); dim * dim] }
    }

    pub fn identity(dim: usize, bits: usize) -> Self {
        let mut m = Self::zero(dim, bits);
        for i in 0..dim {
            m.data[i * dim + i] = Cplx::one(bits);
        }
        m
    }

    pub fn from_fn(dim: usize, bits: usize, f: impl Fn(usize, usize) -> Cplx) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, bits, data }
    }

    pub fn from_exact(m: &OpMatrix, bits: usize) -> Self {
        let mut out = Self::zero(m.dim(), bits);
        let den = super::mp::real_from_bigint(m.denominator(), bits);
        for i in 0..m.dim() {
            for (j, v) in m.row_nums(i) {
                out.data[i * m.dim() + j] = Cplx::from_real(super::mp::real_from_bigint(v, bits) / &den);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn get(&self, i: usize, j: usize) -> &Cplx {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cplx) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, bits: self.bits, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, bits: self.bits, data }
    }

    pub fn scale(&self, c: &Cplx) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        Self { dim: self.dim, bits: self.bits, data }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut out = Self::zero(n, self.bits);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out.data[i * n + j] = &out.data[i * n + j] + &t;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, self.bits, |i, j| self.get(j, i).clone())
    }

    /// `M v` for a column vector.
    pub fn matvec(&self, v: &[Cplx]) -> Vec<Cplx> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut acc = Cplx::zero(self.bits);
                for j in 0..n {
                    let a = &self.data[i * n + j];
                    if !a.is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `v M` for a row vector.
    pub fn vecmat(&self, v: &[Cplx]) -> Vec<Cplx> {
        let n = self.dim;
        let mut out = vec![Cplx::zero(self.bits); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let a = &self.data[i * n + j];
                if !a.is_zero() {
                    out[j] = &out[j] + &(&v[i] * a);
                }
            }
        }
        out
    }

    /// Largest entry modulus (1-norm of each complex entry).
    pub fn max_abs(&self) -> Real {
        self.data.iter().map(Cplx::abs1).fold(real_zero(self.bits), |a, b| if b > a { b } else { a })
    }

    pub fn to_c64(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_c64())
    }
}

/// Exact covector lifted to numbers.
pub fn covec_to_num(v: &CoVec, bits: usize) -> Vec<Cplx> {
    let den = super::mp::real_from_bigint(v.denominator(), bits);
    v.numerators()
        .iter()
        .map(|x| {
            if num_traits::Zero::is_zero(x) {
                Cplx::zero(bits)
            } else {
                Cplx::from_real(super::mp::real_from_bigint(x, bits) / &den)
            }
        })
        .collect()
}

pub fn dot(a: &[Cplx], b: &[Cplx]) -> Cplx {
    let bits = a.first().map(Cplx::bits).unwrap_or(64);
    a.iter().zip(b).fold(Cplx::zero(bits), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { &acc + &(x * y) })
}

/// Largest component modulus (1-norm per component).
pub fn vec_max_abs(v: &[Cplx]) -> Real {
    let bits = v.first().map(Cplx::bits).unwrap_or(64);
    v.iter().map(Cplx::abs1).fold(real_zero(bits), |a, b| if b > a { b } else { a })
}

pub fn vec_sub(a: &[Cplx], b: &[Cplx]) -> Vec<Cplx> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Cplx], c: &Cplx) -> Vec<Cplx> {
    a.iter().map(|x| x * c).collect()
}
