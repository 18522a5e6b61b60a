//! Polynomials in `u` with operator coefficients.

use super::field::Field;
use super::mp::Cplx;
use super::nummatrix::NumMatrix;
use super::opmatrix::OpMatrix;
use super::rational::Rat;
use super::upoly::UPoly;

/// Matrix type usable as a polynomial coefficient.
pub trait OperatorMatrix: Clone + std::fmt::Debug + PartialEq + Send + Sync {
    type S: Field;
    fn dim(&self) -> usize;
    fn zero_like(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Self::S) -> Self;
    /// A scalar of the matching field (for numeric precision).
    fn scalar_like(&self) -> Self::S;
}

impl OperatorMatrix for OpMatrix {
    type S = Rat;
    fn dim(&self) -> usize {
        OpMatrix::dim(self)
    }
    fn zero_like(&self) -> Self {
        OpMatrix::zero(self.dim())
    }
    fn identity_like(&self) -> Self {
        OpMatrix::identity(self.dim())
    }
    fn is_zero(&self) -> bool {
        OpMatrix::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        OpMatrix::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        OpMatrix::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        OpMatrix::mul(self, o)
    }
    fn scale(&self, c: &Rat) -> Self {
        OpMatrix::scale(self, c)
    }
    fn scalar_like(&self) -> Rat {
        Rat::from_integer(0.into())
    }
}

impl OperatorMatrix for NumMatrix {
    type S = Cplx;
    fn dim(&self) -> usize {
        NumMatrix::dim(self)
    }
    fn zero_like(&self) -> Self {
        NumMatrix::zero(self.dim(), self.bits())
    }
    fn identity_like(&self) -> Self {
        NumMatrix::identity(self.dim(), self.bits())
    }
    fn is_zero(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.get(i, j).is_zero()))
    }
    fn add(&self, o: &Self) -> Self {
        NumMatrix::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        NumMatrix::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        NumMatrix::mul(self, o)
    }
    fn scale(&self, c: &Cplx) -> Self {
        NumMatrix::scale(self, c)
    }
    fn scalar_like(&self) -> Cplx {
        Cplx::zero(self.bits())
    }
}

/// `Σ_k C_k u^k`; trailing zero coefficients are dropped so `degree` is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOperator<M: OperatorMatrix = OpMatrix> {
    dim: usize,
    coeffs: Vec<M>,
}

impl<M: OperatorMatrix> PolyOperator<M> {
    pub fn new(dim: usize, mut coeffs: Vec<M>) -> Self {
        assert!(coeffs.iter().all(|c| c.dim() == dim), "coefficient dimensions differ");
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { dim, coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: Vec::new() }
    }

    pub fn constant(m: M) -> Self {
        Self::new(m.dim(), vec![m])
    }

    /// `a + b·u`.
    pub fn linear(a: M, b: M) -> Self {
        Self::new(a.dim(), vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[M] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&M> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(self.dim, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale_by(|m| m.scale(&m.scalar_like().one_like().fneg())))
    }

    fn scale_by(&self, f: impl Fn(&M) -> M) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &M::S) -> Self {
        self.scale_by(|m| m.scale(c))
    }

    /// Coefficient convolution, `self` to the left of `o`.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out: Vec<Option<M>> = vec![None; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a.mul(b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.add(&p),
                    None => p,
                });
            }
        }
        let z = self.coeffs[0].zero_like();
        Self::new(self.dim, out.into_iter().map(|c| c.unwrap_or_else(|| z.clone())).collect())
    }

    /// Multiplication by a scalar polynomial (times the identity).
    pub fn mul_scalar_poly(&self, p: &UPoly<M::S>) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zero(self.dim);
        }
        let mut acc = Self::zero(self.dim);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut shifted = vec![self.coeffs[0].zero_like(); k];
            shifted.extend(self.coeffs.iter().map(|m| m.scale(c)));
            acc = acc.add(&Self::new(self.dim, shifted));
        }
        acc
    }

    /// Horner evaluation at `u0`.
    pub fn eval(&self, u0: &M::S) -> Option<M> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.scale(u0).add(c);
        }
        Some(acc)
    }

    /// Evaluation, with a zero matrix of the given template for the zero polynomial.
    pub fn eval_or_zero(&self, u0: &M::S, template: &M) -> M {
        self.eval(u0).unwrap_or_else(|| template.zero_like())
    }

    /// `P(u + s)`, exact for rational scalars.
    pub fn shift(&self, s: &M::S) -> Self {
        let mut acc: Vec<M> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc ← acc·(u + s) + c
            let mut next: Vec<M> = Vec::with_capacity(acc.len() + 1);
            for k in 0..=acc.len() {
                let from_u = if k >= 1 { Some(acc[k - 1].clone()) } else { None };
                let from_s = acc.get(k).map(|m| m.scale(s));
                next.push(match (from_u, from_s) {
                    (Some(a), Some(b)) => a.add(&b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => c.zero_like(),
                });
            }
            next[0] = next[0].add(c);
            acc = next;
        }
        Self::new(self.dim, acc)
    }

    pub fn map<N: OperatorMatrix>(&self, f: impl Fn(&M) -> N) -> PolyOperator<N> {
        PolyOperator::new(self.dim, self.coeffs.iter().map(f).collect())
    }
}

impl PolyOperator<OpMatrix> {
    pub fn identity(dim: usize) -> Self {
        Self::constant(OpMatrix::identity(dim))
    }

    /// `p(u)·Id`.
    pub fn from_scalar_poly(p: &UPoly<Rat>, dim: usize) -> Self {
        Self::new(dim, p.coeffs().iter().map(|c| OpMatrix::scalar(dim, c)).collect())
    }

    /// `Some(p)` when every coefficient is a multiple of the identity.
    pub fn as_scalar_poly(&self) -> Option<UPoly<Rat>> {
        let c: Option<Vec<Rat>> = self.coeffs.iter().map(OpMatrix::as_scalar).collect();
        c.map(UPoly::new)
    }

    pub fn eval_exact(&self, u0: &Rat) -> OpMatrix {
        self.eval(u0).unwrap_or_else(|| OpMatrix::zero(self.dim))
    }

    pub fn to_numeric(&self, bits: usize) -> PolyOperator<NumMatrix> {
        self.map(|m| NumMatrix::from_exact(m, bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn rand_poly(seed: i64, deg: usize) -> PolyOperator {
        PolyOperator::new(
            4,
            (0..=deg)
                .map(|k| {
                    OpMatrix::from_fn(4, |i, j| {
                        let v = (seed * 31 + k as i64 * 17 + i as i64 * 5 + j as i64 * 3) % 7 - 3;
                        rat(v, 1 + (i as i64 + k as i64) % 2)
                    })
                })
                .collect(),
        )
    }

    #[test]
    fn unit_and_monomial_products() {
        let b = rand_poly(1, 2);
        assert_eq!(PolyOperator::identity(4).mul(&b), b);
        let u = PolyOperator::linear(OpMatrix::zero(4), OpMatrix::identity(4));
        let u2 = u.mul(&u);
        assert_eq!(u2.degree(), Some(2));
        assert_eq!(u2.coeffs()[2], OpMatrix::identity(4));
    }

    #[test]
    fn product_matches_pointwise_evaluation() {
        let a = rand_poly(2, 2);
        let b = rand_poly(3, 2);
        let ab = a.mul(&b);
        for s in -2..3 {
            let x = rat(s, 3);
            assert_eq!(ab.eval_exact(&x), a.eval_exact(&x).mul(&b.eval_exact(&x)));
        }
    }

    #[test]
    fn shift_composes() {
        let a = rand_poly(4, 3);
        assert_eq!(a.shift(&rat(1, 2)).shift(&rat(-3, 4)), a.shift(&rat(-1, 4)));
        let x = rat(5, 7);
        assert_eq!(a.shift(&int(2)).eval_exact(&x), a.eval_exact(&(x + int(2))));
    }

    #[test]
    fn numeric_evaluation_commutes_with_product() {
        let bits = crate::exactalg::mp::Precision::new(40).bits();
        let a = rand_poly(5, 2).to_numeric(bits);
        let b = rand_poly(6, 1).to_numeric(bits);
        let x = Cplx::from_f64(0.3, -1.1, bits);
        let lhs = a.mul(&b).eval(&x).unwrap();
        let rhs = a.eval(&x).unwrap().mul(&b.eval(&x).unwrap());
        let err = lhs.sub(&rhs).max_abs();
        let scale = lhs.max_abs();
        assert!(err <= scale * crate::exactalg::mp::real_pow10(-38, bits));
    }
}
