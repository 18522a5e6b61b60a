//! Dense univariate polynomials in the spectral parameter `u`.

use super::field::Field;
use super::rational::Rat;

/// Coefficients in ascending degree; the zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `u - r`.
    pub fn linear_root(r: &F) -> Self {
        Self::new(vec![r.fneg(), r.one_like()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[F], one: &F) -> Self {
        roots.iter().fold(Self::constant(one.clone()), |acc, r| acc.mul(&Self::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Coefficient of `u^k` (zero beyond the degree) given a template scalar.
    pub fn coeff(&self, k: usize, like: &F) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(|| like.zero_like())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.fadd(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(F::fneg).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.fmul(s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out: Vec<Option<F>> = vec![None; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a.fmul(b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.fadd(&t),
                    None => t,
                });
            }
        }
        let zero = self.coeffs[0].zero_like();
        Self::new(out.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.fmul(x).fadd(c);
        }
        acc
    }

    /// `p(u + s)`, exact Taylor shift by Horner's scheme on `u + s`.
    pub fn shift(&self, s: &F) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![s.clone(), s.one_like()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.leading()?.clone();
        let dd = d.degree()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q: Vec<F> = vec![dl.zero_like(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].fdiv(&dl);
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].fsub(&c.fmul(dj));
            }
            // the leading slot is zero by construction; make it exact
            r[k + dd] = dl.zero_like();
            q[k] = c;
        }
        r.truncate(dd);
        Some((Self::new(q), Self::new(r)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.one_like().fdiv(l);
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Drops leading coefficients whose magnitude is below `tol` times the
    /// largest one (numeric cleanup only).
    pub fn trim_relative(&self, tol: f64) -> Self {
        let big = self.coeffs.iter().map(F::magnitude).fold(0.0, f64::max);
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.magnitude() <= tol * big) {
            c.pop();
        }
        Self { coeffs: c }
    }
}

impl UPoly<Rat> {
    /// Integer-coefficient convenience constructor.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| super::rational::int(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn shift_examples() {
        let u = UPoly::from_ints(&[0, 1]);
        assert_eq!(u.shift(&int(1)), UPoly::from_ints(&[1, 1]));
        let u2 = UPoly::from_ints(&[0, 0, 1]);
        assert_eq!(u2.shift(&int(-1)), UPoly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn shift_of_root_product_moves_roots() {
        // nu_1(u) = u (u - 1/3) - ... shifted by 1 has roots -1 and 1/3 - 1
        let p = UPoly::from_roots(&[int(0), rat(1, 3)], &int(1));
        let direct = UPoly::from_roots(&[int(-1), rat(-2, 3)], &int(1));
        assert_eq!(p.shift(&int(1)), direct);
    }

    #[test]
    fn division_recovers_factors() {
        let a = UPoly::from_roots(&[int(1), int(2), rat(5, 7)], &int(1));
        let b = UPoly::from_roots(&[int(2)], &int(1));
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
        let (_, r2) = a.div_rem(&UPoly::from_roots(&[int(3)], &int(1))).unwrap();
        assert_eq!(r2, UPoly::constant(a.eval(&int(3))));
    }
}
