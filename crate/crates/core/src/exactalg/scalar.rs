use super::mp::Cplx;
use super::rational::{rat_to_string, Rat};
use crate::error::{Error, Result};

/// A value tagged exact or numeric at construction; the two never mix.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Numeric(Cplx),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Numeric(_) => None,
        }
    }

    pub fn as_numeric(&self) -> Option<&Cplx> {
        match self {
            Scalar::Numeric(c) => Some(c),
            Scalar::Exact(_) => None,
        }
    }

    /// Explicit lift of an exact value into the numeric kind.
    pub fn to_numeric(&self, bits: usize) -> Cplx {
        match self {
            Scalar::Exact(r) => Cplx::from_rat(r, bits),
            Scalar::Numeric(c) => c.clone(),
        }
    }

    fn zip(
        &self,
        o: &Self,
        fe: impl FnOnce(&Rat, &Rat) -> Rat,
        fn_: impl FnOnce(&Cplx, &Cplx) -> Cplx,
    ) -> Result<Self> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(fe(a, b))),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Ok(Scalar::Numeric(fn_(a, b))),
            _ => Err(Error::ScalarKindMismatch),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a * b, |a, b| a * b)
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        let zero = match o {
            Scalar::Exact(b) => num_traits::Zero::is_zero(b),
            Scalar::Numeric(b) => b.is_zero(),
        };
        if zero {
            return Err(Error::DivisionByZero("scalar".into()));
        }
        self.zip(o, |a, b| a / b, |a, b| a / b)
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        match self {
            Scalar::Exact(r) => rat_to_string(r),
            Scalar::Numeric(c) => c.to_string_digits(digits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn kinds_do_not_mix() {
        let a = Scalar::Exact(rat(1, 2));
        let b = Scalar::Numeric(Cplx::from_rat(&rat(1, 2), 128));
        assert!(matches!(a.try_add(&b), Err(Error::ScalarKindMismatch)));
        assert_eq!(a.try_mul(&a).unwrap(), Scalar::Exact(rat(1, 4)));
        assert!(a.try_div(&Scalar::Exact(rat(0, 1))).is_err());
    }
}
