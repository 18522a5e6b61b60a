//! Numeric Bethe layer: joint eigenvectors of the twisted transfer matrices,
//! per-state Baxter polynomials, the QQ table and the identities built on it.
//!
//! Everything here is per eigenstate and projective: Q-functions are never
//! built as operators, only from the eigenvalues `τ_a(u)` of `𝕋_{a,1}(u)`.

mod baxter;
mod checks;
mod diag;
mod qq;

pub use baxter::{baxter_degree_bound, solve_baxter, solve_all};
pub use checks::{
    backlund_identity_check, default_backlund_cases, factorized_wavefunction, quantisation_check, quantisation_determinants, vanishing_check, wavefunction_check, BacklundCase, BacklundReport, QuantisationReport, VanishingReport,
    WavefunctionReport,
};
pub use diag::{diagonalize_bethe, BetheSpectrum};
pub use qq::{casoratian, cbrsolk, qq_build, quantum_eigenvalue, quantum_eigenvalue_q, wronskian_transfer, QTable};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::exactalg::mp::{real_pow10, real_to_f64, Cplx, Precision, Real};
use crate::exactalg::rational::{rat_to_string, Rat};
use crate::exactalg::UPoly;

/// Tolerances derived from the working precision, in one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NumericPolicy {
    pub digits: u32,
}

impl NumericPolicy {
    pub fn new(prec: Precision) -> Self {
        Self { digits: prec.digits }
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.digits)
    }

    pub fn bits(&self) -> usize {
        self.precision().bits()
    }

    /// Relative Baxter residual accepted as a solution: `10^(10−digits)`.
    pub fn baxter(&self) -> f64 {
        10f64.powi(10 - self.digits as i32)
    }

    /// Identities between independently computed numbers: `10^(−digits/2)`.
    pub fn identity(&self) -> f64 {
        10f64.powi(-(self.digits as i32) / 2)
    }

    /// Relative remainder of a polynomial division that must be exact.
    pub fn division(&self) -> f64 {
        self.identity()
    }

    /// Relative eigenvalue gap below which the spectrum counts as clustered.
    pub fn cluster_gap(&self) -> f64 {
        1e-9
    }

    /// Absolute floor under which a value counts as zero in relative errors.
    pub fn zero_floor(&self) -> Real {
        real_pow10(10 - self.digits as i32, self.bits())
    }
}

/// `z^{u/ħ}·(u^M + …)`; the polynomial part is monic.
#[derive(Clone, Debug)]
pub struct TwistedPolynomial {
    pub z: Rat,
    pub poly: UPoly<Cplx>,
}

impl TwistedPolynomial {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// `z^m p(u0 + ħm)`: the value at `u0 + ħm` with `z^{u0/ħ}` removed.
    pub fn lattice_value(&self, u0: &Rat, m: i64, hbar: &Rat, bits: usize) -> Cplx {
        let u = Cplx::from_rat(&(u0 + hbar * Rat::from_integer(m.into())), bits);
        &Cplx::from_rat(&self.z, bits).powi(m) * &self.poly.eval(&u)
    }

    pub fn record(&self, digits: usize) -> TwistedPolynomialRecord {
        TwistedPolynomialRecord { z: rat_to_string(&self.z), degree: self.degree(), coefficients: poly_strings(&self.poly, digits) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedPolynomialRecord {
    pub z: String,
    pub degree: usize,
    /// Ascending powers of `u`.
    pub coefficients: Vec<String>,
}

/// One joint eigenvector of the Bethe algebra with its spectral data.
#[derive(Clone, Debug)]
pub struct BetheState {
    pub index: usize,
    pub right: Vec<Cplx>,
    /// Left eigenvector with `left·right = 1`.
    pub left: Vec<Cplx>,
    /// `τ_a(u)` for `a = 1..n` (index `a−1`).
    pub tau: Vec<UPoly<Cplx>>,
    /// `q̂_i` for `i = 1..n` (index `i−1`), empty until solved.
    pub q: Vec<TwistedPolynomial>,
    /// Worst relative residual of `𝕋_{a,1}(u_s)Ψ = τ_a(u_s)Ψ`.
    pub eigen_residual: f64,
    /// Worst relative mismatch of the interpolated `τ_a` at a check point.
    pub interpolation_residual: f64,
    pub baxter_residuals: Vec<f64>,
}

impl BetheState {
    /// `τ_a(u)` with `τ_0 = 1` and `τ_a = 0` beyond `n`.
    pub fn tau_at(&self, a: usize, u: &Cplx) -> Cplx {
        match a {
            0 => Cplx::one(u.bits()),
            a if a <= self.tau.len() => self.tau[a - 1].eval(u),
            _ => Cplx::zero(u.bits()),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.q.iter().map(TwistedPolynomial::degree).collect()
    }

    pub fn record(&self, digits: usize) -> BetheStateRecord {
        BetheStateRecord {
            index: self.index,
            precision_digits: digits,
            tau: self.tau.iter().map(|t| poly_strings(t, digits)).collect(),
            q: self.q.iter().map(|q| q.record(digits)).collect(),
            eigen_residual: self.eigen_residual,
            interpolation_residual: self.interpolation_residual,
            baxter_residuals: self.baxter_residuals.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BetheStateRecord {
    pub index: usize,
    pub precision_digits: usize,
    pub tau: Vec<Vec<String>>,
    pub q: Vec<TwistedPolynomialRecord>,
    pub eigen_residual: f64,
    pub interpolation_residual: f64,
    pub baxter_residuals: Vec<f64>,
}

fn poly_strings(p: &UPoly<Cplx>, digits: usize) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string_digits(digits)).collect()
}

pub(crate) fn cx(r: &Rat, bits: usize) -> Cplx {
    Cplx::from_rat(r, bits)
}

pub(crate) fn rat_poly(p: &UPoly<Rat>, bits: usize) -> UPoly<Cplx> {
    p.map(|x| cx(x, bits))
}

pub(crate) fn int_rat(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

/// `|a − b| / max(|a|, |b|, floor)`.
pub(crate) fn rel_diff(a: &Cplx, b: &Cplx, floor: &Real) -> f64 {
    let d = (a - b).abs();
    let mut s = a.abs();
    let bb = b.abs();
    if bb > s {
        s = bb;
    }
    if *floor > s {
        s = floor.clone();
    }
    real_to_f64(&(d / s))
}

pub(crate) fn poly_max_abs(p: &UPoly<Cplx>, bits: usize) -> Real {
    p.coeffs().iter().map(Cplx::abs).fold(crate::exactalg::mp::real_zero(bits), |m, x| if x > m { x } else { m })
}

/// `(p(u), Σ|c_i||u|^i)`: the value and its natural rounding scale.
pub(crate) fn eval_with_scale(p: &UPoly<Cplx>, u: &Cplx) -> (Cplx, Real) {
    let au = u.abs();
    let bits = u.bits();
    let mut scale = crate::exactalg::mp::real_zero(bits);
    for c in p.coeffs().iter().rev() {
        scale = scale * &au + c.abs();
    }
    (p.eval(u), scale)
}

/// Determinant of a small dense complex matrix by pivoted elimination.
pub(crate) fn cdet(mut m: Vec<Vec<Cplx>>, bits: usize) -> Cplx {
    let n = m.len();
    let mut det = Cplx::one(bits);
    for k in 0..n {
        let piv = (k..n).max_by(|&a, &b| m[a][k].abs1().partial_cmp(&m[b][k].abs1()).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(k);
        if m[piv][k].is_zero() {
            return Cplx::zero(bits);
        }
        if piv != k {
            m.swap(piv, k);
            det = -&det;
        }
        det = &det * &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}

/// Determinant of a small matrix of polynomials by Laplace expansion.
pub(crate) fn poly_det(m: &[Vec<UPoly<Cplx>>]) -> UPoly<Cplx> {
    let n = m.len();
    if n == 0 {
        return UPoly::zero();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UPoly::zero();
    for (j, head) in m[0].iter().enumerate() {
        let minor: Vec<Vec<UPoly<Cplx>>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = head.mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Sign of the permutation given as a sequence of distinct integers.
pub(crate) fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

pub(crate) fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
