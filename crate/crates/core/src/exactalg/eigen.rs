//! Eigen-decomposition of non-symmetric matrices at high precision.
//!
//! A double-precision Schur/inverse-iteration pass seeds the eigenpairs; a
//! first-order correction `V ← V + V·X`, `λ ← λ + diag(F)` with
//! `F = V⁻¹(AV − VΛ)` and `X_ij = F_ij/(λ_j − λ_i)` then refines them.
//! The residual is formed in full precision while `V⁻¹` and the corrections
//! only need double precision, so every sweep gains roughly the digits of
//! a double.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::mp::{real_to_f64, real_zero, Cplx, Precision, Real};
use super::nummatrix::{dot, vec_max_abs, NumMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<Cplx>,
    /// Right eigenvectors (columns), largest component scaled to exactly 1.
    pub right: Vec<Vec<Cplx>>,
    /// Left eigenvectors, scaled so that `left[i]·right[i] = 1`.
    pub left: Vec<Vec<Cplx>>,
    /// Worst relative residual ‖Av − λv‖ / (‖A‖‖v‖) over both systems.
    pub residual: f64,
    /// Worst normalized off-diagonal overlap |w_i·v_j|, i ≠ j.
    pub biorthogonality: f64,
}

const MAX_SWEEPS: usize = 40;

fn seed_eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), 1e-15, 100_000 * n.max(1))
        .ok_or_else(|| Error::NonConvergence { residual: "double-precision Schur failed".into() })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

fn seed_vectors(a: &DMatrix<Complex64>, vals: &[Complex64]) -> DMatrix<Complex64> {
    let n = a.nrows();
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
    let mut v = DMatrix::<Complex64>::zeros(n, n);
    for (k, &lam) in vals.iter().enumerate() {
        let shift = lam + Complex64::new(scale * 1e-13, scale * 1e-14);
        let m = a - DMatrix::<Complex64>::identity(n, n) * shift;
        let lu = m.lu();
        let mut x = DVector::<Complex64>::from_fn(n, |i, _| Complex64::new(1.0 + 0.1 * i as f64, 0.37 * (i % 3) as f64));
        for _ in 0..3 {
            if let Some(y) = lu.solve(&x) {
                let nrm = y.iter().map(|c| c.norm()).fold(0.0, f64::max);
                if nrm > 0.0 && nrm.is_finite() {
                    x = y / Complex64::new(nrm, 0.0);
                }
            }
        }
        v.set_column(k, &x);
    }
    v
}

/// Refines the columns of `v` as eigenvectors of `a` in place; returns the
/// final worst relative residual.
fn refine(a: &NumMatrix, vals: &mut [Cplx], v: &mut [Vec<Cplx>], w64: &DMatrix<Complex64>, v64: &DMatrix<Complex64>, target: f64) -> f64 {
    let n = a.dim();
    let bits = a.bits();
    let anorm = real_to_f64(&a.max_abs()).max(f64::MIN_POSITIVE) * n as f64;
    let mut best = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let mut r64 = DMatrix::<Complex64>::zeros(n, n);
        let mut worst = 0.0f64;
        for j in 0..n {
            let av = a.matvec(&v[j]);
            let col: Vec<Cplx> = av.iter().zip(&v[j]).map(|(x, y)| x - &(&vals[j] * y)).collect();
            let vn = real_to_f64(&vec_max_abs(&v[j])).max(f64::MIN_POSITIVE);
            let rn = real_to_f64(&vec_max_abs(&col));
            worst = worst.max(rn / (anorm * vn));
            for i in 0..n {
                r64[(i, j)] = col[i].to_c64();
            }
        }
        if worst <= target || worst >= best * 0.5 && worst < 1e-20 {
            return worst.min(best);
        }
        best = best.min(worst);
        let f = w64 * &r64;
        let mut x = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let gap = vals[j].to_c64() - vals[i].to_c64();
                    x[(i, j)] = f[(i, j)] / gap;
                }
            }
        }
        let dv = v64 * &x;
        for j in 0..n {
            vals[j] = &vals[j] + &Cplx::from_c64(f[(j, j)], bits);
            for i in 0..n {
                v[j][i] = &v[j][i] + &Cplx::from_c64(dv[(i, j)], bits);
            }
        }
    }
    best
}

fn min_gap(vals: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            g = g.min((vals[i] - vals[j]).norm());
        }
    }
    g
}

/// Eigenvalues with right and left eigenvectors of a diagonalizable matrix
/// with simple spectrum, to the working precision of `a`.
pub fn eigen_decompose(a: &NumMatrix, prec: Precision) -> Result<EigenDecomposition> {
    if prec.digits < Precision::MIN_DIGITS {
        return Err(Error::PrecisionTooLow { digits: prec.digits, needed: Precision::MIN_DIGITS });
    }
    let n = a.dim();
    let bits = a.bits();
    if n == 0 {
        return Ok(EigenDecomposition { values: vec![], right: vec![], left: vec![], residual: 0.0, biorthogonality: 0.0 });
    }
    let a64 = a.to_c64();
    let scale = a64.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut seeds = seed_eigenvalues(&a64)?;
    seeds.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap()));
    let gap = min_gap(&seeds);
    if gap < 1e-9 * scale {
        return Err(Error::Degenerate(format!("eigenvalue gap {gap:e} relative to norm {scale:e}")));
    }
    let v64 = seed_vectors(&a64, &seeds);
    let w64 = v64.clone().try_inverse().ok_or_else(|| Error::Defective("seed eigenvector matrix is singular".into()))?;
    let target = 10f64.powi(-(prec.digits as i32) - 3);

    let mut vals: Vec<Cplx> = seeds.iter().map(|&c| Cplx::from_c64(c, bits)).collect();
    let mut right: Vec<Vec<Cplx>> = (0..n).map(|j| (0..n).map(|i| Cplx::from_c64(v64[(i, j)], bits)).collect()).collect();
    let res_r = refine(a, &mut vals, &mut right, &w64, &v64, target);

    // left eigenvectors: right eigenvectors of Aᵀ, seeded by the rows of V⁻¹
    let at = a.transpose();
    let wt64 = w64.transpose();
    let vt64 = v64.transpose();
    let mut vals_l = vals.clone();
    let mut left: Vec<Vec<Cplx>> = (0..n).map(|j| (0..n).map(|i| Cplx::from_c64(w64[(j, i)], bits)).collect()).collect();
    let res_l = refine(&at, &mut vals_l, &mut left, &vt64, &wt64, target);

    for v in right.iter_mut() {
        let piv = v.iter().max_by(|a, b| a.abs1().partial_cmp(&b.abs1()).unwrap()).unwrap().clone();
        let inv = &Cplx::one(bits) / &piv;
        v.iter_mut().for_each(|x| *x = &*x * &inv);
    }
    let mut biorth = 0.0f64;
    for i in 0..n {
        let p = dot(&left[i], &right[i]);
        let scale_i = real_to_f64(&vec_max_abs(&left[i])) * real_to_f64(&vec_max_abs(&right[i]));
        if real_to_f64(&p.abs1()) < 1e-12 * scale_i {
            return Err(Error::Defective(format!("left/right overlap vanishes for eigenvalue {i}")));
        }
        let inv = &Cplx::one(bits) / &p;
        left[i].iter_mut().for_each(|x| *x = &*x * &inv);
    }
    for i in 0..n {
        let wn = real_to_f64(&vec_max_abs(&left[i]));
        for j in 0..n {
            if i != j {
                let o = real_to_f64(&dot(&left[i], &right[j]).abs1());
                biorth = biorth.max(o / (wn * real_to_f64(&vec_max_abs(&right[j]))));
            }
        }
    }
    let residual = res_r.max(res_l);
    let accept = 10f64.powi(-(prec.digits as i32) / 2);
    if !(residual <= accept) {
        return Err(Error::NonConvergence { residual: format!("{residual:e}") });
    }
    if !(biorth <= accept) {
        return Err(Error::Defective(format!("bi-orthogonality defect {biorth:e}")));
    }
    Ok(EigenDecomposition { values: vals, right, left, residual, biorthogonality: biorth })
}

/// `‖A v − λ v‖ / (‖A‖ ‖v‖)` in full precision.
pub fn relative_residual(a: &NumMatrix, lam: &Cplx, v: &[Cplx]) -> Real {
    let av = a.matvec(v);
    let r: Vec<Cplx> = av.iter().zip(v).map(|(x, y)| x - &(lam * y)).collect();
    let den = a.max_abs() * vec_max_abs(v);
    if super::mp::real_is_zero(&den) {
        return real_zero(a.bits());
    }
    vec_max_abs(&r) / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mp::real_pow10;
    use crate::exactalg::opmatrix::OpMatrix;
    use crate::exactalg::rational::{int, rat};

    fn p() -> Precision {
        Precision::new(60)
    }

    #[test]
    fn diagonal_matrix() {
        let m = OpMatrix::from_fn(3, |i, j| if i == j { int(i as i64 + 1) } else { int(0) });
        let e = eigen_decompose(&NumMatrix::from_exact(&m, p().bits()), p()).unwrap();
        let got: Vec<f64> = e.values.iter().map(|v| real_to_f64(&v.re)).collect();
        assert_eq!(got, vec![1.0, 2.0, 3.0]);
        for (k, v) in e.right.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((real_to_f64(&x.abs()) - want).abs() < 1e-40, "{k} {i} {:?} res {}", x, e.residual);
            }
        }
    }

    #[test]
    fn companion_matrix_roots() {
        // u^2 - 5u + 6
        let m = OpMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => int(5),
            (0, 1) => int(-6),
            (1, 0) => int(1),
            _ => int(0),
        });
        let a = NumMatrix::from_exact(&m, p().bits());
        let e = eigen_decompose(&a, p()).unwrap();
        let b = p().bits();
        assert!((&e.values[0] - &Cplx::from_rat(&int(2), b)).abs() < real_pow10(-55, b));
        assert!((&e.values[1] - &Cplx::from_rat(&int(3), b)).abs() < real_pow10(-55, b));
    }

    #[test]
    fn complex_pair_and_biorthogonality() {
        let m = OpMatrix::from_fn(4, |i, j| rat(((i * 5 + j * 3) % 7) as i64 - 3, 1 + ((i + 2 * j) % 3) as i64));
        let a = NumMatrix::from_exact(&m, p().bits());
        let e = eigen_decompose(&a, p()).unwrap();
        for (lam, v) in e.values.iter().zip(&e.right) {
            assert!(relative_residual(&a, lam, v) < real_pow10(-55, p().bits()));
        }
        assert!(e.biorthogonality < 1e-50);
        for (lam, w) in e.values.iter().zip(&e.left) {
            let wa = a.vecmat(w);
            let r: Vec<Cplx> = wa.iter().zip(w).map(|(x, y)| x - &(lam * y)).collect();
            assert!(real_to_f64(&vec_max_abs(&r)) < 1e-50 * real_to_f64(&vec_max_abs(w)));
        }
    }

    #[test]
    fn degenerate_spectrum_is_reported() {
        let a = NumMatrix::from_exact(&OpMatrix::identity(3), p().bits());
        assert!(matches!(eigen_decompose(&a, p()), Err(Error::Degenerate(_))));
    }
}
