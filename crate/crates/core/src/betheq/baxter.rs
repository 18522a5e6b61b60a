//! Per-state Baxter polynomials.
//!
//! With `Q_i = q̂_i Γ[ν_1]`, `Γ(u+ħ) = ν_1(u)Γ(u)` and `q̂_i = z_i^{u/ħ} p_i(u)`,
//! the Talalaev equation `Σ_a (−1)^a τ_a(u) Q_i(u + ħ(1−a)) = 0` becomes,
//! after removing `z_i^{u/ħ+1} Γ(u − ħ(n−1))`,
//!
//! `Σ_a (−1)^a z_i^{−a} τ_a(u) p_i(u + ħ(1−a)) Π_{m=a}^{n−1} ν_1(u − mħ) = 0`.

use rayon::prelude::*;

use super::diag::BetheSpectrum;
use super::{cx, int_rat, poly_max_abs, rat_poly, BetheState, TwistedPolynomial};
use crate::error::{Error, Result};
use crate::exactalg::linalg::lstsq;
use crate::exactalg::mp::{real_from_f64, real_is_zero, real_to_f64, Cplx};
use crate::exactalg::{Rat, UPoly};
use crate::gtalg::nu_poly;
use crate::yangian::ChainSpec;

/// Largest possible `deg p_i`: the degree count of the quantisation
/// condition, `Σ_{α,j} (ν^α_1 − ν^α_j)`.
pub fn baxter_degree_bound(spec: &ChainSpec) -> usize {
    spec.nu.iter().map(|nu| nu.iter().map(|&x| (nu[0] - x) as usize).sum::<usize>()).sum()
}

/// `S_a(u) = (−1)^a z^{−a} τ_a(u) Π_{m=a}^{n−1} ν_1(u − mħ)` for `a = 0..n`.
fn baxter_weights(spec: &ChainSpec, state: &BetheState, z: &Rat, bits: usize) -> Vec<UPoly<Cplx>> {
    let n = spec.n;
    let nu1 = nu_poly(spec, 1);
    (0..=n)
        .map(|a| {
            let mut f = UPoly::constant(Rat::from_integer(1.into()));
            for m in a..n {
                f = f.mul(&nu1.shift(&(-&spec.hbar * int_rat(m as i64))));
            }
            let zc = {
                let inv = z.recip();
                let p = num_traits::pow(inv, a);
                if a % 2 == 1 {
                    -p
                } else {
                    p
                }
            };
            let tau = if a == 0 { UPoly::constant(Cplx::one(bits)) } else { state.tau[a - 1].clone() };
            tau.mul(&rat_poly(&f.scale(&zc), bits))
        })
        .collect()
}

/// Residual of the degree-`m` monic ansatz, with its solution.
fn try_degree(spec: &ChainSpec, weights: &[UPoly<Cplx>], m: usize, bits: usize) -> Option<(UPoly<Cplx>, f64, f64)> {
    let n = spec.n;
    // E_c(u) = Σ_a S_a(u) (u + ħ(1−a))^c
    let mut powers: Vec<UPoly<Cplx>> = vec![UPoly::constant(Cplx::one(bits)); n + 1];
    let lins: Vec<UPoly<Cplx>> = (0..=n).map(|a| UPoly::new(vec![cx(&(&spec.hbar * int_rat(1 - a as i64)), bits), Cplx::one(bits)])).collect();
    let mut cols: Vec<UPoly<Cplx>> = Vec::with_capacity(m + 1);
    for c in 0..=m {
        if c > 0 {
            for a in 0..=n {
                powers[a] = powers[a].mul(&lins[a]);
            }
        }
        let e = (0..=n).fold(UPoly::zero(), |acc: UPoly<Cplx>, a| acc.add(&weights[a].mul(&powers[a])));
        cols.push(e);
    }
    let rows = cols.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(m + 1);
    let zero = Cplx::zero(bits);
    let coef = |p: &UPoly<Cplx>, r: usize| p.coeffs().get(r).cloned().unwrap_or_else(|| zero.clone());
    let a: Vec<Vec<Cplx>> = (0..rows).map(|r| (0..m).map(|c| coef(&cols[c], r)).collect()).collect();
    let b: Vec<Cplx> = (0..rows).map(|r| -&coef(&cols[m], r)).collect();
    let (x, res) = lstsq(&a, &b)?;
    // rounding scale of the individual terms; the sum itself cancels
    let xm = x.iter().map(Cplx::abs).fold(real_from_f64(1.0, bits), |acc, v| if v > acc { v } else { acc });
    let scale = weights.iter().map(|w| poly_max_abs(w, bits)).fold(real_from_f64(0.0, bits), |acc, v| if v > acc { v } else { acc }) * &xm;
    let rel = if real_is_zero(&scale) { 0.0 } else { real_to_f64(&(res / scale)) };
    let growth = real_to_f64(&xm);
    let mut coeffs = x;
    coeffs.push(Cplx::one(bits));
    Some((UPoly::new(coeffs), rel, growth))
}

/// Monic `p` of minimal degree solving the Baxter equation for twist `z_i`
/// (`i` is 1-based). Degrees `0..=bound` are all scanned; a second passing
/// degree is reported as a precision failure.
pub fn solve_baxter(spec: &ChainSpec, state: &BetheState, i: usize, policy: super::NumericPolicy) -> Result<(TwistedPolynomial, f64)> {
    let bits = policy.bits();
    let z = spec.z[i - 1].clone();
    let weights = baxter_weights(spec, state, &z, bits);
    let bound = baxter_degree_bound(spec);
    let mut passing = Vec::new();
    let mut best = f64::INFINITY;
    for m in 0..=bound {
        if let Some((p, rel, growth)) = try_degree(spec, &weights, m, bits) {
            best = best.min(rel);
            // a monic fit whose coefficients explode is a lower-degree
            // solution in disguise (`u^m + C p_low` with `C → ∞`)
            let degenerate = !passing.is_empty() && growth > policy.identity().recip();
            if rel < policy.baxter() && !degenerate {
                passing.push((m, p, rel));
            }
        }
    }
    match passing.len() {
        0 => Err(Error::NoBaxterSolution { index: i, max_degree: bound, best: format!("{best:e}") }),
        1 => {
            let (_, p, rel) = passing.pop().expect("one entry");
            Ok((TwistedPolynomial { z, poly: p }, rel))
        }
        _ => Err(Error::AmbiguousDegree { index: i, degrees: passing.iter().map(|t| t.0).collect() }),
    }
}

/// Solves every `q̂_i` on every state, in parallel over states.
pub fn solve_all(spectrum: &mut BetheSpectrum) -> Result<()> {
    let spec = spectrum.spec.clone();
    let policy = spectrum.policy;
    spectrum.states.par_iter_mut().try_for_each(|s| -> Result<()> {
        let mut qs = Vec::with_capacity(spec.n);
        let mut res = Vec::with_capacity(spec.n);
        for i in 1..=spec.n {
            let (q, r) = solve_baxter(&spec, s, i, policy)?;
            qs.push(q);
            res.push(r);
        }
        s.q = qs;
        s.baxter_residuals = res;
        Ok(())
    })
}
