//! Bäcklund, wave-function, quantisation and vanishing identities.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::diag::BetheSpectrum;
use super::qq::{casoratian, wronskian_with_scale, QTable};
use super::{cdet, cx, eval_with_scale, int_rat, perm_sign, poly_max_abs, rat_poly, rel_diff, to_i64, BetheState, NumericPolicy};
use crate::combinatorics::{enumerate_gt_patterns, reduced_weight, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactalg::mp::{real_is_zero, real_to_f64, real_zero, Cplx, Real};
use crate::exactalg::nummatrix::{covec_to_num, dot};
use crate::exactalg::{Rat, UPoly};
use crate::sovcore::{admissible_frames, frame_diagram, SovBasis};
use crate::yangian::ChainSpec;

#[derive(Clone, Debug, Serialize)]
pub struct BacklundCase {
    pub alpha: usize,
    pub k: usize,
    pub mubar: Vec<usize>,
    pub frame: Vec<usize>,
    /// `F + μ̄ ⊆ ν̄`; otherwise both sides must vanish.
    pub contained: bool,
    /// Worst relative mismatch of the two sides over all states.
    pub max_rel: f64,
    /// `r..=R−1`: the range of `k'` over which `T^{(k')}_μ̄` must agree.
    pub k_range: (usize, usize),
    pub k_stability: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BacklundReport {
    pub cases: Vec<BacklundCase>,
    pub max_rel: f64,
    pub max_k_stability: f64,
}

impl BacklundReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_rel < tol && self.max_k_stability < tol
    }
}

/// `(α, k, μ̄)` for every site and level: each `μ̄` occurring in the patterns,
/// every diagram with at most `max_boxes` boxes, and one overflowing row
/// `ν̄_1 − ν̄_{k+1} + 1`.
pub fn default_backlund_cases(spec: &ChainSpec, max_boxes: usize) -> Result<Vec<(usize, usize, YoungDiagram)>> {
    let n = spec.n;
    let mut out = Vec::new();
    for (alpha, nu) in spec.nu.iter().enumerate() {
        let pats = enumerate_gt_patterns(nu)?;
        for k in 1..n {
            let mut seen: Vec<YoungDiagram> = YoungDiagram::all_up_to(max_boxes, n);
            for p in &pats {
                seen.push(p.dual_diagonals().mubar[k - 1].clone());
            }
            seen.push(YoungDiagram::row((nu[0] - nu[k]) as usize + 1));
            let mut uniq: Vec<YoungDiagram> = Vec::new();
            for d in seen {
                if !uniq.contains(&d) {
                    uniq.push(d);
                }
            }
            out.extend(uniq.into_iter().map(|d| (alpha, k, d)));
        }
    }
    Ok(out)
}

/// `𝕋_{F+μ̄}(θ_α+ħν^α_n) / 𝕋_F(θ_α+ħν^α_n)` from operator eigenvalues against
/// `T^{(k)}_μ̄(θ_α+ħν^α_{k+1})` from the Q-functions, for every admissible `F`,
/// plus the equality of `T^{(k')}_μ̄` over `r ≤ k' ≤ R−1`.
pub fn backlund_identity_check(spectrum: &BetheSpectrum, cases: &[(usize, usize, YoungDiagram)], sigma: &[usize]) -> Result<BacklundReport> {
    let spec = &spectrum.spec;
    let policy = spectrum.policy;
    let n = spec.n;
    let bits = policy.bits();
    let floor = policy.zero_floor();
    let mut cache: HashMap<(usize, YoungDiagram), Vec<Cplx>> = HashMap::new();
    let mut eig = |alpha: usize, xi: &YoungDiagram| -> Result<Vec<Cplx>> {
        if let Some(v) = cache.get(&(alpha, xi.clone())) {
            return Ok(v.clone());
        }
        let u = &spec.theta[alpha] + &spec.hbar * int_rat(spec.nu[alpha][n - 1]);
        let op = spectrum.monodromy.cbr_transfer_at(xi, &u)?;
        let v = spectrum.eigenvalues_of(&op);
        cache.insert((alpha, xi.clone()), v.clone());
        Ok(v)
    };
    let mut out = Vec::new();
    for (alpha, k, mubar) in cases {
        let (alpha, k) = (*alpha, *k);
        let nu = &spec.nu[alpha];
        let nubar = reduced_weight(nu);
        let mut frames = admissible_frames(&nubar, k, mubar);
        let contained = !frames.is_empty();
        if frames.is_empty() {
            frames.push(frame_diagram(&nubar, k));
        }
        let u_k = &spec.theta[alpha] + &spec.hbar * int_rat(nu[k]);
        let rhs_scaled: Vec<(Cplx, Real)> = spectrum.states.par_iter().map(|s| wronskian_with_scale(spec, &s.q, sigma, k, mubar, &u_k, policy)).collect::<Result<_>>()?;
        // an identically vanishing side is only zero up to its rounding scale
        let floors: Vec<Real> = rhs_scaled.iter().map(|(_, sc)| max_real(floor.clone(), sc.clone())).collect();
        let rhs: Vec<Cplx> = rhs_scaled.into_iter().map(|t| t.0).collect();
        // r+1 is the first and R the last index with ν_i = ν_{k+1}
        let r = (1..=n).find(|&i| nu[i - 1] == nu[k]).expect("k+1 itself") - 1;
        let big_r = (1..=n).rev().find(|&i| nu[i - 1] == nu[k]).expect("k+1 itself");
        let mut stab = 0.0f64;
        for kk in r..big_r {
            if kk == k {
                continue;
            }
            for ((s, v), fl) in spectrum.states.iter().zip(&rhs).zip(&floors) {
                let mut fl_other = real_zero(bits);
                let other = if kk == 0 {
                    if mubar.is_empty() {
                        Cplx::one(bits)
                    } else {
                        Cplx::zero(bits)
                    }
                } else {
                    let (o, sc) = wronskian_with_scale(spec, &s.q, sigma, kk, mubar, &u_k, policy)?;
                    fl_other = sc;
                    o
                };
                stab = stab.max(rel_diff(&other, v, &max_real(fl.clone(), fl_other.clone())));
            }
        }
        for f in frames {
            let num = eig(alpha, &f.glue(mubar))?;
            let den = eig(alpha, &f)?;
            let mut worst = 0.0f64;
            for (((a, b), v), fl) in num.iter().zip(&den).zip(&rhs).zip(&floors) {
                if b.is_zero() {
                    return Err(Error::DivisionByZero(format!("𝕋_F eigenvalue vanishes at site {}", alpha + 1)));
                }
                worst = worst.max(rel_diff(&(a / b), v, fl));
            }
            out.push(BacklundCase {
                alpha: alpha + 1,
                k,
                mubar: mubar.rows().to_vec(),
                frame: f.rows().to_vec(),
                contained,
                max_rel: worst,
                k_range: (r, big_r.saturating_sub(1)),
                k_stability: stab,
            });
        }
    }
    let max_rel = out.iter().map(|c| c.max_rel).fold(0.0, f64::max);
    let max_k_stability = out.iter().map(|c| c.k_stability).fold(0.0, f64::max);
    Ok(BacklundReport { cases: out, max_rel, max_k_stability })
}

#[derive(Clone, Debug, Serialize)]
pub struct WavefunctionReport {
    pub states: usize,
    pub covectors: usize,
    /// `max_{x,x'} |v(x)w(x') − v(x')w(x)| / (max|v| max|w|)`, worst state.
    pub max_rel: f64,
    /// `(state, x, x')` attaining the worst value.
    pub worst: Option<(usize, usize, usize)>,
}

impl WavefunctionReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_rel < tol
    }
}

/// `Π_{α,k} det_{i,j≤k} q̂_{σ(i)}(x^α_{kj})` with every `z^{θ_α/ħ}` removed
/// (a per-block constant).
pub fn factorized_wavefunction(spec: &ChainSpec, state: &BetheState, coords: &[crate::combinatorics::SepCoordinate], sigma: &[usize], bits: usize) -> Result<Cplx> {
    let mut blocks: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
    for c in coords {
        let alpha = c.alpha - 1;
        let m = to_i64(&((&c.x - &spec.theta[alpha]) / &spec.hbar)).ok_or_else(|| Error::InvalidIndex("coordinate off the lattice".into()))?;
        blocks.entry((alpha, c.k)).or_default().push((c.j, m));
    }
    let mut acc = Cplx::one(bits);
    for ((alpha, k), mut cols) in blocks {
        cols.sort_unstable();
        let th = &spec.theta[alpha];
        let mat: Vec<Vec<Cplx>> = (0..k).map(|i| cols.iter().map(|&(_, m)| state.q[sigma[i]].lattice_value(th, m, &spec.hbar, bits)).collect()).collect();
        acc = &acc * &cdet(mat, bits);
    }
    Ok(acc)
}

/// `⟨x|Ψ⟩` on the rescaled SoV basis against the factorized product, as
/// vectors over the whole basis, for every state.
pub fn wavefunction_check(spectrum: &BetheSpectrum, basis: &SovBasis, sigma: &[usize]) -> Result<WavefunctionReport> {
    let spec = &spectrum.spec;
    let bits = spectrum.bits();
    let rows: Vec<Vec<Cplx>> = basis
        .entries
        .iter()
        .map(|e| e.rescaled.as_ref().map(|v| covec_to_num(v, bits)).ok_or_else(|| Error::Config("SoV basis is not rescaled".into())))
        .collect::<Result<_>>()?;
    let per_state: Vec<(f64, usize, usize)> = spectrum
        .states
        .par_iter()
        .map(|s| -> Result<(f64, usize, usize)> {
            let v: Vec<Cplx> = rows.iter().map(|r| dot(r, &s.right)).collect();
            let w: Vec<Cplx> = basis.entries.iter().map(|e| factorized_wavefunction(spec, s, &e.coords, sigma, bits)).collect::<Result<_>>()?;
            let vm = v.iter().map(Cplx::abs).fold(real_zero(bits), max_real);
            let wm = w.iter().map(Cplx::abs).fold(real_zero(bits), max_real);
            let scale = vm * wm;
            if real_is_zero(&scale) {
                return Ok((f64::INFINITY, 0, 0));
            }
            let mut worst = (0.0f64, 0, 0);
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    let d = &(&v[a] * &w[b]) - &(&v[b] * &w[a]);
                    let r = real_to_f64(&(d.abs() / &scale));
                    if r > worst.0 {
                        worst = (r, a, b);
                    }
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let mut max_rel = 0.0f64;
    let mut worst = None;
    for (i, &(r, a, b)) in per_state.iter().enumerate() {
        if worst.is_none() || r > max_rel {
            max_rel = r;
            worst = Some((i, a, b));
        }
    }
    Ok(WavefunctionReport { states: spectrum.states.len(), covectors: rows.len(), max_rel, worst })
}

fn max_real(a: Real, b: Real) -> Real {
    if b > a {
        b
    } else {
        a
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantisationReport {
    /// Relative deviation from proportionality; `∞` on a degree mismatch.
    pub direct_rel: f64,
    pub direct_degrees: (usize, usize),
    pub dual_rel: f64,
    pub dual_degrees: (usize, usize),
}

impl QuantisationReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.direct_rel < tol && self.dual_rel < tol
    }
}

fn proportionality(lhs: &UPoly<Cplx>, rhs: &UPoly<Rat>, policy: NumericPolicy) -> (f64, (usize, usize)) {
    let bits = policy.bits();
    let l = lhs.trim_relative(policy.identity());
    let r = rat_poly(rhs, bits);
    let degs = (l.degree().unwrap_or(0), r.degree().unwrap_or(0));
    if l.is_zero() || degs.0 != degs.1 {
        return (f64::INFINITY, degs);
    }
    let c = l.leading().expect("nonzero") / r.leading().expect("nonzero");
    let diff = l.sub(&r.scale(&c));
    (real_to_f64(&(poly_max_abs(&diff, bits) / poly_max_abs(&l, bits))), degs)
}

/// Both quantisation conditions, written per site so that they also cover
/// chains with different representations:
/// `det q̂_i(u−ħ(j−1)) ∝ Π_α Π_{j≥2} Π_{k=ν_j+1}^{ν_1} (u − θ_α − ħ(k+n−j))` and
/// `det q̂^i(u+ħ(j−1)) ∝ Π_α Π_{j<n} Π_{k=ν_n+1}^{ν_j} (u − θ_α + ħ(j−k))`, `q̂^i = ε^{īi} q̂_ī`.
pub fn quantisation_check(spec: &ChainSpec, state: &BetheState, table: &QTable, policy: NumericPolicy) -> QuantisationReport {
    let n = spec.n;
    let h = &spec.hbar;
    let (direct_lhs, dual_lhs) = quantisation_determinants(spec, state, table, policy.bits());
    let mut direct_rhs = UPoly::constant(Rat::from_integer(1.into()));
    let mut dual_rhs = UPoly::constant(Rat::from_integer(1.into()));
    for (alpha, nu) in spec.nu.iter().enumerate() {
        let th = &spec.theta[alpha];
        for j in 2..=n {
            for k in nu[j - 1] + 1..=nu[0] {
                direct_rhs = direct_rhs.mul(&UPoly::linear_root(&(th + h * int_rat(k + n as i64 - j as i64))));
            }
        }
        for j in 1..n {
            for k in nu[n - 1] + 1..=nu[j - 1] {
                dual_rhs = dual_rhs.mul(&UPoly::linear_root(&(th - h * int_rat(j as i64 - k))));
            }
        }
    }
    let (direct_rel, direct_degrees) = proportionality(&direct_lhs, &direct_rhs, policy);
    let (dual_rel, dual_degrees) = proportionality(&dual_lhs, &dual_rhs, policy);
    QuantisationReport { direct_rel, direct_degrees, dual_rel, dual_degrees }
}

/// `(det q̂_i(u−ħ(j−1)), det q̂^i(u+ħ(j−1)))` with the common `Π z_i^{u/ħ}` removed.
pub fn quantisation_determinants(spec: &ChainSpec, state: &BetheState, table: &QTable, bits: usize) -> (UPoly<Cplx>, UPoly<Cplx>) {
    let n = spec.n;
    let h = &spec.hbar;
    let all: Vec<usize> = (0..n).collect();
    let direct = casoratian(spec, &state.q, &all, bits);
    // dual: rows i, columns c = j−1
    let dual_m: Vec<Vec<UPoly<Cplx>>> = (0..n)
        .map(|i| {
            let comp: Vec<usize> = (0..n).filter(|&l| l != i).collect();
            let mut order = comp.clone();
            order.push(i);
            let eps = perm_sign(&order);
            let q = table.q_of(&comp);
            (0..n)
                .map(|c| {
                    let zf: Rat = comp.iter().map(|&l| num_traits::pow(state.q[l].z.clone(), c)).product();
                    let zf = if eps < 0 { -zf } else { zf };
                    q.shift(&cx(&(h * int_rat(c as i64)), bits)).scale(&cx(&zf, bits))
                })
                .collect()
        })
        .collect();
    (direct, super::poly_det(&dual_m))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub checked: usize,
    /// Worst `|numerator factor| / rounding scale` over `(α, r)`.
    pub max_rel: f64,
    /// No denominator of `Λ_r` vanishes at the special points.
    pub pole_free: bool,
}

/// `Λ_r(θ_α + ħν^α_r) = 0` through the Casoratian-gauge form of `Λ_r`: the
/// zero must come from `ν_1` or from `P_{I_{r−1}}(u−ħ) P_{I_r}(u+ħ)`.
pub fn vanishing_check(spec: &ChainSpec, table: &QTable, sigma: &[usize], policy: NumericPolicy) -> VanishingReport {
    let n = spec.n;
    let bits = policy.bits();
    let h = cx(&spec.hbar, bits);
    let tol = policy.identity();
    let mut checked = 0;
    let mut max_rel = 0.0f64;
    let mut pole_free = true;
    let prefix = |r: usize| {
        let mut s = sigma[..r].to_vec();
        s.sort_unstable();
        s
    };
    for alpha in 0..spec.l() {
        for r in 1..=n {
            checked += 1;
            let u0r = &spec.theta[alpha] + &spec.hbar * int_rat(spec.nu[alpha][r - 1]);
            let u0 = cx(&u0r, bits);
            let a = table.p_of(&prefix(r - 1));
            let b = table.p_of(&prefix(r));
            for d in [a, b] {
                let (v, sc) = eval_with_scale(d, &u0);
                if !real_is_zero(&sc) && real_to_f64(&(v.abs() / sc)) < tol {
                    pole_free = false;
                }
            }
            if num_traits::Zero::is_zero(&spec.nu_poly_at(1, &u0r)) {
                continue;
            }
            let (va, sa) = eval_with_scale(a, &(&u0 - &h));
            let (vb, sb) = eval_with_scale(b, &(&u0 + &h));
            let ra = if real_is_zero(&sa) { 0.0 } else { real_to_f64(&(va.abs() / sa)) };
            let rb = if real_is_zero(&sb) { 0.0 } else { real_to_f64(&(vb.abs() / sb)) };
            max_rel = max_rel.max(ra.min(rb));
        }
    }
    VanishingReport { checked, max_rel, pole_free }
}
