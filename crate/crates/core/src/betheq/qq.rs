//! QQ table, Wronskian (Bäcklund) transfer functions and quantum eigenvalues.
//!
//! Working gauge: `Q_I = Π_{i∈I} z_i^{u/ħ} · Π_{j=1}^{|I|} Γ[ν_1](u + ħ(1−j)) · P_I(u)`.
//! The Γ factors cancel from the QQ relations, which then read
//! `P_{Jij}(u) P_J(u−ħ) = z_j^{−1} P_{Ji}(u) P_{Jj}(u−ħ) − z_i^{−1} P_{Jj}(u) P_{Ji}(u−ħ)`,
//! so `P_I` is the Casoratian `det z_i^{1−j} p_i(u + ħ(1−j))`. The monic
//! `q_I` of the analytic form is `P_I / D_I` with
//! `D_I = Π_α Π_{j=1}^{|I|} Π_{k=ν^α_j+1}^{ν^α_1} (u − θ_α − ħ(k + |I| − j))`.

use std::collections::BTreeMap;

use super::{cdet, cx, int_rat, poly_det, poly_max_abs, rat_poly, BetheState, NumericPolicy, TwistedPolynomial};
use crate::combinatorics::{enumerate_ssyt, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactalg::mp::{real_from_f64, real_is_zero, real_to_f64, real_zero, Cplx, Real};
use crate::exactalg::{Rat, UPoly};
use crate::yangian::{subsets, ChainSpec};

/// `P_I` and `q_I` for every subset `I` (0-based, increasing).
#[derive(Clone, Debug)]
pub struct QTable {
    pub p: BTreeMap<Vec<usize>, UPoly<Cplx>>,
    pub q: BTreeMap<Vec<usize>, UPoly<Cplx>>,
    /// Worst relative remainder over all divisions.
    pub max_remainder: f64,
}

impl QTable {
    pub fn p_of(&self, set: &[usize]) -> &UPoly<Cplx> {
        &self.p[set]
    }

    pub fn q_of(&self, set: &[usize]) -> &UPoly<Cplx> {
        &self.q[set]
    }

    /// `P` of an ordered index list: the sorted entry times the permutation sign.
    pub fn p_ordered(&self, idx: &[usize]) -> UPoly<Cplx> {
        let mut s = idx.to_vec();
        s.sort_unstable();
        let p = self.p[&s].clone();
        if super::perm_sign(idx) < 0 {
            p.neg()
        } else {
            p
        }
    }
}

/// `D_I`, which depends only on `|I|`.
pub fn gauge_divisor(spec: &ChainSpec, size: usize) -> UPoly<Rat> {
    let mut acc = UPoly::constant(Rat::from_integer(1.into()));
    for (alpha, nu) in spec.nu.iter().enumerate() {
        for j in 1..=size {
            for k in nu[j - 1] + 1..=nu[0] {
                let root = &spec.theta[alpha] + &spec.hbar * int_rat(k + size as i64 - j as i64);
                acc = acc.mul(&UPoly::linear_root(&root));
            }
        }
    }
    acc
}

fn exact_div(num: &UPoly<Cplx>, den: &UPoly<Cplx>, what: &str, bits: usize) -> Result<(UPoly<Cplx>, f64)> {
    let (q, r) = num.div_rem(den).ok_or_else(|| Error::DivisionByZero(what.into()))?;
    let scale = poly_max_abs(num, bits);
    let rel = if real_is_zero(&scale) { 0.0 } else { real_to_f64(&(poly_max_abs(&r, bits) / scale)) };
    Ok((q, rel))
}

/// Builds `P_I` iteratively from the QQ relations and `q_I = P_I / D_I`;
/// every division must be exact to the policy tolerance.
pub fn qq_build(spec: &ChainSpec, qs: &[TwistedPolynomial], policy: NumericPolicy) -> Result<QTable> {
    let n = qs.len();
    let bits = policy.bits();
    let hbar = cx(&spec.hbar, bits);
    let down = |p: &UPoly<Cplx>| p.shift(&-&hbar);
    let mut p: BTreeMap<Vec<usize>, UPoly<Cplx>> = BTreeMap::new();
    p.insert(vec![], UPoly::constant(Cplx::one(bits)));
    for (i, q) in qs.iter().enumerate() {
        p.insert(vec![i], q.poly.clone());
    }
    let mut worst = 0.0f64;
    for size in 2..=n {
        for set in subsets(n, size) {
            let set: Vec<usize> = set.iter().map(|x| x - 1).collect();
            let (j_set, tail) = set.split_at(size - 2);
            let (i, j) = (tail[0], tail[1]);
            let mut ji = j_set.to_vec();
            ji.push(i);
            let mut jj = j_set.to_vec();
            jj.push(j);
            let zi = cx(&qs[i].z.recip(), bits);
            let zj = cx(&qs[j].z.recip(), bits);
            let (pji, pjj, pj) = (&p[&ji], &p[&jj], &p[j_set]);
            let num = pji.mul(&down(pjj)).scale(&zj).sub(&pjj.mul(&down(pji)).scale(&zi));
            let (quot, rel) = exact_div(&num, &down(pj), "QQ relation", bits)?;
            worst = worst.max(rel);
            p.insert(set, quot);
        }
    }
    let mut q = BTreeMap::new();
    for (set, poly) in &p {
        let d = rat_poly(&gauge_divisor(spec, set.len()), bits);
        let (quot, rel) = exact_div(poly, &d, "analytic gauge", bits)?;
        worst = worst.max(rel);
        q.insert(set.clone(), quot.monic());
    }
    if !(worst < policy.division()) {
        return Err(Error::InexactDivision(format!("{worst:e}")));
    }
    Ok(QTable { p, q, max_remainder: worst })
}

/// Direct Casoratian `det_{r,c} z_{i_r}^{1−c} p_{i_r}(u + ħ(1−c))` over an
/// ordered index list; the independent route to `P_I`.
pub fn casoratian(spec: &ChainSpec, qs: &[TwistedPolynomial], idx: &[usize], bits: usize) -> UPoly<Cplx> {
    let k = idx.len();
    if k == 0 {
        return UPoly::constant(Cplx::one(bits));
    }
    let m: Vec<Vec<UPoly<Cplx>>> = idx
        .iter()
        .map(|&i| {
            (1..=k)
                .map(|c| {
                    let s = 1 - c as i64;
                    let zf = cx(&qs[i].z, bits).powi(s);
                    qs[i].poly.shift(&cx(&(&spec.hbar * int_rat(s)), bits)).scale(&zf)
                })
                .collect()
        })
        .collect();
    poly_det(&m)
}

/// `T^{(k)}_ξ(u0) = det_{i,j≤k} Q_{σ(i)}(u0 + ħξ̂_j) / Q_{σ(I_k)}(u0)`, `ξ̂_j = ξ_j − j + 1`.
/// The Γ ratio between the two sides is the exact prefactor
/// `Π_j Π_{s=0}^{ξ_j−1} ν_1(u0 + ħ(1−j+s))`; `σ` is 0-based.
pub fn wronskian_transfer(spec: &ChainSpec, qs: &[TwistedPolynomial], sigma: &[usize], k: usize, xi: &YoungDiagram, u0: &Rat, policy: NumericPolicy) -> Result<Cplx> {
    wronskian_with_scale(spec, qs, sigma, k, xi, u0, policy).map(|t| t.0)
}

/// The Wronskian together with its rounding scale
/// `|pre| · k! · Π_i max_j |num_ij| / |den|`, the size below which the value
/// is indistinguishable from zero.
pub(crate) fn wronskian_with_scale(spec: &ChainSpec, qs: &[TwistedPolynomial], sigma: &[usize], k: usize, xi: &YoungDiagram, u0: &Rat, policy: NumericPolicy) -> Result<(Cplx, Real)> {
    let bits = policy.bits();
    if xi.height() > k {
        return Ok((Cplx::zero(bits), real_zero(bits)));
    }
    let h = &spec.hbar;
    let mut pre = Rat::from_integer(1.into());
    for j in 1..=k {
        for s in 0..xi.part(j) as i64 {
            pre *= spec.nu_poly_at(1, &(u0 + h * int_rat(1 - j as i64 + s)));
        }
    }
    let den_m: Vec<Vec<Cplx>> = (0..k).map(|r| (1..=k).map(|j| qs[sigma[r]].lattice_value(u0, 1 - j as i64, h, bits)).collect()).collect();
    let scale = den_m.iter().flatten().map(Cplx::abs).fold(real_zero(bits), |a, x| if x > a { x } else { a });
    let den = cdet(den_m, bits);
    let floor = (0..k).fold(crate::exactalg::mp::real_pow10(10 - policy.digits as i32, bits), |acc, _| acc * &scale);
    if den.abs() <= floor {
        return Err(Error::DivisionByZero(format!("Q_σ(I_{k}) vanishes at {}", crate::exactalg::rational::rat_to_string(u0))));
    }
    if num_traits::Zero::is_zero(&pre) {
        return Ok((Cplx::zero(bits), real_zero(bits)));
    }
    let num_m: Vec<Vec<Cplx>> = (0..k).map(|r| (1..=k).map(|j| qs[sigma[r]].lattice_value(u0, xi.part(j) as i64 - j as i64 + 1, h, bits)).collect()).collect();
    let mut bound = cx(&pre, bits).abs() / den.abs();
    for (i, row) in num_m.iter().enumerate() {
        bound = bound * row.iter().map(Cplx::abs).fold(real_zero(bits), |a, x| if x > a { x } else { a }) * real_from_f64((i + 1) as f64, bits);
    }
    let num = cdet(num_m, bits);
    Ok((&(&num / &den) * &cx(&pre, bits), bound))
}

fn ordered_prefix(sigma: &[usize], r: usize) -> Vec<usize> {
    let mut s = sigma[..r].to_vec();
    s.sort_unstable();
    s
}

/// `Λ_r(u) = z_{σ(r)} ν_1(u) P^{[−2]}_{σ(I_{r−1})}/P_{σ(I_{r−1})} · P^{[2]}_{σ(I_r)}/P_{σ(I_r)}` (r 1-based).
pub fn quantum_eigenvalue(spec: &ChainSpec, table: &QTable, qs: &[TwistedPolynomial], sigma: &[usize], r: usize, u: &Cplx) -> Cplx {
    let bits = u.bits();
    let h = cx(&spec.hbar, bits);
    let a = table.p_of(&ordered_prefix(sigma, r - 1));
    let b = table.p_of(&ordered_prefix(sigma, r));
    let nu1 = rat_poly(&crate::gtalg::nu_poly(spec, 1), bits).eval(u);
    let ratio = &(&a.eval(&(u - &h)) / &a.eval(u)) * &(&b.eval(&(u + &h)) / &b.eval(u));
    &(&cx(&qs[sigma[r - 1]].z, bits) * &nu1) * &ratio
}

/// The same `Λ_r` written with `ν_r` and the monic `q_I` of the analytic gauge.
pub fn quantum_eigenvalue_q(spec: &ChainSpec, table: &QTable, qs: &[TwistedPolynomial], sigma: &[usize], r: usize, u: &Cplx) -> Cplx {
    let bits = u.bits();
    let h = cx(&spec.hbar, bits);
    let a = table.q_of(&ordered_prefix(sigma, r - 1));
    let b = table.q_of(&ordered_prefix(sigma, r));
    let nur = rat_poly(&crate::gtalg::nu_poly(spec, r), bits).eval(u);
    let ratio = &(&a.eval(&(u - &h)) / &a.eval(u)) * &(&b.eval(&(u + &h)) / &b.eval(u));
    &(&cx(&qs[sigma[r - 1]].z, bits) * &nur) * &ratio
}

/// Tableau sum over decreasing tableaux with entries `1..=k`:
/// `Σ_T Π_{(a,s)} Λ_{T(a,s)}(u0 + ħ(s−a))`.
pub fn cbrsolk(spec: &ChainSpec, table: &QTable, state: &BetheState, sigma: &[usize], k: usize, xi: &YoungDiagram, u0: &Cplx) -> Cplx {
    let bits = u0.bits();
    let h = cx(&spec.hbar, bits);
    let mut cache: BTreeMap<(usize, i64), Cplx> = BTreeMap::new();
    let mut acc = Cplx::zero(bits);
    for t in enumerate_ssyt(xi, k) {
        let mut prod = Cplx::one(bits);
        for (a, s, e) in t.boxes() {
            let off = s as i64 - a as i64;
            let v = cache.entry((e, off)).or_insert_with(|| {
                let u = u0 + &(&h * &cx(&int_rat(off), bits));
                quantum_eigenvalue(spec, table, &state.q, sigma, e, &u)
            });
            prod = &prod * v;
        }
        acc = &acc + &prod;
    }
    acc
}
