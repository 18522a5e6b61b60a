//! Simultaneous diagonalization of `𝕋_{a,1}(u)`, `a = 1..n`, in the MCT frame.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{cx, BetheState, NumericPolicy};
use crate::error::{Error, Result};
use crate::exactalg::eigen::relative_residual;
use crate::exactalg::mp::{real_to_f64, Cplx};
use crate::exactalg::nummatrix::{dot, NumMatrix};
use crate::exactalg::{eigen_decompose, OpMatrix, Rat, UPoly};
use crate::yangian::{Chain, ChainSpec, Monodromy, TwistSpec};

const MAX_ATTEMPTS: u64 = 4;

/// The diagonalized Bethe algebra of one chain.
pub struct BetheSpectrum {
    pub spec: ChainSpec,
    pub monodromy: Monodromy,
    pub policy: NumericPolicy,
    /// Seed that produced a simple spectrum (after retries).
    pub seed: u64,
    pub states: Vec<BetheState>,
}

impl BetheSpectrum {
    pub fn bits(&self) -> usize {
        self.policy.bits()
    }

    /// `w·M·v` for the state's left/right pair: the eigenvalue of any
    /// element `M` of the Bethe algebra.
    pub fn eigenvalue_of(&self, m: &NumMatrix, state: &BetheState) -> Cplx {
        dot(&state.left, &m.matvec(&state.right))
    }

    /// Eigenvalues of an exact operator on every state.
    pub fn eigenvalues_of(&self, m: &OpMatrix) -> Vec<Cplx> {
        let num = NumMatrix::from_exact(m, self.bits());
        self.states.par_iter().map(|s| self.eigenvalue_of(&num, s)).collect()
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }
}

/// Sample points `u_s = (3s+1)/7` for the interpolation of `τ_a`.
fn sample_points(count: usize) -> Vec<Rat> {
    (0..count).map(|s| Rat::new((3 * s as i64 + 1).into(), 7.into())).collect()
}

/// Newton interpolation through `(x_s, y_s)`.
fn interpolate(xs: &[Rat], ys: &[Cplx], bits: usize) -> UPoly<Cplx> {
    let n = xs.len();
    let xc: Vec<Cplx> = xs.iter().map(|x| cx(x, bits)).collect();
    let mut coef = ys.to_vec();
    for lvl in 1..n {
        for i in (lvl..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xc[i] - &xc[i - lvl];
            coef[i] = &num / &den;
        }
    }
    let mut p = UPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UPoly::new(vec![-&xc[i], Cplx::one(bits)]);
        p = p.mul(&lin).add(&UPoly::constant(coef[i].clone()));
    }
    p
}

fn min_relative_gap(vals: &[Cplx]) -> f64 {
    let v: Vec<_> = vals.iter().map(Cplx::to_c64).collect();
    let scale = v.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut g = f64::INFINITY;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            g = g.min((v[i] - v[j]).norm() / scale);
        }
    }
    g
}

/// Eigenstates of the twisted Bethe algebra: a seeded generic combination
/// `Σ c_a 𝕋_{a,1}(u_a)` is diagonalized, every eigenvector is validated
/// against each `𝕋_{a,1}` at `aL+1` points, and `τ_a` is interpolated.
/// Clustered spectra trigger a retry with the next seed.
pub fn diagonalize_bethe(spec: &ChainSpec, policy: NumericPolicy, seed: u64) -> Result<BetheSpectrum> {
    spec.check_distinct_z()?;
    let chain = Chain::new(spec)?;
    let m = Monodromy::build(&chain, &TwistSpec::mct(spec))?;
    let n = spec.n;
    let l = spec.l();
    let bits = policy.bits();

    // 𝕋_{a,1} at aL+1 interpolation points plus one check point
    let mut tables: Vec<(Vec<Rat>, Vec<NumMatrix>)> = Vec::with_capacity(n);
    for a in 1..=n {
        let pts = sample_points(a * l + 2);
        let mats: Vec<NumMatrix> = pts.par_iter().map(|u| m.transfer_antisym_at(a, u).map(|t| NumMatrix::from_exact(&t, bits))).collect::<Result<_>>()?;
        tables.push((pts, mats));
    }

    let mut last_err = None;
    for attempt in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut gen = OpMatrix::zero(chain.dim);
        for a in 1..=n {
            let c = Rat::new(rng.gen_range(1..=50i64).into(), rng.gen_range(1..=9i64).into());
            let u = Rat::new(rng.gen_range(-20..=20i64).into(), rng.gen_range(1..=11i64).into());
            gen = gen.add_scaled(&m.transfer_antisym_at(a, &u)?, &c);
        }
        let eig = match eigen_decompose(&NumMatrix::from_exact(&gen, bits), policy.precision()) {
            Ok(e) => e,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let gap = min_relative_gap(&eig.values);
        if gap < policy.cluster_gap() {
            last_err = Some(Error::Degenerate(format!("relative eigenvalue gap {gap:e} with seed {s}")));
            continue;
        }
        let states: Vec<BetheState> = (0..eig.values.len())
            .into_par_iter()
            .map(|idx| {
                let right = eig.right[idx].clone();
                let left = eig.left[idx].clone();
                let mut tau = Vec::with_capacity(n);
                let mut eres = 0.0f64;
                let mut ires = 0.0f64;
                for (a0, (pts, mats)) in tables.iter().enumerate() {
                    let npts = (a0 + 1) * l + 1;
                    let vals: Vec<Cplx> = mats.iter().map(|mm| dot(&left, &mm.matvec(&right))).collect();
                    for (mm, v) in mats.iter().zip(&vals) {
                        eres = eres.max(real_to_f64(&relative_residual(mm, v, &right)));
                    }
                    let p = interpolate(&pts[..npts], &vals[..npts], bits);
                    let chk = p.eval(&cx(&pts[npts], bits));
                    ires = ires.max(super::rel_diff(&chk, &vals[npts], &policy.zero_floor()));
                    tau.push(p);
                }
                BetheState { index: idx, right, left, tau, q: Vec::new(), eigen_residual: eres, interpolation_residual: ires, baxter_residuals: Vec::new() }
            })
            .collect();
        let worst = states.iter().map(|s| s.eigen_residual.max(s.interpolation_residual)).fold(0.0, f64::max);
        if !(worst < policy.identity()) {
            last_err = Some(Error::NonConvergence { residual: format!("{worst:e} with seed {s}") });
            continue;
        }
        if let Some((i, j)) = joint_collision(&states, &tables, policy) {
            last_err = Some(Error::Degenerate(format!("states {i} and {j} share their joint spectrum")));
            continue;
        }
        return Ok(BetheSpectrum { spec: spec.clone(), monodromy: m, policy, seed: s, states });
    }
    Err(last_err.unwrap_or_else(|| Error::Degenerate("no attempt succeeded".into())))
}

/// First pair of states whose `τ_a(u_s)` agree at every sample point.
fn joint_collision(states: &[BetheState], tables: &[(Vec<Rat>, Vec<NumMatrix>)], policy: NumericPolicy) -> Option<(usize, usize)> {
    let bits = policy.bits();
    let sig: Vec<Vec<Cplx>> = states
        .iter()
        .map(|s| tables.iter().enumerate().flat_map(|(a0, (pts, _))| pts.iter().map(move |u| s.tau[a0].eval(&cx(u, bits)))).collect())
        .collect();
    let floor = policy.zero_floor();
    for i in 0..sig.len() {
        for j in i + 1..sig.len() {
            if sig[i].iter().zip(&sig[j]).all(|(a, b)| super::rel_diff(a, b, &floor) < policy.identity()) {
                return Some((i, j));
            }
        }
    }
    None
}
