//! Exact identity checks on monodromy and transfer matrices.

use num_traits::{One, Zero};

use super::monodromy::{subsets, Monodromy};
use super::spec::Chain;
use crate::combinatorics::{reduced_weight, YoungDiagram};
use crate::error::Result;
use crate::exactalg::linalg::{condition_number, rank_matrix};
use crate::exactalg::mp::{real_to_f64, Precision};
use crate::exactalg::rational::{int, Rat};
use crate::exactalg::{NumMatrix, OpMatrix};
use crate::glrep::IrrepData;

/// First `(i, j, k, l)` violating
/// `(u−v)[T_ij(u),T_kl(v)] = ħ(T_kj(u)T_il(v) − T_kj(v)T_il(u))`, if any.
pub fn rtt_violation(m: &Monodromy, u: &Rat, v: &Rat) -> Option<(usize, usize, usize, usize)> {
    let n = m.n();
    let tu: Vec<OpMatrix> = (0..n * n).map(|p| m.entry_at(p / n + 1, p % n + 1, u)).collect();
    let tv: Vec<OpMatrix> = (0..n * n).map(|p| m.entry_at(p / n + 1, p % n + 1, v)).collect();
    let at = |t: &[OpMatrix], i: usize, j: usize| t[(i - 1) * n + (j - 1)].clone();
    let uv = u - v;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let lhs = at(&tu, i, j).commutator(&at(&tv, k, l)).scale(&uv);
                    let rhs = at(&tu, k, j).mul(&at(&tv, i, l)).sub(&at(&tv, k, j).mul(&at(&tu, i, l))).scale(m.hbar());
                    if lhs != rhs {
                        return Some((i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// All Young diagrams with `1..=max_boxes` boxes and height at most `max_height`.
pub fn nonempty_diagrams(max_boxes: usize, max_height: usize) -> Vec<YoungDiagram> {
    YoungDiagram::all_up_to(max_boxes, max_height).into_iter().filter(|d| !d.is_empty()).collect()
}

/// First pair `(ξ, ξ', u, v)` with `[𝕋_ξ(u), 𝕋_ξ'(v)] ≠ 0`.
pub fn transfer_commutativity_violation(m: &Monodromy, diagrams: &[YoungDiagram], points: &[(Rat, Rat)]) -> Result<Option<(YoungDiagram, YoungDiagram, Rat, Rat)>> {
    for (u, v) in points {
        let tu: Vec<OpMatrix> = diagrams.iter().map(|d| m.cbr_transfer_at(d, u)).collect::<Result<_>>()?;
        let tv: Vec<OpMatrix> = diagrams.iter().map(|d| m.cbr_transfer_at(d, v)).collect::<Result<_>>()?;
        for (a, x) in tu.iter().enumerate() {
            for (b, y) in tv.iter().enumerate() {
                if !x.commutator(y).is_zero() {
                    return Ok(Some((diagrams[a].clone(), diagrams[b].clone(), u.clone(), v.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// `[T[^A_B](u), T_ab(v)] = 0` for all `a ∈ A`, `b ∈ B`, over all index sets
/// of size `2..=n`. Returns the number of commutators checked, or the first failure.
pub fn minor_commutativity_check(m: &Monodromy, u: &Rat, v: &Rat) -> Result<std::result::Result<usize, (Vec<usize>, Vec<usize>, usize, usize)>> {
    let n = m.n();
    let mut count = 0;
    for size in 2..=n {
        for a_set in subsets(n, size) {
            for b_set in subsets(n, size) {
                let minor = m.minor_at(&a_set, &b_set, u)?;
                for &a in &a_set {
                    for &b in &b_set {
                        count += 1;
                        if !minor.commutator(&m.entry_at(a, b, v)).is_zero() {
                            return Ok(Err((a_set, b_set, a, b)));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(count))
}

/// `exp(c·π(E))` for nilpotent `π(E)`; a finite sum.
fn exp_nilpotent(e: &OpMatrix, c: &Rat) -> OpMatrix {
    let d = e.dim();
    let mut acc = OpMatrix::identity(d);
    let mut term = OpMatrix::identity(d);
    for k in 1..=d {
        term = term.mul(e).scale(&(c / int(k as i64)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Group element `Π(K)` on one site for `K = (1 + c E_ij)`, `i ≠ j`.
pub fn site_unipotent(rep: &IrrepData, i: usize, j: usize, c: &Rat) -> OpMatrix {
    exp_nilpotent(rep.e(i, j), c)
}

/// `Π(diag(d))` on one site: `Π_a d_a^{weight_a}` on each GT vector.
pub fn site_diagonal(rep: &IrrepData, d: &[Rat]) -> OpMatrix {
    let entries = rep.basis.iter().enumerate().map(|(c, p)| {
        let val: Rat = p.weight().iter().zip(d).map(|(&k, x)| if k >= 0 { num_traits::pow(x.clone(), k as usize) } else { num_traits::pow(x.recip(), (-k) as usize) }).product();
        (c, c, val)
    });
    OpMatrix::from_entries(rep.dim(), entries)
}

/// `Π(K) T(u) Π(K)^{−1} = K^{−1} T(u) K` for
/// `K = (1 + a E_12)(1 + b E_21) diag(d)`, checked exactly at `u0`.
pub fn gl_covariance_check(chain: &Chain, m: &Monodromy, a: &Rat, b: &Rat, d: &[Rat], u0: &Rat) -> bool {
    let n = chain.n();
    assert!(n >= 2 && m.twist().is_identity());
    let dim = chain.dim;
    // chain-level Π(K) and Π(K)^{-1}
    let mut pk = OpMatrix::identity(dim);
    let mut pk_inv = OpMatrix::identity(dim);
    let dinv: Vec<Rat> = d.iter().map(|x| x.recip()).collect();
    for (alpha, rep) in chain.reps.iter().enumerate() {
        let stride = chain.stride(alpha);
        let emb = |x: &OpMatrix| OpMatrix::embed_site(x, rep.dim(), stride, dim);
        let f = site_unipotent(rep, 1, 2, a).mul(&site_unipotent(rep, 2, 1, b)).mul(&site_diagonal(rep, d));
        let g = site_diagonal(rep, &dinv).mul(&site_unipotent(rep, 2, 1, &-b)).mul(&site_unipotent(rep, 1, 2, &-a));
        pk = pk.mul(&emb(&f));
        pk_inv = pk_inv.mul(&emb(&g));
    }
    // auxiliary K and K^{-1}
    let unit = |i: usize, j: usize, c: &Rat| -> Vec<Vec<Rat>> {
        (0..n).map(|r| (0..n).map(|s| if r == s { Rat::one() } else if r == i - 1 && s == j - 1 { c.clone() } else { Rat::zero() }).collect()).collect()
    };
    let mm = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        (0..n).map(|r| (0..n).map(|s| (0..n).map(|t| &x[r][t] * &y[t][s]).sum()).collect()).collect()
    };
    let diag = |v: &[Rat]| -> Vec<Vec<Rat>> { (0..n).map(|r| (0..n).map(|s| if r == s { v[r].clone() } else { Rat::zero() }).collect()).collect() };
    let k = mm(&mm(&unit(1, 2, a), &unit(2, 1, b)), &diag(d));
    let kinv = mm(&mm(&diag(&dinv), &unit(2, 1, &-b)), &unit(1, 2, &-a));
    let t: Vec<OpMatrix> = (0..n * n).map(|p| m.entry_at(p / n + 1, p % n + 1, u0)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = pk.mul(&t[i * n + j]).mul(&pk_inv);
            let mut rhs = OpMatrix::zero(dim);
            for p in 0..n {
                for q in 0..n {
                    let c = &kinv[i][p] * &k[q][j];
                    if !c.is_zero() {
                        rhs = rhs.add_scaled(&t[p * n + q], &c);
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct AppendixAEntry {
    pub alpha: usize,
    pub xi: YoungDiagram,
    pub contained: bool,
    /// Exact zero operator (expected iff `ξ ⊄ ν̄^α`).
    pub is_zero: bool,
    pub exact_rank: usize,
    /// ∞-norm condition number at the working precision, when invertible.
    pub condition: Option<f64>,
}

impl AppendixAEntry {
    pub fn passed(&self, dim: usize, max_condition: f64) -> bool {
        if self.contained {
            self.exact_rank == dim && self.condition.is_some_and(|c| c.is_finite() && c < max_condition)
        } else {
            self.is_zero
        }
    }
}

/// `𝕋_ξ(θ_α + ħν^α_n)` for every site and every nonempty `ξ` with at most
/// `max_boxes` boxes.
pub fn appendix_a_check(chain: &Chain, m: &Monodromy, max_boxes: usize, prec: Precision) -> Result<Vec<AppendixAEntry>> {
    let spec = &chain.spec;
    let n = spec.n;
    let mut out = Vec::new();
    for alpha in 0..spec.l() {
        let nubar = reduced_weight(&spec.nu[alpha]);
        let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][n - 1]);
        for xi in nonempty_diagrams(max_boxes, n) {
            let t = m.cbr_transfer_at(&xi, &u0)?;
            let contained = nubar.contains(&xi);
            let is_zero = t.is_zero();
            let exact_rank = if is_zero { 0 } else { rank_matrix(&t) };
            let condition = if exact_rank == chain.dim {
                condition_number(&NumMatrix::from_exact(&t, prec.bits())).map(|c| real_to_f64(&c))
            } else {
                None
            };
            out.push(AppendixAEntry { alpha, xi, contained, is_zero, exact_rank, condition });
        }
    }
    Ok(out)
}
