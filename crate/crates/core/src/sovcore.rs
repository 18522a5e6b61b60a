//! The B-operator, its eigenbasis built from null-twist transfer matrices,
//! separated variables, conjugate momenta, and the structural checks tying
//! B to the Gelfand–Tsetlin algebra.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{reduced_weight, sep_coordinates, GtPattern, PatternTuple, SepCoordinate, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{inverse, rank, rows_to_matrix};
use crate::exactalg::rational::{int, rat, rat_to_string, Rat};
use crate::exactalg::{CoVec, OpMatrix, PolyOperator, UPoly};
use crate::gtalg::{build_by_levels, gt_eigenvalue, is_poly_eigen, nu_poly, pattern_tuples, vacuum, GtBasis};
use crate::yangian::{null_transfer_at, null_transfer_expr, subsets, Chain, ChainSpec, Monodromy, TwistSpec, YExpr};

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `c_w = Π_i w_i^{n−i}`, the leading coefficient of `B`.
pub fn b_weight(w: &[Rat]) -> Rat {
    let n = w.len() + 1;
    w.iter().enumerate().map(|(i, wi)| num_traits::pow(wi.clone(), n - 1 - i)).product()
}

/// Index tuples `(J_1, …, J_{n−1})`, `J_k ⊂ {1..n−1}`, `|J_k| = k`.
fn b_index_tuples(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for k in 1..n {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                subsets(n - 1, k).into_iter().map(move |j| {
                    let mut p = prefix.clone();
                    p.push(j);
                    p
                })
            })
            .collect();
    }
    acc
}

/// `B(u) = Σ T[^{J_1}_1] T^{[2]}[^{J_2}_{1, J_1+1}] ⋯ T^{[2(n−2)]}[^{J_{n−1}}_{1, J_{n−2}+1}] w_{J_1}⋯w_{J_{n−1}}`
/// in terms of the untwisted monodromy.
pub fn b_expr(n: usize, w: &[Rat], hbar: &Rat) -> Result<YExpr> {
    if w.len() + 1 != n {
        return Err(Error::Config(format!("B for gl({n}) needs {} auxiliary twists, got {}", n.saturating_sub(1), w.len())));
    }
    if n == 1 {
        return Ok(YExpr::identity());
    }
    let terms = b_index_tuples(n)
        .into_iter()
        .map(|js| {
            let mut weight = Rat::one();
            let factors: Vec<YExpr> = js
                .iter()
                .enumerate()
                .map(|(k0, j)| {
                    for &i in j {
                        weight *= &w[i - 1];
                    }
                    let mut cols = vec![1];
                    if k0 > 0 {
                        cols.extend(js[k0 - 1].iter().map(|i| i + 1));
                    }
                    YExpr::Minor { rows: j.clone(), cols, shift: hbar * int(k0 as i64) }
                })
                .collect();
            YExpr::Scaled(weight, Box::new(YExpr::Prod(factors)))
        })
        .collect();
    Ok(YExpr::Sum(terms))
}

/// `Σ 𝐓[^{J_1}_n] 𝐓^{[2]}[^{J_2}_{J_1, n}] ⋯` to be evaluated on a twisted monodromy `𝐓 = TG`.
pub fn b_twisted_expr(n: usize, hbar: &Rat) -> YExpr {
    if n == 1 {
        return YExpr::identity();
    }
    let terms = b_index_tuples(n)
        .into_iter()
        .map(|js| {
            let factors = js
                .iter()
                .enumerate()
                .map(|(k0, j)| {
                    let mut cols = if k0 > 0 { js[k0 - 1].clone() } else { Vec::new() };
                    cols.push(n);
                    YExpr::Minor { rows: j.clone(), cols, shift: hbar * int(k0 as i64) }
                })
                .collect();
            YExpr::Prod(factors)
        })
        .collect();
    YExpr::Sum(terms)
}

/// Leading Gelfand–Tsetlin term `J_k = {1..k}` of `B`, weight included.
pub fn b_gt_expr(n: usize, w: &[Rat], hbar: &Rat) -> YExpr {
    let factors = (1..n).map(|k| YExpr::Minor { rows: range(1, k), cols: range(1, k), shift: hbar * int(k as i64 - 1) }).collect();
    YExpr::Scaled(b_weight(w), Box::new(YExpr::Prod(factors)))
}

#[derive(Clone, Debug)]
pub struct BOperator {
    pub value: PolyOperator,
    pub spec: ChainSpec,
}

impl BOperator {
    pub fn degree(&self) -> Option<usize> {
        self.value.degree()
    }

    pub fn leading_weight(&self) -> Rat {
        b_weight(&self.spec.w)
    }
}

pub fn build_b(spec: &ChainSpec) -> Result<BOperator> {
    let chain = Chain::new(spec)?;
    let m = Monodromy::untwisted(&chain)?;
    build_b_on(&chain, &m)
}

/// `B` on an untwisted monodromy; degree and leading coefficient `c_w·1` are verified.
pub fn build_b_on(chain: &Chain, m: &Monodromy) -> Result<BOperator> {
    if !m.twist().is_identity() {
        return Err(Error::Config("B is assembled from the untwisted monodromy".into()));
    }
    let spec = &chain.spec;
    if spec.w.iter().any(Zero::is_zero) {
        return Err(Error::Genericness("auxiliary twists must be nonzero".into()));
    }
    let value = b_expr(spec.n, &spec.w, &spec.hbar)?.to_poly(m)?;
    let deg = spec.b_degree();
    if value.degree() != Some(deg) {
        return Err(Error::Defective(format!("B has degree {:?}, expected {deg}", value.degree())));
    }
    if value.leading() != Some(&OpMatrix::scalar(chain.dim, &b_weight(&spec.w))) {
        return Err(Error::Defective("leading coefficient of B is not c_w·1".into()));
    }
    Ok(BOperator { value, spec: spec.clone() })
}

/// `κ` with `B_twisted = κ·B` for the MCT built from `z`; errors when the two are not proportional.
pub fn twisted_b_ratio(chain: &Chain, b: &BOperator, z: &[Rat]) -> Result<Rat> {
    let spec = &chain.spec;
    let m = Monodromy::build(chain, &TwistSpec::Mct { z: z.to_vec(), w: spec.w.clone() })?;
    let tw = b_twisted_expr(spec.n, &spec.hbar).to_poly(&m)?;
    let lead = b.value.leading().expect("B is nonzero");
    let tw_lead = tw.coeffs().get(b.value.coeffs().len() - 1).cloned().unwrap_or_else(|| OpMatrix::zero(chain.dim));
    let kappa = tw_lead.get(0, 0) / lead.get(0, 0);
    if kappa.is_zero() || tw != b.value.scale(&kappa) {
        return Err(Error::Defective("twisted B is not proportional to B".into()));
    }
    Ok(kappa)
}

/// `c_w Π (u − x)` over the given coordinates.
pub fn b_eigenvalue(spec: &ChainSpec, coords: &[SepCoordinate]) -> UPoly<Rat> {
    let roots: Vec<Rat> = coords.iter().map(|c| c.x.clone()).collect();
    UPoly::from_roots(&roots, &int(1)).scale(&b_weight(&spec.w))
}

#[derive(Clone, Debug)]
pub struct SovEntry {
    pub tuple: PatternTuple,
    /// `⟨Λ^B|`
    pub covector: CoVec,
    /// `⟨x|`, once rescaled.
    pub rescaled: Option<CoVec>,
    pub coords: Vec<SepCoordinate>,
}

#[derive(Clone, Debug)]
pub struct SovBasis {
    pub spec: ChainSpec,
    pub entries: Vec<SovEntry>,
}

impl SovBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn covectors(&self) -> Vec<CoVec> {
        self.entries.iter().map(|e| e.covector.clone()).collect()
    }

    pub fn pairs(&self) -> Vec<(PatternTuple, CoVec)> {
        self.entries.iter().map(|e| (e.tuple.clone(), e.covector.clone())).collect()
    }

    pub fn index_of(&self, tuple: &[GtPattern]) -> Option<usize> {
        self.entries.iter().position(|e| e.tuple == tuple)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Entry<'a> {
            pattern: &'a PatternTuple,
            coordinates: &'a [SepCoordinate],
            covector: Vec<String>,
            rescaled: Option<Vec<String>>,
        }
        let strs = |v: &CoVec| v.to_rats().iter().map(rat_to_string).collect::<Vec<_>>();
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|e| Entry { pattern: &e.tuple, coordinates: &e.coords, covector: strs(&e.covector), rescaled: e.rescaled.as_ref().map(strs) })
            .collect();
        Ok(serde_json::to_string(&serde_json::json!({ "spec": self.spec, "entries": entries }))?)
    }
}

/// `⟨0| Π←_k Π_α φ^{n−k−1}(𝕋^N_{μ̄^α_k}(θ_α + ħν^α_{k+1}))` for every tuple, without checks.
pub fn build_sov_basis_unchecked(chain: &Chain, m: &Monodromy) -> Result<SovBasis> {
    let spec = &chain.spec;
    let n = spec.n;
    let tuples = pattern_tuples(chain);
    let factor = |k: usize, _alpha: usize, mubar: &YoungDiagram| null_transfer_expr(n, &spec.w, mubar, k, n - k - 1, &spec.hbar);
    let covs = build_by_levels(chain, m, &tuples, &factor)?;
    let entries = tuples
        .into_iter()
        .zip(covs)
        .map(|(tuple, covector)| {
            let coords = sep_coordinates(&tuple, &spec.theta, &spec.hbar);
            SovEntry { tuple, covector, rescaled: None, coords }
        })
        .collect();
    Ok(SovBasis { spec: spec.clone(), entries })
}

/// Builds the basis, verifies every covector is an exact `B`-eigencovector with
/// eigenvalue `c_w Π(u − x)` and that the set has full rank, then rescales to `⟨x|`.
pub fn build_sov_basis(chain: &Chain) -> Result<SovBasis> {
    let m = Monodromy::untwisted(chain)?;
    let b = build_b_on(chain, &m)?;
    let mut basis = build_sov_basis_unchecked(chain, &m)?;
    verify_sov_basis(chain, &b, &basis)?;
    rescale_to_x(&mut basis)?;
    Ok(basis)
}

pub fn verify_sov_basis(chain: &Chain, b: &BOperator, basis: &SovBasis) -> Result<()> {
    let bad = basis.entries.par_iter().find_any(|e| !is_poly_eigen(&e.covector, &b.value, &b_eigenvalue(&chain.spec, &e.coords)));
    if let Some(e) = bad {
        return Err(Error::Defective(format!("B eigenvalue mismatch on {:?}", e.tuple)));
    }
    let r = rank(&basis.covectors());
    if r != chain.dim {
        return Err(Error::RankDeficient { rank: r, dim: chain.dim });
    }
    Ok(())
}

fn trace(m: &OpMatrix) -> Rat {
    (0..m.dim()).map(|i| m.get(i, i)).sum()
}

#[derive(Clone, Debug)]
pub struct SpectralCheck {
    /// Multiset of `c_w Π(u − x)` over the basis equals the multiset of
    /// `c_w Π_a GT_a(u + ħ(a−1))` eigenvalues over GT patterns.
    pub multiset_equal: bool,
    /// The leading GT term of `B` acts on each GT covector with the predicted eigenvalue.
    pub gt_term_eigen: bool,
    /// `tr B(u_s)^p = Σ b(u_s)^p`, `p = 1..=3`, at `deg B + 1` points.
    pub power_sums_ok: bool,
    pub points: usize,
}

impl SpectralCheck {
    pub fn passed(&self) -> bool {
        self.multiset_equal && self.gt_term_eigen && self.power_sums_ok
    }
}

/// B's spectrum against the GT-product prediction, by three routes.
pub fn spectral_multiset_check(chain: &Chain, m: &Monodromy, b: &BOperator, basis: &SovBasis, gt: &GtBasis) -> Result<SpectralCheck> {
    let spec = &chain.spec;
    let n = spec.n;
    let key = |p: &UPoly<Rat>| p.coeffs().iter().map(rat_to_string).collect::<Vec<_>>();
    let mut sov: Vec<_> = basis.entries.iter().map(|e| key(&b_eigenvalue(spec, &e.coords))).collect();
    let cw = b_weight(&spec.w);
    let predicted: Vec<UPoly<Rat>> = gt
        .entries
        .iter()
        .map(|(tuple, _)| (1..n).fold(UPoly::constant(cw.clone()), |acc, a| acc.mul(&gt_eigenvalue(spec, tuple, a).shift(&(&spec.hbar * int(a as i64 - 1))))))
        .collect();
    let mut pred: Vec<_> = predicted.iter().map(key).collect();
    sov.sort();
    pred.sort();
    let multiset_equal = sov == pred;

    let gt_term = b_gt_expr(n, &spec.w, &spec.hbar).to_poly(m)?;
    let gt_term_eigen = gt.entries.par_iter().zip(&predicted).all(|((_, v), p)| is_poly_eigen(v, &gt_term, p));

    let points = spec.b_degree() + 1;
    let mut power_sums_ok = true;
    for s in 0..points {
        let u = rat(2 * s as i64 + 1, 7);
        let bu = b.value.eval_exact(&u);
        let vals: Vec<Rat> = predicted.iter().map(|p| p.eval(&u)).collect();
        let mut pow = bu.clone();
        for p in 1..=3usize {
            if p > 1 {
                pow = pow.mul(&bu);
            }
            let want: Rat = vals.iter().map(|v| num_traits::pow(v.clone(), p)).sum();
            if trace(&pow) != want {
                power_sums_ok = false;
            }
        }
    }
    Ok(SpectralCheck { multiset_equal, gt_term_eigen, power_sums_ok, points })
}

#[derive(Clone, Debug, Default)]
pub struct RestrictionReport {
    pub checked: usize,
    /// `(pattern tuple, first mismatching coefficient index)`
    pub failures: Vec<(PatternTuple, usize)>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// `B^{(n)} = w_1^{n−1} Π_{r=0}^{n−2} ν_n(u+ħr) · φ(B^{(n−1)})` on covectors of
/// `V_(n−1)`, as polynomial identities; `B^{(n−1)}` uses `w_{i+1}`.
/// Covectors outside `V_(n−1)` are skipped.
pub fn restriction_check(chain: &Chain, m: &Monodromy, b: &BOperator, covectors: &[(PatternTuple, CoVec)]) -> Result<RestrictionReport> {
    let spec = &chain.spec;
    let n = spec.n;
    let low = b_expr(n - 1, &spec.w[1..], &spec.hbar)?.embed(1, n)?.to_poly(m)?;
    let nun = nu_poly(spec, n);
    let scalar = (0..n - 1).fold(UPoly::constant(num_traits::pow(spec.w[0].clone(), n - 1)), |acc, r| acc.mul(&nun.shift(&(&spec.hbar * int(r as i64)))));
    let rhs = low.mul_scalar_poly(&scalar);
    let len = b.value.coeffs().len().max(rhs.coeffs().len());
    let mut report = RestrictionReport::default();
    for (tuple, v) in covectors {
        if !crate::gtalg::in_embedding_image(tuple, n - 1) {
            continue;
        }
        report.checked += 1;
        let coeff = |p: &PolyOperator, i: usize| p.coeffs().get(i).map_or_else(|| CoVec::zero(v.dim()), |c| v.apply(c));
        if let Some(i) = (0..len).find(|&i| coeff(&b.value, i) != coeff(&rhs, i)) {
            report.failures.push((tuple.clone(), i));
        }
    }
    Ok(report)
}

/// Lattice index `m` with `x = θ_α + ħm`.
fn lattice_index(spec: &ChainSpec, alpha: usize, x: &Rat) -> Result<i64> {
    let m = (x - &spec.theta[alpha]) / &spec.hbar;
    if !m.is_integer() {
        return Err(Error::InvalidIndex(format!("{} is off the lattice of site {}", rat_to_string(x), alpha + 1)));
    }
    m.to_integer().try_into().map_err(|_| Error::InvalidIndex("lattice index overflow".into()))
}

/// `Γ[ν_1](θ_α + ħm)`, from `Γ(u+ħ) = ν_1(u)Γ(u)` anchored to 1 at
/// `m_0 = ν^α_n − n + 2`, the smallest lattice point any `x^α_{kj}` reaches.
pub fn gamma_nu1(spec: &ChainSpec, alpha: usize, x: &Rat) -> Result<Rat> {
    let n = spec.n;
    let m0 = spec.nu[alpha][n - 1] - n as i64 + 2;
    let m = lattice_index(spec, alpha, x)?;
    if m < m0 {
        return Err(Error::InvalidIndex(format!("Γ requested below its anchor at site {}", alpha + 1)));
    }
    let mut acc = Rat::one();
    for mm in m0..m {
        let u = &spec.theta[alpha] + &spec.hbar * int(mm);
        let f = spec.nu_poly_at(1, &u);
        if f.is_zero() {
            return Err(Error::Genericness(format!("ν_1 vanishes at θ_{} + {}ħ inside the Γ range (θ collision?)", alpha + 1, mm)));
        }
        acc *= f;
    }
    Ok(acc)
}

/// `⟨x| = Π_{α,k,j} Γ[ν_1](x^α_{kj})^{−1} ⟨Λ^B|`.
pub fn rescale_to_x(basis: &mut SovBasis) -> Result<()> {
    let spec = basis.spec.clone();
    for e in &mut basis.entries {
        let mut g = Rat::one();
        for c in &e.coords {
            g *= gamma_nu1(&spec, c.alpha - 1, &c.x)?;
        }
        e.rescaled = Some(e.covector.scale(&g.recip()));
    }
    Ok(())
}

/// `X^α_{kj}` on a pattern: the coordinate for `1 ≤ j ≤ k ≤ n−1`, the boundary
/// scalar `θ_α + ħ(ν^α_{k+1} − k)` for `j = k+1`, `0 ≤ k ≤ n−1`, and `None` otherwise.
pub fn x_value(spec: &ChainSpec, p: &GtPattern, alpha: usize, k: i64, j: i64) -> Option<Rat> {
    let n = spec.n as i64;
    let theta = &spec.theta[alpha];
    if 1 <= j && j <= k && k <= n - 1 {
        Some(theta + &spec.hbar * int(p.mu(k as usize, j as usize) - j + 1))
    } else if j == k + 1 && (0..n).contains(&k) {
        Some(theta + &spec.hbar * int(spec.nu[alpha][k as usize] - k))
    } else {
        None
    }
}

/// `c^{±α}_{kj}` on a pattern; absent factors are dropped.
pub fn momentum_coefficient(spec: &ChainSpec, p: &GtPattern, plus: bool, alpha: usize, k: usize, j: usize) -> Rat {
    let (k, j) = (k as i64, j as i64);
    let x = |a: i64, b: i64| x_value(spec, p, alpha, a, b);
    let xkj = x(k, j).expect("X_kj in range");
    let h = &spec.hbar;
    let factors = if plus {
        [x(k - 1, j).map(|y| y - &xkj), x(k, j - 1).map(|y| y - &xkj - h)]
    } else {
        [x(k + 1, j).map(|y| &xkj - y), x(k, j + 1).map(|y| &xkj - y - h)]
    };
    factors.into_iter().flatten().product()
}

#[derive(Clone, Debug)]
pub struct MomentumOp {
    pub plus: bool,
    /// 0-based site.
    pub alpha: usize,
    pub k: usize,
    pub j: usize,
    /// Acts on row covectors in the basis order: `⟨Λ^B| P = c^± ⟨Λ'^B|`.
    pub matrix: OpMatrix,
}

/// `P^{±α}_{kj}` in the `⟨Λ^B|` basis by the basis-shift rule.
pub fn momenta(basis: &SovBasis, plus: bool, alpha: usize, k: usize, j: usize) -> Result<MomentumOp> {
    let spec = &basis.spec;
    if k == 0 || k >= spec.n || j == 0 || j > k || alpha >= spec.l() {
        return Err(Error::InvalidIndex(format!("momentum ({}, {k}, {j})", alpha + 1)));
    }
    let index: HashMap<&PatternTuple, usize> = basis.entries.iter().enumerate().map(|(i, e)| (&e.tuple, i)).collect();
    let mut entries = Vec::new();
    for (i, e) in basis.entries.iter().enumerate() {
        let p = &e.tuple[alpha];
        let c = momentum_coefficient(spec, p, plus, alpha, k, j);
        let mut mu = p.dual_diagonals().mu;
        mu[k - 1][j - 1] += if plus { 1 } else { -1 };
        let shifted = GtPattern::from_dual_diagonals(p.top(), &mu).ok();
        match (shifted, c.is_zero()) {
            (None, true) => {}
            (None, false) => return Err(Error::Defective(format!("c^± ≠ 0 at a branching boundary of {:?}", e.tuple))),
            (Some(_), true) => return Err(Error::Defective(format!("c^± = 0 away from a branching boundary of {:?}", e.tuple))),
            (Some(q), false) => {
                let mut t = e.tuple.clone();
                t[alpha] = q;
                let target = *index.get(&t).ok_or_else(|| Error::InvalidIndex("shifted pattern missing from basis".into()))?;
                entries.push((i, target, c));
            }
        }
    }
    Ok(MomentumOp { plus, alpha, k, j, matrix: OpMatrix::from_entries(basis.len(), entries) })
}

/// Diagonal `X^α_{kj}` in the basis order.
pub fn separated_variable(basis: &SovBasis, alpha: usize, k: usize, j: usize) -> OpMatrix {
    let entries = basis.entries.iter().enumerate().map(|(i, e)| (i, i, x_value(&basis.spec, &e.tuple[alpha], alpha, k as i64, j as i64).expect("X in range")));
    OpMatrix::from_entries(basis.len(), entries)
}

#[derive(Clone, Debug, Default)]
pub struct MomentaReport {
    pub operators: usize,
    pub commutators: usize,
    /// Rows annihilated by a momentum (branching boundaries).
    pub boundary_rows: usize,
    pub failures: Vec<String>,
}

impl MomentaReport {
    pub fn passed(&self) -> bool {
        self.operators > 0 && self.failures.is_empty()
    }
}

/// `[P^±, X] = ±ħδP^±`, boundary vanishing (enforced during construction),
/// and diagonality of `P^+P^−` and `P^−P^+`, all exactly.
pub fn momenta_check(basis: &SovBasis) -> Result<MomentaReport> {
    let spec = &basis.spec;
    let n = spec.n;
    let labels: Vec<(usize, usize, usize)> = (0..spec.l()).flat_map(|a| (1..n).flat_map(move |k| (1..=k).map(move |j| (a, k, j)))).collect();
    let xs: Vec<OpMatrix> = labels.iter().map(|&(a, k, j)| separated_variable(basis, a, k, j)).collect();
    let mut rep = MomentaReport::default();
    for &(a, k, j) in &labels {
        let pp = momenta(basis, true, a, k, j)?;
        let pm = momenta(basis, false, a, k, j)?;
        for p in [&pp, &pm] {
            rep.operators += 1;
            rep.boundary_rows += (0..basis.len()).filter(|&i| p.matrix.row(i).is_zero()).count();
            for (lbl, x) in labels.iter().zip(&xs) {
                rep.commutators += 1;
                let comm = p.matrix.mul(x).sub(&x.mul(&p.matrix));
                let want = if *lbl == (a, k, j) { p.matrix.scale(&if p.plus { spec.hbar.clone() } else { -spec.hbar.clone() }) } else { OpMatrix::zero(basis.len()) };
                if comm != want {
                    rep.failures.push(format!("[P{}({},{k},{j}), X{lbl:?}]", if p.plus { "+" } else { "−" }, a + 1));
                }
            }
        }
        if !pp.matrix.mul(&pm.matrix).is_diagonal() || !pm.matrix.mul(&pp.matrix).is_diagonal() {
            rep.failures.push(format!("P+P− not diagonal at ({}, {k}, {j})", a + 1));
        }
    }
    Ok(rep)
}

/// Coefficients of each covector in the GT basis, normalised so the diagonal
/// coefficient is 1; returns the largest off-diagonal magnitude.
pub fn off_gt_component(gt: &GtBasis, basis: &SovBasis) -> Result<Rat> {
    let g = rows_to_matrix(&gt.covectors());
    let ginv = inverse(&g).ok_or(Error::RankDeficient { rank: rank(&gt.covectors()), dim: gt.len() })?;
    let mut worst = Rat::zero();
    for (i, e) in basis.entries.iter().enumerate() {
        if gt.entries[i].0 != e.tuple {
            return Err(Error::InvalidIndex("GT and SoV bases are ordered differently".into()));
        }
        let c = e.covector.apply(&ginv);
        let own = c.get(i);
        if own.is_zero() {
            return Err(Error::Degenerate(format!("no GT component along {:?}", e.tuple)));
        }
        for j in c.support() {
            if j != i {
                let r = (c.get(j) / &own).abs();
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub struct AstlReport {
    pub t: (Rat, Rat),
    pub off_gt: (Rat, Rat),
    /// `off_gt(t_small) / off_gt(t_large)`; `None` when both vanish, i.e. the
    /// SoV basis is the GT basis at every `t`.
    pub ratio: Option<Rat>,
}

/// The auxiliary singular twist limit `w_k = t^{n−k}` at two values of `t`.
pub fn astl_check(spec: &ChainSpec, gt: &GtBasis, t_small: &Rat, t_large: &Rat) -> Result<AstlReport> {
    let n = spec.n;
    let off = |t: &Rat| -> Result<Rat> {
        let mut s = spec.clone();
        s.w = (1..n).map(|k| num_traits::pow(t.clone(), n - k)).collect();
        let chain = Chain::new(&s)?;
        let m = Monodromy::untwisted(&chain)?;
        let basis = build_sov_basis_unchecked(&chain, &m)?;
        off_gt_component(gt, &basis)
    };
    let a = off(t_small)?;
    let b = off(t_large)?;
    let ratio = match (a.is_zero(), b.is_zero()) {
        (true, true) => None,
        (false, true) => return Err(Error::DivisionByZero("off-GT component vanished at the large t only".into())),
        _ => Some(&a / &b),
    };
    Ok(AstlReport { t: (t_small.clone(), t_large.clone()), ratio, off_gt: (a, b) })
}

/// `f_ξ(u, v) = Π_a (u − v + ħ(a−1−ξ_a)) / (u − v + ħ(a−1))` as `(numerator, denominator)` in `u`.
pub fn f_xi(xi: &YoungDiagram, v: &Rat, hbar: &Rat) -> (UPoly<Rat>, UPoly<Rat>) {
    let h = xi.height();
    let num: Vec<Rat> = (1..=h).map(|a| v - hbar * int(a as i64 - 1 - xi.part(a) as i64)).collect();
    let den: Vec<Rat> = (1..=h).map(|a| v - hbar * int(a as i64 - 1)).collect();
    (UPoly::from_roots(&num, &int(1)), UPoly::from_roots(&den, &int(1)))
}

#[derive(Clone, Debug, Default)]
pub struct RecursionReport {
    /// Intertwining steps: admissible input, eigenvalue multiplied by `f_ξ`.
    pub intertwining_steps: usize,
    /// Admissibility at the remaining sites after an excitation.
    pub admissibility_checks: usize,
    pub failures: Vec<String>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.intertwining_steps > 0 && self.failures.is_empty()
    }
}

/// `⟨Λ| T_{j+r, 1+r}(v) = 0` for `j = 1..k+1`: admissibility inside `φ^r(gl(k+1))`.
fn admissible(m: &Monodromy, v: &CoVec, k: usize, r: usize, pt: &Rat) -> Result<bool> {
    for j in 1..=k + 1 {
        if !m.apply_minor(v, &[j + r], &[1 + r], pt)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replays the basis recursion on `tuples`, checking at every excitation that
/// the input is admissible, that the output is a B-eigencovector with
/// eigenvalue multiplied by `f_ξ(u, v)`, and that admissibility at the
/// not-yet-excited sites of the level survives.
pub fn recursion_check(chain: &Chain, m: &Monodromy, b: &BOperator, tuples: &[PatternTuple]) -> Result<RecursionReport> {
    let spec = &chain.spec;
    let n = spec.n;
    let mut rep = RecursionReport::default();
    let lowest: PatternTuple = spec.nu.iter().map(|nu| GtPattern::lowest(nu)).collect();
    let b0 = b_eigenvalue(spec, &sep_coordinates(&lowest, &spec.theta, &spec.hbar));
    for tuple in tuples {
        let table = crate::gtalg::mubar_table(tuple);
        let mut v = vacuum(chain);
        let mut eig = b0.clone();
        for k in 1..n {
            let r = n - k - 1;
            let pts: Vec<Rat> = (0..spec.l()).map(|a| &spec.theta[a] + &spec.hbar * int(spec.nu[a][k])).collect();
            let active: Vec<usize> = (0..spec.l()).filter(|&a| !table[k - 1][a].is_empty()).collect();
            for (pos, &alpha) in active.iter().enumerate() {
                let xi = &table[k - 1][alpha];
                if !admissible(m, &v, k, r, &pts[alpha])? {
                    rep.failures.push(format!("{tuple:?}: input not admissible at level {k}, site {}", alpha + 1));
                }
                v = null_transfer_expr(n, &spec.w, xi, k, r, &spec.hbar)?.apply(&v, m, &pts[alpha])?;
                let (num, den) = f_xi(xi, &pts[alpha], &spec.hbar);
                let (q, rem) = eig.mul(&num).div_rem(&den).expect("nonzero denominator");
                rep.intertwining_steps += 1;
                if !rem.is_zero() || !is_poly_eigen(&v, &b.value, &q) {
                    rep.failures.push(format!("{tuple:?}: eigenvalue not multiplied by f_ξ at level {k}, site {}", alpha + 1));
                }
                eig = q;
                for &beta in &active[pos + 1..] {
                    rep.admissibility_checks += 1;
                    if !admissible(m, &v, k, r, &pts[beta])? {
                        rep.failures.push(format!("{tuple:?}: admissibility at site {} lost after site {}", beta + 1, alpha + 1));
                    }
                }
            }
        }
        if eig != b_eigenvalue(spec, &sep_coordinates(tuple, &spec.theta, &spec.hbar)) {
            rep.failures.push(format!("{tuple:?}: accumulated eigenvalue differs from the coordinate law"));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default)]
pub struct FactorReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl FactorReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// Null-twist factorisation `𝕋_{R+ξ'}(u) = 𝕋_R(u) 𝕋_{ξ'}(u + ħc)` for `R` the
/// `c = ν̄^α_{n−1}` full-height columns, and `𝕋_R(u) = Π_s 𝕋_{(1^{n−1})}(u + ħs)
/// = w_1⋯w_{n−1} Π_s T[^{1..n−1}_{2..n}](u + ħs)`, as operators at `θ_α + ħν^α_n`.
pub fn factorout_check(chain: &Chain, m: &Monodromy, rest: &[YoungDiagram]) -> Result<FactorReport> {
    let spec = &chain.spec;
    let n = spec.n;
    let w = &spec.w;
    let mut rep = FactorReport::default();
    let t = |xi: &YoungDiagram, u: &Rat| null_transfer_at(m, w, xi, n - 1, 0, u);
    for alpha in 0..spec.l() {
        let c = reduced_weight(&spec.nu[alpha]).part(n - 1);
        if c == 0 {
            continue;
        }
        let r_diag = YoungDiagram::new(vec![c; n - 1])?;
        let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][n - 1]);
        let tr = t(&r_diag, &u0)?;
        let mut cols = OpMatrix::identity(chain.dim);
        let mut raise = OpMatrix::identity(chain.dim);
        let wprod: Rat = w.iter().product();
        for s in 0..c {
            let us = &u0 + &spec.hbar * int(s as i64);
            cols = cols.mul(&t(&YoungDiagram::column(n - 1), &us)?);
            raise = raise.mul(&m.minor_at(&range(1, n - 1), &range(2, n), &us)?.scale(&wprod));
        }
        rep.checked += 1;
        if tr != cols || tr != raise {
            rep.failures.push(format!("site {}: column product of 𝕋_R", alpha + 1));
        }
        for xi in rest {
            if xi.height() > n - 1 {
                continue;
            }
            rep.checked += 1;
            let lhs = t(&r_diag.glue(xi), &u0)?;
            let rhs = tr.mul(&t(xi, &(&u0 + &spec.hbar * int(c as i64)))?);
            if lhs != rhs {
                rep.failures.push(format!("site {}: 𝕋_(R+{xi}) does not factor", alpha + 1));
            }
        }
    }
    Ok(rep)
}

/// `F^α_k`: the first `ν̄^α_{k+1}` columns of `ν̄^α`.
pub fn frame_diagram(nubar: &YoungDiagram, k: usize) -> YoungDiagram {
    nubar.first_columns(nubar.part(k + 1))
}

/// All admissible `F` for `(ν̄, k, μ̄)`: width `ν̄_{k+1}`, last column as tall as
/// column `ν̄_{k+1}` of `ν̄`, and `F + μ̄ ⊆ ν̄`.
pub fn admissible_frames(nubar: &YoungDiagram, k: usize, mubar: &YoungDiagram) -> Vec<YoungDiagram> {
    let width = nubar.part(k + 1);
    if width == 0 {
        return if nubar.contains(mubar) { vec![YoungDiagram::empty()] } else { vec![] };
    }
    let last_h = nubar.column_heights()[width - 1];
    let max_h = nubar.height();
    YoungDiagram::all_up_to(nubar.size(), max_h)
        .into_iter()
        .filter(|f| f.width() == width && f.column_heights()[width - 1] == last_h && nubar.contains(&f.glue(mubar)))
        .collect()
}

/// `⟨0| Π←_k Π_α 𝕋_{F^α_k + μ̄^α_k}(θ_α + ħν^α_n)` for every tuple, with the
/// twisted transfer matrices of `m` (no division, `F` included for empty `μ̄`).
pub fn bethe_generated_covectors(chain: &Chain, m: &Monodromy, tuples: &[PatternTuple]) -> Result<Vec<CoVec>> {
    let spec = &chain.spec;
    let n = spec.n;
    let mut cache: HashMap<(usize, YoungDiagram), OpMatrix> = HashMap::new();
    let mut op = |alpha: usize, xi: YoungDiagram| -> Result<OpMatrix> {
        if let Some(t) = cache.get(&(alpha, xi.clone())) {
            return Ok(t.clone());
        }
        let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][n - 1]);
        let t = m.cbr_transfer_at(&xi, &u0)?;
        cache.insert((alpha, xi), t.clone());
        Ok(t)
    };
    let mut out = Vec::with_capacity(tuples.len());
    for tuple in tuples {
        let table = crate::gtalg::mubar_table(tuple);
        let mut v = vacuum(chain);
        for k in 1..n {
            for alpha in 0..spec.l() {
                let f = frame_diagram(&reduced_weight(&spec.nu[alpha]), k);
                v = v.apply(&op(alpha, f.glue(&table[k - 1][alpha]))?);
            }
        }
        out.push(v);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub rank: usize,
    pub dim: usize,
    /// `⟨0|Π 𝕋_{F+μ̄} = ⟨Λ^B| Π 𝕋_F` for every tuple.
    pub identity_holds: bool,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.rank == self.dim && self.identity_holds
    }
}

/// Transfer matrices alone generate the basis: rank of the Bethe-generated
/// covectors, and their exact relation to `⟨Λ^B|` through `Π 𝕋_F`.
pub fn bethe_generation_check(chain: &Chain, basis: &SovBasis) -> Result<GenerationReport> {
    let spec = &chain.spec;
    let n = spec.n;
    let m = Monodromy::build(chain, &TwistSpec::mct(spec))?;
    let tuples: Vec<PatternTuple> = basis.entries.iter().map(|e| e.tuple.clone()).collect();
    let gen = bethe_generated_covectors(chain, &m, &tuples)?;
    let mut frames = OpMatrix::identity(chain.dim);
    for k in 1..n {
        for alpha in 0..spec.l() {
            let f = frame_diagram(&reduced_weight(&spec.nu[alpha]), k);
            let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][n - 1]);
            frames = frames.mul(&m.cbr_transfer_at(&f, &u0)?);
        }
    }
    let identity_holds = basis.entries.par_iter().zip(&gen).all(|(e, g)| e.covector.apply(&frames) == *g);
    Ok(GenerationReport { rank: rank(&gen), dim: chain.dim, identity_holds })
}
