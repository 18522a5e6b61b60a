//! Fused transfer matrices (CBR), symbolic Yangian expressions, the
//! null-twist transfer matrices of embedded subchains, and the Talalaev
//! generating function.

use num_traits::{One, Zero};

use super::monodromy::{signed_permutations, subsets, Monodromy};
use crate::combinatorics::YoungDiagram;
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, Rat};
use crate::exactalg::{CoVec, OpMatrix, PolyOperator};

/// Non-vanishing Leibniz terms of the CBR determinant
/// `det_{i,j≤ξ_1} 𝕋_{ξᵀ_j+i−j,1}(u+ħ(i−1))`, for antisymmetric transfer
/// matrices of height at most `max_height`: `(sign, [(height, i−1)])`.
pub fn cbr_terms(xi: &YoungDiagram, max_height: usize) -> Vec<(i64, Vec<(usize, usize)>)> {
    let w = xi.width();
    let cols = xi.column_heights();
    let mut out = Vec::new();
    for (sign, perm) in signed_permutations(w) {
        let mut factors = Vec::with_capacity(w);
        let mut ok = true;
        for j in 0..w {
            let i = perm[j];
            let h = cols[j] as i64 + i as i64 - j as i64;
            if h < 0 || h as usize > max_height {
                ok = false;
                break;
            }
            if h > 0 {
                factors.push((h as usize, i));
            }
        }
        if ok {
            out.push((sign, factors));
        }
    }
    out
}

impl Monodromy {
    /// `𝕋_ξ(u)` as a polynomial, by the CBR determinant.
    pub fn cbr_transfer(&self, xi: &YoungDiagram) -> Result<PolyOperator> {
        let base: Vec<PolyOperator> = (0..=self.n()).map(|a| self.transfer_antisym(a)).collect::<Result<_>>()?;
        let mut acc = PolyOperator::zero(self.dim());
        if xi.is_empty() {
            return Ok(PolyOperator::identity(self.dim()));
        }
        for (sign, factors) in cbr_terms(xi, self.n()) {
            let mut term = PolyOperator::identity(self.dim());
            for (h, i) in factors {
                term = term.mul(&base[h].shift(&(self.hbar() * int(i as i64))));
            }
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }

    /// `𝕋_ξ(u0)`: antisymmetric transfers are evaluated at the shifted points
    /// first, then the determinant is expanded on matrices.
    pub fn cbr_transfer_at(&self, xi: &YoungDiagram, u0: &Rat) -> Result<OpMatrix> {
        cbr_at(self.dim(), self.hbar(), xi, self.n(), u0, |a, u| self.transfer_antisym_at(a, u))
    }
}

/// CBR determinant at a point over any family of commuting antisymmetric
/// transfer matrices `t(a, u)`.
pub fn cbr_at(dim: usize, hbar: &Rat, xi: &YoungDiagram, max_height: usize, u0: &Rat, mut t: impl FnMut(usize, &Rat) -> Result<OpMatrix>) -> Result<OpMatrix> {
    if xi.is_empty() {
        return Ok(OpMatrix::identity(dim));
    }
    let mut memo: std::collections::HashMap<(usize, usize), OpMatrix> = Default::default();
    let mut acc = OpMatrix::zero(dim);
    for (sign, factors) in cbr_terms(xi, max_height) {
        let mut term = OpMatrix::identity(dim);
        for (h, i) in factors {
            if !memo.contains_key(&(h, i)) {
                let m = t(h, &(u0 + hbar * int(i as i64)))?;
                memo.insert((h, i), m);
            }
            term = term.mul(&memo[&(h, i)]);
            if term.is_zero() {
                break;
            }
        }
        acc = acc.add_scaled(&term, &int(sign));
    }
    Ok(acc)
}

/// A symbolic element of the Yangian built from quantum minors, evaluated
/// against a concrete monodromy on demand.
#[derive(Clone, Debug, PartialEq)]
pub enum YExpr {
    /// `T[^rows_cols](u + shift)`.
    Minor { rows: Vec<usize>, cols: Vec<usize>, shift: Rat },
    /// A multiple of the identity.
    Const(Rat),
    Sum(Vec<YExpr>),
    /// Ordered product, leftmost factor acts first on covectors.
    Prod(Vec<YExpr>),
    Scaled(Rat, Box<YExpr>),
}

impl YExpr {
    pub fn identity() -> Self {
        Self::Const(Rat::one())
    }

    pub fn entry(i: usize, j: usize) -> Self {
        Self::minor(vec![i], vec![j])
    }

    pub fn minor(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        Self::Minor { rows, cols, shift: Rat::zero() }
    }

    /// `u ↦ u + s` in every factor.
    pub fn shifted(&self, s: &Rat) -> Self {
        match self {
            Self::Minor { rows, cols, shift } => Self::Minor { rows: rows.clone(), cols: cols.clone(), shift: shift + s },
            Self::Const(c) => Self::Const(c.clone()),
            Self::Sum(v) => Self::Sum(v.iter().map(|e| e.shifted(s)).collect()),
            Self::Prod(v) => Self::Prod(v.iter().map(|e| e.shifted(s)).collect()),
            Self::Scaled(c, e) => Self::Scaled(c.clone(), Box::new(e.shifted(s))),
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            Self::Minor { rows, cols, .. } => rows.iter().chain(cols).copied().max().unwrap_or(0),
            Self::Const(_) => 0,
            Self::Sum(v) | Self::Prod(v) => v.iter().map(Self::max_index).max().unwrap_or(0),
            Self::Scaled(_, e) => e.max_index(),
        }
    }

    /// `φ^r`: every `T_ij` becomes `T_{i+r,j+r}`, inside `gl(n)`.
    pub fn embed(&self, r: usize, n: usize) -> Result<Self> {
        if self.max_index() + r > n {
            return Err(Error::InvalidIndex(format!("embedding by {r} overflows gl({n}): expression uses index {}", self.max_index())));
        }
        Ok(self.embed_unchecked(r))
    }

    fn embed_unchecked(&self, r: usize) -> Self {
        match self {
            Self::Minor { rows, cols, shift } => {
                Self::Minor { rows: rows.iter().map(|i| i + r).collect(), cols: cols.iter().map(|j| j + r).collect(), shift: shift.clone() }
            }
            Self::Const(c) => Self::Const(c.clone()),
            Self::Sum(v) => Self::Sum(v.iter().map(|e| e.embed_unchecked(r)).collect()),
            Self::Prod(v) => Self::Prod(v.iter().map(|e| e.embed_unchecked(r)).collect()),
            Self::Scaled(c, e) => Self::Scaled(c.clone(), Box::new(e.embed_unchecked(r))),
        }
    }

    pub fn eval_at(&self, m: &Monodromy, u0: &Rat) -> Result<OpMatrix> {
        Ok(match self {
            Self::Minor { rows, cols, shift } => m.minor_at(rows, cols, &(u0 + shift))?,
            Self::Const(c) => OpMatrix::scalar(m.dim(), c),
            Self::Sum(v) => {
                let mut acc = OpMatrix::zero(m.dim());
                for e in v {
                    acc = acc.add(&e.eval_at(m, u0)?);
                }
                acc
            }
            Self::Prod(v) => {
                let mut acc = OpMatrix::identity(m.dim());
                for e in v {
                    acc = acc.mul(&e.eval_at(m, u0)?);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Self::Scaled(c, e) => e.eval_at(m, u0)?.scale(c),
        })
    }

    /// `⟨v| expr(u0)` without forming the operator.
    pub fn apply(&self, v: &CoVec, m: &Monodromy, u0: &Rat) -> Result<CoVec> {
        Ok(match self {
            Self::Minor { rows, cols, shift } => m.apply_minor(v, rows, cols, &(u0 + shift))?,
            Self::Const(c) => v.scale(c),
            Self::Sum(terms) => {
                let mut acc = CoVec::zero(v.dim());
                for e in terms {
                    acc = acc.add(&e.apply(v, m, u0)?);
                }
                acc
            }
            Self::Prod(fs) => {
                let mut acc = v.clone();
                for e in fs {
                    if acc.is_zero() {
                        break;
                    }
                    acc = e.apply(&acc, m, u0)?;
                }
                acc
            }
            Self::Scaled(c, e) => e.apply(v, m, u0)?.scale(c),
        })
    }

    pub fn to_poly(&self, m: &Monodromy) -> Result<PolyOperator> {
        Ok(match self {
            Self::Minor { rows, cols, shift } => m.quantum_minor(rows, cols)?.shift(shift),
            Self::Const(c) => PolyOperator::identity(m.dim()).scale(c),
            Self::Sum(v) => {
                let mut acc = PolyOperator::zero(m.dim());
                for e in v {
                    acc = acc.add(&e.to_poly(m)?);
                }
                acc
            }
            Self::Prod(v) => {
                let mut acc = PolyOperator::identity(m.dim());
                for e in v {
                    acc = acc.mul(&e.to_poly(m)?);
                }
                acc
            }
            Self::Scaled(c, e) => e.to_poly(m)?.scale(c),
        })
    }
}

/// Null-twist antisymmetric transfer of `gl(k+1)`, embedded by `φ^r`:
/// `Σ_{J⊂{1..k}, |J|=a} w^{(k+1)}_J T[^{J+r}_{J+r+1}](u)` with
/// `w^{(k+1)}_i = w_{i+r}`.
pub fn null_antisym_expr(w: &[Rat], k: usize, r: usize, a: usize) -> YExpr {
    if a == 0 {
        return YExpr::identity();
    }
    let terms: Vec<YExpr> = subsets(k, a)
        .into_iter()
        .map(|j| {
            let weight: Rat = j.iter().map(|&i| w[i + r - 1].clone()).product();
            let rows: Vec<usize> = j.iter().map(|&i| i + r).collect();
            let cols: Vec<usize> = j.iter().map(|&i| i + r + 1).collect();
            YExpr::Scaled(weight, Box::new(YExpr::minor(rows, cols)))
        })
        .collect();
    YExpr::Sum(terms)
}

/// `φ^r(𝕋^N_ξ)` for the `gl(k+1)` null twist, assembled by CBR.
pub fn null_transfer_expr(n: usize, w: &[Rat], xi: &YoungDiagram, k: usize, r: usize, hbar: &Rat) -> Result<YExpr> {
    if k == 0 || k + 1 + r > n || w.len() + 1 != n {
        return Err(Error::InvalidIndex(format!("null transfer at level {k}, offset {r} does not fit gl({n})")));
    }
    if xi.is_empty() {
        return Ok(YExpr::identity());
    }
    let terms = cbr_terms(xi, k)
        .into_iter()
        .map(|(sign, factors)| {
            let prod = YExpr::Prod(factors.iter().map(|&(h, i)| null_antisym_expr(w, k, r, h).shifted(&(hbar * int(i as i64)))).collect());
            YExpr::Scaled(int(sign), Box::new(prod))
        })
        .collect();
    Ok(YExpr::Sum(terms))
}

/// `φ^r(𝕋^N_ξ)(u0)` as a matrix: null antisymmetric transfers are
/// evaluated first, then the CBR determinant.
pub fn null_transfer_at(m: &Monodromy, w: &[Rat], xi: &YoungDiagram, k: usize, r: usize, u0: &Rat) -> Result<OpMatrix> {
    let n = m.n();
    if k == 0 || k + 1 + r > n || w.len() + 1 != n {
        return Err(Error::InvalidIndex(format!("null transfer at level {k}, offset {r} does not fit gl({n})")));
    }
    cbr_at(m.dim(), m.hbar(), xi, k, u0, |a, u| null_antisym_expr(w, k, r, a).eval_at(m, u))
}

/// A difference operator `Σ_k A_k(u) e^{−kħ∂_u}`.
#[derive(Clone, Debug)]
struct DiffOp {
    terms: Vec<PolyOperator>,
}

impl DiffOp {
    fn mul(&self, o: &Self, hbar: &Rat, dim: usize) -> Self {
        let mut terms = vec![PolyOperator::zero(dim); self.terms.len() + o.terms.len() - 1];
        for (a, ta) in self.terms.iter().enumerate() {
            for (b, tb) in o.terms.iter().enumerate() {
                if ta.is_zero() || tb.is_zero() {
                    continue;
                }
                // e^{−aħ∂} B(u) = B(u − aħ) e^{−aħ∂}
                let p = ta.mul(&tb.shift(&-(hbar * int(a as i64))));
                terms[a + b] = terms[a + b].add(&p);
            }
        }
        Self { terms }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TalalaevReport {
    /// Powers `a` of the shift whose coefficient disagrees with `(−1)^a 𝕋_{a,1}`.
    pub mismatches: Vec<usize>,
    pub checked: usize,
}

impl TalalaevReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Expands the column-ordered determinant `det(1 − T(u)e^{−ħ∂})` and compares
/// each coefficient with `(−1)^a 𝕋_{a,1}(u)`.
pub fn talalaev_check(m: &Monodromy) -> Result<TalalaevReport> {
    let (n, dim, hbar) = (m.n(), m.dim(), m.hbar().clone());
    let id = PolyOperator::identity(dim);
    let mut total = DiffOp { terms: vec![PolyOperator::zero(dim); n + 1] };
    for (sign, perm) in signed_permutations(n) {
        let mut acc = DiffOp { terms: vec![id.clone()] };
        for j in 0..n {
            let i = perm[j];
            let d = if i == j { id.clone() } else { PolyOperator::zero(dim) };
            let f = DiffOp { terms: vec![d, m.entry(i + 1, j + 1).scale(&-Rat::one())] };
            acc = acc.mul(&f, &hbar, dim);
        }
        for (k, t) in acc.terms.into_iter().enumerate() {
            total.terms[k] = if sign > 0 { total.terms[k].add(&t) } else { total.terms[k].sub(&t) };
        }
    }
    let mut mismatches = Vec::new();
    for a in 0..=n {
        let want = m.transfer_antisym(a)?;
        let want = if a % 2 == 0 { want } else { want.scale(&-Rat::one()) };
        if total.terms[a] != want {
            mismatches.push(a);
        }
    }
    Ok(TalalaevReport { mismatches, checked: n + 1 })
}
