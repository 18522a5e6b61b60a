//! Lax operators, monodromy matrices and quantum minors.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::spec::{Chain, TwistSpec};
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, Rat};
use crate::exactalg::{CoVec, OpMatrix, PolyOperator};
use crate::glrep::IrrepData;

/// All permutations of `0..a` with their signs.
pub fn signed_permutations(a: usize) -> Vec<(i64, Vec<usize>)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, sign: i64, out: &mut Vec<(i64, Vec<usize>)>) {
        let a = used.len();
        if prefix.len() == a {
            out.push((sign, prefix.clone()));
            return;
        }
        for i in 0..a {
            if used[i] {
                continue;
            }
            // inversions contributed by placing i after the unused smaller values
            let smaller_unused = (0..i).filter(|&j| !used[j]).count();
            used[i] = true;
            prefix.push(i);
            rec(prefix, used, if smaller_unused % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; a], 1, &mut out);
    out
}

/// `L^ν(u) = u − ħ Σ E_ij ⊗ π(E_ji)` on `C^n ⊗ V^ν`, auxiliary index slowest.
pub fn lax(rep: &IrrepData, hbar: &Rat) -> PolyOperator {
    let (n, d) = (rep.n, rep.dim());
    let total = n * d;
    let mut c0 = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let e = rep.e(j, i);
            for r in 0..d {
                for (c, _) in e.row_nums(r) {
                    c0.push(((i - 1) * d + r, (j - 1) * d + c, -(hbar * e.get(r, c))));
                }
            }
        }
    }
    PolyOperator::linear(OpMatrix::from_entries(total, c0), OpMatrix::identity(total))
}

fn check_indices(idx: &[usize], n: usize, what: &str) -> Result<()> {
    for (p, &i) in idx.iter().enumerate() {
        if i == 0 || i > n {
            return Err(Error::InvalidIndex(format!("{what} index {i} outside 1..={n}")));
        }
        if idx[..p].contains(&i) {
            return Err(Error::InvalidIndex(format!("repeated {what} index {i} in {idx:?}")));
        }
    }
    Ok(())
}

/// Sign of the permutation sorting `idx` (distinct entries).
fn sort_sign(idx: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// (Twisted) monodromy `T(u)G`; entries are polynomial operators on the chain.
#[derive(Clone, Debug)]
pub struct Monodromy {
    n: usize,
    dim: usize,
    hbar: Rat,
    twist: TwistSpec,
    /// Row-major `n × n`.
    entries: Vec<PolyOperator>,
}

impl Monodromy {
    /// `L_L(u−θ_L) ⋯ L_1(u−θ_1)`, then `G` on the right in the auxiliary space.
    pub fn build(chain: &Chain, twist: &TwistSpec) -> Result<Self> {
        let n = chain.n();
        let dim = chain.dim;
        let hbar = chain.spec.hbar.clone();
        let mut acc: Option<Vec<PolyOperator>> = None;
        for (alpha, rep) in chain.reps.iter().enumerate() {
            let stride = chain.stride(alpha);
            let theta = &chain.spec.theta[alpha];
            let id = OpMatrix::identity(dim);
            let site: Vec<PolyOperator> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let e = OpMatrix::embed_site(rep.e(j, i), rep.dim(), stride, dim).scale(&-hbar.clone());
                    if i == j {
                        PolyOperator::linear(e.add(&id.scale(&-theta.clone())), id.clone())
                    } else {
                        PolyOperator::constant(e)
                    }
                })
                .collect();
            acc = Some(match acc {
                None => site,
                Some(prev) => aux_product(n, dim, &site, &prev),
            });
        }
        let bare = acc.expect("validated chains have at least one site");
        let entries = if twist.is_identity() {
            bare
        } else {
            let g = twist.matrix(n)?;
            (0..n * n)
                .map(|p| {
                    let (i, j) = (p / n, p % n);
                    (0..n).fold(PolyOperator::zero(dim), |s, k| if g[k][j].is_zero() { s } else { s.add(&bare[i * n + k].scale(&g[k][j])) })
                })
                .collect()
        };
        Ok(Self { n, dim, hbar, twist: twist.clone(), entries })
    }

    pub fn untwisted(chain: &Chain) -> Result<Self> {
        Self::build(chain, &TwistSpec::Identity)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> &Rat {
        &self.hbar
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    /// `T_ij(u)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &PolyOperator {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entry_at(&self, i: usize, j: usize, u0: &Rat) -> OpMatrix {
        self.entry(i, j).eval_exact(u0)
    }

    /// `Σ_σ sgn σ T_{i_σ1 j_1}(u) T_{i_σ2 j_2}(u−ħ) ⋯` as a polynomial.
    pub fn quantum_minor(&self, rows: &[usize], cols: &[usize]) -> Result<PolyOperator> {
        self.check_minor(rows, cols)?;
        let a = rows.len();
        if a == 0 {
            return Ok(PolyOperator::identity(self.dim));
        }
        let shifted: Vec<Vec<PolyOperator>> = (0..a)
            .map(|k| {
                let s = -(&self.hbar * int(k as i64));
                rows.iter().map(|&r| self.entry(r, cols[k]).shift(&s)).collect()
            })
            .collect();
        let mut acc = PolyOperator::zero(self.dim);
        for (sign, perm) in signed_permutations(a) {
            let mut term = shifted[0][perm[0]].clone();
            for k in 1..a {
                if term.is_zero() {
                    break;
                }
                term = term.mul(&shifted[k][perm[k]]);
            }
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }

    /// The quantum minor evaluated at `u0`.
    pub fn minor_at(&self, rows: &[usize], cols: &[usize], u0: &Rat) -> Result<OpMatrix> {
        self.check_minor(rows, cols)?;
        let a = rows.len();
        if a == 0 {
            return Ok(OpMatrix::identity(self.dim));
        }
        let ev: Vec<Vec<OpMatrix>> = (0..a)
            .map(|k| {
                let u = u0 - &self.hbar * int(k as i64);
                rows.iter().map(|&r| self.entry_at(r, cols[k], &u)).collect()
            })
            .collect();
        let mut acc = OpMatrix::zero(self.dim);
        for (sign, perm) in signed_permutations(a) {
            let mut term = ev[0][perm[0]].clone();
            for k in 1..a {
                if term.is_zero() {
                    break;
                }
                term = term.mul(&ev[k][perm[k]]);
            }
            acc = acc.add_scaled(&term, &int(sign));
        }
        Ok(acc)
    }

    /// `⟨v| T[^rows_cols](u0)`, expanding the permutation sum as a tree so
    /// shared prefixes are applied once.
    pub fn apply_minor(&self, v: &CoVec, rows: &[usize], cols: &[usize], u0: &Rat) -> Result<CoVec> {
        self.check_minor(rows, cols)?;
        if rows.is_empty() {
            return Ok(v.clone());
        }
        let mut cache: HashMap<(usize, usize), OpMatrix> = HashMap::new();
        let mut out = CoVec::zero(self.dim);
        let mut used = vec![false; rows.len()];
        self.apply_rec(v, rows, cols, u0, 0, 1, &mut used, &mut cache, &mut out);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn apply_rec(
        &self,
        v: &CoVec,
        rows: &[usize],
        cols: &[usize],
        u0: &Rat,
        k: usize,
        sign: i64,
        used: &mut [bool],
        cache: &mut HashMap<(usize, usize), OpMatrix>,
        out: &mut CoVec,
    ) {
        if k == rows.len() {
            *out = out.add_scaled(v, &int(sign));
            return;
        }
        if v.is_zero() {
            return;
        }
        for p in 0..rows.len() {
            if used[p] {
                continue;
            }
            let smaller_unused = (0..p).filter(|&q| !used[q]).count() as i64;
            let m = cache.entry((k, p)).or_insert_with(|| self.entry_at(rows[p], cols[k], &(u0 - &self.hbar * int(k as i64))));
            let next = v.apply(m);
            used[p] = true;
            let s = if smaller_unused % 2 == 0 { sign } else { -sign };
            self.apply_rec(&next, rows, cols, u0, k + 1, s, used, cache, out);
            used[p] = false;
        }
    }

    fn check_minor(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidIndex(format!("minor with {} rows and {} columns", rows.len(), cols.len())));
        }
        check_indices(rows, self.n, "row")?;
        check_indices(cols, self.n, "column")
    }

    /// `𝕋_{a,1}(u) = Σ_{|I|=a} T[^I_I](u)`.
    pub fn transfer_antisym(&self, a: usize) -> Result<PolyOperator> {
        let mut acc = PolyOperator::zero(self.dim);
        for set in subsets(self.n, a) {
            acc = acc.add(&self.quantum_minor(&set, &set)?);
        }
        Ok(acc)
    }

    pub fn transfer_antisym_at(&self, a: usize, u0: &Rat) -> Result<OpMatrix> {
        if a == 0 {
            return Ok(OpMatrix::identity(self.dim));
        }
        let mut acc = OpMatrix::zero(self.dim);
        if a > self.n {
            return Ok(acc);
        }
        for set in subsets(self.n, a) {
            acc = acc.add(&self.minor_at(&set, &set, u0)?);
        }
        Ok(acc)
    }
}

/// Auxiliary-space product `(A·B)_ij = Σ_k A_ik B_kj`.
fn aux_product(n: usize, dim: usize, a: &[PolyOperator], b: &[PolyOperator]) -> Vec<PolyOperator> {
    (0..n * n)
        .map(|p| {
            let (i, j) = (p / n, p % n);
            (0..n).fold(PolyOperator::zero(dim), |s, k| s.add(&a[i * n + k].mul(&b[k * n + j])))
        })
        .collect()
}

/// Increasing `a`-subsets of `1..=n`, lexicographic.
pub fn subsets(n: usize, a: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < a - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if a <= n {
        rec(1, n, a, &mut Vec::new(), &mut out);
    }
    out
}

/// Quantum minors cached per sorted index pair; antisymmetry in rows and in
/// columns supplies the sign for other orders.
pub struct MinorTable<'a> {
    m: &'a Monodromy,
    cache: HashMap<(Vec<usize>, Vec<usize>), PolyOperator>,
}

impl<'a> MinorTable<'a> {
    pub fn new(m: &'a Monodromy) -> Self {
        Self { m, cache: HashMap::new() }
    }

    /// `(sign, minor on the sorted indices)`.
    pub fn get(&mut self, rows: &[usize], cols: &[usize]) -> Result<(i64, &PolyOperator)> {
        self.m.check_minor(rows, cols)?;
        let sign = sort_sign(rows) * sort_sign(cols);
        let mut r = rows.to_vec();
        let mut c = cols.to_vec();
        r.sort_unstable();
        c.sort_unstable();
        let key = (r, c);
        if !self.cache.contains_key(&key) {
            let p = self.m.quantum_minor(&key.0, &key.1)?;
            self.cache.insert(key.clone(), p);
        }
        Ok((sign, &self.cache[&key]))
    }

    /// Signed minor as an owned polynomial.
    pub fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Result<PolyOperator> {
        let (s, p) = self.get(rows, cols)?;
        Ok(if s > 0 { p.clone() } else { p.scale(&-Rat::one()) })
    }
}
