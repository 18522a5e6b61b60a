//! gl(n) irreducible representations on the Gelfand–Tsetlin basis.
//!
//! Simple generators use the classical GT matrix elements in the rational
//! gauge (no square roots):
//!
//! ```text
//! E_{k,k+1} ξ_Λ = −Σ_i  Π_j (l_{ki} − l_{k+1,j}) / Π_{j≠i} (l_{ki} − l_{kj})  ξ_{Λ+δ_{ki}}
//! E_{k+1,k} ξ_Λ =  Σ_i  Π_j (l_{ki} − l_{k−1,j}) / Π_{j≠i} (l_{ki} − l_{kj})  ξ_{Λ−δ_{ki}}
//! ```
//!
//! with `l_{ki} = λ_{ki} − i + 1`; the remaining generators are nested commutators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{check_dominant, enumerate_gt_patterns, GtPattern};
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, parse_rat, rat_to_string, Rat};
use crate::exactalg::OpMatrix;

#[derive(Clone, Debug)]
pub struct IrrepData {
    pub n: usize,
    pub nu: Vec<i64>,
    pub basis: Vec<GtPattern>,
    /// `gens[i*n + j] = π(E_{i+1,j+1})`
    gens: Vec<OpMatrix>,
}

impl IrrepData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `π(E_ij)`, 1-based indices.
    pub fn e(&self, i: usize, j: usize) -> &OpMatrix {
        &self.gens[(i - 1) * self.n + (j - 1)]
    }

    pub fn index_of(&self, p: &GtPattern) -> Option<usize> {
        self.basis.iter().position(|q| q == p)
    }
}

fn l(p: &GtPattern, k: usize, i: usize) -> i64 {
    p.lambda(k, i) - i as i64 + 1
}

pub fn build_irrep(nu: &[i64]) -> Result<IrrepData> {
    check_dominant(nu)?;
    let n = nu.len();
    let basis = enumerate_gt_patterns(nu)?;
    let dim = basis.len();
    let index: HashMap<&GtPattern, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut gens: Vec<Option<OpMatrix>> = vec![None; n * n];

    for i in 1..=n {
        let diag = basis.iter().enumerate().map(|(c, p)| (c, c, int(p.row_sum(i) - p.row_sum(i - 1))));
        gens[(i - 1) * n + (i - 1)] = Some(OpMatrix::from_entries(dim, diag));
    }
    for k in 1..n {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (c, p) in basis.iter().enumerate() {
            for i in 1..=k {
                let mut den = int(1);
                for j in (1..=k).filter(|&j| j != i) {
                    den *= int(l(p, k, i) - l(p, k, j));
                }
                let mut target = p.clone();
                target.set_lambda(k, i, p.lambda(k, i) + 1);
                if let Some(&r) = index.get(&target) {
                    let mut num = int(1);
                    for j in 1..=k + 1 {
                        num *= int(l(p, k, i) - l(p, k + 1, j));
                    }
                    up.push((r, c, -num / &den));
                }
                let mut target = p.clone();
                target.set_lambda(k, i, p.lambda(k, i) - 1);
                if let Some(&r) = index.get(&target) {
                    let mut num = int(1);
                    for j in 1..k {
                        num *= int(l(p, k, i) - l(p, k - 1, j));
                    }
                    down.push((r, c, num / &den));
                }
            }
        }
        gens[(k - 1) * n + k] = Some(OpMatrix::from_entries(dim, up));
        gens[k * n + (k - 1)] = Some(OpMatrix::from_entries(dim, down));
    }
    // E_{i,j} = [E_{i,j−1}, E_{j−1,j}] above the diagonal, [E_{i,j+1}, E_{j+1,j}] below
    for d in 2..n {
        for i in 1..=n - d {
            let j = i + d;
            let a = gens[(i - 1) * n + (j - 2)].clone().unwrap();
            let b = gens[(j - 2) * n + (j - 1)].clone().unwrap();
            gens[(i - 1) * n + (j - 1)] = Some(a.commutator(&b));
            let (i2, j2) = (j, i);
            let a = gens[(i2 - 1) * n + j2].clone().unwrap();
            let b = gens[j2 * n + (j2 - 1)].clone().unwrap();
            gens[(i2 - 1) * n + (j2 - 1)] = Some(a.commutator(&b));
        }
    }
    Ok(IrrepData { n, nu: nu.to_vec(), basis, gens: gens.into_iter().map(Option::unwrap).collect() })
}

/// Process-wide cache of irreps keyed by the weight.
pub fn irrep(nu: &[i64]) -> Result<Arc<IrrepData>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<i64>, Arc<IrrepData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(nu) {
        return Ok(r.clone());
    }
    let r = Arc::new(build_irrep(nu)?);
    cache.lock().unwrap().insert(nu.to_vec(), r.clone());
    Ok(r)
}

/// `Σ_ij E_ij E_ji`, which must be scalar.
pub fn quadratic_casimir(rep: &IrrepData) -> Result<Rat> {
    let mut acc = OpMatrix::zero(rep.dim());
    for i in 1..=rep.n {
        for j in 1..=rep.n {
            acc = acc.add(&rep.e(i, j).mul(rep.e(j, i)));
        }
    }
    acc.as_scalar().ok_or_else(|| Error::Degenerate("Casimir is not scalar: generator construction is inconsistent".into()))
}

/// Global generators `𝓔_ij = Σ_α π^{ν^α}(E_ij)` on the tensor product, site 1 fastest.
pub fn global_generator(reps: &[Arc<IrrepData>], i: usize, j: usize) -> OpMatrix {
    let total: usize = reps.iter().map(|r| r.dim()).product();
    let mut stride = 1;
    let mut acc = OpMatrix::zero(total);
    for r in reps {
        acc = acc.add(&OpMatrix::embed_site(r.e(i, j), r.dim(), stride, total));
        stride *= r.dim();
    }
    acc
}

const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct IrrepFile {
    version: u32,
    n: usize,
    nu: Vec<i64>,
    basis: Vec<GtPattern>,
    /// `(i, j, [(row, col, "p/q")])`
    generators: Vec<(usize, usize, Vec<(usize, usize, String)>)>,
}

impl IrrepData {
    pub fn to_json(&self) -> Result<String> {
        let mut generators = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let m = self.e(i, j);
                let mut ents = Vec::new();
                for r in 0..m.dim() {
                    for (c, _) in m.row_nums(r) {
                        ents.push((r, c, rat_to_string(&m.get(r, c))));
                    }
                }
                generators.push((i, j, ents));
            }
        }
        Ok(serde_json::to_string(&IrrepFile { version: CACHE_VERSION, n: self.n, nu: self.nu.clone(), basis: self.basis.clone(), generators })?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: IrrepFile = serde_json::from_str(s)?;
        if f.version != CACHE_VERSION {
            return Err(Error::Config(format!("irrep cache version {} (expected {CACHE_VERSION})", f.version)));
        }
        let dim = f.basis.len();
        let mut gens = vec![OpMatrix::zero(dim); f.n * f.n];
        for (i, j, ents) in f.generators {
            let parsed: Result<Vec<(usize, usize, Rat)>> = ents.into_iter().map(|(r, c, v)| Ok((r, c, parse_rat(&v)?))).collect();
            gens[(i - 1) * f.n + (j - 1)] = OpMatrix::from_entries(dim, parsed?);
        }
        Ok(Self { n: f.n, nu: f.nu, basis: f.basis, gens })
    }
}
