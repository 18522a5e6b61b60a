//! Gelfand–Tsetlin subalgebra, raising/lowering minors, the embedding
//! morphism and the GT eigenbasis built by composite raising operators.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_pattern_tuples, GtPattern, PatternTuple, YoungDiagram};
use crate::error::{Error, Result};
use crate::exactalg::linalg::rank;
use crate::exactalg::rational::{int, parse_rat, rat_to_string, Rat};
use crate::exactalg::{CoVec, PolyOperator, UPoly};
use crate::yangian::{Chain, ChainSpec, Monodromy, YExpr};

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `GT_a(u) = T[^{1..a}_{1..a}](u)`.
pub fn gt_generator(m: &Monodromy, a: usize) -> Result<PolyOperator> {
    m.quantum_minor(&range(1, a), &range(1, a))
}

/// `GP^+_a = T[^{1..a−1, a}_{1..a−1, a+1}]`.
pub fn gp_raise_expr(a: usize) -> YExpr {
    let mut cols = range(1, a - 1);
    cols.push(a + 1);
    YExpr::minor(range(1, a), cols)
}

/// `GP^−_a = T[^{1..a−1, a+1}_{1..a−1, a}]`.
pub fn gp_lower_expr(a: usize) -> YExpr {
    let mut rows = range(1, a - 1);
    rows.push(a + 1);
    YExpr::minor(rows, range(1, a))
}

pub fn gp_raise(m: &Monodromy, a: usize) -> Result<PolyOperator> {
    check_gp(m, a)?;
    gp_raise_expr(a).to_poly(m)
}

pub fn gp_lower(m: &Monodromy, a: usize) -> Result<PolyOperator> {
    check_gp(m, a)?;
    gp_lower_expr(a).to_poly(m)
}

fn check_gp(m: &Monodromy, a: usize) -> Result<()> {
    if a == 0 || a >= m.n() {
        return Err(Error::InvalidIndex(format!("GP_{a} needs 1 ≤ a ≤ n−1 = {}", m.n() - 1)));
    }
    Ok(())
}

/// Point at which `GP^±_a` shifts node `(a, j)` of site `alpha`:
/// `θ_α + ħ(λ_aj + a − j)`.
pub fn gp_point(spec: &ChainSpec, alpha: usize, p: &GtPattern, a: usize, j: usize) -> Rat {
    &spec.theta[alpha] + &spec.hbar * int(p.lambda(a, j) + a as i64 - j as i64)
}

/// `Π_α Π_{j≤a} (u − θ_α − ħ(λ^α_aj + a − j))`.
pub fn gt_eigenvalue(spec: &ChainSpec, tuple: &[GtPattern], a: usize) -> UPoly<Rat> {
    let roots: Vec<Rat> = tuple
        .iter()
        .enumerate()
        .flat_map(|(alpha, p)| (1..=a).map(move |j| (alpha, p, j)))
        .map(|(alpha, p, j)| gp_point(spec, alpha, p, a, j))
        .collect();
    UPoly::from_roots(&roots, &int(1))
}

/// `ν_j(u) = Π_α (u − θ_α − ħν^α_j)` as a polynomial.
pub fn nu_poly(spec: &ChainSpec, j: usize) -> UPoly<Rat> {
    let roots: Vec<Rat> = (0..spec.l()).map(|a| &spec.theta[a] + &spec.hbar * int(spec.nu[a][j - 1])).collect();
    UPoly::from_roots(&roots, &int(1))
}

/// `φ^r` inside `gl(n)`.
pub fn embed(expr: &YExpr, r: usize, n: usize) -> Result<YExpr> {
    expr.embed(r, n)
}

/// `S_μ̄(u) = Π→_j T[^{1..h_j}_{2..h_j+1}](u + ħ(j−1))`, `h_j` the column heights.
pub fn composite_raise(mubar: &YoungDiagram, hbar: &Rat) -> YExpr {
    let factors: Vec<YExpr> = mubar
        .column_heights()
        .iter()
        .enumerate()
        .map(|(j, &h)| YExpr::minor(range(1, h), range(2, h + 1)).shifted(&(hbar * int(j as i64))))
        .collect();
    if factors.is_empty() {
        YExpr::identity()
    } else {
        YExpr::Prod(factors)
    }
}

/// `φ^{n−k−1}(S_μ̄)` acting on `gl(n)`, for a diagram of height at most `k`.
pub fn composite_raise_embedded(n: usize, k: usize, mubar: &YoungDiagram, hbar: &Rat) -> Result<YExpr> {
    if mubar.height() > k || k >= n {
        return Err(Error::InvalidIndex(format!("composite raiser for {mubar} at level {k} of gl({n})")));
    }
    composite_raise(mubar, hbar).embed(n - k - 1, n)
}

/// The covector `⟨0|` of the tuple of lowest patterns.
pub fn vacuum(chain: &Chain) -> CoVec {
    let parts: Vec<usize> = chain.reps.iter().map(|r| r.index_of(&GtPattern::lowest(&r.nu)).expect("lowest pattern present")).collect();
    CoVec::unit(chain.dim, chain.join_index(&parts))
}

/// All pattern tuples of the chain, in basis order.
pub fn pattern_tuples(chain: &Chain) -> Vec<PatternTuple> {
    let per_site: Vec<Vec<GtPattern>> = chain.reps.iter().map(|r| r.basis.clone()).collect();
    enumerate_pattern_tuples(&per_site)
}

/// `μ̄^α_k` for every site, indexed `[k−1][α]`.
pub fn mubar_table(tuple: &[GtPattern]) -> Vec<Vec<YoungDiagram>> {
    let dd: Vec<_> = tuple.iter().map(|p| p.dual_diagonals().mubar).collect();
    let levels = dd.first().map_or(0, Vec::len);
    (0..levels).map(|k| dd.iter().map(|d| d[k].clone()).collect()).collect()
}

/// Covectors built level by level: for each `k = 1..n−1` (lower `k` acting
/// first) and each site, one embedded factor evaluated at `θ_α + ħν^α_{k+1}`.
/// `factor(k, α, μ̄)` returns the factor; prefixes are shared between tuples.
pub(crate) fn build_by_levels(
    chain: &Chain,
    m: &Monodromy,
    tuples: &[PatternTuple],
    factor: &dyn Fn(usize, usize, &YoungDiagram) -> Result<YExpr>,
) -> Result<Vec<CoVec>> {
    let spec = &chain.spec;
    let n = spec.n;
    let mut memo: HashMap<Vec<Vec<YoungDiagram>>, CoVec> = HashMap::new();
    memo.insert(Vec::new(), vacuum(chain));
    let mut out = Vec::with_capacity(tuples.len());
    for tuple in tuples {
        let table = mubar_table(tuple);
        for k in 1..n {
            let key = table[..k].to_vec();
            if memo.contains_key(&key) {
                continue;
            }
            let mut v = memo[&table[..k - 1].to_vec()].clone();
            for (alpha, mubar) in table[k - 1].iter().enumerate() {
                if mubar.is_empty() {
                    continue;
                }
                let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][k]);
                v = factor(k, alpha, mubar)?.apply(&v, m, &u0)?;
                if v.is_zero() {
                    return Err(Error::ZeroVector(format!("level {k}, site {}: raising {mubar} annihilated the state (genericness violated?)", alpha + 1)));
                }
            }
            memo.insert(key, v);
        }
        out.push(memo[&table].clone());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GtBasis {
    pub spec: ChainSpec,
    pub entries: Vec<(PatternTuple, CoVec)>,
}

impl GtBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn covectors(&self) -> Vec<CoVec> {
        self.entries.iter().map(|e| e.1.clone()).collect()
    }
}

/// `⟨0| Π←_k Π_α φ^{n−k−1}(S_{μ̄^α_k}(θ_α + ħν^α_{k+1}))` for every tuple,
/// verified exactly against the GT spectrum and for full rank.
pub fn build_gt_basis(chain: &Chain) -> Result<GtBasis> {
    let m = Monodromy::untwisted(chain)?;
    let basis = build_gt_basis_unchecked(chain, &m)?;
    verify_gt_basis(chain, &m, &basis)?;
    Ok(basis)
}

pub fn build_gt_basis_unchecked(chain: &Chain, m: &Monodromy) -> Result<GtBasis> {
    let spec = &chain.spec;
    let n = spec.n;
    let tuples = pattern_tuples(chain);
    let factor = |k: usize, _alpha: usize, mubar: &YoungDiagram| composite_raise_embedded(n, k, mubar, &spec.hbar);
    let covs = build_by_levels(chain, m, &tuples, &factor)?;
    Ok(GtBasis { spec: spec.clone(), entries: tuples.into_iter().zip(covs).collect() })
}

/// `v · P(u) = p(u) v` as a polynomial identity, coefficient by coefficient.
pub fn is_poly_eigen(v: &CoVec, op: &PolyOperator, eig: &UPoly<Rat>) -> bool {
    let deg = op.coeffs().len().max(eig.coeffs().len());
    (0..deg).all(|i| {
        let lhs = op.coeffs().get(i).map_or_else(|| CoVec::zero(v.dim()), |c| v.apply(c));
        lhs == v.scale(&eig.coeff(i, &int(0)))
    })
}

/// Joint eigenvector property for `GT_1..GT_n`, pairwise distinct joint
/// spectra, and full rank.
pub fn verify_gt_basis(chain: &Chain, m: &Monodromy, basis: &GtBasis) -> Result<()> {
    let spec = &chain.spec;
    let gts: Vec<PolyOperator> = (1..=spec.n).map(|a| gt_generator(m, a)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    for (tuple, v) in &basis.entries {
        let eigs: Vec<UPoly<Rat>> = (1..=spec.n).map(|a| gt_eigenvalue(spec, tuple, a)).collect();
        for (a, (op, eig)) in gts.iter().zip(&eigs).enumerate() {
            if !is_poly_eigen(v, op, eig) {
                return Err(Error::Defective(format!("GT_{} eigenvalue mismatch on {tuple:?}", a + 1)));
            }
        }
        if !seen.insert(eigs.iter().map(|p| p.coeffs().iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>()) {
            return Err(Error::Degenerate(format!("joint GT spectrum of {tuple:?} repeats")));
        }
    }
    let r = rank(&basis.covectors());
    if r != chain.dim {
        return Err(Error::RankDeficient { rank: r, dim: chain.dim });
    }
    Ok(())
}

/// Tuples whose level-`k` dual diagonals are all minimal: the image `V_(k)`
/// of the embedding morphism inside `gl(k+1)`.
pub fn in_embedding_image(tuple: &[GtPattern], k: usize) -> bool {
    tuple.iter().all(|p| p.dual_diagonals().mubar[k - 1].is_empty())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PsiPhiReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PsiPhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// On `V_(k) ⊂ H_{k+1}`: `⟨Λ|T[^{1,1+i}_{1,1+j}](u+ħ) = ν_{k+1}(u+ħ)⟨Λ|T_{1+i,1+j}(u)`,
/// i.e. `ψ_1 = φ` there, for all `i, j ≤ k` and the given sample points.
pub fn psi_phi_agreement_check(spec: &ChainSpec, k: usize, points: &[Rat]) -> Result<PsiPhiReport> {
    if k == 0 || k >= spec.n {
        return Err(Error::InvalidIndex(format!("ψ/φ check needs 1 ≤ k < n, got {k}")));
    }
    let sub = spec.truncated(k + 1);
    let chain = Chain::new(&sub)?;
    let m = Monodromy::untwisted(&chain)?;
    let basis = build_gt_basis_unchecked(&chain, &m)?;
    let mut rep = PsiPhiReport::default();
    for (tuple, v) in basis.entries.iter().filter(|(t, _)| in_embedding_image(t, k)) {
        for u in points {
            let up = u + &sub.hbar;
            let nu = sub.nu_poly_at(k + 1, &up);
            for i in 1..=k {
                for j in 1..=k {
                    let lhs = m.apply_minor(v, &[1, 1 + i], &[1, 1 + j], &up)?;
                    let rhs = m.apply_minor(v, &[1 + i], &[1 + j], u)?.scale(&nu);
                    rep.checked += 1;
                    if lhs != rhs {
                        rep.failures.push(format!("{tuple:?} (i,j)=({i},{j}) u={u}"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `⟨Λ|T_{j1}(u) = δ_{j1} ν_{k+1}(u) ⟨Λ|` identically in `u`, on a covector of `V_(k)`
/// for the `gl(k+1)` monodromy `m`.
pub fn lowering_holds(spec: &ChainSpec, m: &Monodromy, v: &CoVec) -> bool {
    let k = m.n() - 1;
    let nu = nu_poly(spec, k + 1);
    (1..=m.n()).all(|j| {
        let target = if j == 1 { nu.clone() } else { UPoly::zero() };
        is_poly_eigen(v, m.entry(j, 1), &target)
    })
}

/// Site `alpha` of `tuple` has `μ_r` minimal and every higher dual diagonal
/// `μ_s` (`s > r`) flat at `ν_s`: the configuration reached after the
/// rectangular factors of the null-twist transfer matrices have acted.
pub fn shortening_applies(tuple: &[GtPattern], alpha: usize, r: usize) -> bool {
    let p = &tuple[alpha];
    let nu = p.top();
    let n = p.n();
    let mu = p.dual_diagonals().mu;
    mu[r - 1].iter().all(|&x| x == nu[r]) && (r + 1..n).all(|s| mu[s - 1].iter().all(|&x| x == nu[s - 1]))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ShorteningReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ShorteningReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// `⟨Λ|T_{j,n−r}(θ_α + ħν^α_{r+1}) = 0` for `j = n−r−1..n−1` on every basis
/// covector where [`shortening_applies`].
pub fn shortening_check(chain: &Chain, m: &Monodromy, basis: &GtBasis) -> Result<ShorteningReport> {
    let spec = &chain.spec;
    let n = spec.n;
    let mut rep = ShorteningReport::default();
    for (tuple, v) in &basis.entries {
        for alpha in 0..spec.l() {
            for r in 1..n.saturating_sub(1) {
                if !shortening_applies(tuple, alpha, r) {
                    continue;
                }
                let u0 = &spec.theta[alpha] + &spec.hbar * int(spec.nu[alpha][r]);
                for j in n - r - 1..n {
                    rep.checked += 1;
                    if !m.apply_minor(v, &[j], &[n - r], &u0)?.is_zero() {
                        rep.failures.push(format!("{tuple:?} site {} r={r} j={j}", alpha + 1));
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Serialize, Deserialize)]
struct CachedEntry {
    pattern: PatternTuple,
    /// sparse `(index, "p/q")`
    covector: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    key: String,
    dim: usize,
    entries: Vec<CachedEntry>,
}

const CACHE_VERSION: u32 = 1;

impl GtBasis {
    pub fn to_json(&self) -> Result<String> {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| CachedEntry { pattern: p.clone(), covector: v.support().into_iter().map(|i| (i, rat_to_string(&v.get(i)))).collect() })
            .collect();
        let dim = self.entries.first().map_or(0, |e| e.1.dim());
        Ok(serde_json::to_string(&CacheFile { version: CACHE_VERSION, key: self.spec.cache_key()?, dim, entries })?)
    }

    /// Parses a cache file; rejects files written for a different spec.
    pub fn from_json(spec: &ChainSpec, s: &str) -> Result<Self> {
        let f: CacheFile = serde_json::from_str(s)?;
        if f.version != CACHE_VERSION || f.key != spec.cache_key()? {
            return Err(Error::Config("GT basis cache does not match this chain".into()));
        }
        let mut entries = Vec::with_capacity(f.entries.len());
        for e in f.entries {
            let mut vals = vec![Rat::from_integer(0.into()); f.dim];
            for (i, x) in e.covector {
                *vals.get_mut(i).ok_or_else(|| Error::Config(format!("cache index {i} out of range")))? = parse_rat(&x)?;
            }
            entries.push((e.pattern, CoVec::from_rats(&vals)));
        }
        Ok(Self { spec: spec.clone(), entries })
    }

    /// Loads `dir/gt-<key>.json` when present and valid, otherwise builds and writes it.
    pub fn cached(chain: &Chain, dir: &Path) -> Result<Self> {
        let path = dir.join(format!("gt-{}.json", chain.spec.cache_key()?));
        if let Ok(s) = std::fs::read_to_string(&path) {
            if let Ok(b) = Self::from_json(&chain.spec, &s) {
                return Ok(b);
            }
        }
        let b = build_gt_basis(chain)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, b.to_json()?)?;
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn chain(name: &str) -> Chain {
        Chain::new(&ChainSpec::preset(name).unwrap()).unwrap()
    }

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn gt1_on_vacuum_t1() {
        let c = chain("t1");
        let m = Monodromy::untwisted(&c).unwrap();
        let gt1 = gt_generator(&m, 1).unwrap();
        assert_eq!(&gt1, m.entry(1, 1));
        let eig = UPoly::from_roots(&[int(0), rat(1, 3)], &int(1));
        assert!(is_poly_eigen(&vacuum(&c), &gt1, &eig));
    }

    #[test]
    fn gt_n_is_central_value() {
        let c = chain("t1");
        let m = Monodromy::untwisted(&c).unwrap();
        let spec = &c.spec;
        let mut want = UPoly::constant(int(1));
        for j in 1..=3 {
            want = want.mul(&nu_poly(spec, j).shift(&-(&spec.hbar * int(3 - j as i64))));
        }
        let q = gt_generator(&m, 3).unwrap().as_scalar_poly().unwrap();
        assert_eq!(q, want);
    }

    #[test]
    fn raising_and_lowering_t0() {
        let c = chain("t0");
        let m = Monodromy::untwisted(&c).unwrap();
        let v0 = vacuum(&c);
        let low = GtPattern::lowest(&[1, 0]);
        let up = gp_raise_expr(1).apply(&v0, &m, &gp_point(&c.spec, 0, &low, 1, 1)).unwrap();
        assert!(!up.is_zero());
        // excited pattern is the other basis element: GT_1 eigenvalue u − 1
        assert!(is_poly_eigen(&up, m.entry(1, 1), &UPoly::from_ints(&[-1, 1])));
        let high = GtPattern::highest(&[1, 0]);
        let back = gp_lower_expr(1).apply(&up, &m, &gp_point(&c.spec, 0, &high, 1, 1)).unwrap();
        assert!(back.ratio_to(&v0).is_some_and(|r| r != int(0)));
        // branching-maximal node cannot be raised further
        let again = gp_raise_expr(1).apply(&up, &m, &gp_point(&c.spec, 0, &high, 1, 1)).unwrap();
        assert!(again.is_zero());
        assert!(gp_raise(&m, 2).is_err());
        assert_eq!(gp_raise(&m, 1).unwrap(), m.entry(1, 2).clone());
        assert_eq!(gp_lower(&m, 1).unwrap(), m.entry(2, 1).clone());
    }

    #[test]
    fn composite_raisers() {
        assert_eq!(composite_raise(&YoungDiagram::empty(), &int(1)), YExpr::identity());
        assert_eq!(composite_raise(&yd(&[1]), &int(1)), YExpr::Prod(vec![YExpr::entry(1, 2)]));
        let s = composite_raise(&yd(&[2, 1]), &int(1));
        assert_eq!(s, YExpr::Prod(vec![YExpr::minor(vec![1, 2], vec![2, 3]), YExpr::entry(1, 2).shifted(&int(1))]));
        assert!(composite_raise_embedded(3, 1, &yd(&[1, 1]), &int(1)).is_err());
        assert_eq!(composite_raise_embedded(3, 1, &yd(&[1]), &int(1)).unwrap(), YExpr::Prod(vec![YExpr::entry(2, 3)]));
        assert_eq!(embed(&YExpr::entry(1, 1), 2, 3).unwrap(), YExpr::entry(3, 3));
    }

    #[test]
    fn gt_basis_t0() {
        let b = build_gt_basis(&chain("t0")).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.entries[0].1, CoVec::unit(2, 0));
    }

    #[test]
    fn gt_basis_trivial_chain() {
        let spec = ChainSpec::uniform(&[2, 2, 2], vec![int(0), rat(1, 2)]).unwrap();
        let b = build_gt_basis(&Chain::new(&spec).unwrap()).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn gt_basis_t1_and_cache() {
        let c = chain("t1");
        let b = build_gt_basis(&c).unwrap();
        assert_eq!(b.len(), 64);
        let back = GtBasis::from_json(&c.spec, &b.to_json().unwrap()).unwrap();
        assert_eq!(back.covectors(), b.covectors());
        let other = ChainSpec::preset("defining3").unwrap();
        assert!(GtBasis::from_json(&other, &b.to_json().unwrap()).is_err());
    }

    #[test]
    fn psi_equals_phi_on_image() {
        let spec = ChainSpec::preset("t1").unwrap();
        let pts = [int(0), int(1), int(2)];
        for k in [1, 2] {
            let r = psi_phi_agreement_check(&spec, k, &pts).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn lowering_on_image() {
        let c = chain("t1");
        let m = Monodromy::untwisted(&c).unwrap();
        let b = build_gt_basis_unchecked(&c, &m).unwrap();
        let image: Vec<_> = b.entries.iter().filter(|(t, _)| in_embedding_image(t, 2)).collect();
        assert_eq!(image.len(), 4);
        for (_, v) in &image {
            assert!(lowering_holds(&c.spec, &m, v));
        }
        let outside = b.entries.iter().find(|(t, _)| !in_embedding_image(t, 2)).unwrap();
        assert!(!lowering_holds(&c.spec, &m, &outside.1));
    }

    #[test]
    fn shortening_t1_and_gl4() {
        for c in [chain("t1"), Chain::new(&ChainSpec::uniform(&[3, 2, 1, 0], vec![int(0)]).unwrap()).unwrap()] {
            let m = Monodromy::untwisted(&c).unwrap();
            let b = build_gt_basis_unchecked(&c, &m).unwrap();
            let r = shortening_check(&c, &m, &b).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn column_expansion_of_dual_raising() {
        // T[^1_2] T[^{12}_{13}] ∝ T[^{12}_{23}] on image covectors at θ_α + ħν_{k+1}
        let c = chain("t1");
        let m = Monodromy::untwisted(&c).unwrap();
        let b = build_gt_basis_unchecked(&c, &m).unwrap();
        for (t, v) in b.entries.iter().filter(|(t, _)| in_embedding_image(t, 2)) {
            for alpha in 0..2 {
                let u0 = &c.spec.theta[alpha] + int(c.spec.nu[alpha][2]);
                let chained = YExpr::Prod(vec![gp_raise_expr(1), gp_raise_expr(2)]).apply(v, &m, &u0).unwrap();
                let direct = m.apply_minor(v, &[1, 2], &[2, 3], &u0).unwrap();
                assert!(!direct.is_zero(), "{t:?}");
                assert!(chained.ratio_to(&direct).is_some_and(|r| r != int(0)), "{t:?}");
            }
        }
    }
}
