//! Young diagrams, decreasing tableaux, Gelfand–Tsetlin patterns and dual diagonals.
//!
//! Tableaux use the decreasing convention: entries weakly decrease along rows
//! and strictly decrease down columns. [`Ssyt::to_increasing`] maps to the
//! common increasing convention by `i ↦ max_entry + 1 − i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rational::{int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    /// Trailing zeros are dropped.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndex(format!("rows {rows:?} are not weakly decreasing")));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Single column with `a` boxes.
    pub fn column(a: usize) -> Self {
        Self { rows: vec![1; a] }
    }

    pub fn row(m: usize) -> Self {
        Self::new(vec![m]).unwrap()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// `ξ_i` (1-based), zero beyond the height.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self { rows: (1..=self.width()).map(|c| self.rows.iter().filter(|&&r| r >= c).count()).collect() }
    }

    /// Heights of the columns, left to right.
    pub fn column_heights(&self) -> Vec<usize> {
        self.transpose().rows
    }

    pub fn contains(&self, o: &Self) -> bool {
        o.height() <= self.height() && o.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// Row-wise sum: `o` glued to the right of `self`, aligned on top.
    pub fn glue(&self, o: &Self) -> Self {
        let h = self.height().max(o.height());
        Self::new((1..=h).map(|i| self.part(i) + o.part(i)).collect()).expect("sum of diagrams is a diagram")
    }

    /// First `c` columns.
    pub fn first_columns(&self, c: usize) -> Self {
        Self::new(self.rows.iter().map(|&r| r.min(c)).collect()).unwrap()
    }

    /// Shifted weights `ξ̂_j = ξ_j − j + 1`, `j = 1..len`.
    pub fn shifted(&self, len: usize) -> Vec<i64> {
        (1..=len).map(|j| self.part(j) as i64 - j as i64 + 1).collect()
    }

    /// All diagrams with at most `max_boxes` boxes and height at most `max_height`,
    /// ordered by size then reverse-lexicographically.
    pub fn all_up_to(max_boxes: usize, max_height: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for size in 0..=max_boxes {
            partitions(size, size, max_height, &mut Vec::new(), &mut out);
        }
        out
    }
}

fn partitions(rem: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
    if rem == 0 {
        out.push(YoungDiagram { rows: cur.clone() });
        return;
    }
    if cur.len() == max_len {
        return;
    }
    for p in (1..=max_part.min(rem)).rev() {
        cur.push(p);
        partitions(rem - p, p, max_len, cur, out);
        cur.pop();
    }
}

impl std::fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Semi-standard tableau, decreasing convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ssyt {
    pub shape: YoungDiagram,
    /// `entries[a][s]`, row `a`, column `s` (0-based).
    pub entries: Vec<Vec<usize>>,
}

impl Ssyt {
    pub fn get(&self, a: usize, s: usize) -> usize {
        self.entries[a][s]
    }

    pub fn is_valid(&self, max_entry: usize) -> bool {
        let rows_ok = self.entries.iter().all(|r| r.iter().all(|&e| (1..=max_entry).contains(&e)) && r.windows(2).all(|w| w[0] >= w[1]));
        let cols_ok = (1..self.entries.len()).all(|a| (0..self.entries[a].len()).all(|s| self.entries[a - 1][s] > self.entries[a][s]));
        rows_ok && cols_ok
    }

    /// Complement map to the increasing convention.
    pub fn to_increasing(&self, max_entry: usize) -> Vec<Vec<usize>> {
        self.entries.iter().map(|r| r.iter().map(|&e| max_entry + 1 - e).collect()).collect()
    }

    /// Boxes `(a, s, entry)` with 1-based `a`, `s`.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().enumerate().flat_map(|(a, r)| r.iter().enumerate().map(move |(s, &e)| (a + 1, s + 1, e)))
    }
}

/// All decreasing tableaux of the given shape with entries in `1..=max_entry`,
/// in lexicographic order of the row-major entry sequence.
pub fn enumerate_ssyt(shape: &YoungDiagram, max_entry: usize) -> Vec<Ssyt> {
    let cells: Vec<(usize, usize)> = shape.rows().iter().enumerate().flat_map(|(a, &r)| (0..r).map(move |s| (a, s))).collect();
    let mut entries: Vec<Vec<usize>> = shape.rows().iter().map(|&r| vec![0; r]).collect();
    let mut out = Vec::new();
    fill_ssyt(&cells, 0, max_entry, &mut entries, shape, &mut out);
    out
}

fn fill_ssyt(cells: &[(usize, usize)], idx: usize, max_entry: usize, e: &mut Vec<Vec<usize>>, shape: &YoungDiagram, out: &mut Vec<Ssyt>) {
    if idx == cells.len() {
        out.push(Ssyt { shape: shape.clone(), entries: e.clone() });
        return;
    }
    let (a, s) = cells[idx];
    let mut hi = max_entry;
    if s > 0 {
        hi = hi.min(e[a][s - 1]);
    }
    if a > 0 {
        hi = hi.min(e[a - 1][s].saturating_sub(1));
    }
    // entries strictly decrease down a column, so row a needs at least height−a more values below
    let below = shape.transpose().part(s + 1) - a - 1;
    for v in (below + 1)..=hi {
        e[a][s] = v;
        fill_ssyt(cells, idx + 1, max_entry, e, shape, out);
    }
    e[a][s] = 0;
}

/// `dim V^ν` of gl(n), Weyl's formula.
pub fn weyl_dimension(nu: &[i64]) -> usize {
    let n = nu.len();
    let (mut num, mut den) = (num_bigint::BigInt::from(1), num_bigint::BigInt::from(1));
    for i in 0..n {
        for j in i + 1..n {
            num *= nu[i] - nu[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let q = num / den;
    usize::try_from(q).expect("dimension fits in usize")
}

pub fn check_dominant(nu: &[i64]) -> Result<()> {
    if nu.is_empty() || nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominantWeight(nu.to_vec()));
    }
    Ok(())
}

/// Gelfand–Tsetlin pattern; `rows[0]` is the top row `ν`, `rows[n−a]` the row of length `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n - r {
                return Err(Error::InvalidIndex(format!("pattern row {r} has length {} (expected {})", row.len(), n - r)));
            }
        }
        let p = Self { rows };
        if !p.is_valid() {
            return Err(Error::InvalidIndex(format!("pattern {:?} violates branching", p.rows)));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> &[i64] {
        &self.rows[0]
    }

    /// `λ_{aj}`, 1-based, `a = n` is the top row.
    pub fn lambda(&self, a: usize, j: usize) -> i64 {
        self.rows[self.n() - a][j - 1]
    }

    pub fn set_lambda(&mut self, a: usize, j: usize, v: i64) {
        let n = self.n();
        self.rows[n - a][j - 1] = v;
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        (1..n).all(|a| (1..=a).all(|j| self.lambda(a + 1, j) >= self.lambda(a, j) && self.lambda(a, j) >= self.lambda(a + 1, j + 1)))
    }

    /// Sum of row `a`.
    pub fn row_sum(&self, a: usize) -> i64 {
        if a == 0 {
            return 0;
        }
        self.rows[self.n() - a].iter().sum()
    }

    /// Cartan weight: `E_ii` eigenvalue `row_sum(i) − row_sum(i−1)`.
    pub fn weight(&self) -> Vec<i64> {
        (1..=self.n()).map(|i| self.row_sum(i) - self.row_sum(i - 1)).collect()
    }

    /// `Σ (λ_{aj} − min λ_{aj})`, the minimum being `ν_{n−a+j}`.
    pub fn excitation(&self) -> i64 {
        let n = self.n();
        (1..n).flat_map(|a| (1..=a).map(move |j| (a, j))).map(|(a, j)| self.lambda(a, j) - self.top()[n - a + j - 1]).sum()
    }

    /// `μ_{kj} = λ_{n−k+j−1, j}`.
    pub fn mu(&self, k: usize, j: usize) -> i64 {
        self.lambda(self.n() - k + j - 1, j)
    }

    pub fn dual_diagonals(&self) -> DualDiagonals {
        let n = self.n();
        let nu = self.top();
        let mu: Vec<Vec<i64>> = (1..n).map(|k| (1..=k).map(|j| self.mu(k, j)).collect()).collect();
        let mubar = mu
            .iter()
            .enumerate()
            .map(|(k0, m)| YoungDiagram::new(m.iter().map(|&x| (x - nu[k0 + 1]) as usize).collect()).expect("dual diagonal is a diagram"))
            .collect();
        DualDiagonals { mu, mubar }
    }

    /// Inverse of [`GtPattern::dual_diagonals`].
    pub fn from_dual_diagonals(nu: &[i64], mu: &[Vec<i64>]) -> Result<Self> {
        let n = nu.len();
        let mut rows: Vec<Vec<i64>> = (0..n).map(|r| vec![0; n - r]).collect();
        rows[0] = nu.to_vec();
        let mut p = Self { rows };
        for k in 1..n {
            for j in 1..=k {
                p.set_lambda(n - k + j - 1, j, mu[k - 1][j - 1]);
            }
        }
        if !p.is_valid() {
            return Err(Error::InvalidIndex(format!("dual diagonals {mu:?} violate branching for {nu:?}")));
        }
        Ok(p)
    }

    /// Pattern with every node at its branching minimum.
    pub fn lowest(nu: &[i64]) -> Self {
        let n = nu.len();
        Self { rows: (0..n).map(|r| nu[r..].to_vec()).collect() }
    }

    pub fn highest(nu: &[i64]) -> Self {
        let n = nu.len();
        Self { rows: (0..n).map(|r| nu[..n - r].to_vec()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDiagonals {
    /// `mu[k−1][j−1] = μ_{kj}`
    pub mu: Vec<Vec<i64>>,
    /// `mubar[k−1] = μ̄_k`
    pub mubar: Vec<YoungDiagram>,
}

/// All patterns with top row `nu`, ordered by excitation then lexicographically.
pub fn enumerate_gt_patterns(nu: &[i64]) -> Result<Vec<GtPattern>> {
    check_dominant(nu)?;
    let n = nu.len();
    let mut out = Vec::new();
    let mut rows = vec![nu.to_vec()];
    grow(&mut rows, n, &mut out);
    out.sort_by(|a, b| a.excitation().cmp(&b.excitation()).then_with(|| a.rows.cmp(&b.rows)));
    Ok(out)
}

fn grow(rows: &mut Vec<Vec<i64>>, n: usize, out: &mut Vec<GtPattern>) {
    let last = rows.last().unwrap().clone();
    if last.len() == 1 {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    let m = last.len() - 1;
    let mut cur = vec![0i64; m];
    fn rec(j: usize, last: &[i64], cur: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, n: usize, out: &mut Vec<GtPattern>) {
        if j == cur.len() {
            rows.push(cur.clone());
            grow(rows, n, out);
            rows.pop();
            return;
        }
        for v in last[j + 1]..=last[j] {
            cur[j] = v;
            rec(j + 1, last, cur, rows, n, out);
        }
    }
    rec(0, &last, &mut cur, rows, n, out);
}

pub type PatternTuple = Vec<GtPattern>;

/// Cartesian product of per-site pattern lists, site 1 varying fastest.
pub fn enumerate_pattern_tuples(per_site: &[Vec<GtPattern>]) -> Vec<PatternTuple> {
    let total: usize = per_site.iter().map(Vec::len).product();
    (0..total)
        .map(|mut idx| {
            per_site
                .iter()
                .map(|ps| {
                    let p = ps[idx % ps.len()].clone();
                    idx /= ps.len();
                    p
                })
                .collect()
        })
        .collect()
}

/// Separated coordinate `x_{kj}` of one site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepCoordinate {
    pub alpha: usize,
    pub k: usize,
    pub j: usize,
    #[serde(with = "crate::exactalg::rational::serde_rat")]
    pub x: Rat,
}

/// `x^α_{kj} = θ_α + ħ(μ^α_{kj} − j + 1)` for all sites (α is 1-based), ordered by (α, k, j).
pub fn sep_coordinates(tuple: &[GtPattern], thetas: &[Rat], hbar: &Rat) -> Vec<SepCoordinate> {
    let mut out = Vec::new();
    for (a0, p) in tuple.iter().enumerate() {
        let n = p.n();
        for k in 1..n {
            for j in 1..=k {
                let x = &thetas[a0] + hbar * int(p.mu(k, j) - j as i64 + 1);
                out.push(SepCoordinate { alpha: a0 + 1, k, j, x });
            }
        }
    }
    out
}

/// Boundary scalars `X_{j,j+1} = θ + ħ(ν_{j+1} − j)`, `j = 0..n−1`.
pub fn boundary_scalars(nu: &[i64], theta: &Rat, hbar: &Rat) -> Vec<Rat> {
    (0..nu.len()).map(|j| theta + hbar * int(nu[j] - j as i64)).collect()
}

/// Reduced weight `ν̄_j = ν_j − ν_n`.
pub fn reduced_weight(nu: &[i64]) -> YoungDiagram {
    let last = *nu.last().unwrap();
    YoungDiagram::new(nu.iter().map(|&v| (v - last) as usize).collect()).unwrap()
}

/// `R_{n−1} + … + R_{k−1}`: the first `ν̄_{k−1}` columns of `ν̄`, with `ν̄_0 := ν̄_1`.
/// `k` ranges over `1..=len+1` where `len` is the length of the weight.
pub fn split_rectangles(nubar: &YoungDiagram, len: usize, k: usize) -> Result<YoungDiagram> {
    if k == 0 || k > len + 1 {
        return Err(Error::InvalidIndex(format!("split_rectangles: k = {k} outside 1..={}", len + 1)));
    }
    let width = if k == 1 { nubar.part(1) } else { nubar.part(k - 1) };
    Ok(nubar.first_columns(width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn yd(r: &[usize]) -> YoungDiagram {
        YoungDiagram::new(r.to_vec()).unwrap()
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(enumerate_ssyt(&yd(&[1]), 3).len(), 3);
        let col = enumerate_ssyt(&yd(&[1, 1]), 2);
        assert_eq!(col.len(), 1);
        assert_eq!(col[0].entries, vec![vec![2], vec![1]]);
        assert_eq!(enumerate_ssyt(&yd(&[2, 1]), 3).len(), weyl_dimension(&[2, 1, 0]));
        assert!(enumerate_ssyt(&yd(&[1, 1, 1]), 2).is_empty());
        for t in enumerate_ssyt(&yd(&[3, 2]), 3) {
            assert!(t.is_valid(3));
        }
    }

    #[test]
    fn gt_examples() {
        assert_eq!(enumerate_gt_patterns(&[1, 0]).unwrap().len(), 2);
        assert_eq!(enumerate_gt_patterns(&[2, 1, 0]).unwrap().len(), 8);
        assert_eq!(enumerate_gt_patterns(&[3, 3, 3]).unwrap().len(), 1);
        assert!(enumerate_gt_patterns(&[0, 1]).is_err());
        let ps = enumerate_gt_patterns(&[2, 1, 0]).unwrap();
        assert_eq!(ps[0], GtPattern::lowest(&[2, 1, 0]));
        assert_eq!(*ps.last().unwrap(), GtPattern::highest(&[2, 1, 0]));
    }

    #[test]
    fn dual_diagonal_examples() {
        let lo = GtPattern::lowest(&[2, 1, 0]).dual_diagonals();
        assert_eq!(lo.mubar, vec![yd(&[0]), yd(&[0, 0])]);
        let hi = GtPattern::highest(&[2, 1, 0]).dual_diagonals();
        assert_eq!(hi.mubar, vec![yd(&[1]), yd(&[2, 1])]);
        for p in enumerate_gt_patterns(&[4, 4, 4]).unwrap() {
            assert!(p.dual_diagonals().mubar.iter().all(YoungDiagram::is_empty));
        }
    }

    #[test]
    fn sep_coordinate_examples() {
        let lo = GtPattern::lowest(&[2, 1, 0]);
        let th = vec![int(0), rat(1, 3)];
        let xs = sep_coordinates(&[lo.clone(), lo.clone()], &th, &int(1));
        let site1: Vec<Rat> = xs.iter().filter(|c| c.alpha == 1).map(|c| c.x.clone()).collect();
        assert_eq!(site1, vec![int(1), int(0), int(-1)]);
        let site2: Vec<Rat> = xs.iter().filter(|c| c.alpha == 2).map(|c| c.x.clone()).collect();
        assert_eq!(site2, vec![rat(4, 3), rat(1, 3), rat(-2, 3)]);
        let mut p = lo.clone();
        p.set_lambda(2, 1, 2);
        let xs = sep_coordinates(&[p], &th[..1], &int(1));
        assert_eq!(xs[0].x, int(2));
    }

    #[test]
    fn split_rectangle_examples() {
        let nb = yd(&[2, 1, 0]);
        assert_eq!(split_rectangles(&nb, 3, 2).unwrap(), yd(&[2, 1]));
        assert_eq!(split_rectangles(&nb, 3, 3).unwrap(), yd(&[1, 1]));
        assert_eq!(split_rectangles(&nb, 3, 1).unwrap(), nb);
        assert_eq!(split_rectangles(&nb, 3, 4).unwrap(), yd(&[]));
        assert!(split_rectangles(&yd(&[0, 0, 0]), 3, 2).unwrap().is_empty());
        assert!(split_rectangles(&nb, 3, 0).is_err());
    }

    #[test]
    fn diagram_basics() {
        let d = yd(&[3, 1]);
        assert_eq!(d.transpose(), yd(&[2, 1, 1]));
        assert_eq!(d.transpose().transpose(), d);
        assert_eq!(yd(&[1, 1]).glue(&yd(&[1])), yd(&[2, 1]));
        assert_eq!(YoungDiagram::all_up_to(3, 3).len(), 1 + 1 + 2 + 3);
        assert_eq!(YoungDiagram::all_up_to(3, 2).len(), 1 + 1 + 2 + 2);
    }
}
