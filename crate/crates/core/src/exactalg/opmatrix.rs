//! Exact rational operator matrices and covectors.
//!
//! Both store one positive common denominator and integer numerators kept in
//! lowest terms, so equality is structural and products run on integers.
//! Products first try an `i64`/`i128` path and fall back to big integers on
//! overflow.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rat;

static SPARSE_THRESHOLD: AtomicUsize = AtomicUsize::new(512);

/// Dimension at and above which new matrices use sparse row storage.
pub fn sparse_threshold() -> usize {
    SPARSE_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_sparse_threshold(dim: usize) {
    SPARSE_THRESHOLD.store(dim, Ordering::Relaxed);
}

#[derive(Clone)]
enum Store {
    Dense(Vec<BigInt>),
    /// Per row, (column, nonzero numerator) sorted by column.
    Sparse(Vec<Vec<(usize, BigInt)>>),
}

#[derive(Clone)]
pub struct OpMatrix {
    dim: usize,
    den: BigInt,
    store: Store,
}

type SmallRows = Vec<Vec<(u32, i64)>>;

fn gcd_fold(den: &BigInt, nums: impl Iterator<Item = BigInt>) -> BigInt {
    let mut g = den.clone();
    for v in nums {
        if g.is_one() {
            break;
        }
        if !v.is_zero() {
            g = g.gcd(&v);
        }
    }
    g
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl OpMatrix {
    fn from_store(dim: usize, den: BigInt, store: Store) -> Self {
        let mut m = Self { dim, den, store };
        m.normalize();
        m
    }

    fn want_sparse(dim: usize) -> bool {
        dim >= sparse_threshold()
    }

    /// Builds from rows of (column, numerator) pairs with a common denominator.
    fn from_int_rows(dim: usize, den: BigInt, rows: Vec<Vec<(usize, BigInt)>>) -> Self {
        let store = if Self::want_sparse(dim) {
            Store::Sparse(
                rows.into_iter()
                    .map(|mut r| {
                        r.retain(|(_, v)| !v.is_zero());
                        r.sort_by_key(|e| e.0);
                        r
                    })
                    .collect(),
            )
        } else {
            let mut d = vec![BigInt::zero(); dim * dim];
            for (i, r) in rows.into_iter().enumerate() {
                for (j, v) in r {
                    d[i * dim + j] += v;
                }
            }
            Store::Dense(d)
        };
        Self::from_store(dim, den, store)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.map_nums(|v| -v);
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = match &self.store {
            Store::Dense(d) => gcd_fold(&self.den, d.iter().cloned()),
            Store::Sparse(r) => gcd_fold(&self.den, r.iter().flatten().map(|e| e.1.clone())),
        };
        if !g.is_one() {
            self.den = &self.den / &g;
            self.map_nums(|v| v / &g);
        }
    }

    fn map_nums(&mut self, f: impl Fn(&BigInt) -> BigInt) {
        match &mut self.store {
            Store::Dense(d) => d.iter_mut().for_each(|v| *v = f(v)),
            Store::Sparse(r) => r.iter_mut().flatten().for_each(|e| e.1 = f(&e.1)),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_int_rows(dim, BigInt::one(), vec![Vec::new(); dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &Rat::one())
    }

    pub fn scalar(dim: usize, c: &Rat) -> Self {
        let rows = (0..dim).map(|i| vec![(i, c.numer().clone())]).collect();
        Self::from_int_rows(dim, c.denom().clone(), rows)
    }

    /// Builds from explicit (row, column, value) triples; repeated positions add.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Rat)>) -> Self {
        let entries: Vec<_> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        let den = super::rational::lcm_denoms(entries.iter().map(|e| &e.2));
        let mut rows = vec![Vec::new(); dim];
        for (i, j, v) in entries {
            assert!(i < dim && j < dim, "entry ({i},{j}) outside dimension {dim}");
            rows[i].push((j, (v * Rat::from_integer(den.clone())).to_integer()));
        }
        // merge duplicates before the sparse builder sorts
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(r.len());
            for (j, v) in r.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            *r = merged;
        }
        Self::from_int_rows(dim, den, rows)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        Self::from_entries(dim, (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| (i, j, f(i, j))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Nonzero numerators of row `i` with their columns.
    pub fn row_nums(&self, i: usize) -> Vec<(usize, &BigInt)> {
        match &self.store {
            Store::Dense(d) => d[i * self.dim..(i + 1) * self.dim]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            Store::Sparse(r) => r[i].iter().map(|(j, v)| (*j, v)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        let num = match &self.store {
            Store::Dense(d) => d[i * self.dim + j].clone(),
            Store::Sparse(r) => r[i]
                .binary_search_by_key(&j, |e| e.0)
                .map(|p| r[i][p].1.clone())
                .unwrap_or_default(),
        };
        Rat::new(num, self.den.clone())
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Store::Sparse(r) => r.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Dense(d) => d.iter().all(Zero::is_zero),
            Store::Sparse(r) => r.iter().all(Vec::is_empty),
        }
    }

    /// `Some(c)` when the matrix is `c·Id`.
    pub fn as_scalar(&self) -> Option<Rat> {
        let c = if self.dim == 0 { Rat::zero() } else { self.get(0, 0) };
        for i in 0..self.dim {
            for (j, v) in self.row_nums(i) {
                if j != i {
                    return None;
                }
                if Rat::new(v.clone(), self.den.clone()) != c {
                    return None;
                }
            }
            if c.is_zero() {
                continue;
            }
            if self.row_nums(i).is_empty() {
                return None;
            }
        }
        Some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| self.row_nums(i).iter().all(|(j, _)| *j == i))
    }

    fn int_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.dim).map(|i| self.row_nums(i).into_iter().map(|(j, v)| (j, v.clone())).collect()).collect()
    }

    fn small_rows(&self) -> Option<SmallRows> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut r = Vec::new();
            for (j, v) in self.row_nums(i) {
                r.push((j as u32, v.to_i64()?));
            }
            out.push(r);
        }
        Some(out)
    }

    fn lin_comb(&self, a: &Rat, o: &Self, b: &Rat) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        // a·X/dx + b·Y/dy over the common denominator
        let dx = &self.den * a.denom();
        let dy = &o.den * b.denom();
        let l = dx.lcm(&dy);
        let fx = a.numer() * (&l / &dx);
        let fy = b.numer() * (&l / &dy);
        let mut rows = self.int_rows();
        for r in rows.iter_mut() {
            for e in r.iter_mut() {
                e.1 = &e.1 * &fx;
            }
        }
        for i in 0..self.dim {
            for (j, v) in o.row_nums(i) {
                rows[i].push((j, v * &fy));
            }
        }
        if !Self::want_sparse(self.dim) {
            return Self::from_int_rows(self.dim, l, rows);
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(r.len());
            for (j, v) in r.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += v,
                    _ => merged.push((j, v)),
                }
            }
            *r = merged;
        }
        Self::from_int_rows(self.dim, l, rows)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lin_comb(&Rat::one(), o, &Rat::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lin_comb(&Rat::one(), o, &-Rat::one())
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, o: &Self, c: &Rat) -> Self {
        self.lin_comb(&Rat::one(), o, c)
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        m.map_nums(|v| -v);
        m
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let mut m = self.clone();
        m.den = &m.den * c.denom();
        let k = c.numer().clone();
        m.map_nums(|v| v * &k);
        m.normalize();
        m
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim];
        for i in 0..self.dim {
            for (j, v) in self.row_nums(i) {
                rows[j].push((i, v.clone()));
            }
        }
        Self::from_int_rows(self.dim, self.den.clone(), rows)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let den = &self.den * &o.den;
        if let (Some(a), Some(b)) = (self.small_rows(), o.small_rows()) {
            if let Some(m) = Self::mul_small(self.dim, &a, &b, &den) {
                return m;
            }
        }
        let b = o.int_rows();
        let mut rows = Vec::with_capacity(self.dim);
        let mut acc = vec![BigInt::zero(); self.dim];
        let mut touched = vec![false; self.dim];
        for i in 0..self.dim {
            let mut cols = Vec::new();
            for (k, a) in self.row_nums(i) {
                for (j, v) in &b[k] {
                    if !touched[*j] {
                        touched[*j] = true;
                        cols.push(*j);
                    }
                    acc[*j] += a * v;
                }
            }
            cols.sort_unstable();
            let mut r = Vec::with_capacity(cols.len());
            for j in cols {
                touched[j] = false;
                r.push((j, std::mem::take(&mut acc[j])));
            }
            rows.push(r);
        }
        Self::from_int_rows(self.dim, den, rows)
    }

    fn mul_small(dim: usize, a: &SmallRows, b: &SmallRows, den: &BigInt) -> Option<Self> {
        let mut out: Vec<Vec<(usize, i128)>> = Vec::with_capacity(dim);
        let mut acc = vec![0i128; dim];
        let mut touched = vec![false; dim];
        let mut g: i128 = den.to_i128().unwrap_or(1).abs();
        let den_small = den.to_i128().is_some();
        for row in a.iter() {
            let mut cols = Vec::new();
            for &(k, x) in row {
                for &(j, y) in &b[k as usize] {
                    let j = j as usize;
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                    }
                    acc[j] = acc[j].checked_add(x as i128 * y as i128)?;
                }
            }
            cols.sort_unstable();
            let mut r = Vec::with_capacity(cols.len());
            for j in cols {
                touched[j] = false;
                let v = std::mem::take(&mut acc[j]);
                if v != 0 {
                    if den_small && g != 1 {
                        g = gcd_i128(g, v);
                    }
                    r.push((j, v));
                }
            }
            out.push(r);
        }
        let all_zero = out.iter().all(Vec::is_empty);
        let (den, g) = if all_zero {
            (BigInt::one(), 1)
        } else if den_small {
            (BigInt::from(den.to_i128().unwrap() / g), g)
        } else {
            (den.clone(), 1)
        };
        let rows = out
            .into_iter()
            .map(|r| r.into_iter().map(|(j, v)| (j, BigInt::from(v / g))).collect())
            .collect();
        Some(Self::from_int_rows(dim, den, rows))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Embeds a site operator into a tensor product with mixed-radix order:
    /// the site has local dimension `local`, and `stride` is the product of
    /// the local dimensions of all faster sites.
    pub fn embed_site(site: &OpMatrix, local: usize, stride: usize, total: usize) -> Self {
        assert_eq!(site.dim, local);
        let block = stride * local;
        let mut rows = vec![Vec::new(); total];
        for (idx, row) in rows.iter_mut().enumerate() {
            let digit = (idx / stride) % local;
            let base = idx - digit * stride;
            for (j, v) in site.row_nums(digit) {
                row.push((base + j * stride, v.clone()));
            }
            debug_assert!(base % block < block);
        }
        Self::from_int_rows(total, site.den.clone(), rows)
    }

    /// Kronecker product `self ⊗ o` with `o` as the fast index.
    pub fn kron(&self, o: &Self) -> Self {
        let d = self.dim * o.dim;
        let mut rows = vec![Vec::new(); d];
        for i in 0..self.dim {
            for (j, a) in self.row_nums(i) {
                for k in 0..o.dim {
                    for (l, b) in o.row_nums(k) {
                        rows[i * o.dim + k].push((j * o.dim + l, a * b));
                    }
                }
            }
        }
        let mut m = Self { dim: d, den: &self.den * &o.den, store: Store::Dense(Vec::new()) };
        m = Self::from_int_rows(d, std::mem::take(&mut m.den), rows);
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn row(&self, i: usize) -> CoVec {
        let mut num = vec![BigInt::zero(); self.dim];
        for (j, v) in self.row_nums(i) {
            num[j] = v.clone();
        }
        CoVec::from_parts(self.den.clone(), num)
    }

    /// Largest absolute entry, as an exact rational.
    pub fn max_abs(&self) -> Rat {
        let m = (0..self.dim)
            .flat_map(|i| self.row_nums(i).into_iter().map(|(_, v)| v.abs()))
            .max()
            .unwrap_or_default();
        Rat::new(m, self.den.clone())
    }
}

impl PartialEq for OpMatrix {
    fn eq(&self, o: &Self) -> bool {
        if self.dim != o.dim || self.den != o.den {
            return false;
        }
        (0..self.dim).all(|i| self.row_nums(i) == o.row_nums(i))
    }
}

impl Eq for OpMatrix {}

impl fmt::Debug for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim > 8 {
            return write!(f, "OpMatrix(dim {}, nnz {})", self.dim, self.nnz());
        }
        writeln!(f, "OpMatrix[")?;
        for r in self.to_rows() {
            let s: Vec<String> = r.iter().map(super::rational::rat_to_string).collect();
            writeln!(f, "  [{}]", s.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact row vector; operators act on it from the right.
#[derive(Clone, PartialEq, Eq)]
pub struct CoVec {
    den: BigInt,
    num: Vec<BigInt>,
}

impl CoVec {
    pub fn from_parts(den: BigInt, num: Vec<BigInt>) -> Self {
        let mut v = Self { den, num };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num.iter_mut().for_each(|x| *x = -x.clone());
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = gcd_fold(&self.den, self.num.iter().cloned());
        if !g.is_one() {
            self.den = &self.den / &g;
            self.num.iter_mut().for_each(|x| *x = &*x / &g);
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self { den: BigInt::one(), num: vec![BigInt::zero(); dim] }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.num[i] = BigInt::one();
        v
    }

    pub fn from_rats(v: &[Rat]) -> Self {
        let den = super::rational::lcm_denoms(v);
        let num = v.iter().map(|r| (r * Rat::from_integer(den.clone())).to_integer()).collect();
        Self::from_parts(den, num)
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn get(&self, i: usize) -> Rat {
        Rat::new(self.num[i].clone(), self.den.clone())
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        (0..self.dim()).map(|i| self.get(i)).collect()
    }

    /// Integer numerators (the vector times its denominator).
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.num[i].is_zero()).collect()
    }

    fn lin_comb(&self, a: &Rat, o: &Self, b: &Rat) -> Self {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch");
        let dx = &self.den * a.denom();
        let dy = &o.den * b.denom();
        let l = dx.lcm(&dy);
        let fx = a.numer() * (&l / &dx);
        let fy = b.numer() * (&l / &dy);
        let num = self.num.iter().zip(&o.num).map(|(x, y)| x * &fx + y * &fy).collect();
        Self::from_parts(l, num)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lin_comb(&Rat::one(), o, &Rat::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lin_comb(&Rat::one(), o, &-Rat::one())
    }

    pub fn add_scaled(&self, o: &Self, c: &Rat) -> Self {
        self.lin_comb(&Rat::one(), o, c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        Self::from_parts(&self.den * c.denom(), self.num.iter().map(|x| x * c.numer()).collect())
    }

    /// `self · m`.
    pub fn apply(&self, m: &OpMatrix) -> Self {
        assert_eq!(self.dim(), m.dim(), "dimension mismatch");
        let den = &self.den * &m.den;
        if let Some(small) = self.apply_small(m, &den) {
            return small;
        }
        let mut out = vec![BigInt::zero(); m.dim()];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, v) in m.row_nums(i) {
                out[j] += x * v;
            }
        }
        Self::from_parts(den, out)
    }

    fn apply_small(&self, m: &OpMatrix, den: &BigInt) -> Option<Self> {
        let mut out = vec![0i128; m.dim()];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let x = x.to_i64()? as i128;
            for (j, v) in m.row_nums(i) {
                let v = v.to_i64()? as i128;
                out[j] = out[j].checked_add(x * v)?;
            }
        }
        Some(Self::from_parts(den.clone(), out.into_iter().map(BigInt::from).collect()))
    }

    /// Plain bilinear pairing Σ_i a_i b_i.
    pub fn dot(&self, o: &Self) -> Rat {
        let s: BigInt = self.num.iter().zip(&o.num).map(|(a, b)| a * b).sum();
        Rat::new(s, &self.den * &o.den)
    }

    /// Scaled so that the first nonzero entry is 1 (zero stays zero).
    pub fn normalized(&self) -> Self {
        match self.num.iter().find(|x| !x.is_zero()) {
            Some(first) => Self::from_parts(first.clone(), self.num.clone()),
            None => self.clone(),
        }
    }

    /// `Some(c)` with `self = c·o` when the two are parallel (`o` nonzero).
    pub fn ratio_to(&self, o: &Self) -> Option<Rat> {
        let p = o.num.iter().position(|x| !x.is_zero())?;
        let c = self.get(p) / o.get(p);
        (o.scale(&c) == *self).then_some(c)
    }

    pub fn max_abs(&self) -> Rat {
        Rat::new(self.num.iter().map(|x| x.abs()).max().unwrap_or_default(), self.den.clone())
    }
}

impl fmt::Debug for CoVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_rats().iter().map(super::rational::rat_to_string).collect();
        write!(f, "<{}|", s.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn sample(dim: usize, seed: i64) -> OpMatrix {
        OpMatrix::from_fn(dim, |i, j| {
            let v = (i as i64 * 7 + j as i64 * 3 + seed) % 5 - 2;
            rat(v, 1 + ((i + j) as i64 % 3))
        })
    }

    #[test]
    fn small_and_big_paths_agree() {
        let a = sample(5, 1);
        let b = sample(5, 2);
        let big = OpMatrix::scalar(5, &Rat::new(BigInt::from(10).pow(30), BigInt::one()));
        let lhs = a.mul(&b).mul(&big);
        let rhs = a.mul(&b.mul(&big));
        assert_eq!(lhs, rhs);
        let back = lhs.scale(&Rat::new(BigInt::one(), BigInt::from(10).pow(30)));
        assert_eq!(back, a.mul(&b));
    }

    #[test]
    fn entrywise_product_matches_definition() {
        let a = sample(4, 3);
        let b = sample(4, 4);
        let c = a.mul(&b);
        for i in 0..4 {
            for j in 0..4 {
                let s: Rat = (0..4).map(|k| a.get(i, k) * b.get(k, j)).sum();
                assert_eq!(c.get(i, j), s);
            }
        }
    }

    #[test]
    fn sparse_storage_gives_same_results() {
        let a = sample(6, 5);
        let b = sample(6, 6);
        let dense = a.mul(&b).add(&a).transpose();
        set_sparse_threshold(4);
        let a2 = OpMatrix::from_fn(6, |i, j| a.get(i, j));
        let b2 = OpMatrix::from_fn(6, |i, j| b.get(i, j));
        assert!(a2.is_sparse());
        let sparse = a2.mul(&b2).add(&a2).transpose();
        set_sparse_threshold(512);
        assert_eq!(dense, sparse);
    }

    #[test]
    fn covector_action() {
        let a = sample(4, 7);
        let v = CoVec::from_rats(&[rat(1, 2), int(0), int(-3), rat(2, 3)]);
        let w = v.apply(&a);
        for j in 0..4 {
            let s: Rat = (0..4).map(|i| v.get(i) * a.get(i, j)).sum();
            assert_eq!(w.get(j), s);
        }
        assert_eq!(v.scale(&rat(3, 7)).ratio_to(&v), Some(rat(3, 7)));
    }

    #[test]
    fn embed_site_matches_kron() {
        let s = sample(2, 1);
        let id3 = OpMatrix::identity(3);
        // site with stride 1 is the fast index
        assert_eq!(OpMatrix::embed_site(&s, 2, 1, 6), id3.kron(&s));
        assert_eq!(OpMatrix::embed_site(&s, 2, 3, 6), s.kron(&id3));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(OpMatrix::scalar(3, &rat(2, 5)).as_scalar(), Some(rat(2, 5)));
        assert_eq!(OpMatrix::zero(3).as_scalar(), Some(int(0)));
        assert_eq!(sample(3, 1).as_scalar(), None);
    }
}
