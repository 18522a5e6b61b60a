//! Chain configuration and twist matrices.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::check_dominant;
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, rat, rat_to_string, serde_rat, Rat};
use crate::glrep::{irrep, IrrepData};

fn default_hbar() -> Rat {
    Rat::one()
}

/// Default auxiliary twists: distinct primes from 7 upwards.
pub fn default_w(n: usize) -> Vec<Rat> {
    const PRIMES: [i64; 12] = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    (0..n.saturating_sub(1)).map(|i| int(PRIMES[i % PRIMES.len()] + 50 * (i / PRIMES.len()) as i64)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n: usize,
    /// Per-site weights `ν^α`.
    pub nu: Vec<Vec<i64>>,
    #[serde(with = "serde_rat::vec")]
    pub theta: Vec<Rat>,
    #[serde(with = "serde_rat", default = "default_hbar")]
    pub hbar: Rat,
    #[serde(with = "serde_rat::vec", default)]
    pub z: Vec<Rat>,
    #[serde(with = "serde_rat::vec", default)]
    pub w: Vec<Rat>,
}

impl ChainSpec {
    /// Builds and validates; empty `z`/`w` are filled with defaults.
    pub fn new(n: usize, nu: Vec<Vec<i64>>, theta: Vec<Rat>, hbar: Rat, z: Vec<Rat>, w: Vec<Rat>) -> Result<Self> {
        let mut s = Self { n, nu, theta, hbar, z, w };
        s.fill_defaults();
        s.validate()?;
        Ok(s)
    }

    /// Same representation `ν` at every site.
    pub fn uniform(nu: &[i64], theta: Vec<Rat>) -> Result<Self> {
        Self::new(nu.len(), vec![nu.to_vec(); theta.len()], theta, Rat::one(), vec![], vec![])
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let mut spec: Self = serde_json::from_str(s)?;
        spec.fill_defaults();
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn fill_defaults(&mut self) {
        if self.z.is_empty() {
            self.z = (0..self.n).map(|i| int(i as i64 + 2)).collect();
        }
        if self.w.is_empty() {
            self.w = default_w(self.n);
        }
    }

    pub fn l(&self) -> usize {
        self.theta.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.nu.len() != self.theta.len() || self.theta.is_empty() {
            return Err(Error::Config(format!("{} weights for {} inhomogeneities", self.nu.len(), self.theta.len())));
        }
        for nu in &self.nu {
            if nu.len() != n {
                return Err(Error::Config(format!("weight {nu:?} has length {} (expected n = {n})", nu.len())));
            }
            check_dominant(nu)?;
        }
        if self.hbar.is_zero() {
            return Err(Error::Config("hbar must be nonzero".into()));
        }
        if self.z.len() != n {
            return Err(Error::Config(format!("{} twist eigenvalues for n = {n}", self.z.len())));
        }
        if self.w.len() != n - 1 {
            return Err(Error::Config(format!("{} auxiliary twists (expected n − 1 = {})", self.w.len(), n - 1)));
        }
        if self.w.iter().any(Zero::is_zero) {
            return Err(Error::Config("auxiliary twists w must be nonzero".into()));
        }
        for a in 0..self.l() {
            for b in a + 1..self.l() {
                let d = (&self.theta[a] - &self.theta[b]) / &self.hbar;
                if d.is_integer() {
                    return Err(Error::Genericness(format!(
                        "theta_{} − theta_{} = {} is an integer multiple of hbar; shift one inhomogeneity by a non-integer amount",
                        a + 1,
                        b + 1,
                        rat_to_string(&(&self.theta[a] - &self.theta[b]))
                    )));
                }
            }
        }
        Ok(())
    }

    /// Twist eigenvalues must be pairwise distinct for the Bethe-algebra suites.
    pub fn check_distinct_z(&self) -> Result<()> {
        for a in 0..self.z.len() {
            for b in a + 1..self.z.len() {
                if self.z[a] == self.z[b] {
                    return Err(Error::Genericness(format!("z_{} = z_{}; twist eigenvalues must be distinct", a + 1, b + 1)));
                }
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form; keys on-disk caches.
    pub fn cache_key(&self) -> Result<String> {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(serde_json::to_vec(self)?);
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    pub fn hilbert_dim(&self) -> usize {
        self.nu.iter().map(|nu| crate::combinatorics::weyl_dimension(nu)).product()
    }

    pub fn b_degree(&self) -> usize {
        self.l() * self.n * (self.n - 1) / 2
    }

    /// `ν_j(u) = Π_α (u − θ_α − ħ ν^α_j)` evaluated at `u`.
    pub fn nu_poly_at(&self, j: usize, u: &Rat) -> Rat {
        (0..self.l()).map(|a| u - &self.theta[a] - &self.hbar * int(self.nu[a][j - 1])).product()
    }

    /// The same chain truncated to `gl(k)`: weights keep their first `k` entries.
    pub fn truncated(&self, k: usize) -> Self {
        let w = self.w[self.n - k..].to_vec();
        Self { n: k, nu: self.nu.iter().map(|v| v[..k].to_vec()).collect(), theta: self.theta.clone(), hbar: self.hbar.clone(), z: self.z[..k].to_vec(), w }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "t0" => Self::new(2, vec![vec![1, 0]], vec![int(0)], int(1), vec![int(2), int(3)], vec![int(7)]),
            "t1" => Self::new(3, vec![vec![2, 1, 0]; 2], vec![int(0), rat(1, 3)], int(1), vec![int(2), int(3), int(5)], vec![int(7), int(11)]),
            "defining3" => Self::new(3, vec![vec![1, 0, 0]; 2], vec![int(0), rat(1, 3)], int(1), vec![int(2), int(3), int(5)], vec![int(7), int(11)]),
            "conjugate3" => Self::new(3, vec![vec![1, 1, 0]; 2], vec![int(0), rat(1, 3)], int(1), vec![int(2), int(3), int(5)], vec![int(7), int(11)]),
            _ => Err(Error::Config(format!("unknown preset {name:?} (known: t0, t1, defining3, conjugate3)"))),
        }
    }
}

/// A spin chain: the spec together with its site irreps.
#[derive(Clone, Debug)]
pub struct Chain {
    pub spec: ChainSpec,
    pub reps: Vec<Arc<IrrepData>>,
    pub dim: usize,
}

impl Chain {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        spec.validate()?;
        let reps: Vec<Arc<IrrepData>> = spec.nu.iter().map(|nu| irrep(nu)).collect::<Result<_>>()?;
        let dim = reps.iter().map(|r| r.dim()).product();
        Ok(Self { spec: spec.clone(), reps, dim })
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Mixed-radix stride of site `alpha` (0-based); site 1 varies fastest.
    pub fn stride(&self, alpha: usize) -> usize {
        self.reps[..alpha].iter().map(|r| r.dim()).product()
    }

    /// Per-site basis indices of a global basis index.
    pub fn split_index(&self, mut idx: usize) -> Vec<usize> {
        self.reps
            .iter()
            .map(|r| {
                let i = idx % r.dim();
                idx /= r.dim();
                i
            })
            .collect()
    }

    pub fn join_index(&self, parts: &[usize]) -> usize {
        parts.iter().enumerate().map(|(a, &i)| i * self.stride(a)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TwistSpec {
    Identity,
    Diagonal {
        #[serde(with = "serde_rat::vec")]
        z: Vec<Rat>,
    },
    Companion {
        #[serde(with = "serde_rat::vec")]
        z: Vec<Rat>,
    },
    Mct {
        #[serde(with = "serde_rat::vec")]
        z: Vec<Rat>,
        #[serde(with = "serde_rat::vec")]
        w: Vec<Rat>,
    },
    Null {
        #[serde(with = "serde_rat::vec")]
        w: Vec<Rat>,
    },
}

/// Elementary symmetric polynomials `χ_0..χ_n`.
pub fn elementary_symmetric(z: &[Rat]) -> Vec<Rat> {
    let mut e = vec![Rat::one()];
    for zi in z {
        let mut next = e.clone();
        next.push(Rat::zero());
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * zi);
        }
        e = next;
    }
    e
}

impl TwistSpec {
    pub fn mct(spec: &ChainSpec) -> Self {
        Self::Mct { z: spec.z.clone(), w: spec.w.clone() }
    }

    pub fn null(spec: &ChainSpec) -> Self {
        Self::Null { w: spec.w.clone() }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Self::Identity)
    }

    /// The `n × n` twist matrix `G`.
    pub fn matrix(&self, n: usize) -> Result<Vec<Vec<Rat>>> {
        let check = |len: usize, want: usize, what: &str| {
            if len == want {
                Ok(())
            } else {
                Err(Error::Config(format!("twist needs {want} {what}, got {len}")))
            }
        };
        let mut g = vec![vec![Rat::zero(); n]; n];
        match self {
            Self::Identity => (0..n).for_each(|i| g[i][i] = Rat::one()),
            Self::Diagonal { z } => {
                check(z.len(), n, "eigenvalues")?;
                (0..n).for_each(|i| g[i][i] = z[i].clone());
            }
            Self::Companion { z } => return Self::Mct { z: z.clone(), w: vec![Rat::one(); n.saturating_sub(1)] }.matrix(n),
            Self::Null { w } => return Self::Mct { z: vec![Rat::zero(); n], w: w.clone() }.matrix(n),
            Self::Mct { z, w } => {
                check(z.len(), n, "eigenvalues")?;
                check(w.len(), n - 1, "auxiliary twists")?;
                let chi = elementary_symmetric(z);
                // w_{|j|} = (−1)^j Π_{k≤j} w_k
                let mut wabs = vec![Rat::one()];
                for (k, wk) in w.iter().enumerate() {
                    let next = -(&wabs[k] * wk);
                    wabs.push(next);
                }
                for j in 1..=n {
                    g[0][j - 1] = &chi[j] / &wabs[j - 1];
                    if j < n {
                        g[j][j - 1] = w[j - 1].clone();
                    }
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::linalg::det_exact;

    #[test]
    fn presets_and_json() {
        let t1 = ChainSpec::preset("t1").unwrap();
        assert_eq!(t1.hilbert_dim(), 64);
        assert_eq!(t1.b_degree(), 6);
        let back = ChainSpec::from_json(&t1.to_json().unwrap()).unwrap();
        assert_eq!(back, t1);
        let raw = r#"{"n":2,"nu":[[1,0]],"theta":["0"],"z":["2","3"],"w":["7"]}"#;
        assert_eq!(ChainSpec::from_json(raw).unwrap(), ChainSpec::preset("t0").unwrap());
    }

    #[test]
    fn genericness_rejected() {
        let e = ChainSpec::new(2, vec![vec![1, 0]; 2], vec![int(0), int(1)], int(1), vec![], vec![]);
        assert!(matches!(e, Err(Error::Genericness(_))));
        assert!(ChainSpec::new(2, vec![vec![0, 1]], vec![int(0)], int(1), vec![], vec![]).is_err());
    }

    #[test]
    fn mct_matches_explicit_n3() {
        let (z, w) = (vec![int(2), int(3), int(5)], vec![int(7), int(11)]);
        let g = TwistSpec::Mct { z: z.clone(), w: w.clone() }.matrix(3).unwrap();
        // χ = (10, 31, 30)
        assert_eq!(g[0], vec![int(10), rat(-31, 7), rat(30, 77)]);
        assert_eq!(g[1], vec![int(7), int(0), int(0)]);
        assert_eq!(g[2], vec![int(0), int(11), int(0)]);
        // characteristic polynomial Π(λ − z_i): det(G − z_i) = 0
        for zi in &z {
            let m: Vec<Vec<Rat>> = (0..3).map(|i| (0..3).map(|j| if i == j { &g[i][j] - zi } else { g[i][j].clone() }).collect()).collect();
            assert!(det_exact(&m).is_zero());
        }
        let c = TwistSpec::Companion { z }.matrix(3).unwrap();
        assert_eq!(c[0], vec![int(10), int(-31), int(30)]);
    }

    #[test]
    fn null_twist_is_nilpotent_shift() {
        let g = TwistSpec::Null { w: vec![int(7), int(11)] }.matrix(3).unwrap();
        assert!(g[0].iter().all(Zero::is_zero));
        assert_eq!(g[1][0], int(7));
        assert_eq!(g[2][1], int(11));
    }
}
