//! Randomised invariants of the algebra, combinatorics and representation layers.

use std::collections::BTreeMap;

use proptest::prelude::*;

use sovlab::cli::{RunConfig, Suite};
use sovlab::combinatorics::{enumerate_gt_patterns, enumerate_ssyt, weyl_dimension, GtPattern, YoungDiagram};
use sovlab::exactalg::mp::real_to_f64;
use sovlab::exactalg::rational::{int, rat, Rat};
use sovlab::exactalg::{Cplx, OpMatrix, PolyOperator, Precision, UPoly};
use sovlab::glrep::build_irrep;
use sovlab::yangian::ChainSpec;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn upoly() -> impl Strategy<Value = UPoly<Rat>> {
    prop::collection::vec(small_rat(), 0..5).prop_map(UPoly::new)
}

fn polyop(dim: usize) -> impl Strategy<Value = PolyOperator> {
    let mat = prop::collection::vec(small_rat(), dim * dim).prop_map(move |v| OpMatrix::from_fn(dim, |i, j| v[i * dim + j].clone()));
    prop::collection::vec(mat, 0..3).prop_map(move |cs| PolyOperator::new(dim, cs))
}

/// Dominant integral weights with `n ≤ 4` and entries in `0..=3`.
fn dominant(max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(0i64..=3, n)).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn num_rel(a: &sovlab::exactalg::NumMatrix, b: &sovlab::exactalg::NumMatrix) -> f64 {
    let scale = real_to_f64(&a.max_abs()).max(real_to_f64(&b.max_abs())).max(1.0);
    real_to_f64(&a.sub(b).max_abs()) / scale
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn upoly_ring_axioms(a in upoly(), b in upoly(), c in upoly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn shifts_compose(p in upoly(), a in small_rat(), b in small_rat()) {
        prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(a.clone() + b.clone())));
        prop_assert_eq!(p.shift(&a).shift(&(-a.clone())), p.clone());
    }

    #[test]
    fn polyop_ring_axioms(a in polyop(2), b in polyop(2), c in polyop(2)) {
        prop_assert!(a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c))).is_zero());
        prop_assert!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).is_zero());
        prop_assert!(a.add(&b).mul(&c).sub(&a.mul(&c).add(&b.mul(&c))).is_zero());
    }

    #[test]
    fn polyop_eval_is_multiplicative(a in polyop(3), b in polyop(3), x in small_rat()) {
        let dim = 3;
        let zero = OpMatrix::zero(dim);
        let exact = a.mul(&b).eval_or_zero(&x, &zero);
        prop_assert_eq!(exact, a.eval_or_zero(&x, &zero).mul(&b.eval_or_zero(&x, &zero)));

        let digits = Precision::DEFAULT_DIGITS;
        let bits = Precision::new(digits).bits();
        let (an, bn) = (a.to_numeric(bits), b.to_numeric(bits));
        let xn = Cplx::from_rat(&x, bits);
        let nzero = sovlab::exactalg::NumMatrix::zero(dim, bits);
        let lhs = an.eval_or_zero(&xn, &nzero).mul(&bn.eval_or_zero(&xn, &nzero));
        let rhs = an.mul(&bn).eval_or_zero(&xn, &nzero);
        let tol = 10f64.powi(2 - digits as i32);
        prop_assert!(num_rel(&lhs, &rhs) <= tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn pattern_count_is_weyl_dimension(nu in dominant(4)) {
        prop_assert_eq!(enumerate_gt_patterns(&nu).unwrap().len(), weyl_dimension(&nu));
    }

    #[test]
    fn ssyt_count_matches_patterns(rows in prop::collection::vec(1usize..=3, 0..=3), k in 1usize..=4) {
        let mut rows = rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        prop_assume!(rows.len() <= k);
        let shape = YoungDiagram::new(rows.clone()).unwrap();
        let mut nu: Vec<i64> = rows.iter().map(|&r| r as i64).collect();
        nu.resize(k, 0);
        prop_assert_eq!(enumerate_ssyt(&shape, k).len(), enumerate_gt_patterns(&nu).unwrap().len());
    }

    #[test]
    fn dual_diagonals_are_a_bijection(nu in dominant(4)) {
        let n = nu.len();
        for p in enumerate_gt_patterns(&nu).unwrap() {
            let dd = p.dual_diagonals();
            prop_assert_eq!(&GtPattern::from_dual_diagonals(&nu, &dd.mu).unwrap(), &p);
            for (k0, mb) in dd.mubar.iter().enumerate() {
                let k = k0 + 1;
                prop_assert!(mb.height() <= k);
                for j in 1..k {
                    prop_assert!(mb.part(j) >= mb.part(j + 1));
                }
                prop_assert!(k < n);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn gl_commutation_relations(nu in dominant(4)) {
        let n = nu.len();
        let r = build_irrep(&nu).unwrap();
        prop_assume!(r.dim() <= 64);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let lhs = r.e(i, j).commutator(r.e(k, l));
                        let mut rhs = OpMatrix::zero(r.dim());
                        if j == k {
                            rhs = rhs.add(r.e(i, l));
                        }
                        if i == l {
                            rhs = rhs.sub(r.e(k, j));
                        }
                        prop_assert_eq!(lhs, rhs, "[E{}{}, E{}{}] on {:?}", i, j, k, l, &nu);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_spaces_match_patterns(nu in dominant(4)) {
        let n = nu.len();
        let r = build_irrep(&nu).unwrap();
        let mut by_eigen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for i in 1..=n {
            prop_assert!(r.e(i, i).is_diagonal());
        }
        for s in 0..r.dim() {
            *by_eigen.entry((1..=n).map(|i| r.e(i, i).get(s, s)).collect()).or_default() += 1;
        }
        let mut by_weight: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for p in &r.basis {
            *by_weight.entry(p.weight().into_iter().map(int).collect()).or_default() += 1;
        }
        prop_assert_eq!(by_eigen, by_weight);
    }

    /// Every nonzero entry of `E_{k,k+1}` joins two patterns differing in one node by one.
    #[test]
    fn simple_raisings_move_one_node(nu in dominant(4)) {
        let n = nu.len();
        let r = build_irrep(&nu).unwrap();
        for k in 1..n {
            let e = r.e(k, k + 1);
            for a in 0..r.dim() {
                for b in 0..r.dim() {
                    if e.get(a, b) == int(0) {
                        continue;
                    }
                    let (pa, pb) = (&r.basis[a], &r.basis[b]);
                    let diffs: Vec<i64> = pa.rows().iter().flatten().zip(pb.rows().iter().flatten()).map(|(x, y)| x - y).filter(|&d| d != 0).collect();
                    prop_assert_eq!(diffs.len(), 1);
                    prop_assert_eq!(diffs[0].abs(), 1);
                }
            }
        }
    }
}

fn suite_subset() -> impl Strategy<Value = Vec<Suite>> {
    prop::collection::vec(prop::sample::select(Suite::ALL.to_vec()), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Writing a config back out and reading it again changes nothing.
    #[test]
    fn run_config_roundtrip(
        thetas in prop::collection::vec(-20i64..=20, 1..=3),
        zs in prop::collection::vec((1i64..=30, 1i64..=7), 2),
        suites in suite_subset(),
        seed in any::<u64>(),
        precision in 30u32..=120,
    ) {
        let theta: Vec<Rat> = thetas.iter().map(|&t| rat(t, 3) + rat(1, 7)).collect();
        let z: Vec<Rat> = zs.iter().map(|&(p, q)| rat(p, q)).collect();
        let spec = ChainSpec::new(2, vec![vec![1, 0]; theta.len()], theta, int(1), z, vec![]);
        prop_assume!(spec.is_ok());
        let mut cfg = RunConfig::new(spec.unwrap());
        cfg.set_suites(&suites);
        cfg.seed = seed;
        cfg.precision = precision;
        prop_assume!(cfg.validate().is_ok());
        let mut v = serde_json::to_value(&cfg.chain).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.insert("suites".into(), serde_json::to_value(&cfg.suites).unwrap());
        obj.insert("seed".into(), seed.into());
        obj.insert("precision".into(), precision.into());
        let back = RunConfig::from_json(&v.to_string()).unwrap();
        prop_assert_eq!(&back.chain, &cfg.chain);
        prop_assert_eq!(&back.suites, &cfg.suites);
        prop_assert_eq!(back.seed, seed);
        prop_assert_eq!(back.precision, precision);
    }
}
