//! The Yangian layer: Lax and monodromy matrices, quantum minors, transfer
//! matrices and twists.
//!
//! Operators act on covectors from the right, so a product `A·B` of
//! matrices means "apply `A`, then `B`" to a bra.

pub mod checks;
pub mod monodromy;
pub mod spec;
pub mod transfer;

pub use monodromy::{lax, signed_permutations, subsets, MinorTable, Monodromy};
pub use spec::{default_w, elementary_symmetric, Chain, ChainSpec, TwistSpec};
pub use transfer::{cbr_at, cbr_terms, null_antisym_expr, null_transfer_at, null_transfer_expr, talalaev_check, TalalaevReport, YExpr};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::YoungDiagram;
    use crate::exactalg::rational::{int, rat, Rat};
    use crate::exactalg::{OpMatrix, PolyOperator, UPoly};
    use crate::glrep::build_irrep;
    use num_traits::{One, Zero};

    fn t0() -> (Chain, Monodromy) {
        let chain = Chain::new(&ChainSpec::preset("t0").unwrap()).unwrap();
        let m = Monodromy::untwisted(&chain).unwrap();
        (chain, m)
    }

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn permutation_signs() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.0).sum::<i64>(), 0);
        assert_eq!(p.iter().find(|x| x.1 == vec![1, 0, 2]).unwrap().0, -1);
        assert_eq!(p.iter().find(|x| x.1 == vec![1, 2, 0]).unwrap().0, 1);
    }

    #[test]
    fn lax_fundamental_is_u_minus_p() {
        let rep = build_irrep(&[1, 0]).unwrap();
        let l = lax(&rep, &int(1));
        // basis order of V: weight e_2 (λ_11=0) first, then e_1
        let to_std = |aux: usize, s: usize| aux * 2 + if s == 0 { 1 } else { 0 };
        let c0 = &l.coeffs()[0];
        for a in 0..2 {
            for s in 0..2 {
                for b in 0..2 {
                    for t in 0..2 {
                        // P e_a⊗e_{s'} = e_{s'}⊗e_a in standard indices
                        let (sa, ss) = (a, 1 - s);
                        let (tb, tt) = (b, 1 - t);
                        let p = if sa == tt && ss == tb { int(1) } else { int(0) };
                        assert_eq!(c0.get(a * 2 + s, b * 2 + t), -p, "{a}{s}{b}{t}");
                        let _ = to_std;
                    }
                }
            }
        }
        assert_eq!(l.coeffs()[1], OpMatrix::identity(4));
    }

    #[test]
    fn lax_one_dim_rep_and_invariance() {
        let rep = build_irrep(&[1, 1]).unwrap();
        let l = lax(&rep, &int(1));
        // u − ħ Σ E_ij ⊗ δ_ij·1 = (u − 1)·Id
        assert_eq!(l.coeffs()[0], OpMatrix::scalar(2, &int(-1)));
        for nu in [vec![2, 1, 0], vec![1, 0]] {
            let rep = build_irrep(&nu).unwrap();
            let n = rep.n;
            let d = rep.dim();
            let l = lax(&rep, &rat(1, 2));
            for i in 1..=n {
                for j in 1..=n {
                    let mut g = Vec::new();
                    for r in 0..d {
                        g.push(((i - 1) * d + r, (j - 1) * d + r, int(1)));
                    }
                    let ext = OpMatrix::from_entries(n * d, g);
                    let loc = OpMatrix::embed_site(rep.e(i, j), d, 1, n * d);
                    let gen = ext.add(&loc);
                    for c in l.coeffs() {
                        assert!(c.commutator(&gen).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn single_site_entries() {
        let (chain, m) = t0();
        let e = |i, j| OpMatrix::embed_site(chain.reps[0].e(i, j), 2, 1, 2);
        // T_11(u) = u − ħ E_11 at θ = 0
        assert_eq!(m.entry(1, 1), &PolyOperator::linear(e(1, 1).scale(&int(-1)), OpMatrix::identity(2)));
        assert_eq!(m.entry(1, 2), &PolyOperator::constant(e(2, 1).scale(&int(-1))));
        assert_eq!(m.entry(1, 1).degree(), Some(1));
    }

    #[test]
    fn two_site_block_multiplication() {
        let spec = ChainSpec::new(2, vec![vec![1, 0]; 2], vec![int(0), rat(1, 3)], int(1), vec![], vec![]).unwrap();
        let chain = Chain::new(&spec).unwrap();
        let m = Monodromy::untwisted(&chain).unwrap();
        // oracle: Lax matrices on C^2 ⊗ V1 ⊗ V2 multiplied as 8×8 blocks
        let rep = &chain.reps[0];
        let u = rat(5, 7);
        let site = |alpha: usize, i: usize, j: usize| -> OpMatrix {
            let th = &spec.theta[alpha];
            let e = OpMatrix::embed_site(rep.e(j, i), 2, chain.stride(alpha), 4).scale(&int(-1));
            if i == j {
                e.add(&OpMatrix::scalar(4, &(&u - th)))
            } else {
                e
            }
        };
        for i in 1..=2 {
            for j in 1..=2 {
                let want = site(1, i, 1).mul(&site(0, 1, j)).add(&site(1, i, 2).mul(&site(0, 2, j)));
                assert_eq!(m.entry_at(i, j, &u), want);
                assert_eq!(m.entry(i, j).degree(), Some(if i == j { 2 } else { 1 }));
            }
        }
    }

    #[test]
    fn rtt_on_presets() {
        for name in ["t0", "t1"] {
            let spec = ChainSpec::preset(name).unwrap();
            let chain = Chain::new(&spec).unwrap();
            let m = Monodromy::build(&chain, &TwistSpec::mct(&spec)).unwrap();
            for (u, v) in [(rat(1, 2), rat(3, 7)), (int(2), rat(-5, 3)), (rat(7, 5), int(0))] {
                assert_eq!(checks::rtt_violation(&m, &u, &v), None, "{name}");
            }
        }
    }

    #[test]
    fn quantum_minor_basics() {
        let (_, m) = t0();
        assert_eq!(m.quantum_minor(&[1], &[2]).unwrap(), m.entry(1, 2).clone());
        let a = m.quantum_minor(&[1, 2], &[1, 2]).unwrap();
        let b = m.quantum_minor(&[2, 1], &[1, 2]).unwrap();
        assert_eq!(a, b.scale(&-Rat::one()));
        let c = m.quantum_minor(&[1, 2], &[2, 1]).unwrap();
        assert_eq!(a, c.scale(&-Rat::one()));
        assert!(m.quantum_minor(&[1, 1], &[1, 2]).is_err());
        // qdet on V^(1,0), θ=0: ν_1(u−ħ)ν_2(u) = (u−2)·u
        let q = a.as_scalar_poly().unwrap();
        assert_eq!(q, UPoly::from_roots(&[int(2), int(0)], &Rat::one()));
        let mut tab = MinorTable::new(&m);
        assert_eq!(tab.minor(&[2, 1], &[1, 2]).unwrap(), b);
    }

    #[test]
    fn quantum_determinant_is_central_t1() {
        let spec = ChainSpec::preset("t1").unwrap();
        let chain = Chain::new(&spec).unwrap();
        let m = Monodromy::untwisted(&chain).unwrap();
        let u = rat(2, 5);
        let qd = m.minor_at(&[1, 2, 3], &[1, 2, 3], &u).unwrap();
        assert!(qd.as_scalar().is_some());
        for v in [rat(1, 3), int(4)] {
            for i in 1..=3 {
                for j in 1..=3 {
                    assert!(qd.commutator(&m.entry_at(i, j, &v)).is_zero());
                }
            }
        }
        // point evaluation agrees with the polynomial minor and with covector application
        let p = m.quantum_minor(&[1, 3], &[2, 3]).unwrap();
        let at = m.minor_at(&[1, 3], &[2, 3], &u).unwrap();
        assert_eq!(p.eval_exact(&u), at);
        let v = crate::exactalg::CoVec::from_rats(&(0..64).map(|i| rat(i as i64 % 5 - 2, 1 + i as i64 % 3)).collect::<Vec<_>>());
        assert_eq!(m.apply_minor(&v, &[1, 3], &[2, 3], &u).unwrap(), v.apply(&at));
    }

    #[test]
    fn transfer_values_t0() {
        let (chain, m) = t0();
        assert_eq!(m.transfer_antisym(0).unwrap(), PolyOperator::identity(2));
        // tr T = 2u − ħ·(E_11+E_22) = (2u − 1)·Id on V^(1,0)
        assert_eq!(m.transfer_antisym(1).unwrap().as_scalar_poly().unwrap(), UPoly::from_ints(&[-1, 2]));
        let t1 = m.transfer_antisym(1).unwrap();
        assert_eq!(m.cbr_transfer(&yd(&[1])).unwrap(), t1);
        assert_eq!(m.cbr_transfer(&yd(&[1, 1])).unwrap(), m.transfer_antisym(2).unwrap());
        let want = t1.mul(&t1.shift(&int(1))).sub(&m.transfer_antisym(2).unwrap().shift(&int(1)));
        assert_eq!(m.cbr_transfer(&yd(&[2])).unwrap(), want);
        let u = rat(3, 4);
        assert_eq!(m.cbr_transfer_at(&yd(&[2]), &u).unwrap(), want.eval_exact(&u));
        assert!(m.cbr_transfer(&yd(&[1, 1, 1])).unwrap().is_zero());
        let _ = chain;
    }

    #[test]
    fn twisted_transfer_via_untwisted_minors() {
        // 𝕋_{a,1} of T·G equals Σ_{I,K} T[^I_K] G[^K_I] (Cauchy–Binet)
        let spec = ChainSpec::preset("t1").unwrap();
        let chain = Chain::new(&spec).unwrap();
        let tw = TwistSpec::mct(&spec);
        let m = Monodromy::build(&chain, &tw).unwrap();
        let bare = Monodromy::untwisted(&chain).unwrap();
        let g = tw.matrix(3).unwrap();
        let u = rat(1, 5);
        for a in 1..=3 {
            let direct = m.transfer_antisym_at(a, &u).unwrap();
            let mut acc = OpMatrix::zero(chain.dim);
            for i in subsets(3, a) {
                for k in subsets(3, a) {
                    let sub: Vec<Vec<Rat>> = k.iter().map(|&r| i.iter().map(|&c| g[r - 1][c - 1].clone()).collect()).collect();
                    let c = crate::exactalg::linalg::det_exact(&sub);
                    if !c.is_zero() {
                        acc = acc.add_scaled(&bare.minor_at(&i, &k, &u).unwrap(), &c);
                    }
                }
            }
            assert_eq!(direct, acc, "a = {a}");
        }
        // a = n: χ_3 · qdet
        let qd = bare.minor_at(&[1, 2, 3], &[1, 2, 3], &u).unwrap();
        assert_eq!(m.transfer_antisym_at(3, &u).unwrap(), qd.scale(&int(30)));
    }

    #[test]
    fn talalaev_expansion() {
        let (_, m) = t0();
        assert!(talalaev_check(&m).unwrap().passed());
        let spec = ChainSpec::new(1, vec![vec![2]], vec![int(0)], int(1), vec![int(3)], vec![]).unwrap();
        let m1 = Monodromy::build(&Chain::new(&spec).unwrap(), &TwistSpec::mct(&spec)).unwrap();
        assert!(talalaev_check(&m1).unwrap().passed());
        let spec = ChainSpec::preset("t1").unwrap();
        let m3 = Monodromy::build(&Chain::new(&spec).unwrap(), &TwistSpec::mct(&spec)).unwrap();
        let r = talalaev_check(&m3).unwrap();
        assert_eq!(r.checked, 4);
        assert!(r.passed());
    }

    #[test]
    fn embedding_and_null_transfer() {
        let e = YExpr::entry(1, 1).embed(1, 2).unwrap();
        assert_eq!(e, YExpr::entry(2, 2));
        assert_eq!(YExpr::entry(1, 1).embed(2, 3).unwrap(), YExpr::entry(3, 3));
        assert!(YExpr::entry(2, 2).embed(2, 3).is_err());
        assert_eq!(YExpr::minor(vec![1, 2], vec![1, 2]).embed(1, 3).unwrap(), YExpr::minor(vec![2, 3], vec![2, 3]));

        let spec = ChainSpec::preset("t1").unwrap();
        let chain = Chain::new(&spec).unwrap();
        let bare = Monodromy::untwisted(&chain).unwrap();
        let w = &spec.w;
        let u = rat(2, 7);
        // r = 0, ξ = (1), k = n−1: Σ_j w_j T_{j,j+1}
        let got = null_transfer_at(&bare, w, &yd(&[1]), 2, 0, &u).unwrap();
        let want = bare.entry_at(1, 2, &u).scale(&w[0]).add(&bare.entry_at(2, 3, &u).scale(&w[1]));
        assert_eq!(got, want);
        // r = 1: w^{(2)}_1 T_23 = w_2 T_23
        let got = null_transfer_at(&bare, w, &yd(&[1]), 1, 1, &u).unwrap();
        assert_eq!(got, bare.entry_at(2, 3, &u).scale(&w[1]));
        assert_eq!(null_transfer_at(&bare, w, &YoungDiagram::empty(), 1, 1, &u).unwrap(), OpMatrix::identity(64));
        assert!(null_transfer_at(&bare, w, &yd(&[1]), 2, 1, &u).is_err());
        // symbolic and matrix paths agree; null twist of the full chain matches the twisted monodromy
        let xi = yd(&[2, 1]);
        let ex = null_transfer_expr(3, w, &xi, 2, 0, &int(1)).unwrap();
        assert_eq!(ex.eval_at(&bare, &u).unwrap(), null_transfer_at(&bare, w, &xi, 2, 0, &u).unwrap());
        let null = Monodromy::build(&chain, &TwistSpec::null(&spec)).unwrap();
        assert_eq!(null.cbr_transfer_at(&xi, &u).unwrap(), null_transfer_at(&bare, w, &xi, 2, 0, &u).unwrap());
    }

    #[test]
    fn commutativity_t0_and_minor_commutativity() {
        let spec = ChainSpec::new(2, vec![vec![1, 0], vec![2, 0]], vec![int(0), rat(1, 3)], int(1), vec![int(2), int(3)], vec![int(7)]).unwrap();
        let chain = Chain::new(&spec).unwrap();
        let m = Monodromy::build(&chain, &TwistSpec::mct(&spec)).unwrap();
        let ds = checks::nonempty_diagrams(3, 2);
        let pts = vec![(rat(1, 2), rat(2, 3)), (int(3), rat(-1, 4))];
        assert!(checks::transfer_commutativity_violation(&m, &ds, &pts).unwrap().is_none());
        let bare = Monodromy::untwisted(&chain).unwrap();
        assert!(checks::minor_commutativity_check(&bare, &rat(1, 2), &rat(5, 3)).unwrap().is_ok());
    }

    #[test]
    fn gl_covariance_t0_and_two_sites() {
        let (chain, m) = t0();
        let d = [rat(2, 3), int(5)];
        assert!(checks::gl_covariance_check(&chain, &m, &rat(3, 2), &rat(-1, 5), &d, &rat(1, 7)));
        let spec = ChainSpec::new(3, vec![vec![2, 1, 0], vec![1, 0, 0]], vec![int(0), rat(1, 3)], int(1), vec![], vec![]).unwrap();
        let chain = Chain::new(&spec).unwrap();
        let m = Monodromy::untwisted(&chain).unwrap();
        assert!(checks::gl_covariance_check(&chain, &m, &rat(1, 2), &int(2), &[int(3), rat(1, 2), int(7)], &rat(2, 9)));
    }
}
