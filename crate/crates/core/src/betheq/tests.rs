use num_complex::Complex64;

use super::*;
use crate::combinatorics::YoungDiagram;
use crate::sovcore::build_sov_basis;
use crate::yangian::{Chain, ChainSpec};

fn policy() -> NumericPolicy {
    NumericPolicy::new(Precision::default())
}

fn solved(name: &str, seed: u64) -> BetheSpectrum {
    let spec = ChainSpec::preset(name).unwrap();
    let mut sp = diagonalize_bethe(&spec, policy(), seed).unwrap();
    solve_all(&mut sp).unwrap();
    sp
}

fn c64_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

/// `τ_1(u)` on the two-dimensional chain against the roots of the exact
/// characteristic polynomial of `𝕋_1(u)`, at several points.
#[test]
fn t0_tau_matches_characteristic_polynomial() {
    let sp = solved("t0", 7);
    assert_eq!(sp.dim(), 2);
    for u in [Rat::new(1.into(), 5.into()), Rat::new((-7).into(), 3.into()), int_rat(4)] {
        let t = sp.monodromy.transfer_antisym_at(1, &u).unwrap();
        let f = |i, j| num_traits::ToPrimitive::to_f64(&t.get(i, j)).unwrap();
        let (tr, det) = (f(0, 0) + f(1, 1), f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0));
        let disc = Complex64::new(tr * tr - 4.0 * det, 0.0).sqrt();
        let roots = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        let mut got: Vec<Complex64> = sp.states.iter().map(|s| s.tau[0].eval(&cx(&u, sp.bits())).to_c64()).collect();
        got.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut want = roots.to_vec();
        want.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!(c64_close(*g, *w, 1e-10), "{g} vs {w}");
        }
        // τ_2 is the quantum determinant, a multiple of the identity
        let t2 = sp.monodromy.transfer_antisym_at(2, &u).unwrap().as_scalar().unwrap();
        for s in &sp.states {
            let v = s.tau[1].eval(&cx(&u, sp.bits())).to_c64();
            assert!(c64_close(v, Complex64::new(num_traits::ToPrimitive::to_f64(&t2).unwrap(), 0.0), 1e-12));
        }
    }
}

#[test]
fn t0_degrees_and_identities() {
    let sp = solved("t0", 7);
    let spec = &sp.spec;
    let mut degs: Vec<Vec<usize>> = sp.states.iter().map(BetheState::degrees).collect();
    degs.sort();
    assert_eq!(degs, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(baxter_degree_bound(spec), 1);
    let sigma = [0, 1];
    for s in &sp.states {
        assert!(s.baxter_residuals.iter().all(|&r| r < sp.policy.baxter()));
        let tab = qq_build(spec, &s.q, sp.policy).unwrap();
        assert!(quantisation_check(spec, s, &tab, sp.policy).passed(1e-25));
        let v = vanishing_check(spec, &tab, &sigma, sp.policy);
        assert!(v.pole_free && v.max_rel < 1e-25);
    }
    let chain = Chain::new(spec).unwrap();
    let basis = build_sov_basis(&chain).unwrap();
    assert!(wavefunction_check(&sp, &basis, &sigma).unwrap().passed(1e-25));
    let cases = default_backlund_cases(spec, 2).unwrap();
    assert!(backlund_identity_check(&sp, &cases, &sigma).unwrap().passed(1e-25));
}

/// A one-dimensional chain: `T(u)` is the scalar `ν_1(u)·1` up to the
/// twist, so `q̂_i` is constant and `τ_1 = (z_1 + z_2) ν_1(u)`.
#[test]
fn one_dimensional_chain_has_constant_q() {
    let spec = ChainSpec::new(2, vec![vec![2, 2]], vec![int_rat(0)], int_rat(1), vec![int_rat(2), int_rat(3)], vec![int_rat(7)]).unwrap();
    assert_eq!(baxter_degree_bound(&spec), 0);
    let mut sp = diagonalize_bethe(&spec, policy(), 1).unwrap();
    solve_all(&mut sp).unwrap();
    assert_eq!(sp.dim(), 1);
    let s = &sp.states[0];
    assert_eq!(s.degrees(), vec![0, 0]);
    let u = Rat::new(3.into(), 11.into());
    let want = spec.nu_poly_at(1, &u) * int_rat(5);
    assert!(rel_diff(&s.tau[0].eval(&cx(&u, sp.bits())), &cx(&want, sp.bits()), &sp.policy.zero_floor()) < 1e-40);
}

#[test]
fn reseeding_reproduces_the_q_functions() {
    let a = solved("t0", 7);
    let b = solved("t0", 1234);
    let u = cx(&Rat::new(5.into(), 13.into()), a.bits());
    for s in &a.states {
        let t = s.tau[0].eval(&u);
        let twin = b.states.iter().find(|o| rel_diff(&o.tau[0].eval(&u), &t, &a.policy.zero_floor()) < 1e-30).expect("same state");
        for (p, q) in s.q.iter().zip(&twin.q) {
            assert_eq!(p.degree(), q.degree());
            let d = p.poly.sub(&q.poly);
            assert!(real_to_f64(&poly_max_abs(&d, a.bits())) < 1e-30);
        }
    }
}

/// Everything on the two rank-3 chains with nine states each, including a
/// non-identity ordering of the twists.
#[test]
fn rank_three_chains() {
    for name in ["defining3", "conjugate3"] {
        let sp = solved(name, 3);
        let spec = &sp.spec;
        assert_eq!(sp.dim(), 9);
        let bits = sp.bits();
        let floor = sp.policy.zero_floor();
        let u0 = Rat::new(2.into(), 9.into());
        let uc = cx(&u0, bits);
        let bound = baxter_degree_bound(spec);
        for s in &sp.states {
            assert!(s.degrees().iter().sum::<usize>() <= bound * 2);
            let tab = qq_build(spec, &s.q, sp.policy).unwrap();
            assert!(tab.max_remainder < 1e-25);
            // the Casoratian is an independent route to P_I
            for idx in [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2], vec![2, 0, 1], vec![1, 0]] {
                let direct = casoratian(spec, &s.q, &idx, bits);
                let d = direct.sub(&tab.p_ordered(&idx));
                assert!(real_to_f64(&(poly_max_abs(&d, bits) / poly_max_abs(&direct, bits))) < 1e-25, "{name} {idx:?}");
            }
            let q = quantisation_check(spec, s, &tab, sp.policy);
            assert!(q.passed(1e-25), "{name}: {q:?}");
            for sigma in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
                let v = vanishing_check(spec, &tab, &sigma, sp.policy);
                assert!(v.pole_free && v.max_rel < 1e-25, "{name} {sigma:?}: {v:?}");
                for r in 1..=3 {
                    let a = quantum_eigenvalue(spec, &tab, &s.q, &sigma, r, &uc);
                    let b = quantum_eigenvalue_q(spec, &tab, &s.q, &sigma, r, &uc);
                    assert!(rel_diff(&a, &b, &floor) < 1e-25);
                }
                // τ_a is the column tableau sum of Λ, for any ordering
                for a in 1..=3 {
                    let sum = cbrsolk(spec, &tab, s, &sigma, 3, &YoungDiagram::column(a), &uc);
                    assert!(rel_diff(&sum, &s.tau_at(a, &uc), &floor) < 1e-25);
                }
                // tableau sum and Wronskian agree for k < n
                for k in 1..=2 {
                    for xi in [YoungDiagram::row(1), YoungDiagram::row(2), YoungDiagram::column(2), YoungDiagram::new(vec![2, 1]).unwrap()] {
                        let w = wronskian_transfer(spec, &s.q, &sigma, k, &xi, &u0, sp.policy).unwrap();
                        let t = cbrsolk(spec, &tab, s, &sigma, k, &xi, &uc);
                        assert!(rel_diff(&w, &t, &floor) < 1e-25, "{name} k={k} {xi:?}");
                    }
                }
            }
        }
        let chain = Chain::new(spec).unwrap();
        let basis = build_sov_basis(&chain).unwrap();
        for sigma in [[0, 1, 2], [1, 2, 0]] {
            assert!(wavefunction_check(&sp, &basis, &sigma).unwrap().passed(1e-25));
            let cases = default_backlund_cases(spec, 2).unwrap();
            let rep = backlund_identity_check(&sp, &cases, &sigma).unwrap();
            assert!(rep.passed(1e-25), "{name}: {} {}", rep.max_rel, rep.max_k_stability);
            if name == "defining3" {
                // ν = (1,0,0): at k = 1, T^{(1)} and T^{(2)} must coincide
                assert!(rep.cases.iter().any(|c| c.k == 1 && c.k_range == (1, 2)));
            }
        }
    }
}

#[test]
fn wronskian_edge_cases() {
    let sp = solved("t0", 7);
    let spec = &sp.spec;
    let u0 = Rat::new(1.into(), 4.into());
    for s in &sp.states {
        let one = wronskian_transfer(spec, &s.q, &[0, 1], 1, &YoungDiagram::empty(), &u0, sp.policy).unwrap();
        assert!(rel_diff(&one, &Cplx::one(sp.bits()), &sp.policy.zero_floor()) < 1e-40);
        let tall = wronskian_transfer(spec, &s.q, &[0, 1], 1, &YoungDiagram::column(2), &u0, sp.policy).unwrap();
        assert!(tall.is_zero());
    }
}

#[test]
fn state_records_serialize() {
    let sp = solved("t0", 7);
    let rec = sp.states[0].record(30);
    let json = serde_json::to_value(&rec).unwrap();
    assert_eq!(json["q"].as_array().unwrap().len(), 2);
    assert_eq!(json["tau"].as_array().unwrap().len(), 2);
    assert_eq!(json["precision_digits"], 30);
}

