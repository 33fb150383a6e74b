//! Library checkers against independent implementations.

mod common;

use std::sync::Arc;

use common::*;
use rand::Rng;
use rbfam::algebra::{check_bimodule, check_rel_rbf, Bimodule, OperatorFamily};
use rbfam::deformations::{transport, DeformationJet, EquivalenceJet};
use rbfam::dendriform::{check_dend_family, one_dim_search, DendFamily};
use rbfam::homotopy::ainf::{representation_residual, stasheff_residual, suspend_algebra, suspend_bimodule};
use rbfam::homotopy::dendinf::dendinf_residual;
use rbfam::homotopy::graded::koszul_sign;
use rbfam::homotopy::{check_ainf, check_dendinf, check_representation, DendInfFamily, GradedSpace};
use rbfam::operator_complex::mc_check;
use rbfam::{samples, Matrix, Multilinear, Scalar, Semigroup, Q};

#[test]
fn rank_agrees_with_plain_elimination() {
    let mut r = rng(11);
    for _ in 0..200 {
        let (rows, cols) = (r.gen_range(1..7), r.gen_range(1..7));
        let mut m = random_matrix(&mut r, rows, cols);
        if r.gen_bool(0.3) && rows > 1 {
            // force a dependent row
            let combo: Vec<Q> = (0..cols).map(|j| m.get(0, j) * q(2) - m.get(1, j).clone()).collect();
            for (j, v) in combo.into_iter().enumerate() {
                m.set(rows - 1, j, v);
            }
        }
        let expected = oracle_rank(&m);
        assert_eq!(m.rank(), expected);
        assert_eq!(<Q as Scalar>::rank(&m), expected);
    }
}

#[test]
fn identity_checkers_agree_with_direct_expansion() {
    let mut r = rng(12);
    let (mut valid, mut invalid) = (0, 0);
    for _ in 0..300 {
        let s = random_rel_family(&mut r);
        let expected = oracle_rel_rbf(&s);
        assert_eq!(check_rel_rbf(&s).is_ok(), expected);
        assert_eq!(mc_check(&s).is_ok(), expected);
        if expected {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid > 30 && invalid > 30, "{valid} valid, {invalid} invalid");
}

#[test]
fn three_cycle_sign_two_ways() {
    for degrees in [[1, 1, 1], [1, 0, 1], [2, 1, 3], [-1, -1, 0], [0, 0, 0]] {
        // (x0 x1 x2) → (x1 x2 x0): move x0 past x1 then past x2.
        let direct = koszul_sign(&[1, 2, 0], &degrees);
        let via_swaps = koszul_sign(&[1, 0], &[degrees[0], degrees[1]]) * koszul_sign(&[1, 0], &[degrees[0], degrees[2]]);
        assert_eq!(direct, via_swaps, "{degrees:?}");
        // The other decomposition: swap the outer pair first.
        let other = koszul_sign(&[2, 1, 0], &degrees) * koszul_sign(&[1, 0], &[degrees[2], degrees[1]]);
        assert_eq!(direct, other, "{degrees:?}");
    }
}

#[test]
fn stasheff_up_to_four_by_direct_expansion() {
    let a = samples::ainf_fixture::<Q>();
    assert!(check_ainf(&a, 4).unwrap().is_ok());
    for n in 1..=4 {
        assert!(oracle_stasheff(a.space(), a.mus(), n));
    }
    let mut r = rng(13);
    let mut broken = 0;
    for _ in 0..40 {
        let mut mus = a.mus().to_vec();
        let k = r.gen_range(1..=4);
        let shape = mus[k - 1].source().to_vec();
        let tweak = samples::graded_map::<Q>(a.space(), k, &random_graded_coeffs(&mut r, a.space(), k));
        mus[k - 1] = Multilinear::from_fn(shape, 2, |idx| {
            mus[k - 1].at(idx).iter().zip(tweak.at(idx)).map(|(x, y)| x + y).collect()
        });
        let b = rbfam::homotopy::AInfStructure::new(a.space().clone(), mus.clone()).unwrap();
        for n in 1..=4 {
            let lib = stasheff_residual(&b, n).unwrap().is_zero();
            assert_eq!(lib, oracle_stasheff(b.space(), &mus, n), "n={n}");
            broken += usize::from(!lib);
        }
    }
    assert!(broken > 0);
}

fn random_graded_coeffs(r: &mut impl Rng, space: &GradedSpace, k: usize) -> Vec<i64> {
    let d = space.dim();
    let mut count = 0;
    let mut idx = vec![0; k];
    loop {
        let total: i32 = idx.iter().map(|&i| space.degree(i)).sum::<i32>() + 1;
        count += (0..d).filter(|&o| space.degree(o) == total).count();
        let mut s = k;
        loop {
            if s == 0 {
                return (0..count).map(|_| if r.gen_bool(0.7) { 0 } else { r.gen_range(-1..=1) }).collect();
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < d {
                break;
            }
            idx[s] = 0;
        }
    }
}

#[test]
fn singleton_dendinf_matches_unlabelled_expansion() {
    let omega = Arc::new(Semigroup::trivial());
    let base = samples::dendinf_fixture::<Q>(omega.clone());
    let space = base.space().clone();
    let mut r = rng(14);
    let mut broken = 0;
    for trial in 0..40 {
        let mut maps: Vec<Vec<Multilinear<Q>>> = (1..=3).map(|k| (1..=k).map(|s| base.theta(k, s).entry(&vec![0; k]).clone()).collect()).collect();
        if trial > 0 {
            let k = r.gen_range(1..=3);
            let s = r.gen_range(0..k);
            let tweak = samples::graded_map::<Q>(&space, k, &random_graded_coeffs(&mut r, &space, k));
            maps[k - 1][s] = maps[k - 1][s].add(&tweak);
        }
        let d = DendInfFamily::constant(omega.clone(), space.clone(), &maps).unwrap();
        for n in 1..=3 {
            let lib = (1..=n).all(|sel| dendinf_residual(&d, n, sel).unwrap().is_zero());
            assert_eq!(lib, oracle_dendinf(&space, &maps, n), "trial {trial}, n={n}");
            broken += usize::from(!lib);
        }
        assert_eq!(check_dendinf(&d, 3).unwrap().is_ok(), (1..=3).all(|n| oracle_dendinf(&space, &maps, n)));
    }
    assert!(broken > 0);
}

#[test]
fn one_dimensional_families_by_hand() {
    let z2 = Arc::new(Semigroup::cyclic(2));
    let vals = [q(-1), q(0), q(1)];
    let mut accepted = Vec::new();
    for code in 0..81 {
        let digits: Vec<Q> = (0..4).map(|p| vals[(code / 3usize.pow(p)) % 3].clone()).collect();
        let (a, b) = (&digits[..2], &digits[2..]);
        let d = DendFamily::one_dim(z2.clone(), a, b).unwrap();
        let expected = oracle_one_dim_dend(&z2, a, b);
        assert_eq!(check_dend_family(&d).is_ok(), expected, "a={a:?} b={b:?}");
        if expected {
            accepted.push(d);
        }
    }
    let searched = one_dim_search(&z2, &vals);
    assert_eq!(searched.len(), accepted.len());
    for d in &accepted {
        assert!(searched.contains(d));
    }
}

#[test]
fn suspended_bimodules_match_bimodule_axioms() {
    let alg = samples::dual_numbers::<Q>();
    let a = suspend_algebra(&alg, 3);
    let mut r = rng(15);
    let (mut ok, mut bad) = (0, 0);
    for _ in 0..60 {
        let dm = r.gen_range(1..=2);
        let module = if r.gen_bool(0.5) {
            Bimodule::new(random_multilinear(&mut r, vec![2, dm], dm), random_multilinear(&mut r, vec![dm, 2], dm)).unwrap()
        } else {
            // Scalar actions through the augmentation, scaled: a bimodule iff the scale is 0 or 1.
            let c = q(r.gen_range(0..=2));
            let left = Multilinear::from_fn(vec![2, dm], dm, |i| (0..dm).map(|o| if i[0] == 0 && i[1] == o { c.clone() } else { q(0) }).collect());
            let right = Multilinear::from_fn(vec![dm, 2], dm, |i| (0..dm).map(|o| if i[1] == 0 && i[0] == o { c.clone() } else { q(0) }).collect());
            Bimodule::new(left, right).unwrap()
        };
        let m = suspend_bimodule(&alg, &module, 3);
        let expected = check_bimodule(&alg, &module).unwrap().is_ok();
        assert_eq!(check_representation(&a, &m, 3).unwrap().is_ok(), expected);
        let n3 = (0..3).all(|q| representation_residual(&a, &m, 3, q).unwrap().is_zero());
        assert_eq!(n3, expected);
        if expected {
            ok += 1;
        } else {
            bad += 1;
        }
    }
    assert!(ok > 0 && bad > 0);
}

#[test]
fn first_order_transport_by_hand() {
    let base = samples::dual_numbers_zero::<Q>(Semigroup::cyclic(2)).as_relative();
    let base = base.with_ops(OperatorFamily::new(vec![samples::nilpotent(), Matrix::zeros(2, 2)]).unwrap()).unwrap();
    assert!(check_rel_rbf(&base).is_ok());
    let mut r = rng(16);
    let j = DeformationJet::constant(base.clone(), 1);
    for _ in 0..20 {
        let (phi, psi) = (random_matrix(&mut r, 2, 2), random_matrix(&mut r, 2, 2));
        let e = EquivalenceJet::first_order(phi.clone(), psi.clone()).unwrap();
        let j2 = transport(&j, &e).unwrap();
        let alg = base.algebra();
        let col = |m: &Matrix<Q>, i: usize| m.column(i);
        for a in 0..2 {
            for b in 0..2 {
                // μ₁′(a, b) = −(a·φ(b) − φ(ab) + φ(a)·b)
                let mut expected: Vec<Q> = phi.mul_vec(alg.basis_product(a, b));
                let ea: Vec<Q> = (0..2).map(|i| q(i64::from(i == a))).collect();
                let eb: Vec<Q> = (0..2).map(|i| q(i64::from(i == b))).collect();
                for (x, y) in expected.iter_mut().zip(alg.product(&ea, &col(&phi, b))) {
                    *x -= y;
                }
                for (x, y) in expected.iter_mut().zip(alg.product(&col(&phi, a), &eb)) {
                    *x -= y;
                }
                assert_eq!(j2.mu(1).at(&[a, b]), expected.as_slice());
            }
        }
        for alpha in 0..2 {
            let rmat = base.ops().matrix(alpha);
            let expected = phi.mul(rmat);
            let minus = rmat.mul(&psi);
            let got = j2.ops(1).matrix(alpha);
            for i in 0..2 {
                for k in 0..2 {
                    assert_eq!(got.get(i, k), &(expected.get(i, k) - minus.get(i, k)));
                }
            }
        }
    }
}
