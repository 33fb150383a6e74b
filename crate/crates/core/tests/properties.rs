//! Structural invariants as property tests over seeded random data.

mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use rbfam::algebra::{adjoint_bimodule, check_rel_rbf, RelRBFamily};
use rbfam::dendriform::{check_dend_family, DendFamily};
use rbfam::homotopy::ainf::{combined, suspend_algebra, unsuspend_algebra};
use rbfam::homotopy::hrbf::{hrbf_residual_explicit, hrbf_residuals, strict_residual, Weighting};
use rbfam::homotopy::{
    check_ainf, check_dendinf, check_representation, graded_omega_bracket, suspend_dend, unsuspend_dend,
};
use rbfam::operator_complex::{d_r_matrix, derived_bracket, derived_bracket_via_composition, embed_cochain};
use rbfam::rbfam_cohomology::{cohomology_rrbf, delta_rrbf_matrix};
use rbfam::{gerstenhaber_bracket, samples, Limits, OmegaMap, Semigroup, Q};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn signed(f: &OmegaMap<Q>, odd: bool) -> OmegaMap<Q> {
    if odd {
        f.neg()
    } else {
        f.clone()
    }
}

fn valid_family(r: &mut impl Rng) -> RelRBFamily<Q> {
    loop {
        let s = random_rel_family(r);
        if check_rel_rbf(&s).is_ok() {
            return s;
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn omega_bracket_is_graded_lie(seed in any::<u64>()) {
        let mut r = rng(seed);
        let omegas = small_semigroups();
        let omega = Arc::new(omegas[r.gen_range(0..omegas.len())].clone());
        let (m, n, p) = (r.gen_range(1..=3), r.gen_range(1..=2), r.gen_range(1..=2));
        let d = if (2 * omega.size()).pow((m + n + p - 2) as u32) > 2048 { 1 } else { 2 };
        let f = random_omega_map(&mut r, &omega, vec![d; m], d);
        let g = random_omega_map(&mut r, &omega, vec![d; n], d);
        let h = random_omega_map(&mut r, &omega, vec![d; p], d);
        let odd_fg = (m - 1) * (n - 1) % 2 == 1;
        let fg = gerstenhaber_bracket(&f, &g).unwrap();
        let gf = gerstenhaber_bracket(&g, &f).unwrap();
        prop_assert_eq!(&fg, &signed(&gf, !odd_fg));
        let lhs = gerstenhaber_bracket(&f, &gerstenhaber_bracket(&g, &h).unwrap()).unwrap();
        let a = gerstenhaber_bracket(&fg, &h).unwrap();
        let b = signed(&gerstenhaber_bracket(&g, &gerstenhaber_bracket(&f, &h).unwrap()).unwrap(), odd_fg);
        prop_assert_eq!(lhs, a.add(&b));
    }

    #[test]
    fn derived_bracket_is_graded_lie(seed in any::<u64>()) {
        let mut r = rng(seed);
        let omegas = small_semigroups();
        let omega = Arc::new(omegas[r.gen_range(0..omegas.len())].clone());
        let alg = if r.gen_bool(0.5) { samples::dual_numbers() } else { samples::ground_field() };
        let module = adjoint_bimodule(&alg);
        let (da, dm) = (alg.dim(), module.dim());
        let arities = [r.gen_range(0..=2), r.gen_range(0..=2), r.gen_range(0..=1)];
        let [f, g, h] = arities.map(|k| random_omega_map(&mut r, &omega, vec![dm; k], da));
        let (m, n) = (arities[0], arities[1]);
        let odd = m * n % 2 == 1;
        let br = |x: &OmegaMap<Q>, y: &OmegaMap<Q>| derived_bracket(x, y, &alg, &module).unwrap();
        prop_assert_eq!(br(&f, &g), signed(&br(&g, &f), !odd));
        let lhs = br(&f, &br(&g, &h));
        let rhs = br(&br(&f, &g), &h).add(&signed(&br(&g, &br(&f, &h)), odd));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derived_bracket_two_routes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_rel_family(&mut r);
        let (da, dm) = (s.dim_a(), s.dim_m());
        let omega = s.omega_arc().clone();
        let (m, n) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let f = random_omega_map(&mut r, &omega, vec![dm; m], da);
        let g = random_omega_map(&mut r, &omega, vec![dm; n], da);
        let explicit = derived_bracket(&f, &g, s.algebra(), s.module()).unwrap();
        let composed = derived_bracket_via_composition(&f, &g, s.algebra(), s.module()).unwrap();
        prop_assert_eq!(embed_cochain(&explicit, da, dm), composed);
    }

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = valid_family(&mut r);
        for n in 0..=2 {
            prop_assert!(d_r_matrix(&s, n + 1).mul(&d_r_matrix(&s, n)).is_zero());
        }
        for n in 1..=2 {
            prop_assert!(delta_rrbf_matrix(&s, n + 1).mul(&delta_rrbf_matrix(&s, n)).is_zero());
        }
    }

    #[test]
    fn verdicts_survive_basis_changes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_rel_family(&mut r);
        let p = random_invertible(&mut r, s.dim_a());
        let qm = random_invertible(&mut r, s.dim_m());
        let t = s.change_basis(&p, &qm).unwrap();
        prop_assert_eq!(check_rel_rbf(&s).is_ok(), check_rel_rbf(&t).is_ok());
        if check_rel_rbf(&s).is_ok() && s.omega().size() <= 2 && s.dim_a() + s.dim_m() <= 4 {
            let limits = Limits::default();
            prop_assert_eq!(cohomology_rrbf(&s, 2, &limits).unwrap(), cohomology_rrbf(&t, 2, &limits).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn homotopy_routes_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_hrbf(&mut r, 3, false);
        let via_brackets = hrbf_residuals(&h, 3).unwrap();
        for n in 1..=3 {
            prop_assert_eq!(&hrbf_residual_explicit(&h, n, Weighting::Plain).unwrap(), &via_brackets[n - 1]);
        }
    }

    #[test]
    fn strict_route_agrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_hrbf(&mut r, 3, true);
        let via_brackets = hrbf_residuals(&h, 3).unwrap();
        for n in 1..=3 {
            prop_assert_eq!(&strict_residual(&h, n).unwrap(), &via_brackets[n - 1]);
        }
    }

    #[test]
    fn square_of_the_total_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = if r.gen_bool(0.3) {
            let s = valid_family(&mut r);
            rbfam::homotopy::classical_embed(&s, 3)
        } else {
            random_hrbf(&mut r, 3, false)
        };
        let total = combined(h.algebra(), h.module()).unwrap();
        let delta = total.as_family(Arc::new(Semigroup::trivial()));
        let sq = graded_omega_bracket(&delta, &delta, 3).unwrap();
        let valid = check_ainf(h.algebra(), 3).unwrap().is_ok() && check_representation(h.algebra(), h.module(), 3).unwrap().is_ok();
        prop_assert_eq!(sq.is_zero(), valid);
    }

    #[test]
    fn suspension_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let algs = algebras();
        let alg = algs[r.gen_range(0..algs.len())].clone();
        prop_assert_eq!(unsuspend_algebra(&suspend_algebra(&alg, 3)).unwrap(), alg);
        let omegas = small_semigroups();
        let omega = Arc::new(omegas[r.gen_range(0..omegas.len())].clone());
        let dim = r.gen_range(1..=2);
        let prec = (0..omega.size()).map(|_| random_multilinear(&mut r, vec![dim, dim], dim)).collect();
        let succ = (0..omega.size()).map(|_| random_multilinear(&mut r, vec![dim, dim], dim)).collect();
        let d = DendFamily::new(omega, prec, succ).unwrap();
        let s = suspend_dend(&d, 3);
        prop_assert_eq!(unsuspend_dend(&s).unwrap(), d.clone());
        prop_assert_eq!(check_dendinf(&s, 3).unwrap().is_ok(), check_dend_family(&d).is_ok());
    }
}
