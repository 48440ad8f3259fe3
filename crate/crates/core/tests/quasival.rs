mod oracle;

use cutspec::algebra::{
    sample_elements, sample_scalars, Algebra, AlgebraInstance, Element, MonomialAlgebra, PatternAlgebra, TableEntry,
};
use cutspec::field_model::{rational, IdealCut, ModelElem, Val};
use cutspec::fixtures;
use cutspec::ordered_values::{Cut, CutOrInfty, GroupElem};
use cutspec::quasival::{
    check_axioms, check_stability, check_v_qv, clamped_at_zero, containment_witnesses, coordinates_divisible,
    entry_min_qv, filter, first_coordinate_only, image_scan, in_r_tensor_one, min_formula_qv, minimal_generators,
    minimal_generators_from, natural_extension, ow_member, ExtendedElem, QuasiValuation, Side, ValueMonoid,
};
use cutspec::verify::sample_extended;
use oracle::cuts::{in_left, window};
use oracle::instances::random_pattern;
use oracle::support::{box_generators, filter_left};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(c: &[i64]) -> GroupElem {
    GroupElem::new(c.to_vec())
}

fn fixture(name: &str) -> AlgebraInstance {
    fixtures::load(name, None).unwrap().algebra
}

fn embed(c: &[i64]) -> CutOrInfty {
    CutOrInfty::Finite(Cut::embed(&g(c)))
}

fn torsion_free_dual_numbers() -> MonomialAlgebra {
    let e = |index| Some(TableEntry { shift: g(&[0]), index });
    MonomialAlgebra::new(
        1,
        vec!["1".into(), "x".into()],
        vec![IdealCut::zero(1), IdealCut::zero(1)],
        vec![vec![e(0), e(1)], vec![e(1), None]],
    )
    .unwrap()
}

#[test]
fn filter_axioms_on_generated_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..24 {
        let rank = 1 + case % 3;
        let n = 1 + (case / 3) % 3;
        let r = random_pattern(&mut rng, rank, n, 3);
        let rep = check_axioms(&filter(&r), &r, 1000, case as u64);
        assert!(rep.all_pass(), "{r:?}: {rep:?}");
        assert!(rep.homogeneity.is_pass());
        assert!(rep.cancelling_pairs >= 100, "{}", rep.cancelling_pairs);
    }
}

#[test]
fn axioms_on_fixtures() {
    for name in fixtures::names() {
        let r = fixture(name);
        let rep = check_axioms(&filter(&r), &r, 1000, 1);
        assert!(rep.all_pass(), "{name}: {rep:?}");
        assert_eq!(rep.homogeneity.is_applicable(), r.is_torsion_free(), "{name}");
        if let Ok(basis) = minimal_generators(&r) {
            let rep = check_axioms(&min_formula_qv(&r, basis), &r, 1000, 2);
            assert!(rep.all_pass(), "{name}: {rep:?}");
        }
    }
}

#[test]
fn min_formula_axioms_on_generated_fg_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 20 {
        let rank = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let r = random_pattern(&mut rng, rank, n, 2);
        let Ok(basis) = minimal_generators(&r) else { continue };
        let w = min_formula_qv(&r, basis);
        let rep = check_axioms(&w, &r, 1000, checked);
        assert!(rep.all_pass(), "{r:?}: {rep:?}");
        let v = check_v_qv(&w, &r, 300, checked);
        assert!(v.extends_v.is_pass() && v.one_is_zero.is_pass(), "{v:?}");
        checked += 1;
    }
}

#[test]
fn negative_controls_are_caught() {
    let r = PatternAlgebra::full_matrix(2, 2).unwrap();
    let base = filter(&r);
    let clamped = clamped_at_zero(&base, 2);
    let rep = check_axioms(&clamped, &r, 1000, 3);
    assert!(rep.homogeneity.is_fail(), "{rep:?}");

    let first = first_coordinate_only();
    let rep = check_axioms(&first, &r, 1000, 3);
    assert!(rep.b3.is_fail() || rep.b2.is_fail(), "{rep:?}");
}

#[test]
fn v_qv_reports() {
    let m2 = PatternAlgebra::full_matrix(1, 2).unwrap();
    let rep = check_v_qv(&filter(&m2), &m2, 500, 1);
    assert!(rep.is_v_qv_with_unit_zero() && rep.extends_v.is_pass());

    // diag(F, O_v): the divisibility search decides w(1) and w(c·1).
    let r = fixture("diag_f_ov");
    let rep = check_v_qv(&filter(&r), &r, 500, 1);
    let gens = box_generators(&r, 16);
    let one = r.one().unwrap();
    let w1 = filter(&r).evaluate(&one).unwrap();
    let cut = w1.finite().unwrap();
    for gamma in window(1, 8) {
        assert_eq!(in_left(cut, &gamma), filter_left(&r, &gens, &one, &gamma));
    }
    assert_eq!(rep.one_is_zero.is_pass(), w1 == embed(&[0]));
    assert!(rep.extends_v.is_pass());

    let r2 = fixture("r2_example");
    let rep = check_v_qv(&filter(&r2), &r2, 200, 1);
    assert!(!rep.one_is_zero.is_applicable());
}

#[test]
fn min_formula_examples() {
    let m2 = PatternAlgebra::full_matrix(1, 2).unwrap();
    let basis = minimal_generators(&m2).unwrap();
    assert_eq!(basis.len(), 4);
    assert_eq!(basis.elements()[0], m2.one().unwrap());
    let w = min_formula_qv(&m2, basis);
    assert_eq!(w.value_monoid(), ValueMonoid::Gamma);
    assert_eq!(w.evaluate(&m2.one().unwrap()).unwrap(), embed(&[0]));
    let x = m2
        .from_entries(vec![ModelElem::t_pow(g(&[1])), ModelElem::zero(), ModelElem::zero(), ModelElem::t_pow(g(&[3]))])
        .unwrap();
    assert_eq!(w.evaluate(&x).unwrap(), embed(&[1]));
    assert_eq!(w.evaluate(&m2.zero()).unwrap(), CutOrInfty::Infty);

    let ov = PatternAlgebra::full_matrix(2, 1).unwrap();
    let b = minimal_generators(&ov).unwrap();
    assert_eq!(b.elements(), &[ov.one().unwrap()]);

    let loc = fixture("localization_subring");
    assert!(minimal_generators(&loc).is_err());
    assert!(minimal_generators(&fixture("dualnum_ax_x2")).is_err());
}

#[test]
fn exchange_replaces_a_unit_multiple_of_one() {
    let r = torsion_free_dual_numbers();
    let two = Element(vec![ModelElem::monomial(rational(2, 1), g(&[0])), ModelElem::zero()]);
    let x = Element(vec![ModelElem::zero(), ModelElem::one(1)]);
    let basis = minimal_generators_from(&r, &[two.clone(), x.clone()]).unwrap();
    assert_eq!(basis.elements(), &[r.one().unwrap(), x]);
    assert_eq!(basis.replaced(), two);
    assert_eq!(basis.alphas()[0], ModelElem::monomial(rational(1, 2), g(&[0])));
}

#[test]
fn minimal_basis_spans_and_is_independent() {
    for name in ["m2_ov", "r1_example"] {
        let r = fixture(name);
        let basis = minimal_generators(&r).unwrap();
        assert_eq!(basis.len(), r.dim());
        for x in sample_elements(&r, 300, 4) {
            let c = basis.coordinates(&x);
            assert!(c.iter().all(|a| a.valuation() >= Val::Finite(GroupElem::zero(r.rank()))), "{name}: {x:?}");
            assert_eq!(basis.combine(&c), x);
        }
        let scalars = sample_scalars(r.rank(), basis.len() * 100, 6);
        for c in scalars.chunks(basis.len()) {
            assert_eq!(basis.coordinates(&basis.combine(c)), c.to_vec());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_formula_on_full_matrices_is_entry_minimum(rank in 1usize..=3, n in 1usize..=3, seed in any::<u64>()) {
        let r = PatternAlgebra::full_matrix(rank, n).unwrap();
        let w = min_formula_qv(&r, minimal_generators(&r).unwrap());
        for x in sample_elements(&r, 20, seed) {
            let expected = x.0.iter().map(ModelElem::valuation).min().unwrap();
            let expected = match expected {
                Val::Infinite => CutOrInfty::Infty,
                Val::Finite(v) => CutOrInfty::Finite(Cut::embed(&v)),
            };
            prop_assert_eq!(w.evaluate(&x).unwrap(), expected);
        }
    }
}

#[test]
fn natural_extension_examples() {
    let m2 = PatternAlgebra::full_matrix(1, 2).unwrap();
    let w = min_formula_qv(&m2, minimal_generators(&m2).unwrap());
    let big_w = natural_extension(&w, &m2, 200, 1).unwrap();
    let r = Element::unit_at(4, 0, &g(&[2]));
    let x = ExtendedElem::new(r.clone(), g(&[3])).unwrap();
    assert_eq!(big_w.evaluate(&x).unwrap(), embed(&[-1]));
    assert_eq!(big_w.evaluate(&ExtendedElem::of(r.clone(), 1)).unwrap(), w.evaluate(&r).unwrap());
    assert!(ExtendedElem::new(r, g(&[-1])).is_err());

    let t = fixture("torsion_trunc_px");
    let wt = filter(&t);
    assert!(natural_extension(&wt, &t, 50, 1).is_err());
}

#[test]
fn natural_extension_is_well_defined() {
    for name in ["m2_ov", "r1_example", "diag_f_ov"] {
        let r = fixture(name);
        let rank = r.rank();
        let base = filter(&r);
        let big_w = natural_extension(&base, &r, 200, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let xs = sample_elements(&r, 500, 13);
        for x in xs {
            let b = GroupElem::new((0..rank).map(|_| rng.gen_range(0..4)));
            let delta = GroupElem::new((0..rank).map(|_| rng.gen_range(0..4)));
            let lhs = ExtendedElem::new(x.clone(), b.clone()).unwrap();
            let c = ModelElem::t_pow(delta.clone());
            let rhs = ExtendedElem::new(r.scalar(&c, &x), &b + &delta).unwrap();
            assert!(lhs.same_as(&rhs, &r));
            assert_eq!(big_w.evaluate(&lhs).unwrap(), big_w.evaluate(&rhs).unwrap(), "{name}: {lhs:?}");
        }
    }
}

#[test]
fn ow_membership_matches_divisibility_and_r() {
    for name in ["m2_ov", "r1_example"] {
        let r = fixture(name);
        let basis = minimal_generators(&r).unwrap();
        let w = min_formula_qv(&r, basis.clone());
        let big_w = natural_extension(&w, &r, 200, 2).unwrap();
        let xs = sample_extended(&r, 600, 21);
        let mut inside = 0;
        for x in &xs {
            let m = ow_member(&big_w, x).unwrap();
            assert_eq!(m, coordinates_divisible(&basis, x), "{name}: {x:?}");
            assert_eq!(m, in_r_tensor_one(&r, x), "{name}: {x:?}");
            inside += m as usize;
        }
        assert!(inside > 100 && inside < xs.len() - 100, "{name}: {inside}");
    }
}

#[test]
fn image_scans() {
    let m2 = PatternAlgebra::full_matrix(2, 2).unwrap();
    let w = min_formula_qv(&m2, minimal_generators(&m2).unwrap());
    let img = image_scan(&w, &m2, 300, 1).unwrap();
    assert!(img.is_cancellative_evidence());
    let img = image_scan(&filter(&m2), &m2, 300, 1).unwrap();
    assert!(img.all_cancellative && !img.top_attained);

    let r = fixture("diag_f_ov");
    let img = image_scan(&filter(&r), &r, 300, 1).unwrap();
    assert!(img.top_attained && !img.all_cancellative);
}

#[test]
fn r1_and_r2_containment_witnesses() {
    let r1 = fixture("r1_example");
    let w1 = entry_min_qv(&r1);
    let big_w1 = natural_extension(&w1, &r1, 200, 1).unwrap();
    let c = containment_witnesses(&r1, &big_w1, 200, 1).unwrap();
    let x = c.in_ow_not_r.expect("an element of O_W outside R ⊗ 1");
    assert!(ow_member(&big_w1, &x).unwrap());
    assert!(!r1.contains(&x.ambient()));
    let y = c.in_r_not_ow.expect("an element of R with negative value");
    assert!(r1.contains(&y));
    assert!(big_w1.evaluate(&ExtendedElem::of(y, 1)).unwrap() < embed(&[0]));

    let r2 = fixture("r2_example");
    let w2 = entry_min_qv(&r2);
    let big_w2 = natural_extension(&w2, &r2, 200, 1).unwrap();
    let c = containment_witnesses(&r2, &big_w2, 500, 1).unwrap();
    assert!(c.r_in_ow_on_samples && c.in_r_not_ow.is_none());
    let x = c.in_ow_not_r.expect("strictness witness");
    assert!(ow_member(&big_w2, &x).unwrap() && !r2.contains(&x.ambient()));
}

#[test]
fn stability() {
    let m2 = PatternAlgebra::full_matrix(1, 2).unwrap();
    let w = min_formula_qv(&m2, minimal_generators(&m2).unwrap());
    let one = m2.one().unwrap();
    let scaled = m2.scalar(&ModelElem::t_pow(g(&[3])), &one);
    let swap = m2.add(&Element::unit_at(4, 1, &g(&[0])), &Element::unit_at(4, 2, &g(&[0])));
    for c in [&one, &scaled, &swap] {
        for side in [Side::Left, Side::Right] {
            assert!(check_stability(&w, &m2, c, side, 300, 1).unwrap(), "{c:?}");
        }
    }

    // A unit of R1 with its inverse equal to itself: stable on both sides
    // for the filter quasi-valuation, and w(u) = -w(u^{-1}) = 0.
    let r1 = fixture("r1_example");
    let u = r1.add(&Element::unit_at(4, 1, &g(&[1])), &Element::unit_at(4, 2, &g(&[-1])));
    assert_eq!(r1.mul(&u, &u), r1.one().unwrap());
    let wf = filter(&r1);
    assert_eq!(wf.evaluate(&u).unwrap(), embed(&[0]));
    for side in [Side::Left, Side::Right] {
        assert!(check_stability(&wf, &r1, &u, side, 300, 2).unwrap());
    }

    // e11 in diag(F, O_v) kills the other block, so it is not stable.
    let r = fixture("diag_f_ov");
    let e11 = Element::unit_at(4, 0, &g(&[0]));
    let e22 = Element::unit_at(4, 3, &g(&[0]));
    assert!(r.mul(&e11, &e22).is_zero());
    assert!(!check_stability(&filter(&r), &r, &e11, Side::Left, 300, 3).unwrap());
}
