//! Randomized property tests over the exterior algebra and the solvers.

use num_traits::Zero;
use proptest::prelude::*;

use cayley_lab::cedga::{
    build_product_phi, classify, d_product_phi, solve_lee, Angle, DiffCoeffs, LieAlgebra,
    ProductModel, SU3Data,
};
use cayley_lab::exterior::Monomial;
use cayley_lab::spin7::{cayley_form, lee_form, CayleyStructure};
use cayley_lab::{KForm, Rational, Scalar, Vector};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn sparse_form(n: u8, k: u8) -> impl Strategy<Value = KForm<Rational>> {
    let basis = Monomial::basis(n, k);
    let len = basis.len();
    proptest::collection::vec(
        prop_oneof![3 => Just(Rational::zero()), 1 => rational()],
        len,
    )
    .prop_map(move |coeffs| {
        KForm::from_components(
            n,
            k,
            basis
                .iter()
                .zip(coeffs)
                .map(|(m, c)| (m.indices().to_vec(), c)),
        )
        .unwrap()
    })
}

fn vector(n: u8) -> impl Strategy<Value = Vector<Rational>> {
    proptest::collection::vec(rational(), n as usize)
        .prop_map(|components| Vector::new(components).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_commutativity(a in sparse_form(8, 2), b in sparse_form(8, 3)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        // degrees 2·3: sign (-1)^6 = +1
        prop_assert_eq!(ab, ba);
        let a1 = a.interior(&Vector::basis(8, 1).unwrap()).unwrap();
        let b1 = b.clone();
        // degrees 1·3: sign -1
        let lhs = a1.wedge(&b1).unwrap();
        let rhs = b1.wedge(&a1).unwrap().neg();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity(a in sparse_form(8, 1), b in sparse_form(8, 2), c in sparse_form(8, 2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antiderivation(v in vector(8), a in sparse_form(8, 2), b in sparse_form(8, 2)) {
        let product = a.wedge(&b).unwrap();
        let lhs = product.interior(&v).unwrap();
        let rhs = a.interior(&v).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.interior(&v).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(product.interior(&v).unwrap().interior(&v).unwrap().is_zero());
    }

    #[test]
    fn metric_compatibility(a in sparse_form(8, 3), b in sparse_form(8, 3)) {
        let lhs = a.wedge(&b.hodge().unwrap()).unwrap();
        let rhs = KForm::volume(8).scale(&a.inner(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_of_volume_is_hodge_of_flat(v in vector(8)) {
        let lhs = KForm::volume(8).interior(&v).unwrap();
        let rhs = v.flat().hodge().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_results(a in sparse_form(8, 2), b in sparse_form(8, 2)) {
        // every operation returns forms with strictly increasing monomials
        // and no stored zeros
        for result in [a.add(&b).unwrap(), a.wedge(&b).unwrap(), a.hodge().unwrap()] {
            for (mono, coeff) in result.iter() {
                prop_assert!(!coeff.is_zero());
                prop_assert!(mono.indices().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn lee_solver_roundtrip(coeffs in proptest::collection::vec(rational(), 8)) {
        // whenever dφ = θ∧φ by construction, the solver recovers θ exactly
        let phi = cayley_form();
        let theta = KForm::from_components(
            8, 1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u8 + 1], c.clone()))).unwrap();
        let dphi = theta.wedge(&phi).unwrap();
        let (solved, residual) = solve_lee(&dphi, &phi).unwrap();
        prop_assert!(residual.is_zero());
        prop_assert_eq!(&solved, &theta);
        // and the closed-form Lee expression agrees (measured constant is 1)
        prop_assert_eq!(lee_form(&phi, &dphi).unwrap(), theta);
    }

    #[test]
    fn projections_partition_two_forms(alpha in sparse_form(8, 2)) {
        let s = CayleyStructure::standard();
        let p7 = s.project2_7(&alpha).unwrap();
        let p21 = s.project2_21(&alpha).unwrap();
        prop_assert_eq!(p7.add(&p21).unwrap(), alpha);
        prop_assert!(p7.inner(&p21).unwrap().is_zero());
        // eigenvalue equations hold for the components
        prop_assert_eq!(p7.wedge(s.phi()).unwrap().hodge().unwrap(), p7.scale(&Rational::from_int(3)));
        prop_assert_eq!(p21.wedge(s.phi()).unwrap().hodge().unwrap(), p21.neg());
    }

    #[test]
    fn three_form_projection_lands_in_kernel(gamma in sparse_form(8, 3)) {
        let s = CayleyStructure::standard();
        let g48 = s.project3_48(&gamma).unwrap();
        prop_assert!(g48.wedge(s.phi()).unwrap().is_zero());
        let g8 = s.project3_8(&gamma).unwrap();
        prop_assert_eq!(g8.add(&g48).unwrap(), gamma);
    }

    #[test]
    fn ce_differential_squares_to_zero(a in sparse_form(6, 2)) {
        let (algebra, _) = cayley_lab::cedga::bundled_example_s3s3();
        let da = algebra.differential(&a).unwrap();
        prop_assert!(algebra.differential(&da).unwrap().is_zero());
    }

    #[test]
    fn classifier_scales_lee_form(factor in 1i64..=5) {
        let model = ProductModel::new(
            SU3Data::standard(),
            Angle::zero(),
            Rational::ratio(1, 2),
            [1, 1, -1, 1],
            DiffCoeffs::new(
                Rational::from_int(0),
                Rational::from_int(factor),
                Rational::ratio(factor, 2),
                Rational::from_int(0),
            ),
        ).unwrap();
        let phi = build_product_phi(&model).unwrap();
        let dphi = d_product_phi(&model).unwrap();
        let report = classify(&phi, &dphi, &model).unwrap();
        let expected_theta = KForm::basis_element(8, &[7]).unwrap().scale(&Rational::from_int(factor));
        prop_assert_eq!(report.theta, expected_theta);
    }
}

#[test]
fn json_round_trip_forms() {
    // a couple of deterministic round trips through the wire format
    let samples = [
        KForm::<Rational>::zero(8, 3),
        cayley_form(),
        KForm::from_components(8, 1, [(vec![7], Rational::ratio(-3, 7))]).unwrap(),
    ];
    for form in samples {
        let text = serde_json::to_string(&form).unwrap();
        let back: KForm<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, form);
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<KForm<Rational>>();
    assert_send_sync::<KForm<f64>>();
    assert_send_sync::<Vector<Rational>>();
    assert_send_sync::<CayleyStructure>();
    assert_send_sync::<LieAlgebra>();
    assert_send_sync::<SU3Data<Rational>>();
    assert_send_sync::<ProductModel<Rational>>();
}

#[test]
fn broken_jacobi_breaks_d_squared() {
    let one = Rational::from_int(1);
    let algebra = LieAlgebra::new(
        3,
        [
            ((1u8, 2u8, 3u8), one.clone()),
            ((1, 3, 3), one.clone()),
            ((2, 3, 1), one),
        ],
    )
    .unwrap();
    assert!(!algebra.jacobi_check());
    let broken = (1..=3).any(|k| {
        let dk = algebra.generator_differential(k).unwrap().clone();
        !algebra.differential_unchecked(&dk).unwrap().is_zero()
    });
    assert!(broken);
}
