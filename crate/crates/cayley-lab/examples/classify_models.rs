//! Walking the torsion-class table: a torsion-free torus, a balanced
//! differential, a conformally parallel product model, and a mixed
//! perturbation.
//!
//! Run with: cargo run --example classify_models

use cayley_lab::cedga::{
    build_product_phi, classify, d_product_phi, Angle, DiffCoeffs, LieAlgebra, ProductModel,
    SU3Data,
};
use cayley_lab::spin7::{cayley_form, CayleyStructure};
use cayley_lab::{KForm, Rational, Scalar};

fn main() -> cayley_lab::Result<()> {
    // W0: the flat torus frame has dΦ = 0
    let torus = LieAlgebra::abelian(8);
    let phi = cayley_form();
    let dphi = torus.differential(&phi)?;
    let report = classify(&phi, &dphi, &torus)?;
    println!("abelian frame:        {}", report.fernandez_class);

    // W1: a differential with zero Lee form, built by removing the
    // 8-dimensional component of a 5-form (transported through *)
    let s = CayleyStructure::standard();
    let eta: KForm<Rational> = KForm::from_int_components(
        8,
        5,
        &[
            (&[1, 2, 3, 4, 5], 3),
            (&[1, 2, 3, 6, 7], -2),
            (&[2, 4, 5, 7, 8], 1),
        ],
    )?;
    let star_eta = eta.hodge()?;
    let balanced_part = star_eta.sub(&s.project3_8(&star_eta)?)?.inv_hodge()?;
    let report = classify(&phi, &balanced_part, &torus)?;
    println!("Λ⁵_48-only dΦ:        {}", report.fernandez_class);

    // W2: a product-model point on the conformal locus
    let model = ProductModel::new(
        SU3Data::standard(),
        Angle::zero(),
        Rational::ratio(1, 2),
        [1, 1, -1, 1],
        DiffCoeffs::new(
            Rational::from_int(0),
            Rational::from_int(1),
            Rational::ratio(1, 2),
            Rational::from_int(0),
        ),
    )?;
    let phi_m = build_product_phi(&model)?;
    let dphi_m = d_product_phi(&model)?;
    let report = classify(&phi_m, &dphi_m, &model)?;
    println!("product locus point:  {}", report.fernandez_class);
    println!(
        "  θ = {}   residual = {}",
        report.theta, report.residual_lcp
    );

    // Mixed: a generic perturbation
    let noise: KForm<Rational> = KForm::basis_element(8, &[1, 2, 3, 4, 5])?;
    let report = classify(
        &phi,
        &dphi_m.add(&noise.scale(&Rational::from_int(3)))?,
        &model,
    )?;
    println!("perturbed point:      {}", report.fernandez_class);
    Ok(())
}
